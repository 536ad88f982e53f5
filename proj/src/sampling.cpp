// Copyright 2026 the fproots authors
// SPDX-License-Identifier: Apache-2.0

#include "fproots/sampling.hpp"

namespace fproots {

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw internal_error("Rng::below(0)");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t v;
  do {
    v = eng_();
  } while (v >= limit);
  return v % n;
}

Rat random_unit_rat(Rng& rng, long max_den) {
  const long den = rng.range(2, max_den);
  const long num = rng.range(1, den - 1);
  Rat r(num, den);
  r.canonicalize();
  return r;
}

Quadratic random_quad_log(Rng& rng) {
  while (true) {
    const long d = rng.range(2, 60);
    if (is_perfect_square(Int(d))) continue;
    const long b = rng.range(1, 6);
    const long c = rng.range(1, 9);
    const long a = rng.range(-12, 12);
    const Quadratic w{Int(a), Int(b), Int(c), Int(d)};
    if (w.is_rational()) continue;
    if (w.sign() <= 0) continue;
    if (w.cmp(Rat(3)) >= 0) continue;
    return w;
  }
}

ThetaSpec sample_exp_quadratic(Rng& rng) {
  return ThetaSpec::exp_quadratic(random_quad_log(rng));
}

}  // namespace fproots

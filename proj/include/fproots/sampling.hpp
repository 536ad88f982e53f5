// Copyright 2026 the fproots authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>

#include "fproots/mtheta.hpp"

namespace fproots {

/// Deterministic RNG for sampling commands and tests. mt19937_64's output
/// sequence is pinned by the standard; the bounded mappings below are our
/// own so results do not depend on a particular standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  std::uint64_t below(std::uint64_t n);  // uniform in [0, n), rejection sampled

  long range(long lo, long hi) {  // inclusive
    return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

 private:
  std::mt19937_64 eng_;
};

/// Random rational in (0, 1) with denominator up to max_den.
Rat random_unit_rat(Rng& rng, long max_den);

/// Random irrational quadratic w with 0 < w < 3 (so theta = e^w lies in
/// (1, e^3) and the continuant enumerator applies).
Quadratic random_quad_log(Rng& rng);

ThetaSpec sample_exp_quadratic(Rng& rng);

}  // namespace fproots

// Copyright 2026 the fproots authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace fproots {

using Int = mpz_class;
using Rat = mpq_class;

/// Bad user-supplied data (malformed spec strings, out-of-domain parameters).
class input_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A certified computation hit its precision cap before deciding.
class precision_limit : public std::runtime_error {
 public:
  explicit precision_limit(long cap_bits)
      : std::runtime_error("precision cap of " + std::to_string(cap_bits) +
                           " bits reached"),
        cap_bits(cap_bits) {}
  long cap_bits;
};

/// An invariant the implementation must uphold was violated. Seeing this
/// means a bug in this library, never bad input.
class internal_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline long bit_length(const Int& x) {
  return sgn(x) == 0 ? 0 : static_cast<long>(mpz_sizeinbase(x.get_mpz_t(), 2));
}

inline Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Int floor_rat(const Rat& q) {
  return floor_div(q.get_num(), q.get_den());
}

/// q - floor(q), always in [0, 1).
inline Rat frac_rat(const Rat& q) {
  Rat f = q - Rat(floor_rat(q));
  f.canonicalize();
  return f;
}

inline Int isqrt(const Int& x) {
  Int r;
  mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
  return r;
}

inline bool is_perfect_square(const Int& x) {
  return sgn(x) >= 0 && mpz_perfect_square_p(x.get_mpz_t()) != 0;
}

inline Int pow2(unsigned long k) {
  Int r = 1;
  mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), k);
  return r;
}

inline std::string dec(const Int& x) { return x.get_str(10); }

inline std::string dec(const Rat& q) {
  return q.get_den() == 1 ? q.get_num().get_str(10) : q.get_str(10);
}

}  // namespace fproots

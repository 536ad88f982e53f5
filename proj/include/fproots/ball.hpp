// Copyright 2026 the fproots authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>

#include "fproots/dyadic.hpp"

namespace fproots {

/// A closed interval [lo, hi] with dyadic endpoints, guaranteed to contain
/// the exact real value it stands for. All operations are inclusion
/// monotone: the result encloses every possible value of the operation on
/// members of the inputs. `work_prec` bounds the mantissa size of the
/// endpoints; rounding is always outward.
class Ball {
 public:
  Ball() = default;  // [0, 0]
  Ball(Dyadic lo, Dyadic hi);

  static Ball point(Dyadic d) { return Ball(d, d); }
  static Ball point_int(const Int& v) { return point(Dyadic(v, 0)); }

  /// Enclose a rational with width <= 2^-abs_prec (exact point when the
  /// denominator is a power of two representable at that precision).
  static Ball from_rat(const Rat& q, long abs_prec);
  static Ball from_rat_pair(const Rat& lo, const Rat& hi, long abs_prec);
  static Ball hull(const Ball& a, const Ball& b);

  const Dyadic& lo() const { return lo_; }
  const Dyadic& hi() const { return hi_; }
  bool is_point() const { return lo_ == hi_; }
  Dyadic width() const { return hi_ - lo_; }
  bool width_leq_2exp(long neg_p) const {
    return width() <= Dyadic(Int(1), -neg_p);
  }

  Ball round_out(long work_prec) const {
    return Ball(lo_.round(work_prec, Round::Down),
                hi_.round(work_prec, Round::Up));
  }

  static Ball add(const Ball& a, const Ball& b, long work_prec);
  static Ball sub(const Ball& a, const Ball& b, long work_prec);
  static Ball mul(const Ball& a, const Ball& b, long work_prec);
  static Ball neg(const Ball& a) { return Ball(-a.hi_, -a.lo_); }
  static Ball mul_2exp(const Ball& a, long k) {
    return Ball(a.lo_.mul_2exp(k), a.hi_.mul_2exp(k));
  }
  static Ball mul_int(const Ball& a, const Int& n, long work_prec);
  static Ball div_uint(const Ball& a, unsigned long n, long work_prec);
  /// Empty optional while the divisor still straddles zero.
  static std::optional<Ball> recip(const Ball& a, long work_prec);
  static std::optional<Ball> div(const Ball& a, const Ball& b, long work_prec);

  /// -1 definitely negative, +1 definitely positive, 0 contains zero.
  int sign() const {
    if (hi_.sign() < 0) return -1;
    if (lo_.sign() > 0) return 1;
    return 0;
  }
  bool contains_zero() const { return sign() == 0; }
  bool contains(const Rat& q) const {
    return lo_.to_rat() <= q && q <= hi_.to_rat();
  }
  bool contains(const Ball& inner) const {
    return lo_ <= inner.lo_ && inner.hi_ <= hi_;
  }
  static std::optional<Ball> intersect(const Ball& a, const Ball& b);

  Int floor_lo() const { return lo_.floor(); }
  Int floor_hi() const { return hi_.floor(); }
  Dyadic mid() const { return (lo_ + hi_).mul_2exp(-1); }

  /// -1 if a is entirely below b, +1 if entirely above, 0 if they overlap.
  static int cmp_strict(const Ball& a, const Ball& b) {
    if (a.hi_ < b.lo_) return -1;
    if (a.lo_ > b.hi_) return 1;
    return 0;
  }

  friend bool operator==(const Ball& a, const Ball& b) {
    return a.lo_ == b.lo_ && a.hi_ == b.hi_;
  }

  std::string str() const { return "[" + lo_.str() + ", " + hi_.str() + "]"; }

 private:
  Dyadic lo_, hi_;
};

}  // namespace fproots

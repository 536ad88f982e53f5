// Copyright 2026 the fproots authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "fproots/common.hpp"

namespace fproots {

enum class Round { Down, Up };  // toward -inf / toward +inf

/// A dyadic rational mant * 2^exp with arbitrary-precision mantissa.
///
/// Addition, subtraction and multiplication are exact ring operations;
/// rounding happens only where asked for (round(), div(), from_rat()),
/// and always in a stated direction. Normalized so that mant is odd or
/// zero, which makes equality of values equality of representations.
class Dyadic {
 public:
  Dyadic() : mant_(0), exp_(0) {}
  Dyadic(long v) : mant_(v), exp_(0) { normalize(); }  // NOLINT(runtime/explicit)
  Dyadic(Int mant, long exp) : mant_(std::move(mant)), exp_(exp) { normalize(); }

  /// Directed conversion: |result - q| < 2^-abs_prec, result <= q for Down,
  /// result >= q for Up. Exact when q has a power-of-two denominator small
  /// enough to fit.
  static Dyadic from_rat(const Rat& q, long abs_prec, Round dir);

  const Int& mant() const { return mant_; }
  long exp() const { return exp_; }
  int sign() const { return sgn(mant_); }
  bool is_zero() const { return sgn(mant_) == 0; }
  bool is_integer() const { return exp_ >= 0; }

  Int floor() const;
  Int ceil() const;
  Rat to_rat() const;

  /// Smallest M such that |value| < 2^M (only valid for nonzero values).
  long mag_upper() const { return bit_length(mant_) + exp_; }

  /// Keep at most rel_prec mantissa bits, rounding in the given direction.
  Dyadic round(long rel_prec, Round dir) const;

  Dyadic mul_2exp(long k) const { return Dyadic(mant_, exp_ + k); }

  /// Quotient a/b with about rel_prec significant bits, directed. b != 0.
  static Dyadic div(const Dyadic& a, const Dyadic& b, long rel_prec, Round dir);

  static int cmp(const Dyadic& a, const Dyadic& b);

  friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator*(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator-(const Dyadic& a) { return Dyadic(-a.mant_, a.exp_); }

  friend bool operator<(const Dyadic& a, const Dyadic& b) { return cmp(a, b) < 0; }
  friend bool operator<=(const Dyadic& a, const Dyadic& b) { return cmp(a, b) <= 0; }
  friend bool operator>(const Dyadic& a, const Dyadic& b) { return cmp(a, b) > 0; }
  friend bool operator>=(const Dyadic& a, const Dyadic& b) { return cmp(a, b) >= 0; }
  friend bool operator==(const Dyadic& a, const Dyadic& b) {
    return a.exp_ == b.exp_ && a.mant_ == b.mant_;
  }
  friend bool operator!=(const Dyadic& a, const Dyadic& b) { return !(a == b); }

  Dyadic abs() const { return sign() < 0 ? -*this : *this; }

  std::string str() const;

 private:
  void normalize();

  Int mant_;
  long exp_;
};

}  // namespace fproots

// Copyright 2026 the fproots authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>

#include "fproots/ball.hpp"

namespace fproots {

/// Exact arithmetic in a real quadratic field: values (a + b*sqrt(d))/c
/// with integer components, kept canonical (c > 0, gcd(a,b,c) = 1, d
/// squarefree; b = 0 forces d = 0, so rationals are the b = 0 case).
///
/// Within one field, or whenever one operand is rational, the four
/// field operations, sign, comparison and floor are all exact. Mixing two
/// distinct irrational fields is not representable here; the try_* entry
/// points return nullopt and callers fall back to ball arithmetic.
class Quadratic {
 public:
  Quadratic() : a_(0), b_(0), c_(1), d_(0) {}
  explicit Quadratic(const Rat& r) : a_(r.get_num()), b_(0), c_(r.get_den()), d_(0) {}
  explicit Quadratic(const Int& n) : a_(n), b_(0), c_(1), d_(0) {}
  Quadratic(Int a, Int b, Int c, Int d);

  /// sqrt(r) for rational r >= 0.
  static Quadratic sqrt_of(const Rat& r);

  const Int& a() const { return a_; }
  const Int& b() const { return b_; }
  const Int& c() const { return c_; }
  const Int& d() const { return d_; }

  bool is_rational() const { return sgn(b_) == 0; }
  Rat as_rational() const;  // requires is_rational()
  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }

  int sign() const;
  Int floor() const;
  Quadratic frac() const { return *this - Quadratic(floor()); }

  Ball enclose(long prec) const;

  /// Exact comparison; the two values must live in compatible fields
  /// (same d, or at least one rational).
  int cmp(const Quadratic& o) const;
  int cmp(const Rat& r) const { return (*this - Quadratic(r)).sign(); }

  static std::optional<Quadratic> try_add(const Quadratic& x, const Quadratic& y);
  static std::optional<Quadratic> try_sub(const Quadratic& x, const Quadratic& y);
  static std::optional<Quadratic> try_mul(const Quadratic& x, const Quadratic& y);
  static std::optional<Quadratic> try_div(const Quadratic& x, const Quadratic& y);

  Quadratic recip() const;
  friend Quadratic operator-(const Quadratic& x) {
    return Quadratic(-x.a_, -x.b_, x.c_, x.d_);
  }
  // Throwing versions for same-field use; prefer try_* when fields may mix.
  friend Quadratic operator+(const Quadratic& x, const Quadratic& y);
  friend Quadratic operator-(const Quadratic& x, const Quadratic& y);
  friend Quadratic operator*(const Quadratic& x, const Quadratic& y);
  friend Quadratic operator/(const Quadratic& x, const Quadratic& y);

  friend bool operator==(const Quadratic& x, const Quadratic& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && x.c_ == y.c_ && x.d_ == y.d_;
  }

  /// Exact value equality across representations, including when one side
  /// carries an incompletely reduced discriminant. No factoring involved.
  bool equals_value(const Quadratic& o) const;

  /// Canonical text form "(a+b*sqrt(d))/c"; plain "a/c" when rational.
  std::string str() const;

 private:
  void canonicalize();
  static bool compatible(const Quadratic& x, const Quadratic& y) {
    return x.is_rational() || y.is_rational() || x.d_ == y.d_;
  }

  Int a_, b_, c_, d_;
};

}  // namespace fproots

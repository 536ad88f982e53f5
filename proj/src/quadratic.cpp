// Copyright 2026 the fproots authors
// SPDX-License-Identifier: Apache-2.0

#include "fproots/quadratic.hpp"

#include "fproots/functions.hpp"

namespace fproots {

Quadratic::Quadratic(Int a, Int b, Int c, Int d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
  canonicalize();
}

void Quadratic::canonicalize() {
  if (sgn(c_) == 0) throw input_error("quadratic with zero denominator");
  if (sgn(d_) < 0) throw input_error("quadratic with negative discriminant");
  if (sgn(c_) < 0) {
    a_ = -a_;
    b_ = -b_;
    c_ = -c_;
  }
  if (sgn(d_) == 0) b_ = 0;
  if (sgn(b_) == 0) {
    d_ = 0;
  } else {
    // Pull square factors out of d: small primes by trial division, then a
    // perfect-square check on the remainder. Square factors made of primes
    // beyond the bound stay in d; all arithmetic remains exact (d is still
    // nonsquare), only the representation is coarser; equals_value()
    // compares across representations.
    Int p = 2;
    while (p * p <= d_ && p < 1024) {
      Int pp = p * p;
      while (mpz_divisible_p(d_.get_mpz_t(), pp.get_mpz_t())) {
        d_ /= pp;
        b_ *= p;
      }
      p += (p == 2) ? 1 : 2;
    }
    if (is_perfect_square(d_)) {
      b_ *= isqrt(d_);
      d_ = 1;
    }
    if (d_ == 1) {
      a_ += b_;
      b_ = 0;
      d_ = 0;
    }
  }
  Int g = gcd(gcd(a_, b_), c_);
  if (g > 1) {
    a_ /= g;
    b_ /= g;
    c_ /= g;
  }
}

Quadratic Quadratic::sqrt_of(const Rat& r) {
  if (sgn(r) < 0) throw input_error("sqrt of negative rational");
  // sqrt(p/q) = sqrt(pq)/q
  return Quadratic(0, 1, r.get_den(), r.get_num() * r.get_den());
}

Rat Quadratic::as_rational() const {
  if (!is_rational()) throw internal_error("as_rational on irrational quadratic");
  Rat r(a_, c_);
  r.canonicalize();
  return r;
}

int Quadratic::sign() const {
  const int sa = sgn(a_), sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  const int mag = ::cmp(a_ * a_, b_ * b_ * d_);  // compares |a| vs |b|sqrt(d)
  if (mag == 0) throw internal_error("quadratic with square discriminant");
  return mag > 0 ? sa : sb;
}

Int Quadratic::floor() const {
  if (is_rational()) return floor_div(a_, c_);
  const Ball b = enclose(72);
  Int q = b.floor_lo();
  const Int top = b.floor_hi();
  // b != 0 means the value is irrational, so comparisons below are strict.
  while (q <= top) {
    if (cmp(Rat(q)) > 0 && cmp(Rat(q + 1)) < 0) return q;
    q += 1;
  }
  throw internal_error("quadratic floor estimate failed");
}

Ball Quadratic::enclose(long prec) const {
  if (is_rational()) return Ball::from_rat(as_rational(), prec);
  const long w = prec + bit_length(b_) + 4;
  const Ball s = sqrt_rat_ball(Rat(d_), w);
  const Rat bl = s.lo().to_rat(), bh = s.hi().to_rat();
  // Exact rational endpoint arithmetic keeps this simple.
  const Rat ra(a_), rb(b_), rc(c_);
  Rat e1 = (ra + rb * bl) / rc;
  Rat e2 = (ra + rb * bh) / rc;
  if (e1 > e2) std::swap(e1, e2);
  return Ball::from_rat_pair(e1, e2, prec + 2);
}

int Quadratic::cmp(const Quadratic& o) const {
  auto diff = try_sub(*this, o);
  if (!diff) throw internal_error("comparing quadratics from different fields");
  return diff->sign();
}

std::optional<Quadratic> Quadratic::try_add(const Quadratic& x, const Quadratic& y) {
  if (!compatible(x, y)) return std::nullopt;
  const Int& d = x.is_rational() ? y.d_ : x.d_;
  return Quadratic(x.a_ * y.c_ + y.a_ * x.c_, x.b_ * y.c_ + y.b_ * x.c_,
                   x.c_ * y.c_, d);
}

std::optional<Quadratic> Quadratic::try_sub(const Quadratic& x, const Quadratic& y) {
  return try_add(x, -y);
}

std::optional<Quadratic> Quadratic::try_mul(const Quadratic& x, const Quadratic& y) {
  if (!compatible(x, y)) return std::nullopt;
  const Int& d = x.is_rational() ? y.d_ : x.d_;
  return Quadratic(x.a_ * y.a_ + x.b_ * y.b_ * d, x.a_ * y.b_ + x.b_ * y.a_,
                   x.c_ * y.c_, d);
}

std::optional<Quadratic> Quadratic::try_div(const Quadratic& x, const Quadratic& y) {
  if (y.is_zero()) throw input_error("division of quadratic by zero");
  if (!compatible(x, y)) return std::nullopt;
  return try_mul(x, y.recip());
}

Quadratic Quadratic::recip() const {
  if (is_zero()) throw input_error("reciprocal of zero");
  const Int norm = a_ * a_ - b_ * b_ * d_;
  if (sgn(norm) == 0) throw internal_error("quadratic with zero norm");
  return Quadratic(c_ * a_, -c_ * b_, norm, d_);
}

Quadratic operator+(const Quadratic& x, const Quadratic& y) {
  auto r = Quadratic::try_add(x, y);
  if (!r) throw internal_error("adding quadratics from different fields");
  return *r;
}

Quadratic operator-(const Quadratic& x, const Quadratic& y) { return x + (-y); }

Quadratic operator*(const Quadratic& x, const Quadratic& y) {
  auto r = Quadratic::try_mul(x, y);
  if (!r) throw internal_error("multiplying quadratics from different fields");
  return *r;
}

Quadratic operator/(const Quadratic& x, const Quadratic& y) {
  auto r = Quadratic::try_div(x, y);
  if (!r) throw internal_error("dividing quadratics from different fields");
  return *r;
}

bool Quadratic::equals_value(const Quadratic& o) const {
  if (is_rational() != o.is_rational()) return false;
  if (is_rational()) return as_rational() == o.as_rational();
  if (sgn(b_) != sgn(o.b_)) return false;
  // a/c + sgn(b) sqrt(b^2 d)/c against the same split of o; 1 and sqrt(m)
  // are linearly independent over Q, so the parts must match separately.
  Rat r1(a_, c_), r2(o.a_, o.c_);
  r1.canonicalize();
  r2.canonicalize();
  if (r1 != r2) return false;
  Rat s1(b_ * b_ * d_, c_ * c_), s2(o.b_ * o.b_ * o.d_, o.c_ * o.c_);
  s1.canonicalize();
  s2.canonicalize();
  return s1 == s2;
}

std::string Quadratic::str() const {
  if (is_rational()) return dec(as_rational());
  return "(" + dec(a_) + "+" + dec(b_) + "*sqrt(" + dec(d_) + "))/" + dec(c_);
}

}  // namespace fproots

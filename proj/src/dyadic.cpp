// Copyright 2026 the fproots authors
// SPDX-License-Identifier: Apache-2.0

#include "fproots/dyadic.hpp"

namespace fproots {

void Dyadic::normalize() {
  if (sgn(mant_) == 0) {
    exp_ = 0;
    return;
  }
  const auto low = mpz_scan1(mant_.get_mpz_t(), 0);
  if (low > 0) {
    mpz_fdiv_q_2exp(mant_.get_mpz_t(), mant_.get_mpz_t(), low);
    exp_ += static_cast<long>(low);
  }
}

Dyadic Dyadic::from_rat(const Rat& q, long abs_prec, Round dir) {
  if (abs_prec < 0) abs_prec = 0;
  Int num = q.get_num();
  mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), abs_prec);
  Int m;
  if (dir == Round::Down) {
    mpz_fdiv_q(m.get_mpz_t(), num.get_mpz_t(), q.get_den().get_mpz_t());
  } else {
    mpz_cdiv_q(m.get_mpz_t(), num.get_mpz_t(), q.get_den().get_mpz_t());
  }
  return Dyadic(std::move(m), -abs_prec);
}

Int Dyadic::floor() const {
  Int r;
  if (exp_ >= 0) {
    mpz_mul_2exp(r.get_mpz_t(), mant_.get_mpz_t(), exp_);
  } else {
    mpz_fdiv_q_2exp(r.get_mpz_t(), mant_.get_mpz_t(), -exp_);
  }
  return r;
}

Int Dyadic::ceil() const {
  Int r;
  if (exp_ >= 0) {
    mpz_mul_2exp(r.get_mpz_t(), mant_.get_mpz_t(), exp_);
  } else {
    mpz_cdiv_q_2exp(r.get_mpz_t(), mant_.get_mpz_t(), -exp_);
  }
  return r;
}

Rat Dyadic::to_rat() const {
  Rat r(mant_);
  if (exp_ >= 0) {
    mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), exp_);
  } else {
    mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), -exp_);
  }
  return r;
}

Dyadic Dyadic::round(long rel_prec, Round dir) const {
  if (rel_prec < 1) rel_prec = 1;
  const long bits = bit_length(mant_);
  if (bits <= rel_prec) return *this;
  const long s = bits - rel_prec;
  Int m;
  if (dir == Round::Down) {
    mpz_fdiv_q_2exp(m.get_mpz_t(), mant_.get_mpz_t(), s);
  } else {
    mpz_cdiv_q_2exp(m.get_mpz_t(), mant_.get_mpz_t(), s);
  }
  return Dyadic(std::move(m), exp_ + s);
}

Dyadic Dyadic::div(const Dyadic& a, const Dyadic& b, long rel_prec, Round dir) {
  if (b.is_zero()) throw internal_error("Dyadic::div by zero");
  if (a.is_zero()) return Dyadic();
  if (rel_prec < 1) rel_prec = 1;
  const long shift = rel_prec + 2 - (bit_length(a.mant_) - bit_length(b.mant_));
  Int num = a.mant_, den = b.mant_;
  if (shift >= 0) {
    mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), shift);
  } else {
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), -shift);
  }
  Int q;
  if (dir == Round::Down) {
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  } else {
    mpz_cdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  }
  return Dyadic(std::move(q), a.exp_ - b.exp_ - shift);
}

int Dyadic::cmp(const Dyadic& a, const Dyadic& b) {
  const int sa = a.sign(), sb = b.sign();
  if (sa != sb) return sa < sb ? -1 : 1;
  if (sa == 0) return 0;
  if (a.exp_ == b.exp_) return ::cmp(a.mant_, b.mant_);
  Int t;
  const long d = a.exp_ - b.exp_;
  if (d > 0) {
    mpz_mul_2exp(t.get_mpz_t(), a.mant_.get_mpz_t(), d);
    return ::cmp(t, b.mant_);
  }
  mpz_mul_2exp(t.get_mpz_t(), b.mant_.get_mpz_t(), -d);
  return ::cmp(a.mant_, t);
}

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const long e = std::min(a.exp_, b.exp_);
  Int ma = a.mant_, mb = b.mant_;
  if (a.exp_ > e) mpz_mul_2exp(ma.get_mpz_t(), ma.get_mpz_t(), a.exp_ - e);
  if (b.exp_ > e) mpz_mul_2exp(mb.get_mpz_t(), mb.get_mpz_t(), b.exp_ - e);
  return Dyadic(ma + mb, e);
}

Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }

Dyadic operator*(const Dyadic& a, const Dyadic& b) {
  return Dyadic(a.mant_ * b.mant_, a.exp_ + b.exp_);
}

std::string Dyadic::str() const {
  return mant_.get_str(10) + "*2^" + std::to_string(exp_);
}

}  // namespace fproots

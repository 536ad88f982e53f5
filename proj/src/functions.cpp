// Copyright 2026 the fproots authors
// SPDX-License-Identifier: Apache-2.0

#include "fproots/functions.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace fproots {

namespace {

// Largest M with |y| < 2^M over the ball, or LONG_MIN/2 for [0,0].
long ball_mag_upper(const Ball& x) {
  if (x.lo().is_zero() && x.hi().is_zero()) return LONG_MIN / 2;
  long m = LONG_MIN / 2;
  if (!x.lo().is_zero()) m = std::max(m, x.lo().mag_upper());
  if (!x.hi().is_zero()) m = std::max(m, x.hi().mag_upper());
  return m;
}

Dyadic ball_abs_upper(const Ball& x) {
  return std::max(x.lo().abs(), x.hi().abs());
}

}  // namespace

Ball atanh_rat_ball(const Rat& u, long prec) {
  if (abs(u) > Rat(1, 3)) throw internal_error("atanh_rat_ball: |u| > 1/3");
  if (sgn(u) == 0) return Ball();
  for (long w = prec + 20 + bit_length(Int(prec)); ; w *= 2) {
    const Ball U = Ball::from_rat(u, w);
    const Ball U2 = Ball::mul(U, U, w);
    Ball sum = U;
    Ball pw = U;
    unsigned long j = 0;
    while (true) {
      const Ball pnext = Ball::mul(pw, U2, w);
      // Remaining tail is below |u|^(2j+3) * (9/8)/(2j+3) <= |pnext|.
      const Dyadic tb = ball_abs_upper(pnext);
      if (tb <= Dyadic(Int(1), -(w + 2))) {
        sum = Ball::add(sum, Ball(-tb, tb), w);
        break;
      }
      ++j;
      pw = pnext;
      const Ball term = Ball::div_uint(pw, 2 * j + 1, w);
      sum = Ball::add(sum, term, w);
    }
    if (sum.width_leq_2exp(prec)) return sum;
  }
}

Ball log2_ball(long prec) {
  static std::mutex mu;
  static std::map<long, Ball> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(prec);
    if (it != cache.end()) return it->second;
  }
  Ball r = Ball::mul_2exp(atanh_rat_ball(Rat(1, 3), prec + 1), 1);
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(prec, r);
  return r;
}

Ball log_rat_ball(const Rat& q, long prec) {
  if (sgn(q) <= 0) throw input_error("log of non-positive rational");
  if (q == 1) return Ball();
  // Write q = m * 2^e with m in [3/4, 3/2).
  long e = bit_length(q.get_num()) - bit_length(q.get_den());
  Rat m = q;
  if (e >= 0) {
    mpq_div_2exp(m.get_mpq_t(), m.get_mpq_t(), e);
  } else {
    mpq_mul_2exp(m.get_mpq_t(), m.get_mpq_t(), -e);
  }
  if (m < Rat(3, 4)) {
    mpq_mul_2exp(m.get_mpq_t(), m.get_mpq_t(), 1);
    e -= 1;
  }
  const Rat u = (m - 1) / (m + 1);  // in [-1/7, 1/5]
  const long ebits = e == 0 ? 0 : bit_length(Int(e < 0 ? -e : e));
  for (long extra = 8; ; extra *= 2) {
    const long w = prec + extra + ebits;
    Ball r = Ball::mul_2exp(atanh_rat_ball(u, w), 1);
    if (e != 0) r = Ball::add(r, Ball::mul_int(log2_ball(w), Int(e), w), w);
    if (r.width_leq_2exp(prec)) return r;
  }
}

Ball log_ball(const Ball& x, long prec) {
  if (x.lo().sign() <= 0) throw input_error("log of non-positive interval");
  const Ball lo = log_rat_ball(x.lo().to_rat(), prec + 1);
  const Ball hi = log_rat_ball(x.hi().to_rat(), prec + 1);
  return Ball(lo.lo(), hi.hi());
}

Ball expm1_ball(const Ball& x, long prec) {
  if (x.lo().is_zero() && x.hi().is_zero()) return Ball();
  const long mag = ball_mag_upper(x);
  if (mag > 26) throw input_error("expm1 argument magnitude too large");
  const long k = std::max(0L, mag + 2);  // |x| * 2^-k <= 1/4
  // Un-reduction amplifies absolute error by at most e^|x| < 2^(1.45*2^mag).
  long amp = 2;
  if (mag >= 0) amp = (long)(1.45 * (double)(1L << mag)) + 4;
  const long w = prec + k + amp + 24 + bit_length(Int(prec));
  const Ball r = Ball::mul_2exp(x, -k);
  Ball sum = r;
  Ball term = r;
  for (unsigned long j = 2;; ++j) {
    term = Ball::div_uint(Ball::mul(term, r, w), j, w);
    sum = Ball::add(sum, term, w);
    const Dyadic tb = ball_abs_upper(term);
    if (tb <= Dyadic(Int(1), -(w + 2))) {
      // Tail of the series is below |term|/3.
      sum = Ball::add(sum, Ball(-tb, tb), w);
      break;
    }
  }
  for (long i = 0; i < k; ++i) {
    // (1+y)^2 - 1 = y^2 + 2y
    sum = Ball::add(Ball::mul(sum, sum, w), Ball::mul_2exp(sum, 1), w);
  }
  return sum;
}

Ball exp_ball(const Ball& x, long prec) {
  const Ball m = expm1_ball(x, prec);
  const Dyadic one(1);
  return Ball(m.lo() + one, m.hi() + one);
}

Ball sqrt_rat_ball(const Rat& r, long prec) {
  if (sgn(r) < 0) throw input_error("sqrt of negative rational");
  if (sgn(r) == 0) return Ball();
  const long k = prec + 2;
  Int n = r.get_num() * r.get_den();
  mpz_mul_2exp(n.get_mpz_t(), n.get_mpz_t(), 2 * static_cast<unsigned long>(k));
  const Int t = isqrt(n);
  Int den = r.get_den();
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), k);
  if (t * t == n) {
    return Ball::from_rat_pair(Rat(t, den), Rat(t, den), prec + 2);
  }
  return Ball::from_rat_pair(Rat(t, den), Rat(t + 1, den), prec + 2);
}

}  // namespace fproots

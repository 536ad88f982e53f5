// Copyright 2026 the fproots authors
// SPDX-License-Identifier: Apache-2.0

#include "fproots/realspec.hpp"

#include "fproots/contfrac.hpp"
#include "fproots/functions.hpp"

namespace fproots {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

void RealSpec::validate() const {
  std::visit(
      overloaded{
          [](const Rational&) {},
          [](const SqrtRational& s) {
            if (sgn(s.r) < 0) throw input_error("sqrt of negative rational");
          },
          [](const QuadIrr&) {},
          [](const LogOfRational& l) {
            if (l.theta <= 1) throw input_error("log spec requires theta > 1");
          },
          [](const RecipLogTheta& r) {
            if (r.theta <= 1) throw input_error("recip-log spec requires theta > 1");
            if (r.mult != 1 && r.mult != 2)
              throw input_error("recip-log multiplier must be 1 or 2");
          },
          [](const TwoOverCF& t) { t.cf.validate(); },
      },
      v_);
}

Real RealSpec::to_real() const {
  std::lock_guard<std::mutex> lock(cache_->mu);
  if (!cache_->real) cache_->real = build_real();
  return *cache_->real;
}

Real RealSpec::build_real() const {
  return std::visit(
      overloaded{
          [](const Rational& r) { return Real(r.v); },
          [](const SqrtRational& s) { return Real(Quadratic::sqrt_of(s.r)); },
          [](const QuadIrr& q) { return Real(q.q); },
          [](const LogOfRational& l) {
            const Rat theta = l.theta;
            return Real::from_fn([theta](long p) { return log_rat_ball(theta, p); });
          },
          [](const RecipLogTheta& r) {
            const Rat theta = r.theta;
            Real lg = Real::from_fn([theta](long p) { return log_rat_ball(theta, p); });
            return Real(r.mult) / lg;
          },
          [](const TwoOverCF& t) {
            if (t.cf.periodic()) return Real(cf_periodic_value(t.cf));
            // Finite truncation of an unknown infinite expansion: the value
            // is pinned down only to the interval between the last two
            // convergent-style endpoints.
            std::vector<Int> lo_terms = t.cf.head;
            std::vector<Int> hi_terms = t.cf.head;
            hi_terms.back() += 1;
            Rat v1 = cf_finite_value(lo_terms);
            Rat v2 = cf_finite_value(hi_terms);
            if (v1 > v2) std::swap(v1, v2);
            const Rat width = v2 - v1;
            return Real::from_fn([v1, v2, width](long p) -> Ball {
              Rat lim(1);
              mpq_div_2exp(lim.get_mpq_t(), lim.get_mpq_t(), p + 1);
              if (width > lim) throw precision_limit(p);
              return Ball::from_rat_pair(v1, v2, p + 2);
            });
          },
      },
      v_);
}

bool RealSpec::provably_irrational() const {
  return std::visit(
      overloaded{
          [](const Rational&) { return false; },
          [](const SqrtRational& s) {
            return !Quadratic::sqrt_of(s.r).is_rational();
          },
          [](const QuadIrr& q) { return !q.q.is_rational(); },
          [](const LogOfRational&) { return true; },   // Lindemann
          [](const RecipLogTheta&) { return true; },
          [](const TwoOverCF& t) { return t.cf.periodic(); },
      },
      v_);
}

std::string RealSpec::str() const {
  return std::visit(
      overloaded{
          [](const Rational& r) { return "rat:" + dec(r.v); },
          [](const SqrtRational& s) { return "sqrt:" + dec(s.r); },
          [](const QuadIrr& q) { return "quad:" + q.q.str(); },
          [](const LogOfRational& l) { return "log(rational:" + dec(l.theta) + ")"; },
          [](const RecipLogTheta& r) {
            return std::to_string(r.mult) + "/log(rational:" + dec(r.theta) + ")";
          },
          [](const TwoOverCF& t) { return "cf:" + t.cf.str(); },
      },
      v_);
}

Ball eval(const RealSpec& x, long prec) {
  if (prec < 2) throw input_error("eval precision must be at least 2 bits");
  return x.to_real().enclose(prec);
}

}  // namespace fproots

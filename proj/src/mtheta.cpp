// Copyright 2026 the fproots authors
// SPDX-License-Identifier: Apache-2.0

#include "fproots/mtheta.hpp"

#include "fproots/functions.hpp"

namespace fproots {

struct ThetaSpec::Data {
  Kind kind;
  Rat theta;        // RationalTheta
  Rat exponent;     // ExpRational
  Quadratic w;      // ExpQuadratic
  CFInput ell;      // FromCF

  Real log_theta;
  Real recip_log;
  Real two_over_log;
  Real theta_value;

  std::mutex mu;  // guards the expansion caches
  std::optional<CFExpansion> cf_two;
  std::optional<CFExpansion> cf_one;
};

namespace {

Real build_log_theta(const ThetaSpec::Data& d) {
  switch (d.kind) {
    case ThetaSpec::Kind::RationalTheta: {
      const Rat theta = d.theta;
      return Real::from_fn([theta](long p) { return log_rat_ball(theta, p); });
    }
    case ThetaSpec::Kind::ExpRational:
      return Real(d.exponent);
    case ThetaSpec::Kind::ExpQuadratic:
      return Real(d.w);
    case ThetaSpec::Kind::FromCF: {
      if (d.ell.periodic()) {
        return Real(Quadratic(Int(2)) / cf_periodic_value(d.ell));
      }
      return Real(2) / RealSpec::cf_value(d.ell).to_real();
    }
  }
  throw internal_error("unreachable theta kind");
}

}  // namespace

ThetaSpec ThetaSpec::rational(Rat theta) {
  theta.canonicalize();
  if (theta <= 1) throw input_error("rational theta must exceed 1");
  ThetaSpec t;
  t.d_ = std::make_shared<Data>();
  t.d_->kind = Kind::RationalTheta;
  t.d_->theta = std::move(theta);
  t.d_->log_theta = build_log_theta(*t.d_);
  t.d_->recip_log = Real(1) / t.d_->log_theta;
  t.d_->two_over_log = Real(2) / t.d_->log_theta;
  t.d_->theta_value = Real(t.d_->theta);
  return t;
}

ThetaSpec ThetaSpec::exp_rational(Rat exponent) {
  exponent.canonicalize();
  if (sgn(exponent) <= 0) throw input_error("exp-rational exponent must be positive");
  ThetaSpec t;
  t.d_ = std::make_shared<Data>();
  t.d_->kind = Kind::ExpRational;
  t.d_->exponent = std::move(exponent);
  t.d_->log_theta = build_log_theta(*t.d_);
  t.d_->recip_log = Real(1) / t.d_->log_theta;
  t.d_->two_over_log = Real(2) / t.d_->log_theta;
  t.d_->theta_value = real_exp(t.d_->log_theta);
  return t;
}

ThetaSpec ThetaSpec::exp_quadratic(Quadratic w) {
  if (w.is_rational())
    throw input_error("exp-quadratic needs an irrational exponent; use exp-rational");
  if (w.sign() <= 0) throw input_error("exp-quadratic exponent must be positive");
  ThetaSpec t;
  t.d_ = std::make_shared<Data>();
  t.d_->kind = Kind::ExpQuadratic;
  t.d_->w = std::move(w);
  t.d_->log_theta = build_log_theta(*t.d_);
  t.d_->recip_log = Real(1) / t.d_->log_theta;
  t.d_->two_over_log = Real(2) / t.d_->log_theta;
  t.d_->theta_value = real_exp(t.d_->log_theta);
  return t;
}

ThetaSpec ThetaSpec::from_cf(CFInput ell) {
  ell.validate();
  if (ell.head.empty() ? false : sgn(ell.head[0]) < 0)
    throw input_error("from-cf value must be positive (a0 >= 0)");
  ThetaSpec t;
  t.d_ = std::make_shared<Data>();
  t.d_->kind = Kind::FromCF;
  t.d_->ell = std::move(ell);
  t.d_->log_theta = build_log_theta(*t.d_);
  t.d_->recip_log = Real(1) / t.d_->log_theta;
  t.d_->two_over_log = Real(2) / t.d_->log_theta;
  t.d_->theta_value = real_exp(t.d_->log_theta);
  return t;
}

ThetaSpec::Kind ThetaSpec::kind() const { return d_->kind; }
bool ThetaSpec::log_is_rational() const { return d_->kind == Kind::ExpRational; }

Rat ThetaSpec::log_rational() const {
  if (!log_is_rational()) throw internal_error("log_rational on irrational log");
  return d_->exponent;
}

std::optional<Quadratic> ThetaSpec::log_exact() const {
  switch (d_->kind) {
    case Kind::ExpRational:
      return Quadratic(d_->exponent);
    case Kind::ExpQuadratic:
      return d_->w;
    case Kind::FromCF:
      if (d_->ell.periodic())
        return Quadratic(Int(2)) / cf_periodic_value(d_->ell);
      return std::nullopt;
    case Kind::RationalTheta:
      return std::nullopt;
  }
  return std::nullopt;
}

const Real& ThetaSpec::log_theta() const { return d_->log_theta; }
const Real& ThetaSpec::recip_log() const { return d_->recip_log; }
const Real& ThetaSpec::two_over_log() const { return d_->two_over_log; }
const Real& ThetaSpec::theta_value() const { return d_->theta_value; }

Real ThetaSpec::fresh_log_theta() const { return build_log_theta(*d_); }

const Rat& ThetaSpec::rational_theta() const { return d_->theta; }
const Rat& ThetaSpec::exponent() const { return d_->exponent; }
const Quadratic& ThetaSpec::quadratic_log() const { return d_->w; }
const CFInput& ThetaSpec::ell_cf() const { return d_->ell; }

namespace {

// Extend a truncated expansion until some odd-index continuant exceeds the
// limit, with `margin` extra certified terms beyond it.
CFExpansion grow_truncation(const Real& value, const Int& limit, long margin,
                            const RefinePolicy& policy) {
  long K = 32;
  while (true) {
    CFExpansion e = cf_of_real(value, K, policy);
    const long cu = e.certified_upto();
    long past = -1;
    for (long k = 1; k <= cu; k += 2) {
      if (e.convergent(k).B > limit) {
        past = k;
        break;
      }
    }
    if (past >= 0 && cu >= past + margin) return e;
    if (cu < K) return e;  // source information exhausted
    K *= 2;
  }
}

CFExpansion expansion_for(ThetaSpec::Data& d, bool two_over, const Int& limit,
                          long margin, const RefinePolicy& policy,
                          const Real& value) {
  std::lock_guard<std::mutex> lock(d.mu);
  auto& slot = two_over ? d.cf_two : d.cf_one;
  if (slot && slot->periodic()) return *slot;
  if (slot && !slot->periodic()) {
    const long cu = slot->certified_upto();
    long past = -1;
    for (long k = 1; k <= cu; k += 2) {
      if (slot->convergent(k).B > limit) {
        past = k;
        break;
      }
    }
    if (past >= 0 && cu >= past + margin) return *slot;
  }
  // (Re)build.
  if (d.kind == ThetaSpec::Kind::ExpQuadratic) {
    Quadratic target = Quadratic(Int(two_over ? 2 : 1)) / d.w;
    slot = cf_of_quadratic(target);
  } else if (d.kind == ThetaSpec::Kind::FromCF && d.ell.periodic()) {
    if (two_over) {
      slot = CFExpansion::exact_periodic(d.ell, cf_periodic_value(d.ell));
    } else {
      slot = cf_of_quadratic(cf_periodic_value(d.ell) / Quadratic(Int(2)));
    }
  } else if (d.kind == ThetaSpec::Kind::FromCF) {
    if (two_over) {
      std::vector<Int> terms = d.ell.head;
      slot = CFExpansion::certified_truncation(std::move(terms),
                                               RealSpec::cf_value(d.ell).to_real());
    } else {
      slot = grow_truncation(value, limit, margin, policy);
    }
  } else {
    slot = grow_truncation(value, limit, margin, policy);
  }
  return *slot;
}

}  // namespace

CFExpansion ThetaSpec::cf_two_over_log(const Int& continuant_limit, long margin,
                                       const RefinePolicy& policy) const {
  if (log_is_rational())
    throw input_error("2/log(theta) is rational; no infinite expansion exists");
  return expansion_for(*d_, true, continuant_limit, margin, policy, d_->two_over_log);
}

CFExpansion ThetaSpec::cf_recip_log(const Int& continuant_limit, long margin,
                                    const RefinePolicy& policy) const {
  if (log_is_rational())
    throw input_error("1/log(theta) is rational; no infinite expansion exists");
  return expansion_for(*d_, false, continuant_limit, margin, policy, d_->recip_log);
}

std::string ThetaSpec::str() const {
  switch (d_->kind) {
    case Kind::RationalTheta:
      return "rational:" + dec(d_->theta);
    case Kind::ExpRational:
      return "exp-rational:" + dec(d_->exponent);
    case Kind::ExpQuadratic: {
      const Quadratic& w = d_->w;
      return "exp-quadratic:(" + dec(w.a()) + "+" + dec(w.b()) + "*sqrt(" +
             dec(w.d()) + "))/" + dec(w.c());
    }
    case Kind::FromCF:
      return "from-cf:" + d_->ell.str();
  }
  throw internal_error("unreachable theta kind");
}

Real f_real(const Real& t) {
  return real_expm1(t).recip() - t.recip() + Real(Rat(1, 2));
}

Ball f_eval(const Real& t, long prec) { return f_real(t).enclose(prec); }

Ball f_eval(const RealSpec& t, long prec) {
  const Real tr = t.to_real();
  if (tr.is_exact() && tr.exact()->sign() <= 0)
    throw input_error("f(t) requires t > 0");
  return f_eval(tr, prec);
}

namespace {

// 1/(theta^(1/n) - 1) as an exact quadratic-field value when one exists.
// These are exactly the cases where the window test can sit on its closed
// boundary ({n/log theta} = 1/2 - f happens iff this value is an integer),
// so membership decisions route through here first.
std::optional<Quadratic> exact_mprime_value(const ThetaSpec& theta, const Int& n);

// theta^(1/k) as an exact quadratic-field value when one exists:
// k = 1 always, k = 2 always (sqrt), k >= 3 only for perfect k-th powers.
std::optional<Quadratic> exact_root(const Rat& theta, unsigned long k) {
  if (k == 1) return Quadratic(theta);
  if (k == 2) return Quadratic::sqrt_of(theta);
  Int num = theta.get_num(), den = theta.get_den();
  Int rn, rd;
  if (mpz_root(rn.get_mpz_t(), num.get_mpz_t(), k) != 0 &&
      mpz_root(rd.get_mpz_t(), den.get_mpz_t(), k) != 0) {
    Rat r(rn, rd);
    r.canonicalize();
    return Quadratic(r);
  }
  return std::nullopt;
}

std::optional<Quadratic> exact_mprime_value(const ThetaSpec& theta, const Int& n) {
  if (theta.kind() != ThetaSpec::Kind::RationalTheta) return std::nullopt;
  const Int an = abs(n);
  if (!mpz_fits_ulong_p(an.get_mpz_t())) return std::nullopt;
  auto root = exact_root(theta.rational_theta(), mpz_get_ui(an.get_mpz_t()));
  if (!root) return std::nullopt;
  Quadratic y = sgn(n) > 0 ? *root : root->recip();
  return (y - Quadratic(Int(1))).recip();
}

FloorDecision floor_of_quadratic(const Quadratic& q) {
  if (q.is_rational()) {
    const Rat r = q.as_rational();
    Int f = floor_rat(r);
    if (r.get_den() == 1) return FloorDecision::exact_integer(std::move(f), 0);
    return FloorDecision::decided_at(std::move(f), 0, q.enclose(64));
  }
  return FloorDecision::decided_at(q.floor(), 0, q.enclose(64));
}

}  // namespace

FloorDecision m_prime(const ThetaSpec& theta, const Int& n,
                      const RefinePolicy& policy) {
  if (sgn(n) == 0) throw input_error("M' is undefined at n = 0");
  if (auto v = exact_mprime_value(theta, n)) return floor_of_quadratic(*v);
  const Real t = theta.log_theta() / Real(n);
  return floor_certified(real_expm1(t).recip(), policy);
}

FloorDecision m_theta(const ThetaSpec& theta, const Int& n,
                      const RefinePolicy& policy) {
  if (n < 1) throw input_error("M requires n >= 1");
  // Exact root path first: it also detects the {theta^(1/n)} = 0 domain error.
  if (theta.kind() == ThetaSpec::Kind::RationalTheta &&
      mpz_fits_ulong_p(n.get_mpz_t())) {
    if (auto root = exact_root(theta.rational_theta(), mpz_get_ui(n.get_mpz_t()))) {
      const Quadratic& y = *root;
      Quadratic fr = y.frac();
      if (fr.is_zero())
        throw input_error("theta is an exact integer n-th power: {theta^(1/n)} = 0");
      return floor_of_quadratic(fr.recip());
    }
  }
  bool below;  // theta < 2^n, i.e. n > log2(theta)
  if (theta.kind() == ThetaSpec::Kind::RationalTheta) {
    // theta = u/v < 2^bits(u) <= 2^n once n reaches bit_length(u).
    if (n >= bit_length(theta.rational_theta().get_num())) {
      below = true;
    } else {
      Rat p2(pow2(mpz_get_ui(n.get_mpz_t())));
      below = theta.rational_theta() < p2;
      if (!below && theta.rational_theta() == p2)
        throw input_error("theta is an exact integer n-th power: {theta^(1/n)} = 0");
    }
  } else {
    Real rhs = Real::from_fn([n](long p) {
      return Ball::mul_int(log2_ball(p + bit_length(n) + 2), n, p + bit_length(n) + 4);
    });
    Tri r = certified_less(theta.log_theta(), rhs, policy);
    if (r == Tri::Undecided) return FloorDecision::undecided(policy.cap_bits);
    below = (r == Tri::True);
  }
  if (below) return m_prime(theta, n, policy);
  // n <= log2(theta): theta^(1/n) >= 2, take the fractional part head-on.
  const Real y = real_exp(theta.log_theta() / Real(n));
  FloorDecision fd = floor_certified(y, policy);
  if (!fd.decided()) return fd;
  const Real fr = y - Real(fd.value);
  return floor_certified(fr.recip(), policy);
}

FloorDecision typical_value(const ThetaSpec& theta, const Int& n,
                            const RefinePolicy& policy) {
  if (n < 1) throw input_error("typical value requires n >= 1");
  if (theta.log_is_rational()) {
    const Rat pq = theta.log_rational();
    Rat v = Rat(n) / pq - Rat(1, 2);
    v.canonicalize();
    Int f = floor_rat(v);
    if (v.get_den() == 1) return FloorDecision::exact_integer(std::move(f), 0);
    return FloorDecision::decided_at(std::move(f), 0, Ball::from_rat(v, 64));
  }
  if (auto w = theta.log_exact()) {
    Quadratic v = Quadratic(Int(n)) / *w - Quadratic(Rat(1, 2));
    return floor_of_quadratic(v);
  }
  return floor_certified(Real(n) * theta.recip_log() - Real(Rat(1, 2)), policy);
}

namespace {

struct WindowOutcome {
  std::optional<bool> atypical;
  MembershipResult::Via via = MembershipResult::Via::FirstEquiv;
  std::optional<Ball> frac_ball;
  std::optional<Quadratic> frac_exact;
  std::optional<Ball> f_ball;
};

// One pass of the membership test at fixed precision p. With `fresh`, all
// transcendental state is rebuilt from the symbolic spec so the produced
// balls are a pure function of (theta, n, p).
//
// When 1/(theta^(1/n) - 1) has an exact form, the decision runs on the
// definition directly: those are exactly the inputs that can sit on the
// closed edge of the window [1/2 - f, 1/2), where interval refinement of
// the window itself would never terminate (theta = 2, n = 1 does this).
WindowOutcome first_equiv_at(const ThetaSpec& theta, const Int& n, long p,
                             bool fresh) {
  WindowOutcome out;
  const Rat half(1, 2);
  if (auto v = exact_mprime_value(theta, n)) {
    const Int mp = v->floor();
    Real rl = fresh ? Real(1) / theta.fresh_log_theta() : theta.recip_log();
    const Real tvx = Real(n) * rl - Real(half);
    Ball btv;
    try {
      btv = tvx.enclose(p);
    } catch (const precision_limit&) {
      return out;
    }
    out.frac_ball = btv;  // witness: enclosure of n/log theta - 1/2
    const Int fl = btv.floor_lo();
    if (fl != btv.floor_hi() || !(btv.lo() > Dyadic(fl, 0))) return out;
    out.atypical = (mp != fl);
    out.via = MembershipResult::Via::ExactPath;
    return out;
  }
  if (auto w = theta.log_exact()) {
    // Exact route: {n/log theta} is a quadratic-field value.
    const Quadratic x = Quadratic(Int(n)) / *w;
    const Quadratic F = x.frac();
    out.frac_exact = F;
    if (F.cmp(half) >= 0) {
      out.atypical = false;
      out.via = MembershipResult::Via::ExactPath;
      return out;
    }
    const Quadratic gap = Quadratic(half) - F;  // distance below 1/2, > 0
    const Real t = Real(*w) / Real(n);
    const Ball fb = f_eval(t, p);
    out.f_ball = fb;
    if (gap.cmp(fb.hi().to_rat()) > 0) {
      out.atypical = false;
    } else if (gap.cmp(fb.lo().to_rat()) < 0) {
      out.atypical = true;
    }
    return out;
  }
  // Ball route, composed flat from one enclosure of log(theta) so that
  // sources pinned down by finitely many partial quotients degrade
  // gracefully: the comparison decides whenever the available width
  // separates, not only when a hard width contract is met.
  const Real lgr = fresh ? theta.fresh_log_theta() : theta.log_theta();
  const long q = p + bit_length(n) + 8;
  Ball lb;
  try {
    lb = enclose_best_effort(lgr, q);
  } catch (const precision_limit&) {
    return out;
  }
  const long w = q + 8;
  const auto xo = Ball::div(Ball::point_int(n), lb, w);
  if (!xo) return out;
  const Ball bx = *xo;
  const Int fl = bx.floor_lo();
  if (fl != bx.floor_hi()) return out;
  const Ball F = Ball::sub(bx, Ball::point_int(fl), w);
  out.frac_ball = F;
  if (F.lo().to_rat() >= half) {
    out.atypical = false;
    out.via = MembershipResult::Via::ExactPath;
    return out;
  }
  if (!(F.hi().to_rat() < half)) return out;  // straddles 1/2
  // f(log theta / n) = 1/(e^t - 1) - 1/t + 1/2 over the same enclosure.
  const auto tb = Ball::div(lb, Ball::point_int(n), w);
  if (!tb) return out;
  const Ball em = expm1_ball(*tb, p + 8);
  const auto r1 = Ball::recip(em, w);
  const auto r2 = Ball::recip(*tb, w);
  if (!r1 || !r2) return out;
  const Ball fb = Ball::add(Ball::sub(*r1, *r2, w), Ball::from_rat(half, w), w);
  out.f_ball = fb;
  const Ball gap = Ball::sub(Ball::from_rat(half, w), F, w);
  const int c = Ball::cmp_strict(gap, fb);
  if (c < 0) out.atypical = true;
  if (c > 0) out.atypical = false;
  return out;
}

// SecondEquiv: {2n/log theta} >= 1 - 2 f(log theta/n)  AND
//              {n/log theta}  <  1 - f(log theta/n).
Tri second_equiv(const ThetaSpec& theta, const Int& n, const RefinePolicy& policy) {
  if (auto v = exact_mprime_value(theta, n)) {
    // With v = n/log theta - 1/2 + f exact, an integral v puts {2n/log theta}
    // exactly at 1 - 2f (condition one holds with equality) and {n/log theta}
    // at 1/2 - f < 1 - f, so both conditions hold. Non-integral exact v keeps
    // the windows away from their edges and the interval route decides.
    if (v->is_rational() && v->as_rational().get_den() == 1) return Tri::True;
  }
  const Real f = f_real(theta.log_theta() / Real(n));
  const Real one(1);
  const Int n2 = 2 * n;
  Tri c1;
  if (auto w = theta.log_exact()) {
    const Quadratic F2 = (Quadratic(n2) / *w).frac();
    c1 = tri_not(certified_less(Real(F2), one - Real(Rat(2)) * f, policy));
  } else {
    c1 = frac_compare(Real(n2) * theta.recip_log(), one - Real(Rat(2)) * f,
                      false, policy);
  }
  if (c1 != Tri::True) return c1;  // False or Undecided propagates
  Tri c2;
  if (auto w = theta.log_exact()) {
    const Quadratic F1 = (Quadratic(Int(n)) / *w).frac();
    c2 = certified_less(Real(F1), one - f, policy);
  } else {
    c2 = frac_compare(Real(n) * theta.recip_log(), one - f, true, policy);
  }
  return c2;
}

}  // namespace

MembershipResult decide_membership_at(const ThetaSpec& theta, const Int& n, long p) {
  MembershipResult r;
  r.n = n;
  const WindowOutcome w = first_equiv_at(theta, n, p, /*fresh=*/true);
  r.frac_ball = w.frac_ball;
  r.frac_exact = w.frac_exact;
  r.f_ball = w.f_ball;
  r.precision_bits = p;
  if (w.atypical) {
    r.status = MembershipResult::Status::Decided;
    r.atypical = *w.atypical;
    r.via = w.via;
  }
  return r;
}

MembershipResult is_atypical(const ThetaSpec& theta, const Int& n,
                             const RefinePolicy& policy, bool paranoid) {
  if (n < 1) throw input_error("atypicality is defined for n >= 1");
  MembershipResult r;
  r.n = n;
  long p = std::max(policy.start_bits, bit_length(n) + 40);
  while (true) {
    const WindowOutcome w = first_equiv_at(theta, n, p, /*fresh=*/false);
    if (w.atypical) {
      r.status = MembershipResult::Status::Decided;
      r.atypical = *w.atypical;
      r.via = w.via;
      r.precision_bits = p;
      r.frac_ball = w.frac_ball;
      r.frac_exact = w.frac_exact;
      r.f_ball = w.f_ball;
      break;
    }
    if (p >= policy.cap_bits) {
      r.status = MembershipResult::Status::Undecided;
      r.precision_bits = policy.cap_bits;
      r.frac_ball = w.frac_ball;
      r.frac_exact = w.frac_exact;
      r.f_ball = w.f_ball;
      return r;
    }
    p = policy.next(p);
  }
  if (paranoid) {
    const Tri se = second_equiv(theta, n, policy);
    const FloorDecision mp = m_prime(theta, n, policy);
    const FloorDecision tv = typical_value(theta, n, policy);
    if (se == Tri::Undecided || !mp.decided() || !tv.decided())
      throw internal_error("paranoid cross-check undecided for n=" + dec(n));
    const bool direct = mp.value != tv.value;
    const bool second = (se == Tri::True);
    if (second != r.atypical || direct != r.atypical)
      throw internal_error(
          "membership routes disagree for n=" + dec(n) + ": first=" +
          std::to_string(r.atypical) + " second=" + std::to_string(second) +
          " direct=" + std::to_string(direct));
    r.paranoid_checked = true;
  }
  return r;
}

}  // namespace fproots

// Copyright 2026 the fproots authors
// SPDX-License-Identifier: Apache-2.0

#include "fproots/atypical.hpp"

#include <algorithm>
#include <thread>

namespace fproots {

namespace {

void require_irrational_log(const ThetaSpec& theta, const char* who) {
  if (theta.log_is_rational())
    throw input_error(std::string(who) +
                      " requires irrational log(theta); use scan_direct or "
                      "rational_bound for exp-rational theta");
}

// Certified truth of log(theta) < bound for a small integer bound.
bool log_theta_below(const ThetaSpec& theta, long bound, const RefinePolicy& policy) {
  const Tri r = certified_less(theta.log_theta(), Real(bound), policy);
  if (r == Tri::Undecided) throw precision_limit(policy.cap_bits);
  return r == Tri::True;
}

// Largest c >= 0 with c^2 < ub.
Int c_bound_from(const Rat& ub) {
  if (sgn(ub) <= 0) return Int(0);
  Int c = isqrt(floor_rat(ub));
  while (Rat(c * c) >= ub) c -= 1;
  return c;
}

struct LambdaCompare {
  Tri verdict = Tri::Undecided;
  Ball lambda_ball;
  Ball threshold_ball;
  long precision_bits = 0;
};

// Certified comparison lambda_index(cf) > (6 c^2) / log(theta).
LambdaCompare lambda_exceeds(const CFExpansion& cf, long index, const Int& c,
                             const ThetaSpec& theta, const RefinePolicy& policy) {
  LambdaCompare out;
  const Int c6 = 6 * c * c;
  for (long p = 96;; p = policy.next(p)) {
    const LambdaValue lam = cf.lambda(index, p);
    out.lambda_ball = lam.ball;
    out.precision_bits = p;
    if (lam.exact && theta.log_exact()) {
      auto thr = Quadratic::try_div(Quadratic(c6), *theta.log_exact());
      if (thr) {
        out.threshold_ball = thr->enclose(p);
        auto diff = Quadratic::try_sub(*lam.exact, *thr);
        if (diff) {
          out.verdict = diff->sign() > 0 ? Tri::True : Tri::False;
          return out;
        }
      }
    }
    const Ball thr = (Real(c6) * theta.recip_log()).enclose(p);
    out.threshold_ball = thr;
    const int cmp = Ball::cmp_strict(lam.ball, thr);
    if (cmp != 0) {
      out.verdict = cmp > 0 ? Tri::True : Tri::False;
      return out;
    }
    if (lam.coarse || p >= policy.cap_bits) return out;  // needs more terms / gave up
  }
}

}  // namespace

AtypicalCertificate finalize_certificate(const ThetaSpec& theta,
                                         const MembershipResult& m) {
  if (!m.decided()) throw internal_error("certificate for an undecided membership");
  const MembershipResult canon = decide_membership_at(theta, m.n, m.precision_bits);
  if (!canon.decided() || canon.atypical != m.atypical)
    throw internal_error("single-shot kernel failed to reproduce decision for n=" +
                         dec(m.n));
  AtypicalCertificate cert;
  cert.n = m.n;
  cert.atypical = canon.atypical;
  cert.via = canon.via;
  cert.precision_bits = m.precision_bits;
  cert.frac_ball = canon.frac_ball;
  cert.frac_exact = canon.frac_exact;
  cert.f_ball = canon.f_ball;
  return cert;
}

EnumerationReport scan_direct(const ThetaSpec& theta, const Int& N,
                              const RefinePolicy& policy, bool paranoid, int jobs) {
  if (N < 1) throw input_error("scan limit must be at least 1");
  EnumerationReport rep;
  rep.theta = theta.str();
  rep.limit = N;
  rep.method = EnumerationReport::Method::Direct;

  const auto scan_range = [&](const Int& from, const Int& to,
                              std::vector<MembershipResult>& hits,
                              std::vector<UndecidedEntry>& undec) {
    for (Int n = from; n <= to; n += 1) {
      const MembershipResult m = is_atypical(theta, n, policy, paranoid);
      if (!m.decided()) {
        undec.push_back({n, m.precision_bits, "membership straddles the window boundary"});
      } else if (m.atypical) {
        hits.push_back(m);
      }
    }
  };

  std::vector<MembershipResult> hits;
  if (jobs <= 1 || N < 256) {
    scan_range(Int(1), N, hits, rep.undecided);
  } else {
    const long wn = jobs;
    std::vector<std::vector<MembershipResult>> th_hits(wn);
    std::vector<std::vector<UndecidedEntry>> th_undec(wn);
    std::vector<std::thread> threads;
    const Int chunk = (N + wn - 1) / wn;
    for (long t = 0; t < wn; ++t) {
      Int from = Int(t) * chunk + 1;
      Int to = std::min(Int((t + 1) * chunk), N);
      if (from > N) break;
      threads.emplace_back([&, from, to, t] {
        scan_range(from, to, th_hits[t], th_undec[t]);
      });
    }
    for (auto& th : threads) th.join();
    for (long t = 0; t < wn; ++t) {
      hits.insert(hits.end(), th_hits[t].begin(), th_hits[t].end());
      rep.undecided.insert(rep.undecided.end(), th_undec[t].begin(), th_undec[t].end());
    }
  }

  std::sort(hits.begin(), hits.end(),
            [](const MembershipResult& a, const MembershipResult& b) { return a.n < b.n; });
  std::sort(rep.undecided.begin(), rep.undecided.end(),
            [](const UndecidedEntry& a, const UndecidedEntry& b) { return a.n < b.n; });
  rep.candidates_examined = mpz_fits_slong_p(N.get_mpz_t()) ? mpz_get_si(N.get_mpz_t()) : -1;
  for (const MembershipResult& m : hits) {
    rep.members.push_back(m.n);
    rep.certificates.push_back(finalize_certificate(theta, m));
  }
  rep.complete = rep.undecided.empty();
  return rep;
}

EnumerationReport enumerate_continuant(const ThetaSpec& theta, const Int& N,
                                       const RefinePolicy& policy) {
  if (N < 1) throw input_error("enumeration limit must be at least 1");
  require_irrational_log(theta, "enumerate_continuant");
  if (!log_theta_below(theta, 3, policy))
    throw input_error("enumerate_continuant requires theta < e^3; use scan_direct");

  EnumerationReport rep;
  rep.theta = theta.str();
  rep.limit = N;
  rep.method = EnumerationReport::Method::Continuant;

  long margin = 10;
  CFExpansion cf = theta.cf_two_over_log(N, margin, policy);

  // Coarse upper bound for log(theta), used only to cap the c range.
  const Rat log_hi = enclose_best_effort(theta.log_theta(), 32).hi().to_rat();

  struct Hit {
    MembershipResult m;
    Int c;
    long k;
    LambdaCompare lc;
  };
  std::vector<Hit> hits;

  for (long k = 1;; ++k) {
    const long idx = 2 * k - 1;
    if (idx + 1 > cf.certified_upto()) {
      // Try once more with a larger margin before flagging.
      margin *= 4;
      cf = theta.cf_two_over_log(N, margin, policy);
      if (idx + 1 > cf.certified_upto()) {
        rep.complete = false;
        rep.undecided.push_back(
            {Int(0), policy.cap_bits,
             "continued-fraction terms exhausted before continuants exceeded limit"});
        break;
      }
    }
    const Int B = cf.convergent(idx).B;
    if (B > N) break;
    const Rat ub = Rat(cf.term(2 * k) + 2) * log_hi / 6;
    const Int cmax = c_bound_from(ub);
    for (Int c = 1; c <= cmax; c += 1) {
      const Int n = c * B;
      if (n > N) break;
      rep.candidates_examined += 1;
      LambdaCompare lc = lambda_exceeds(cf, 2 * k, c, theta, policy);
      if (lc.verdict == Tri::Undecided) {
        // More terms might separate; grow once, then flag.
        margin *= 4;
        cf = theta.cf_two_over_log(N, margin, policy);
        lc = lambda_exceeds(cf, 2 * k, c, theta, policy);
      }
      if (lc.verdict == Tri::Undecided) {
        rep.complete = false;
        rep.undecided.push_back({n, lc.precision_bits, "lambda filter undecided"});
        continue;
      }
      if (lc.verdict == Tri::False) continue;
      const MembershipResult m = is_atypical(theta, n, policy, false);
      if (!m.decided()) {
        rep.complete = false;
        rep.undecided.push_back({n, m.precision_bits, "membership undecided"});
        continue;
      }
      if (m.atypical) hits.push_back({m, c, k, lc});
    }
  }

  std::sort(hits.begin(), hits.end(),
            [](const Hit& a, const Hit& b) { return a.m.n < b.m.n; });
  for (const Hit& h : hits) {
    if (!rep.members.empty() && rep.members.back() == h.m.n) continue;
    rep.members.push_back(h.m.n);
    AtypicalCertificate cert = finalize_certificate(theta, h.m);
    cert.c = h.c;
    cert.k = h.k;
    cert.lambda_ball = h.lc.lambda_ball;
    cert.threshold_ball = h.lc.threshold_ball;
    cert.lambda_precision_bits = h.lc.precision_bits;
    rep.certificates.push_back(std::move(cert));
  }
  return rep;
}

QSetResult q_set_membership(const ThetaSpec& theta, const Int& n,
                            const RefinePolicy& policy) {
  if (n < 1) throw input_error("Q_theta membership is defined for n >= 1");
  require_irrational_log(theta, "q_set_membership");
  QSetResult out;

  // Route A: the only possible witness is m = floor(n/log theta) + 1;
  // membership tests m - n/log theta < 1/(2n).
  Tri route_a = Tri::Undecided;
  const Rat window(1, 2 * n);
  if (auto w = theta.log_exact()) {
    const Quadratic x = Quadratic(n) / *w;
    const Int fl = x.floor();
    out.witness_m = fl + 1;
    const Quadratic gap = Quadratic(Int(fl + 1)) - x;
    route_a = gap.cmp(window) < 0 ? Tri::True : Tri::False;
  } else {
    FloorDecision fd;
    auto frac = frac_part(Real(n) * theta.recip_log(), policy, &fd);
    if (frac) {
      out.witness_m = fd.value + 1;
      // gap = 1 - {n/log theta}
      route_a = certified_less(Real(1) - *frac, Real(window), policy);
    }
  }

  // Route B: n = c * S_{2i-1} for the expansion of 1/log theta with
  // tau_{2i} > 2c^2.
  Tri route_b = Tri::False;
  CFExpansion cf = theta.cf_recip_log(n, 10, policy);
  for (long i = 1;; ++i) {
    const long idx = 2 * i - 1;
    if (idx + 1 > cf.certified_upto()) {
      if (route_b == Tri::False) route_b = Tri::Undecided;  // coverage not certified
      break;
    }
    const Int S = cf.convergent(idx).B;
    if (S > n) break;
    if (!mpz_divisible_p(n.get_mpz_t(), S.get_mpz_t())) continue;
    const Int c = n / S;
    const Rat thr(2 * c * c);
    Tri this_one = Tri::Undecided;
    for (long p = 96;; p = policy.next(p)) {
      const LambdaValue tau = cf.lambda(2 * i, p);
      if (tau.exact) {
        this_one = tau.exact->cmp(thr) > 0 ? Tri::True : Tri::False;
        break;
      }
      if (tau.ball.lo().to_rat() > thr) {
        this_one = Tri::True;
        break;
      }
      if (tau.ball.hi().to_rat() < thr) {
        this_one = Tri::False;
        break;
      }
      if (tau.coarse || p >= policy.cap_bits) break;
    }
    if (this_one == Tri::True) {
      route_b = Tri::True;
      out.c = c;
      out.i = i;
      break;
    }
    if (this_one == Tri::Undecided) route_b = Tri::Undecided;
  }

  if (route_a != Tri::Undecided && route_b != Tri::Undecided && route_a != route_b)
    throw internal_error("Q_theta routes disagree at n=" + dec(n));
  out.member = route_a != Tri::Undecided ? route_a : route_b;
  return out;
}

RationalBoundReport rational_bound(const Int& p, const Int& q, long margin,
                                   const RefinePolicy& policy) {
  if (p < 1 || q < 1) throw input_error("p and q must be positive");
  Rat pq(p, q);
  pq.canonicalize();
  if (pq <= 1) throw input_error("Theorem requires log theta = p/q > 1");
  RationalBoundReport rep;
  rep.p = p;
  rep.q = q;
  rep.bound = Rat(p * p, 6 * q);
  rep.bound.canonicalize();
  const Int limit = floor_rat(rep.bound) + 1 + margin;
  rep.scan = scan_direct(ThetaSpec::exp_rational(pq), limit, policy);
  rep.pass = rep.scan.complete;
  for (const Int& n : rep.scan.members) {
    if (Rat(n) >= rep.bound) rep.pass = false;
  }
  return rep;
}

ClassifyOutcome classify_continuant(const ThetaSpec& theta, long k,
                                    const std::optional<Rat>& delta,
                                    const RefinePolicy& policy) {
  require_irrational_log(theta, "classify_continuant");
  if (!log_theta_below(theta, 6, policy))
    throw input_error("classify_continuant requires theta < e^6");
  const Real lg = theta.log_theta();
  Real del = delta ? Real(*delta) : lg * Real(Rat(1, 2));
  if (delta) {
    if (sgn(*delta) <= 0) throw input_error("delta must be positive");
    if (certified_less(Real(*delta), lg, policy) != Tri::True)
      throw input_error("delta must be strictly below log(theta)");
  }

  ClassifyOutcome out;
  const long need_terms = 2 * std::max(k, 3L) + 16;
  CFExpansion cf = theta.cf_two_over_log(Int(0), need_terms, policy);
  if (2 * k > cf.certified_upto())
    throw input_error("not enough certified continued-fraction terms for k");

  // k0: first k' >= 3 with B_{2k'-1}^2 > (log theta)^3 / (60 delta).
  const Real rhs = lg * lg * lg / (Real(60) * del);
  long k0 = -1;
  for (long kk = 3; 2 * kk - 1 <= cf.certified_upto(); ++kk) {
    const Int B = cf.convergent(2 * kk - 1).B;
    const Tri t = certified_less(rhs, Real(Int(B * B)), policy);
    if (t == Tri::Undecided) throw precision_limit(policy.cap_bits);
    if (t == Tri::True) {
      k0 = kk;
      break;
    }
  }
  if (k0 < 0) throw precision_limit(policy.cap_bits);
  out.k0 = k0;
  if (k < k0)
    throw input_error("k = " + std::to_string(k) +
                      " is below the computed k0 = " + std::to_string(k0));
  out.B = cf.convergent(2 * k - 1).B;

  // lambda_{2k} >= 6/(log theta - delta)?
  Tri cond = Tri::Undecided;
  const Real thr = Real(6) / (lg - del);
  for (long p = 96;; p = policy.next(p)) {
    const LambdaValue lam = cf.lambda(2 * k, p);
    Ball tb;
    try {
      tb = thr.enclose(p);
    } catch (const precision_limit&) {
      break;
    }
    const int cmp = Ball::cmp_strict(lam.ball, tb);
    if (cmp != 0) {
      cond = cmp > 0 ? Tri::True : Tri::False;
      break;
    }
    if (lam.coarse || p >= policy.cap_bits) break;
  }
  if (cond == Tri::Undecided) throw precision_limit(policy.cap_bits);

  out.membership = is_atypical(theta, out.B, policy, false);
  if (!out.membership.decided()) throw precision_limit(policy.cap_bits);
  if (cond == Tri::True) {
    out.lemma_applied = true;
    out.qset = q_set_membership(theta, out.B, policy);
    if (out.qset.member == Tri::Undecided) throw precision_limit(policy.cap_bits);
    const bool in_q = out.qset.member == Tri::True;
    if (!out.membership.atypical && !in_q)
      throw internal_error(
          "lemma dichotomy violated at B_{2k-1}=" + dec(out.B) +
          ": neither atypical nor in Q_theta (implementation falsified)");
    out.cls = out.membership.atypical ? ContinuantClass::Atypical : ContinuantClass::InQ;
  } else {
    out.cls = out.membership.atypical ? ContinuantClass::Atypical
                                      : ContinuantClass::Typical;
  }
  return out;
}

}  // namespace fproots

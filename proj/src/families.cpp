// Copyright 2026 the fproots authors
// SPDX-License-Identifier: Apache-2.0

#include "fproots/families.hpp"

#include "fproots/functions.hpp"

namespace fproots {

namespace {

// Indices that cover every parity class of an eventually periodic input:
// the head plus two full periods (one period would miss a parity when its
// length is odd).
long parity_span(const CFInput& cf) {
  return cf.head_len() + 2 * static_cast<long>(cf.period.size());
}

ThetaSpec theta_from_ell(const CFInput& ell) {
  if (ell.periodic()) {
    Quadratic log_theta = Quadratic(Int(2)) / cf_periodic_value(ell);
    return ThetaSpec::exp_quadratic(std::move(log_theta));
  }
  return ThetaSpec::from_cf(ell);
}

Tri lambda_vs_threshold(const CFExpansion& cf, long index, const Real& thr,
                        const std::optional<Quadratic>& thr_exact,
                        const RefinePolicy& policy) {
  for (long p = 96;; p = policy.next(p)) {
    const LambdaValue lam = cf.lambda(index, p);
    if (lam.exact && thr_exact) {
      if (auto diff = Quadratic::try_sub(*lam.exact, *thr_exact))
        return diff->sign() > 0 ? Tri::True : Tri::False;
    }
    Ball tb;
    try {
      tb = thr.enclose(p);
    } catch (const precision_limit&) {
      return Tri::Undecided;
    }
    const int cmp = Ball::cmp_strict(lam.ball, tb);
    if (cmp != 0) return cmp > 0 ? Tri::True : Tri::False;
    if (lam.coarse || p >= policy.cap_bits) return Tri::Undecided;
  }
}

}  // namespace

FamilyParams build_empty_family(const CFInput& ell) {
  ell.validate();
  if (ell.head.empty() || ell.head[0] < 1)
    throw input_error("empty family requires a0 >= 1");
  const Int& a0 = ell.head[0];
  const Int cap = 3 * a0 - 2;
  const long span = ell.periodic() ? parity_span(ell) : ell.head_len();
  for (long k = 2; k < span; k += 2) {
    if (ell.term(k) > cap)
      throw input_error("empty-family criterion fails at index " + std::to_string(k) +
                        ": a_" + std::to_string(k) + " = " + dec(ell.term(k)) +
                        " > 3*a0-2 = " + dec(cap));
  }
  FamilyParams fp;
  fp.variant = FamilyParams::Variant::EmptyFamily;
  fp.ell = ell;
  fp.theta = theta_from_ell(ell);
  if (ell.periodic()) fp.log_closed_form = Quadratic(Int(2)) / cf_periodic_value(ell);
  return fp;
}

FamilyParams build_empty_family_c(long c) {
  if (c < 1) throw input_error("family parameter c must be positive");
  CFInput ell;
  ell.head = {Int(1)};
  ell.period = {Int(c), Int(1)};
  FamilyParams fp = build_empty_family(ell);
  fp.c = c;
  return fp;
}

FamilyParams build_infinite_family(const CFInput& ell) {
  ell.validate();
  const long span = ell.periodic() ? parity_span(ell) : ell.head_len();
  if (span < 3) throw input_error("infinite family needs at least a0, a1, a2");
  if (ell.term(0) != 0) throw input_error("infinite family requires a0 = 0");
  if (ell.term(1) != 2) throw input_error("infinite family requires a1 = 2");
  for (long k = 2; k < span; k += 2) {
    if (ell.term(k) != 4)
      throw input_error("infinite family requires a_" + std::to_string(k) + " = 4");
  }
  FamilyParams fp;
  fp.variant = FamilyParams::Variant::InfiniteFamily;
  fp.ell = ell;
  fp.theta = theta_from_ell(ell);
  if (ell.periodic()) fp.log_closed_form = Quadratic(Int(2)) / cf_periodic_value(ell);
  // e^4 < theta < e^(9/2), i.e. 4 < log(theta) < 9/2.
  if (fp.log_closed_form) {
    if (!(fp.log_closed_form->cmp(Rat(4)) > 0 && fp.log_closed_form->cmp(Rat(9, 2)) < 0))
      throw internal_error("infinite family log(theta) escaped (4, 9/2)");
  } else {
    RefinePolicy policy;
    if (certified_less(Real(4), fp.theta.log_theta(), policy) != Tri::True ||
        certified_less(fp.theta.log_theta(), Real(Rat(9, 2)), policy) != Tri::True)
      throw input_error("cannot certify 4 < log(theta) < 9/2 from the given terms");
  }
  return fp;
}

FamilyParams build_infinite_family_c(long c) {
  if (c < 1) throw input_error("family parameter c must be positive");
  CFInput ell;
  ell.head = {Int(0), Int(2)};
  ell.period = {Int(4), Int(c)};
  FamilyParams fp = build_infinite_family(ell);
  fp.c = c;
  return fp;
}

VerifyReport verify_no_candidates(const ThetaSpec& theta, long K, const Int& N,
                                  const RefinePolicy& policy,
                                  const Rat& threshold_scale) {
  VerifyReport rep;
  CFExpansion cf = theta.cf_two_over_log(Int(0), 2 * K + 16, policy);
  if (2 * K + 1 > cf.certified_upto()) {
    rep.add("certified terms cover k = 1.." + std::to_string(K), false,
            "only " + std::to_string(cf.certified_upto()) + " terms certified");
    return rep;
  }
  const Rat log_hi = enclose_best_effort(theta.log_theta(), 32).hi().to_rat();
  long candidates = 0;
  for (long k = 1; k <= K; ++k) {
    const Rat ub = Rat(cf.term(2 * k) + 2) * log_hi / 6;
    Int cmax = isqrt(floor_rat(ub));
    while (cmax >= 1 && Rat(cmax * cmax) >= ub) cmax -= 1;
    for (Int c = 1; c <= cmax; c += 1) {
      const Real thr =
          Real(threshold_scale) * Real(Int(6 * c * c)) * theta.recip_log();
      std::optional<Quadratic> thr_exact;
      if (auto w = theta.log_exact()) {
        if (auto t = Quadratic::try_div(Quadratic(Int(6 * c * c)), *w))
          thr_exact = Quadratic(threshold_scale) * *t;
      }
      const Tri hit = lambda_vs_threshold(cf, 2 * k, thr, thr_exact, policy);
      if (hit != Tri::False) {
        ++candidates;
        rep.add("lambda_" + std::to_string(2 * k) + " stays below 6c^2/log theta (c=" +
                    dec(c) + ")",
                false,
                hit == Tri::True ? "candidate passes the filter" : "comparison undecided");
      }
    }
  }
  rep.add("zero continuant candidates up to k = " + std::to_string(K),
          candidates == 0, std::to_string(candidates) + " candidate(s)");
  if (N >= 1) {
    EnumerationReport scan = scan_direct(theta, N, policy);
    rep.add("direct scan over [1, " + dec(N) + "] finds no members",
            scan.complete && scan.members.empty(),
            std::to_string(scan.members.size()) + " member(s)");
    for (auto& cert : scan.certificates) rep.certificates.push_back(cert);
  }
  return rep;
}

VerifyReport verify_empty(const FamilyParams& fp, long K, const Int& N,
                          const RefinePolicy& policy, const Rat& threshold_scale) {
  if (fp.variant != FamilyParams::Variant::EmptyFamily)
    throw input_error("verify_empty needs an empty-family parameter set");
  VerifyReport rep;
  const Int& a0 = fp.ell.head[0];
  const Int chain_cap = 3 * a0;

  // Criterion re-check across the verified range.
  bool criterion = true;
  for (long k = 2; k <= 2 * K; k += 2) {
    if (!fp.ell.has_term(k)) break;
    criterion = criterion && fp.ell.term(k) <= chain_cap - 2;
  }
  rep.add("family criterion a_{2k} <= 3*a0 - 2 holds through k = " + std::to_string(K),
          criterion);

  // a0 < ell gives 3*a0 <= 3*c^2*ell = 6c^2/log(theta) for every admissible c.
  Tri a0_below = certified_less(Real(a0), fp.theta.two_over_log(), policy);
  rep.add("a0 < ell certified (so 3*a0 <= 6c^2/log theta)", a0_below == Tri::True);

  // lambda_{2k} < 3*a0 (scaled for fault injection), certified per k.
  CFExpansion cf = fp.theta.cf_two_over_log(Int(0), 2 * K + 16, policy);
  bool lambda_ok = true;
  std::string detail;
  const Rat scaled_cap = threshold_scale * Rat(chain_cap);
  for (long k = 1; k <= K && 2 * k <= cf.certified_upto(); ++k) {
    const Tri above =
        lambda_vs_threshold(cf, 2 * k, Real(scaled_cap), Quadratic(scaled_cap), policy);
    if (above != Tri::False) {
      lambda_ok = false;
      detail = "lambda_" + std::to_string(2 * k) + " not certified below " +
               dec(scaled_cap);
      break;
    }
  }
  rep.add("lambda_{2k} < 3*a0 for k = 1.." + std::to_string(K), lambda_ok, detail);

  VerifyReport nc = verify_no_candidates(fp.theta, K, N, policy, threshold_scale);
  for (auto& line : nc.lines) rep.add(line.what, line.pass, line.detail);
  for (auto& cert : nc.certificates) rep.certificates.push_back(cert);
  return rep;
}

VerifyReport verify_infinite(const FamilyParams& fp, long K,
                             const RefinePolicy& policy) {
  if (fp.variant != FamilyParams::Variant::InfiniteFamily)
    throw input_error("verify_infinite needs an infinite-family parameter set");
  if (K < 3) throw input_error("depth K must be at least 3");
  VerifyReport rep;
  const ThetaSpec& theta = fp.theta;

  CFExpansion cf_a = theta.cf_two_over_log(Int(0), 2 * K + 16, policy);
  CFExpansion cf_b = theta.cf_recip_log(Int(0), 2 * K + 16, policy);

  // Halving transform against the independently derived expansion of
  // 1/log(theta).
  const CFInput halved = halve_cf(fp.ell);
  bool halves_match = true;
  for (long i = 0; i <= 2 * K + 2; ++i) {
    if (!cf_b.has_term(i)) {
      halves_match = false;
      break;
    }
    if (halved.term(i) != cf_b.term(i)) {
      halves_match = false;
      break;
    }
  }
  rep.add("halve_cf(ell) matches the expansion of 1/log theta term-by-term",
          halves_match);

  // Exact continuant relations S_{2k} = B_{2k}, S_{2k+1} = 2 B_{2k+1}.
  bool relations = cf_b.convergent(0).B == 1 && cf_a.convergent(0).B == 1 &&
                   cf_b.convergent(1).B == 4 && cf_a.convergent(1).B == 2 &&
                   cf_b.convergent(2).B == 9 && cf_a.convergent(2).B == 9;
  for (long k = 0; 2 * k + 1 <= 2 * K + 1 && relations; ++k) {
    relations = cf_b.convergent(2 * k).B == cf_a.convergent(2 * k).B &&
                cf_b.convergent(2 * k + 1).B == 2 * cf_a.convergent(2 * k + 1).B;
  }
  rep.add("S_{2k} = B_{2k} and S_{2k+1} = 2*B_{2k+1} (with S0=B0=1, S1=2B1=4, S2=B2=9)",
          relations);

  // Growth B_{2k-1} > 5 B_{2k-3} for k >= 3.
  bool growth = true;
  for (long k = 3; k <= K; ++k)
    growth = growth && cf_a.convergent(2 * k - 1).B > 5 * cf_a.convergent(2 * k - 3).B;
  rep.add("growth B_{2k-1} > 5*B_{2k-3} for k = 3.." + std::to_string(K), growth);

  // Membership and Q_theta exclusion per continuant.
  long atypical_count = 0;
  bool members_ok = true, exclusion_ok = true;
  std::string fail_detail;
  for (long k = 3; k <= K; ++k) {
    const Int B = cf_a.convergent(2 * k - 1).B;
    const MembershipResult m = is_atypical(theta, B, policy, false);
    if (!m.decided() || !m.atypical) {
      members_ok = false;
      fail_detail = "B_" + std::to_string(2 * k - 1) + " = " + dec(B) +
                    (m.decided() ? " not atypical" : " undecided");
      break;
    }
    ++atypical_count;
    rep.certificates.push_back(finalize_certificate(theta, m));
    // Exact contradiction check: no i <= k with 2*B_{2i-1} = B_{2k-1}.
    for (long i = 1; i <= k; ++i) {
      if (2 * cf_a.convergent(2 * i - 1).B == B) exclusion_ok = false;
    }
    const QSetResult qs = q_set_membership(theta, B, policy);
    if (qs.member != Tri::False) exclusion_ok = false;
  }
  rep.add("B_{2k-1} atypical for k = 3.." + std::to_string(K) + " (" +
              std::to_string(atypical_count) + " certified)",
          members_ok, fail_detail);
  rep.add("B_{2k-1} excluded from Q_theta (growth contradiction and witness test)",
          exclusion_ok);
  rep.add("infinitude is certified up to depth K only; the proof covers the rest",
          true);
  return rep;
}

VerifyReport verify_root2_identity(long limit, const RefinePolicy& policy) {
  VerifyReport rep;
  const Quadratic sqrt2 = Quadratic::sqrt_of(Rat(2));
  const ThetaSpec theta = ThetaSpec::exp_quadratic(sqrt2);
  bool identity = true;
  std::string detail;
  for (long n = -limit; n <= limit && identity; ++n) {
    if (n == 0) continue;
    const FloorDecision mp = m_prime(theta, Int(n), policy);
    const Quadratic rhs = Quadratic(Int(n)) / sqrt2 - Quadratic(Rat(1, 2));
    if (!mp.decided() || mp.value != rhs.floor()) {
      identity = false;
      detail = "mismatch at n = " + std::to_string(n);
    }
  }
  rep.add("M'(n) = floor(n/sqrt(2) - 1/2) on [-" + std::to_string(limit) + ", " +
              std::to_string(limit) + "] \\ {0}",
          identity, detail);
  const EnumerationReport e =
      enumerate_continuant(theta, Int("1000000000000"), policy);
  rep.add("zero continuant candidates for continuants <= 10^12",
          e.complete && e.candidates_examined == 0 && e.members.empty(),
          std::to_string(e.candidates_examined) + " candidate(s)");
  return rep;
}

VerifyReport verify_log2_endpoints(const RefinePolicy& policy) {
  VerifyReport rep;
  const ThetaSpec theta = ThetaSpec::rational(Rat(2));
  const Int b35("777451915729368");

  const FloorDecision m1 = m_prime(theta, Int(1), policy);
  const FloorDecision t1 = typical_value(theta, Int(1), policy);
  rep.add("M'(1) = 1 while floor(1/log 2 - 1/2) = 0",
          m1.decided() && t1.decided() && m1.value == 1 && t1.value == 0);

  CFExpansion cf = theta.cf_two_over_log(Int("1000000000000000"), 10, policy);
  rep.add("B_35 of 2/log 2 equals 777451915729368",
          cf.certified_upto() >= 35 && cf.convergent(35).B == b35);

  // Certified bracket 8.65 < 6/log 2 < lambda_2 < 8.73.
  const Ball six_over = (Real(6) * theta.recip_log()).enclose(96);
  const LambdaValue l2 = cf.lambda(2, 96);
  const bool bracket = six_over.lo().to_rat() > Rat(173, 20) &&
                       Ball::cmp_strict(l2.ball, six_over) > 0 &&
                       l2.ball.hi().to_rat() < Rat(873, 100);
  rep.add("8.65 < 6/log 2 < lambda_2 < 8.73 certified", bracket);

  // Only lambda_2 among lambda_2..lambda_34 exceeds 6/log 2.
  bool only_l2 = true;
  for (long k = 2; k <= 17; ++k) {
    const Tri above = lambda_vs_threshold(cf, 2 * k, Real(6) * theta.recip_log(),
                                          std::nullopt, policy);
    if (above != Tri::False) only_l2 = false;
  }
  rep.add("only lambda_2 among lambda_2..lambda_34 exceeds 6/log 2", only_l2);

  const MembershipResult m_end = is_atypical(theta, b35, policy, true);
  rep.add("B_35 is atypical (three-way checked)",
          m_end.decided() && m_end.atypical && m_end.paranoid_checked);
  if (m_end.decided()) rep.certificates.push_back(finalize_certificate(theta, m_end));

  const EnumerationReport e =
      enumerate_continuant(theta, Int("1000000000000000"), policy);
  rep.add("enumeration to 10^15 returns exactly {1, 777451915729368}",
          e.complete && e.members.size() == 2 && e.members[0] == 1 &&
              e.members[1] == b35);
  return rep;
}

CountStats count_statistics(const ThetaSpec& theta, const Int& N,
                            const RefinePolicy& policy) {
  CountStats cs;
  const bool fast = !theta.log_is_rational() && [&] {
    return certified_less(theta.log_theta(), Real(3), policy) == Tri::True;
  }();
  cs.report = fast ? enumerate_continuant(theta, N, policy)
                   : scan_direct(theta, N, policy);
  cs.count = static_cast<long>(cs.report.members.size());
  const Ball lnN = log_rat_ball(Rat(N), 64);
  cs.expected = Ball::div_uint(Ball::mul(theta.log_theta().enclose(64), lnN, 72), 12, 72);
  const Rat mid = cs.expected.mid().to_rat();
  cs.ratio = sgn(mid) > 0 ? cs.count.get_d() / mid.get_d() : 0.0;
  return cs;
}

}  // namespace fproots

// Copyright 2026 the fproots authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "fproots/mtheta.hpp"

namespace fproots {

/// Replayable evidence for one membership decision. Every ball stored here
/// is the output of the deterministic single-shot kernel at the recorded
/// precision, so re-running it reproduces the decision (and the balls)
/// bit for bit.
struct AtypicalCertificate {
  Int n;
  bool atypical = false;
  MembershipResult::Via via = MembershipResult::Via::FirstEquiv;
  long precision_bits = 0;
  std::optional<Ball> frac_ball;
  std::optional<Quadratic> frac_exact;
  std::optional<Ball> f_ball;

  // Continuant decomposition n = c * B_{2k-1}, present for members found
  // by the enumerator.
  std::optional<Int> c;
  std::optional<long> k;
  std::optional<Ball> lambda_ball;
  std::optional<Ball> threshold_ball;  // 6 c^2 / log theta
  long lambda_precision_bits = 0;
};

struct UndecidedEntry {
  Int n;
  long precision_cap = 0;
  std::string what;
};

struct EnumerationReport {
  enum class Method { Direct, Continuant, Both };

  std::string theta;  // canonical grammar string
  Int limit;
  Method method = Method::Direct;
  std::vector<Int> members;  // sorted strictly increasing
  std::vector<AtypicalCertificate> certificates;
  long candidates_examined = 0;
  std::vector<UndecidedEntry> undecided;
  bool complete = true;
};

/// Brute-force oracle: applies the membership test to every n in [1, N].
EnumerationReport scan_direct(const ThetaSpec& theta, const Int& N,
                              const RefinePolicy& policy = {},
                              bool paranoid = false, int jobs = 1);

/// Fast enumerator for 1 < theta < e^3 with irrational log: candidates are
/// the c*B_{2k-1} of the continued fraction of 2/log(theta) that pass the
/// certified filter lambda_{2k} > 6c^2/log(theta); completeness comes from
/// the necessity of that condition.
EnumerationReport enumerate_continuant(const ThetaSpec& theta, const Int& N,
                                       const RefinePolicy& policy = {});

struct QSetResult {
  Tri member = Tri::Undecided;
  std::optional<Int> witness_m;  // the integer with 0 < m - n/log theta < 1/(2n)
  std::optional<Int> c;          // n = c * S_{2i-1} decomposition
  std::optional<long> i;
};

/// Membership of n in Q_theta ("good denominators" for 1/log theta),
/// decided by both the witness route and the continuant route, which are
/// required to agree.
QSetResult q_set_membership(const ThetaSpec& theta, const Int& n,
                            const RefinePolicy& policy = {});

struct RationalBoundReport {
  Int p, q;
  Rat bound;  // p^2 / (6q)
  EnumerationReport scan;
  bool pass = false;  // no member >= bound, scan complete
};

/// Theorem-2 style bound A_theta within [1, p^2/(6q)) for theta = e^(p/q),
/// verified by an exact-rational scan over [1, ceil(bound) + margin].
RationalBoundReport rational_bound(const Int& p, const Int& q, long margin = 100,
                                   const RefinePolicy& policy = {});

enum class ContinuantClass { Typical, InQ, Atypical };

struct ClassifyOutcome {
  ContinuantClass cls = ContinuantClass::Typical;
  long k0 = 0;
  Int B;                  // B_{2k-1}
  bool lemma_applied = false;  // lambda_{2k} >= 6/(log theta - delta) held
  MembershipResult membership;
  QSetResult qset;
};

/// Classifies B_{2k-1} (continued fraction of 2/log theta, 1 < theta < e^6)
/// per the dichotomy B_{2k-1} in Q_theta union A_theta, valid for k >= k0
/// where k0 is computed from B_{2k-1}^2 > (log theta)^3 / (60 delta).
/// delta defaults to (log theta)/2.
ClassifyOutcome classify_continuant(const ThetaSpec& theta, long k,
                                    const std::optional<Rat>& delta = std::nullopt,
                                    const RefinePolicy& policy = {});

/// Fills in the canonical single-shot witnesses for a decided membership,
/// asserting the single-shot kernel reproduces the decision.
AtypicalCertificate finalize_certificate(const ThetaSpec& theta,
                                         const MembershipResult& m);

}  // namespace fproots

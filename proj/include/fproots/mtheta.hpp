// Copyright 2026 the fproots authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <string>

#include "fproots/contfrac.hpp"

namespace fproots {

/// Exact symbolic description of the base theta > 1. The four variants pin
/// down log(theta) exactly enough to classify it as rational (ExpRational)
/// or irrational (everything else), which drives every decision procedure
/// downstream.
class ThetaSpec {
 public:
  enum class Kind { RationalTheta, ExpRational, ExpQuadratic, FromCF };

  /// theta = u/v > 1.
  static ThetaSpec rational(Rat theta);
  /// theta = e^(p/q), p/q > 0.
  static ThetaSpec exp_rational(Rat exponent);
  /// theta = e^w for an irrational quadratic w > 0.
  static ThetaSpec exp_quadratic(Quadratic w);
  /// theta = e^(2/ell) with ell given by its partial quotients.
  static ThetaSpec from_cf(CFInput ell);

  Kind kind() const;

  bool log_is_rational() const;
  Rat log_rational() const;                      // requires log_is_rational()
  std::optional<Quadratic> log_exact() const;    // rational or quadratic log

  /// Cached certified values. Shared across calls on one ThetaSpec, so bulk
  /// scans evaluate the transcendental constants once.
  const Real& log_theta() const;
  const Real& recip_log() const;   // 1/log(theta)
  const Real& two_over_log() const;
  const Real& theta_value() const;

  /// An uncached log(theta), used where bit-reproducible evaluation
  /// matters (certificate finalization and replay).
  Real fresh_log_theta() const;

  /// Continued fraction of 2/log(theta): the defining data for FromCF,
  /// exact periodic for quadratic logs, a certified truncation otherwise,
  /// grown until the odd-index continuants pass `continuant_limit` with
  /// `margin` extra terms for lambda tails. Cached.
  CFExpansion cf_two_over_log(const Int& continuant_limit, long margin,
                              const RefinePolicy& policy = {}) const;
  /// Same for 1/log(theta).
  CFExpansion cf_recip_log(const Int& continuant_limit, long margin,
                           const RefinePolicy& policy = {}) const;

  std::string str() const;
  static ThetaSpec parse(const std::string& s);

  const Rat& rational_theta() const;     // RationalTheta payload
  const Rat& exponent() const;           // ExpRational payload
  const Quadratic& quadratic_log() const;  // ExpQuadratic payload
  const CFInput& ell_cf() const;         // FromCF payload

  struct Data;  // implementation detail, defined in mtheta.cpp

 private:
  std::shared_ptr<Data> d_;
};

/// f(t) = 1/(e^t - 1) - 1/t + 1/2 as a lazy certified real (t > 0).
Real f_real(const Real& t);

/// Enclosure of f(t) with width <= 2^-prec.
Ball f_eval(const Real& t, long prec);
Ball f_eval(const RealSpec& t, long prec);

/// M'_theta(n) = floor(1/(theta^(1/n) - 1)) for nonzero n, certified.
/// Exact big-rational / quadratic paths cover rational theta with |n| <= 2
/// or perfect-power theta.
FloorDecision m_prime(const ThetaSpec& theta, const Int& n,
                      const RefinePolicy& policy = {});

/// M_theta(n) = floor(1/{theta^(1/n)}) for n >= 1. Throws input_error when
/// {theta^(1/n)} is exactly zero (perfect integer powers).
FloorDecision m_theta(const ThetaSpec& theta, const Int& n,
                      const RefinePolicy& policy = {});

/// floor(n/log(theta) - 1/2), certified (exact when log(theta) is rational
/// or quadratic).
FloorDecision typical_value(const ThetaSpec& theta, const Int& n,
                            const RefinePolicy& policy = {});

/// Replayable outcome of one membership decision for the atypical set.
struct MembershipResult {
  enum class Status { Decided, Undecided };
  enum class Via { FirstEquiv, SecondEquiv, ExactPath };

  Status status = Status::Undecided;
  bool atypical = false;  // meaningful when Decided
  Int n;
  Via via = Via::FirstEquiv;
  long precision_bits = 0;

  // Witnesses of the window test {n/log theta} in [1/2 - f, 1/2). On the
  // exact route (via = ExactPath with an exact reciprocal value) frac_ball
  // instead holds the enclosure of n/log theta - 1/2 that certified the
  // typical value.
  std::optional<Ball> frac_ball;
  std::optional<Quadratic> frac_exact;  // exact {n/log theta} when available
  std::optional<Ball> f_ball;           // enclosure of f(log theta / n)
  bool paranoid_checked = false;

  bool decided() const { return status == Status::Decided; }
};

/// Decides n in A_theta by the window test {n/log theta} in
/// [1/2 - f(log theta/n), 1/2). With `paranoid`, recomputes via the
/// two-condition test on {2n/log theta} and via the direct comparison
/// M'(n) != floor(n/log theta - 1/2), demanding three-way agreement.
MembershipResult is_atypical(const ThetaSpec& theta, const Int& n,
                             const RefinePolicy& policy = {},
                             bool paranoid = false);

/// Single-shot decision kernel at one fixed precision with fresh evaluation
/// state: the deterministic, bit-reproducible unit that certificates and
/// `replay` run. Returns Undecided status when p does not separate.
MembershipResult decide_membership_at(const ThetaSpec& theta, const Int& n, long p);

}  // namespace fproots

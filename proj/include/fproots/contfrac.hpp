// Copyright 2026 the fproots authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <limits>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "fproots/realspec.hpp"

namespace fproots {

struct Convergent {
  Int A;
  Int B;
  long k = 0;
};

/// lambda_k = B_{k-2}/B_{k-1} + [a_k; a_{k+1}, ...], the exact factor in
/// the error law x - A_k/B_k = (-1)^k / (B_k^2 lambda_{k+1}).
struct LambdaValue {
  Ball ball;
  std::optional<Quadratic> exact;  // set for periodic expansions
  bool coarse = false;             // enclosure wider than the requested 2^-prec
};

/// A simple continued fraction with big-integer convergents: either the
/// exact eventually-periodic expansion of a quadratic irrational, or a
/// certified truncation of an arbitrary irrational. Value-semantic;
/// convergents are grown lazily under a lock.
class CFExpansion {
 public:
  static constexpr long kUnbounded = std::numeric_limits<long>::max() / 2;

  static CFExpansion exact_periodic(CFInput cf, std::optional<Quadratic> source);
  static CFExpansion certified_truncation(std::vector<Int> terms, Real source);

  bool periodic() const;
  const CFInput& input() const;
  long certified_upto() const;  // kUnbounded for periodic expansions
  bool has_term(long k) const;
  Int term(long k) const;

  /// k-th convergent A_k/B_k; throws past the certified range.
  Convergent convergent(long k) const;

  /// lambda_k for k >= 1. Exact for periodic expansions. For truncations
  /// the tail is enclosed from the certified terms (k <= certified_upto),
  /// or derived from the source value for k = certified_upto + 1.
  LambdaValue lambda(long k, long prec) const;

  /// Exact value of [a_k; a_{k+1}, ...] for periodic expansions.
  Quadratic tail_value(long k) const;

  const std::optional<Quadratic>& source_quadratic() const;
  const std::optional<Real>& source() const;

 private:
  struct State;
  std::shared_ptr<State> st_;
};

/// Exact eventually-periodic expansion of a quadratic irrational, with
/// minimal preperiod and period (Lagrange). Rational input is an error:
/// rationals take the finite-expansion path.
CFExpansion cf_of_quadratic(const Quadratic& q);

/// First K+1 partial quotients of an irrational real, each certified by
/// interval refinement. May return fewer terms (certified_upto < K) when
/// the precision cap, or the information content of the source, runs out.
CFExpansion cf_of_real(const Real& x, long K, const RefinePolicy& policy = {});

/// Spec-validating overload: rejects variants that are not provably
/// irrational.
CFExpansion cf_of_real(const RealSpec& x, long K, const RefinePolicy& policy = {});

/// Exact value of a finite or eventually periodic expansion.
Rat cf_finite_value(const std::vector<Int>& terms);
Quadratic cf_periodic_value(const CFInput& cf);
RealSpec value_from_cf(const CFInput& cf);

/// [a0; a1, a2, ...] -> [a0/2; 2*a1, a2/2, 2*a3, ...], the expansion of
/// half the value; requires every even-indexed quotient to be even.
CFInput halve_cf(const CFInput& cf);

struct BestApproxWitness {
  Int c;
  long k = 0;
};

/// If |x - m/n| <= 1/(2n^2), the guaranteed decomposition m = c*A_k,
/// n = c*B_k with lambda_{k+1} > 2c^2 certified; empty otherwise.
std::optional<BestApproxWitness> best_approx_witness(const RealSpec& x, const Int& m,
                                                     const Int& n,
                                                     const RefinePolicy& policy = {});

}  // namespace fproots

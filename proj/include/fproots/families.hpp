// Copyright 2026 the fproots authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "fproots/atypical.hpp"

namespace fproots {

/// The two explicit families of theta = e^(2/ell) driven by the partial
/// quotients of ell: quotient patterns that force A_theta empty (all even
/// indices small against a0) or infinite (a0=0, a1=2, a_{2k}=4).
struct FamilyParams {
  enum class Variant { EmptyFamily, InfiniteFamily };

  Variant variant = Variant::EmptyFamily;
  CFInput ell;
  std::optional<long> c;  // set when built from the c-parameterized form
  ThetaSpec theta;        // exp-quadratic when ell is periodic
  std::optional<Quadratic> log_closed_form;  // 2/ell when periodic
};

/// Requires a0 >= 1 and a_{2k} <= 3*a0 - 2 for all covered k >= 1.
FamilyParams build_empty_family(const CFInput& ell);
/// ell = [1; period(c, 1)], i.e. theta = e^(-c + sqrt(c(c+4))).
FamilyParams build_empty_family_c(long c);

/// Requires a0 = 0, a1 = 2 and a_{2k} = 4 for all covered k >= 1; also
/// certifies e^4 < theta < e^(9/2).
FamilyParams build_infinite_family(const CFInput& ell);
/// ell = [0; 2, period(4, c)], i.e. theta = e^(4 - c + sqrt(c(c+1))).
FamilyParams build_infinite_family_c(long c);

struct VerifyLine {
  std::string what;
  bool pass = false;
  std::string detail;
};

struct VerifyReport {
  bool pass = true;
  std::vector<VerifyLine> lines;
  std::vector<AtypicalCertificate> certificates;

  void add(std::string what, bool ok, std::string detail = std::string()) {
    pass = pass && ok;
    lines.push_back({std::move(what), ok, std::move(detail)});
  }
};

/// Candidate-freeness for arbitrary theta with irrational log: for
/// k = 1..K no (c, k) passes the certified lambda_{2k} > scale * 6c^2/log
/// filter, and the direct scan over [1, N] is empty. `threshold_scale` is
/// a fault-injection knob for negative-control tests; leave it at 1.
VerifyReport verify_no_candidates(const ThetaSpec& theta, long K, const Int& N,
                                  const RefinePolicy& policy = {},
                                  const Rat& threshold_scale = Rat(1));

/// Theorem-5 style verification: the family criterion, the certified chain
/// lambda_{2k} < 3*a0 <= 6c^2/log(theta), zero candidates, empty scan.
VerifyReport verify_empty(const FamilyParams& fp, long K, const Int& N,
                          const RefinePolicy& policy = {},
                          const Rat& threshold_scale = Rat(1));

/// Theorem-6 style verification for k = 3..K: B_{2k-1} atypical, the
/// halving transform matches the expansion of 1/log(theta), the exact B/S
/// continuant relations, growth, and Q_theta exclusion.
VerifyReport verify_infinite(const FamilyParams& fp, long K,
                             const RefinePolicy& policy = {});

/// M'(n) = floor(n/sqrt(2) - 1/2) for all n in [-limit, limit] except 0,
/// plus zero continuant candidates up to 10^12, for theta = e^sqrt(2).
VerifyReport verify_root2_identity(long limit, const RefinePolicy& policy = {});

/// The theta = 2 story: 1 and B_35 = 777451915729368 are atypical, the
/// identity holds in between (continuant enumeration to 10^15), and only
/// lambda_2 among lambda_2..lambda_34 exceeds 6/log 2, with the certified
/// bracket 8.65 < 6/log 2 < lambda_2 < 8.73.
VerifyReport verify_log2_endpoints(const RefinePolicy& policy = {});

struct CountStats {
  Int count;
  Ball expected;      // (log theta / 12) * ln N
  double ratio = 0;   // count / midpoint(expected)
  EnumerationReport report;
};

/// |A_theta intersect [1, N]| against the almost-everywhere prediction.
/// No per-theta assertion: the prediction is measure-theoretic.
CountStats count_statistics(const ThetaSpec& theta, const Int& N,
                            const RefinePolicy& policy = {});

}  // namespace fproots

// Copyright 2026 the fproots authors
// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite: one criterion per section, one PASS/FAIL line each.
// Criterion 8b is a statistical smoke test against an almost-everywhere
// law and only warns. Everything else is exact or zero-exception.

#include <chrono>
#include <cstdio>
#include <functional>
#include <vector>

#include "fproots/families.hpp"
#include "fproots/functions.hpp"
#include "fproots/sampling.hpp"

using namespace fproots;

namespace {

int g_failures = 0;

void criterion(int id, const std::string& name, const std::function<bool()>& body,
               bool warn_only = false) {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = false;
  std::string err;
  try {
    ok = body();
  } catch (const std::exception& e) {
    err = e.what();
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const char* tag = ok ? "PASS" : (warn_only ? "WARN" : "FAIL");
  std::printf("[%s] criterion %d: %s (%.1fs)%s%s\n", tag, id, name.c_str(), secs,
              err.empty() ? "" : " error: ", err.c_str());
  std::fflush(stdout);
  if (!ok && !warn_only) ++g_failures;
}

Quadratic random_quadratic(Rng& rng) {
  while (true) {
    const long d = rng.range(2, 80);
    if (is_perfect_square(Int(d))) continue;
    const Quadratic q{Int(rng.range(-30, 30)), Int(rng.range(1, 9)),
                      Int(rng.range(1, 12)), Int(d)};
    if (!q.is_rational()) return q;
  }
}

Int fib(long k) {
  Int a = 0, b = 1;
  for (long i = 0; i < k; ++i) {
    Int t = a + b;
    a = b;
    b = t;
  }
  return a;
}

// Shared between criteria 5 and 8a.
std::vector<double> g_densities;

bool c1_log2_endpoints() {
  const ThetaSpec two = ThetaSpec::rational(Rat(2));
  const Int b35("777451915729368");
  const EnumerationReport rep = enumerate_continuant(two, Int("1000000000000000"));
  if (!rep.complete) return false;
  if (!(rep.members.size() == 2 && rep.members[0] == 1 && rep.members[1] == b35))
    return false;
  // Certified bracket 8.65 < 6/log 2 < lambda_2 < 8.73, and only lambda_2
  // among lambda_2..lambda_34 exceeds 6/log 2.
  CFExpansion cf = two.cf_two_over_log(Int("1000000000000000"), 10);
  const Ball six_over = (Real(6) * two.recip_log()).enclose(96);
  const LambdaValue l2 = cf.lambda(2, 96);
  if (!(six_over.lo().to_rat() > Rat(173, 20))) return false;
  if (!(Ball::cmp_strict(l2.ball, six_over) > 0)) return false;
  if (!(l2.ball.hi().to_rat() < Rat(873, 100))) return false;
  for (long k = 2; k <= 17; ++k) {
    const LambdaValue lam = cf.lambda(2 * k, 128);
    if (!(Ball::cmp_strict(lam.ball, six_over) < 0)) return false;
  }
  return true;
}

bool c2_root2_identity() {
  const VerifyReport rep = verify_root2_identity(10000);
  for (const VerifyLine& l : rep.lines)
    if (!l.pass) std::printf("       %s: %s\n", l.what.c_str(), l.detail.c_str());
  return rep.pass;
}

bool c3_rational_bound() {
  std::vector<std::pair<long, long>> pairs = {{3, 1}, {10, 1}, {7, 2}, {50, 3}};
  Rng rng(1003);
  while (pairs.size() < 20) {
    const long p = rng.range(2, 50), q = rng.range(1, 20);
    if (Rat(p, q) <= 1) continue;
    pairs.emplace_back(p, q);
  }
  for (const auto& [p, q] : pairs) {
    const RationalBoundReport rep = rational_bound(Int(p), Int(q), 100);
    if (!rep.pass) {
      std::printf("       fails at (p,q) = (%ld,%ld)\n", p, q);
      return false;
    }
  }
  return true;
}

bool c4_families() {
  RefinePolicy policy;
  for (long c = 1; c <= 10; ++c) {
    const VerifyReport rep = verify_empty(build_empty_family_c(c), 25, Int(10000), policy);
    if (!rep.pass) {
      std::printf("       empty family c=%ld fails\n", c);
      for (const VerifyLine& l : rep.lines)
        if (!l.pass) std::printf("         %s (%s)\n", l.what.c_str(), l.detail.c_str());
      return false;
    }
  }
  for (long c = 1; c <= 10; ++c) {
    const VerifyReport rep = verify_infinite(build_infinite_family_c(c), 20, policy);
    if (!rep.pass) {
      std::printf("       infinite family c=%ld fails\n", c);
      for (const VerifyLine& l : rep.lines)
        if (!l.pass) std::printf("         %s (%s)\n", l.what.c_str(), l.detail.c_str());
      return false;
    }
  }
  return true;
}

bool c5_oracle_equivalence() {
  Rng rng(20260509);
  g_densities.clear();
  for (int s = 0; s < 20; ++s) {
    const ThetaSpec theta = sample_exp_quadratic(rng);
    const Int N(100000);
    const EnumerationReport fast = enumerate_continuant(theta, N);
    const EnumerationReport slow = scan_direct(theta, N);
    if (!fast.complete || !slow.complete || fast.members != slow.members) {
      std::printf("       mismatch at sample %d (theta = %s)\n", s, theta.str().c_str());
      return false;
    }
    g_densities.push_back(static_cast<double>(slow.members.size()) / 100000.0);
  }
  return true;
}

bool c6_f_analytics() {
  Rng rng(606060);
  // Strict series sandwich on 10^4 rational t in (0,1), at ball level.
  for (int i = 0; i < 10000; ++i) {
    const Rat t = random_unit_rat(rng, 100000);
    const Ball f = f_eval(Real(t), 120);
    const Rat upper = t / 12;
    const Rat lower = upper - t * t * t / 720;
    if (!(lower < f.lo().to_rat() && f.hi().to_rat() < upper)) {
      std::printf("       sandwich fails at t = %s\n", dec(t).c_str());
      return false;
    }
  }
  // Monotonicity on 10^3 pairs.
  RefinePolicy policy;
  for (int i = 0; i < 1000; ++i) {
    Rat t1 = random_unit_rat(rng, 10000);
    Rat t2 = random_unit_rat(rng, 10000) + Rat(rng.range(0, 1));
    if (t1 == t2) continue;
    if (t1 > t2) std::swap(t1, t2);
    if (certified_less(f_real(Real(t1)), f_real(Real(t2)), policy) != Tri::True) {
      std::printf("       monotonicity fails at (%s, %s)\n", dec(t1).c_str(),
                  dec(t2).c_str());
      return false;
    }
  }
  // Exact-rational set identity on 10^4 triples.
  long done = 0;
  while (done < 10000) {
    Rat a = random_unit_rat(rng, 1000), b = random_unit_rat(rng, 1000);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    const Rat t = Rat(rng.range(-100, 100)) + random_unit_rat(rng, 2003);
    const Rat ft = frac_rat(t), f2t = frac_rat(2 * t);
    const bool lhs = a / 2 <= ft && ft < b / 2;
    const bool rhs = (a <= f2t && f2t < b) && !((a + 1) / 2 <= ft && ft < (b + 1) / 2);
    if (lhs != rhs) return false;
    ++done;
  }
  return true;
}

bool c7_cf_engine() {
  Rng rng(770077);
  for (int trial = 0; trial < 100; ++trial) {
    const Quadratic q = random_quadratic(rng);
    const CFExpansion cf = cf_of_quadratic(q);
    for (long k = 1; k <= 50; ++k) {
      const Convergent c = cf.convergent(k), p = cf.convergent(k - 1);
      if (c.A * p.B - p.A * c.B != ((k - 1) % 2 == 0 ? 1 : -1)) return false;
      if (!(c.B >= fib(k + 1))) return false;
    }
    for (long k = 2; k <= 50; ++k) {
      const Convergent c = cf.convergent(k), pp = cf.convergent(k - 2);
      Rat vc(c.A, c.B), vpp(pp.A, pp.B);
      vc.canonicalize();
      vpp.canonicalize();
      if (k % 2 == 0) {
        if (!(vpp < vc && q.cmp(vc) > 0)) return false;
      } else {
        if (!(vc < vpp && q.cmp(vc) < 0)) return false;
      }
    }
    // Error law, exact in the field, through k = 50.
    for (long k = 1; k <= 50; k += 7) {
      const Convergent c = cf.convergent(k);
      const LambdaValue lam = cf.lambda(k + 1, 64);
      if (!lam.exact) return false;
      Rat vc(c.A, c.B);
      vc.canonicalize();
      const Quadratic lhs = q - Quadratic(vc);
      const Quadratic rhs = Quadratic(Int(k % 2 == 0 ? 1 : -1)) /
                            (Quadratic(Int(c.B * c.B)) * *lam.exact);
      if (!lhs.equals_value(rhs)) return false;
    }
    // Exact round-trip through the value.
    if (!cf_periodic_value(cf.input()).equals_value(q)) return false;
  }
  return true;
}

bool c8a_density_proxy() {
  if (g_densities.size() != 20) return false;  // criterion 5 must have run
  for (double d : g_densities)
    if (!(d <= 0.01)) return false;
  return true;
}

bool c8b_statistical_smoke() {
  Rng rng(808080);
  const Int N("1000000000000");
  double sum_count = 0, sum_expected = 0;
  for (int s = 0; s < 50; ++s) {
    const ThetaSpec theta = sample_exp_quadratic(rng);
    const CountStats cs = count_statistics(theta, N);
    sum_count += cs.count.get_d();
    sum_expected += cs.expected.mid().to_rat().get_d();
  }
  const double ratio = sum_expected > 0 ? sum_count / sum_expected : 0;
  std::printf("       aggregate count %.0f vs expected %.2f, ratio %.3f\n", sum_count,
              sum_expected, ratio);
  return ratio >= 0.5 && ratio <= 2.0;
}

bool c9_negative_symmetry() {
  const ThetaSpec theta = ThetaSpec::exp_quadratic(Quadratic::sqrt_of(Rat(2)));
  for (long n = 1; n <= 1000; ++n) {
    const FloorDecision pos = m_prime(theta, Int(n));
    const FloorDecision neg = m_prime(theta, Int(-n));
    if (!pos.decided() || !neg.decided()) return false;
    if (neg.value != -pos.value - 2) return false;
  }
  return true;
}

}  // namespace

int main() {
  std::printf("fproots acceptance suite\n");
  criterion(1, "theta = 2 endpoints: enumeration to 10^15 gives {1, 777451915729368}",
            c1_log2_endpoints);
  criterion(2, "theta = e^sqrt2 identity on [-10^4, 10^4] and zero candidates to 10^12",
            c2_root2_identity);
  criterion(3, "rational bound: A_theta within [1, p^2/6q) for 20 pairs",
            c3_rational_bound);
  criterion(4, "families: verify_empty c=1..10 (K=25, N=10^4), verify_infinite c=1..10 (K=20)",
            c4_families);
  criterion(5, "oracle equivalence on 20 sampled theta in (1, e^3), N = 10^5",
            c5_oracle_equivalence);
  criterion(6, "f(t) sandwich, monotonicity, and the doubling set identity",
            c6_f_analytics);
  criterion(7, "CF engine invariants on 100 random quadratics x 50 terms", c7_cf_engine);
  criterion(8, "density proxy <= 0.01 at N = 10^5 for every sampled theta",
            c8a_density_proxy);
  criterion(8, "statistical smoke: aggregate ratio in [0.5, 2.0] at N = 10^12 (warn-only)",
            c8b_statistical_smoke, /*warn_only=*/true);
  criterion(9, "negative-n symmetry M'(-n) = -M'(n) - 2 for n = 1..10^3",
            c9_negative_symmetry);
  if (g_failures == 0) {
    std::printf("all criteria passed\n");
  } else {
    std::printf("%d criterion(s) failed\n", g_failures);
  }
  return g_failures == 0 ? 0 : 1;
}

// Copyright 2026 the fproots authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "fproots/mtheta.hpp"
#include "fproots/sampling.hpp"
#include "oracles.hpp"

using namespace fproots;

namespace {

// Strict sandwich t/12 - t^3/720 < f(t) < t/12 at the ball level.
bool f_sandwich_holds(const Rat& t, long prec) {
  const Ball f = f_eval(Real(t), prec);
  const Rat upper = t / 12;
  const Rat lower = upper - t * t * t / 720;
  return lower < f.lo().to_rat() && f.hi().to_rat() < upper;
}

}  // namespace

TEST_CASE("f(1) sits inside (59/720, 1/12)") {
  const Ball f = f_eval(Real(Rat(1)), 100);
  CHECK(f.lo().to_rat() > Rat(59, 720));
  CHECK(f.hi().to_rat() < Rat(1, 12));
  // Spot value 0.081977...
  CHECK(f.lo().to_rat() > Rat(81976, 1000000));
  CHECK(f.hi().to_rat() < Rat(81978, 1000000));
}

TEST_CASE("f(t) vanishes as t -> 0+") {
  for (long j = 5; j <= 20; ++j) {
    Rat t(1);
    mpq_div_2exp(t.get_mpq_t(), t.get_mpq_t(), j);
    const Ball f = f_eval(Real(t), 80);
    CHECK(f.lo().to_rat() > 0);
    // f(t) < t/12 < 2^-j / 12
    CHECK(f.hi().to_rat() < t);
    CHECK(f.width_leq_2exp(80));
  }
}

TEST_CASE("f sandwich at t = 1/2 and on random rational t in (0,1)") {
  CHECK(f_sandwich_holds(Rat(1, 2), 90));
  Rng rng(424242);
  for (int i = 0; i < 1000; ++i) {
    const Rat t = random_unit_rat(rng, 100000);
    CHECK(f_sandwich_holds(t, 110));
  }
}

TEST_CASE("f is strictly increasing at the interval level") {
  Rng rng(555);
  RefinePolicy policy;
  for (int i = 0; i < 300; ++i) {
    Rat t1 = random_unit_rat(rng, 10000);
    Rat t2 = random_unit_rat(rng, 10000) + Rat(rng.range(0, 2));
    if (t1 == t2) continue;
    if (t1 > t2) std::swap(t1, t2);
    const Real f1 = f_real(Real(t1)), f2 = f_real(Real(t2));
    CHECK(certified_less(f1, f2, policy) == Tri::True);
  }
}

TEST_CASE("f rejects nonpositive arguments") {
  CHECK_THROWS_AS(f_eval(RealSpec::rational(Rat(0)), 50), input_error);
  CHECK_THROWS_AS(f_eval(RealSpec::rational(Rat(-1, 2)), 50), input_error);
}

TEST_CASE("fractional-part doubling set identity on exact rationals") {
  Rng rng(90210);
  long checked = 0;
  while (checked < 10000) {
    Rat a = random_unit_rat(rng, 1000);
    Rat b = random_unit_rat(rng, 1000);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    const Rat t = Rat(rng.range(-50, 50)) + random_unit_rat(rng, 997);
    const Rat ft = frac_rat(t);
    const Rat f2t = frac_rat(2 * t);
    const bool lhs = a / 2 <= ft && ft < b / 2;
    const bool in_double = a <= f2t && f2t < b;
    const bool in_shift = (a + 1) / 2 <= ft && ft < (b + 1) / 2;
    CHECK(lhs == (in_double && !in_shift));
    ++checked;
  }
}

TEST_CASE("m_prime exact paths for rational theta") {
  const ThetaSpec two = ThetaSpec::rational(Rat(2));
  const FloorDecision m1 = m_prime(two, Int(1));
  CHECK(m1.kind == FloorDecision::Kind::ExactInteger);
  CHECK(m1.value == 1);
  // 1/(sqrt2 - 1) = 1 + sqrt2 -> floor 2, exact quadratic path.
  const FloorDecision m2 = m_prime(two, Int(2));
  CHECK(m2.kind == FloorDecision::Kind::Decided);
  CHECK(m2.value == 2);
  CHECK(m2.precision_bits == 0);  // no interval refinement involved
  // Negative n through the exact path: M'(-1) = floor(1/(1/2 - 1)) = -2.
  const FloorDecision mn1 = m_prime(two, Int(-1));
  CHECK(mn1.kind == FloorDecision::Kind::ExactInteger);
  CHECK(mn1.value == -2);
  // theta = 9/4, n = 2: root 3/2, 1/(1/2) = 2 exactly.
  const FloorDecision m94 = m_prime(ThetaSpec::rational(Rat(9, 4)), Int(2));
  CHECK(m94.kind == FloorDecision::Kind::ExactInteger);
  CHECK(m94.value == 2);
  CHECK_THROWS_AS(m_prime(two, Int(0)), input_error);
}

TEST_CASE("m_prime certified path matches asymptotic expectations") {
  // theta = 2, larger n: M'(n) = floor(n/log2 - 1/2) for 1 < n < B_35.
  const ThetaSpec two = ThetaSpec::rational(Rat(2));
  for (long n = 2; n <= 60; ++n) {
    const FloorDecision mp = m_prime(two, Int(n));
    const FloorDecision tv = typical_value(two, Int(n));
    REQUIRE(mp.decided());
    REQUIRE(tv.decided());
    CHECK(mp.value == tv.value);
  }
  // n = 1 is the atypical endpoint: M'(1) = 1 but typical value is 0.
  CHECK(m_prime(two, Int(1)).value == 1);
  CHECK(typical_value(two, Int(1)).value == 0);
}

TEST_CASE("negative-n symmetry M'(-n) = -M'(n) - 2 for theta = e^sqrt(2)") {
  const ThetaSpec theta = ThetaSpec::exp_quadratic(Quadratic::sqrt_of(Rat(2)));
  for (long n = 1; n <= 100; ++n) {
    const FloorDecision pos = m_prime(theta, Int(n));
    const FloorDecision neg = m_prime(theta, Int(-n));
    REQUIRE(pos.decided());
    REQUIRE(neg.decided());
    CHECK(neg.value == -pos.value - 2);
  }
}

TEST_CASE("m_theta: agreement region, fractional-part region, domain errors") {
  const ThetaSpec two = ThetaSpec::rational(Rat(2));
  for (long n = 2; n <= 40; ++n) {
    CHECK(m_theta(two, Int(n)).value == m_prime(two, Int(n)).value);
  }
  // theta = 2, n = 1: {2} = 0 exactly.
  CHECK_THROWS_AS(m_theta(two, Int(1)), input_error);
  // theta = 8, n = 3: 8^(1/3) = 2.
  CHECK_THROWS_AS(m_theta(ThetaSpec::rational(Rat(8)), Int(3)), input_error);
  // M' is still fine there.
  CHECK(m_prime(ThetaSpec::rational(Rat(8)), Int(3)).value == 1);
  // theta = e^sqrt2, n = 3: both sides equal 1.
  const ThetaSpec es2 = ThetaSpec::exp_quadratic(Quadratic::sqrt_of(Rat(2)));
  CHECK(m_theta(es2, Int(3)).value == 1);
  CHECK(typical_value(es2, Int(3)).value == 1);
  // theta = e^3, n = 1: M' = 0 while the typical value is -1, so 1 is atypical.
  const ThetaSpec e3 = ThetaSpec::exp_rational(Rat(3));
  CHECK(m_prime(e3, Int(1)).value == 0);
  CHECK(typical_value(e3, Int(1)).value == -1);
  // n <= log2(theta): theta = 20, n = 2: sqrt(20) = 4.47..., M = floor(1/0.472) = 2.
  CHECK(m_theta(ThetaSpec::rational(Rat(20)), Int(2)).value == 2);
  // ... and n = 1: {20} = 0 is a domain error, but theta = 41/2 works.
  CHECK(m_theta(ThetaSpec::rational(Rat(41, 2)), Int(1)).value == 2);
}

TEST_CASE("typical_value exact rational path") {
  Rng rng(2024);
  for (int i = 0; i < 300; ++i) {
    const Rat pq(rng.range(1, 99), rng.range(1, 40));
    const ThetaSpec theta = ThetaSpec::exp_rational(pq);
    const long n = rng.range(1, 100000);
    const FloorDecision tv = typical_value(theta, Int(n));
    Rat v = Rat(n) / pq - Rat(1, 2);
    v.canonicalize();
    CHECK(tv.decided());
    CHECK(tv.value == floor_rat(v));
  }
  CHECK(typical_value(ThetaSpec::rational(Rat(2)), Int(2)).value == 2);
  CHECK(typical_value(ThetaSpec::rational(Rat(2)), Int(777)).value == 1120);
}

TEST_CASE("is_atypical: the theta = 2 endpoints and e^sqrt2 emptiness") {
  RefinePolicy policy;
  const ThetaSpec two = ThetaSpec::rational(Rat(2));
  const MembershipResult a1 = is_atypical(two, Int(1), policy, true);
  CHECK(a1.decided());
  CHECK(a1.atypical);
  CHECK(a1.paranoid_checked);

  const MembershipResult b35 =
      is_atypical(two, Int("777451915729368"), policy, true);
  CHECK(b35.decided());
  CHECK(b35.atypical);

  // A couple of interior points are typical.
  for (long n : {2L, 3L, 100L, 1000L}) {
    const MembershipResult m = is_atypical(two, Int(n), policy, true);
    CHECK(m.decided());
    CHECK(!m.atypical);
  }

  const ThetaSpec es2 = ThetaSpec::exp_quadratic(Quadratic::sqrt_of(Rat(2)));
  for (long n = 1; n <= 2000; ++n) {
    const MembershipResult m = is_atypical(es2, Int(n), policy, false);
    REQUIRE(m.decided());
    CHECK(!m.atypical);
  }
}

TEST_CASE("SecondEquiv window at the theta=2 endpoint n = B_35") {
  // {2n/log2} >= 1 - 2 f(log2/n) at the atypical endpoint.
  RefinePolicy policy;
  const ThetaSpec two = ThetaSpec::rational(Rat(2));
  const Int n("777451915729368");
  const Real f = f_real(two.log_theta() / Real(n));
  const Real x2n = Real(Int(2 * n)) * two.recip_log();
  CHECK(frac_compare(x2n, Real(1) - Real(Rat(2)) * f, false, policy) == Tri::True);
}

TEST_CASE("dichotomy: M in {typical, typical+1} and branch matches membership") {
  Rng rng(1111);
  RefinePolicy policy;
  std::vector<ThetaSpec> thetas;
  thetas.push_back(ThetaSpec::rational(Rat(2)));
  thetas.push_back(ThetaSpec::rational(Rat(7, 2)));
  thetas.push_back(ThetaSpec::exp_rational(Rat(3)));
  thetas.push_back(ThetaSpec::exp_rational(Rat(5, 2)));
  for (int i = 0; i < 4; ++i) thetas.push_back(sample_exp_quadratic(rng));
  for (const ThetaSpec& theta : thetas) {
    for (int i = 0; i < 130; ++i) {
      const Int n(rng.range(4, 2000));  // above log2(theta) for theta < e^3-ish
      const FloorDecision m = m_theta(theta, n, policy);
      const FloorDecision tv = typical_value(theta, n, policy);
      REQUIRE(m.decided());
      REQUIRE(tv.decided());
      const MembershipResult mem = is_atypical(theta, n, policy, true);
      REQUIRE(mem.decided());
      if (mem.atypical) {
        CHECK(m.value == tv.value + 1);
      } else {
        CHECK(m.value == tv.value);
      }
    }
  }
}

TEST_CASE("membership kernel is reproducible at the recorded precision") {
  const ThetaSpec two = ThetaSpec::rational(Rat(2));
  RefinePolicy policy;
  // n = 1 decides through the exact boundary route.
  const MembershipResult m1 = is_atypical(two, Int(1), policy, false);
  REQUIRE(m1.decided());
  CHECK(m1.via == MembershipResult::Via::ExactPath);
  const MembershipResult e1 = decide_membership_at(two, Int(1), m1.precision_bits);
  const MembershipResult e2 = decide_membership_at(two, Int(1), m1.precision_bits);
  REQUIRE(e1.decided());
  CHECK(e1.atypical == m1.atypical);
  REQUIRE(e1.frac_ball.has_value());
  REQUIRE(e2.frac_ball.has_value());
  CHECK(*e1.frac_ball == *e2.frac_ball);
  // n = 3 goes through the window test, with an f witness.
  const MembershipResult m3 = is_atypical(two, Int(3), policy, false);
  REQUIRE(m3.decided());
  CHECK(!m3.atypical);
  const MembershipResult w1 = decide_membership_at(two, Int(3), m3.precision_bits);
  const MembershipResult w2 = decide_membership_at(two, Int(3), m3.precision_bits);
  REQUIRE(w1.decided());
  REQUIRE(w1.f_ball.has_value());
  REQUIRE(w2.f_ball.has_value());
  CHECK(*w1.f_ball == *w2.f_ball);
  REQUIRE(w1.frac_ball.has_value());
  CHECK(*w1.frac_ball == *w2.frac_ball);
}

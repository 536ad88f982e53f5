// Copyright 2026 the fproots authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "fproots/contfrac.hpp"
#include "fproots/sampling.hpp"
#include "oracles.hpp"

using namespace fproots;

namespace {

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
  return a;  // F_k with F_1 = F_2 = 1
}

}  // namespace

TEST_CASE("cf_of_quadratic: the classic expansions") {
  const CFExpansion s2 = cf_of_quadratic(Quadratic::sqrt_of(Rat(2)));
  CHECK(s2.periodic());
  CHECK(s2.input().head == std::vector<Int>{Int(1)});
  CHECK(s2.input().period == std::vector<Int>{Int(2)});

  const Quadratic golden(Int(1), Int(1), Int(2), Int(5));  // (1+sqrt5)/2
  const CFExpansion g = cf_of_quadratic(golden);
  CHECK(g.periodic());
  for (long k = 0; k < 6; ++k) CHECK(g.term(k) == 1);
  CHECK(g.input().period.size() == 1);

  // 1/sqrt(5) = [0; 2, period(4)]
  const CFExpansion r5 = cf_of_quadratic(Quadratic::sqrt_of(Rat(5)).recip());
  CHECK(r5.input().head == std::vector<Int>{Int(0), Int(2)});
  CHECK(r5.input().period == std::vector<Int>{Int(4)});
  // ... and reconstructs its source exactly.
  const Quadratic back = cf_periodic_value(r5.input());
  CHECK(back == Quadratic::sqrt_of(Rat(5)).recip());

  CHECK_THROWS_AS(cf_of_quadratic(Quadratic(Rat(3, 7))), input_error);
}

TEST_CASE("convergents: base cases and the sqrt(2) ladder") {
  CFInput two_one;
  two_one.head = {Int(2)};
  two_one.period = {Int(1)};
  const CFExpansion e = CFExpansion::exact_periodic(two_one, std::nullopt);
  CHECK(e.convergent(0).A == 2);
  CHECK(e.convergent(0).B == 1);
  CHECK(e.convergent(1).A == 3);
  CHECK(e.convergent(1).B == 1);

  const CFExpansion s2 = cf_of_quadratic(Quadratic::sqrt_of(Rat(2)));
  CHECK(s2.convergent(3).A == 17);
  CHECK(s2.convergent(3).B == 12);
}

TEST_CASE("CF invariants on random quadratics") {
  Rng rng(20260401);
  const long terms = 40;
  for (int trial = 0; trial < 30; ++trial) {
    const Quadratic q = random_quadratic(rng);
    const CFExpansion cf = cf_of_quadratic(q);
    for (long k = 1; k <= terms; ++k) {
      const Convergent c = cf.convergent(k);
      const Convergent p = cf.convergent(k - 1);
      // Determinant identity A_k B_{k-1} - A_{k-1} B_k = (-1)^{k-1}.
      CHECK(c.A * p.B - p.A * c.B == ((k - 1) % 2 == 0 ? 1 : -1));
      // Fibonacci lower bound.
      CHECK(c.B >= fib(k + 1));
      CHECK(gcd(c.A, c.B) == 1);
    }
    // Alternating enclosure: even convergents increase below q, odd
    // convergents decrease above.
    for (long k = 2; k <= terms; ++k) {
      const Convergent c = cf.convergent(k);
      const Convergent pp = cf.convergent(k - 2);
      Rat vc(c.A, c.B), vpp(pp.A, pp.B);
      vc.canonicalize();
      vpp.canonicalize();
      if (k % 2 == 0) {
        CHECK(vpp < vc);
        CHECK(q.cmp(vc) > 0);
      } else {
        CHECK(vc < vpp);
        CHECK(q.cmp(vc) < 0);
      }
      // |q - A_k/B_k| < 1/(B_k B_{k+1})
      const Quadratic diff = q - Quadratic(vc);
      const Rat bound(Int(1), c.B * cf.convergent(k + 1).B);
      CHECK((diff.sign() >= 0 ? diff : -diff).cmp(bound) < 0);
    }
    // Exact error law: q - A_k/B_k = (-1)^k / (B_k^2 lambda_{k+1}).
    for (long k = 1; k <= 12; ++k) {
      const Convergent c = cf.convergent(k);
      const LambdaValue lam = cf.lambda(k + 1, 64);
      REQUIRE(lam.exact.has_value());
      Rat vc(c.A, c.B);
      vc.canonicalize();
      const Quadratic lhs = q - Quadratic(vc);
      const Quadratic rhs =
          (Quadratic(Int(k % 2 == 0 ? 1 : -1)) / (Quadratic(Int(c.B * c.B)) * *lam.exact));
      CHECK(lhs.equals_value(rhs));
      // Trivial bounds a_{k+1} < lambda_{k+1} < a_{k+1} + 2.
      CHECK(lam.exact->cmp(Rat(cf.term(k + 1))) > 0);
      CHECK(lam.exact->cmp(Rat(cf.term(k + 1) + 2)) < 0);
    }
    // Round-trip through the exact value.
    const Quadratic v = cf_periodic_value(cf.input());
    CHECK(v.equals_value(q));
  }
}

TEST_CASE("cf_of_real agrees with cf_of_quadratic term-by-term") {
  Rng rng(31337);
  for (int trial = 0; trial < 25; ++trial) {
    const Quadratic q = random_quadratic(rng);
    const CFExpansion exact = cf_of_quadratic(q);
    const CFExpansion interval = cf_of_real(Real(q), 50);
    REQUIRE(interval.certified_upto() == 50);
    for (long k = 0; k <= 50; ++k) CHECK(interval.term(k) == exact.term(k));
    // The source lies strictly between the last two convergents.
    const Convergent a = interval.convergent(50);
    const Convergent b = interval.convergent(49);
    Rat va(a.A, a.B), vb(b.A, b.B);
    va.canonicalize();
    vb.canonicalize();
    CHECK(((q.cmp(va) > 0 && q.cmp(vb) < 0) || (q.cmp(va) < 0 && q.cmp(vb) > 0)));
  }
}

TEST_CASE("cf_of_real on 2/log 2 matches the independent extraction") {
  const RealSpec spec = RealSpec::recip_log_theta(Rat(2), 2);
  const CFExpansion cf = cf_of_real(spec, 40);
  REQUIRE(cf.certified_upto() >= 36);
  // Independent oracle: 2/log2 bracketed from the log 2 series at 260 bits.
  const auto [l2lo, l2hi] = oracle::log2_interval(260);
  const std::vector<Int> want = oracle::cf_prefix(2 / l2hi, 2 / l2lo, 37);
  REQUIRE(want.size() == 37);
  for (size_t k = 0; k < want.size(); ++k) CHECK(cf.term(k) == want[k]);
  // Leading terms as published.
  const std::vector<Int> head = {Int(2), Int(1), Int(7), Int(1),
                                 Int(2), Int(1), Int(1), Int(1)};
  for (size_t k = 0; k < head.size(); ++k) CHECK(cf.term(k) == head[k]);
  CHECK(cf.convergent(1).B == 1);
  CHECK(cf.convergent(35).B == Int("777451915729368"));
  // lambda_2 out of its exact head + tail enclosure: 8.72 < lambda_2 < 8.73.
  const LambdaValue l2 = cf.lambda(2, 96);
  CHECK(l2.ball.lo().to_rat() > Rat(872, 100));
  CHECK(l2.ball.hi().to_rat() < Rat(873, 100));

  CHECK_THROWS_AS(cf_of_real(RealSpec::rational(Rat(7, 3)), 5), input_error);
}

TEST_CASE("value_from_cf: closed forms and round-trips") {
  CFInput golden;
  golden.head = {Int(1)};
  golden.period = {Int(1)};
  const RealSpec g = value_from_cf(golden);
  const Quadratic want(Int(1), Int(1), Int(2), Int(5));
  CHECK(std::get<RealSpec::QuadIrr>(g.variant()).q == want);

  for (long c = 1; c <= 20; ++c) {
    CFInput ell;
    ell.head = {Int(1)};
    ell.period = {Int(c), Int(1)};
    const RealSpec v = value_from_cf(ell);
    const Quadratic closed(Int(c), Int(1), Int(2 * c), Int(c * (c + 4)));
    CHECK(std::get<RealSpec::QuadIrr>(v.variant()).q == closed);
  }

  CFInput r5;
  r5.head = {Int(0), Int(2)};
  r5.period = {Int(4)};
  CHECK(std::get<RealSpec::QuadIrr>(value_from_cf(r5).variant()).q ==
        Quadratic::sqrt_of(Rat(5)).recip());

  CFInput finite;
  finite.head = {Int(2), Int(1), Int(7)};
  CHECK(std::get<RealSpec::Rational>(value_from_cf(finite).variant()).v == Rat(23, 8));

  // Round-trip: cf_of_quadratic(value_from_cf(a)) reproduces the quotient
  // sequence of a (the canonical expansion may write the same sequence with
  // a shorter preperiod or period).
  Rng rng(5150);
  for (int trial = 0; trial < 40; ++trial) {
    CFInput a;
    const long pre = rng.range(0, 2);
    for (long i = 0; i < pre; ++i)
      a.head.push_back(Int(i == 0 ? rng.range(0, 6) : rng.range(1, 6)));
    const long plen = rng.range(1, 3);
    for (long i = 0; i < plen; ++i) a.period.push_back(Int(rng.range(1, 6)));
    const RealSpec v = value_from_cf(a);
    const CFExpansion back = cf_of_quadratic(std::get<RealSpec::QuadIrr>(v.variant()).q);
    for (long k = 0; k <= 30; ++k) CHECK(back.term(k) == a.term(k));
  }
}

TEST_CASE("halve_cf: pattern, exactness, and error cases") {
  // [0;2,4,a3,4,a5,...] -> [0;4,2,2a3,2,2a5,...]
  CFInput ell;
  ell.head = {Int(0), Int(2)};
  ell.period = {Int(4), Int(7)};
  const CFInput h = halve_cf(ell);
  CHECK(h.head == std::vector<Int>{Int(0), Int(4)});
  CHECK(h.period == std::vector<Int>{Int(2), Int(14)});

  // Halving [2; period(2)] = 1+sqrt(2): value check against exact half.
  CFInput s2p1;
  s2p1.head = {Int(2)};
  s2p1.period = {Int(2)};
  const CFInput hh = halve_cf(s2p1);
  const Quadratic half = cf_periodic_value(hh);
  const Quadratic orig = cf_periodic_value(s2p1);
  CHECK(half == orig / Quadratic(Int(2)));

  // Identity on random even-pattern periodic inputs.
  Rng rng(777);
  for (int trial = 0; trial < 30; ++trial) {
    CFInput a;
    a.head = {Int(2 * rng.range(0, 6)), Int(rng.range(1, 9))};
    a.period = {Int(2 * rng.range(1, 6)), Int(rng.range(1, 9))};
    const CFInput hv = halve_cf(a);
    CHECK(cf_periodic_value(hv) == cf_periodic_value(a) / Quadratic(Int(2)));
  }

  CFInput bad;
  bad.head = {Int(2), Int(3), Int(5)};  // a2 = 5 odd
  bad.period = {Int(2), Int(3)};
  CHECK_THROWS_AS(halve_cf(bad), input_error);
}

TEST_CASE("best_approx_witness") {
  RefinePolicy policy;
  // x = 2/log 2, 3/1: |2.88539 - 3| = 0.1146 < 1/2.
  const auto w1 =
      best_approx_witness(RealSpec::recip_log_theta(Rat(2), 2), Int(3), Int(1), policy);
  REQUIRE(w1.has_value());
  CHECK(w1->c == 1);
  CHECK(w1->k == 1);
  // x = sqrt(2), 17/12.
  const auto w2 = best_approx_witness(RealSpec::quad_irr(Quadratic::sqrt_of(Rat(2))),
                                      Int(17), Int(12), policy);
  REQUIRE(w2.has_value());
  CHECK(w2->c == 1);
  CHECK(w2->k == 3);
  // Far away: empty.
  const auto w3 = best_approx_witness(RealSpec::quad_irr(Quadratic::sqrt_of(Rat(2))),
                                      Int(2), Int(12), policy);
  CHECK(!w3.has_value());
  // Scaled convergent: 34/24 = 17/12 with c = 2 needs lambda_4 > 8; the
  // sqrt(2) tail has lambda_4 < 4, so the precondition |x - m/n| <= 1/(2n^2)
  // must already fail.
  const auto w4 = best_approx_witness(RealSpec::quad_irr(Quadratic::sqrt_of(Rat(2))),
                                      Int(34), Int(24), policy);
  CHECK(!w4.has_value());
}

TEST_CASE("lambda for truncated expansions flags coarseness honestly") {
  const RealSpec spec = RealSpec::recip_log_theta(Rat(2), 2);
  const CFExpansion cf = cf_of_real(spec, 10);
  // Late lambda with few remaining terms: still a valid enclosure, wide.
  const LambdaValue late = cf.lambda(10, 200);
  CHECK(late.coarse);
  const LambdaValue early = cf.lambda(2, 10);
  CHECK(!early.coarse);
  // k = certified_upto + 1 derives the tail from the source value; any
  // lambda exceeds its leading quotient, so it is at least 1.
  const LambdaValue next = cf.lambda(11, 40);
  CHECK(next.ball.hi().to_rat() > 1);
  CHECK_THROWS_AS(cf.lambda(12, 40), input_error);
}

// Copyright 2026 the fproots authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "fproots/json_io.hpp"
#include "fproots/sampling.hpp"

using namespace fproots;

TEST_CASE("scan_direct: the small worked examples") {
  const EnumerationReport r2 = scan_direct(ThetaSpec::rational(Rat(2)), Int(100));
  CHECK(r2.complete);
  CHECK(r2.members == std::vector<Int>{Int(1)});
  CHECK(r2.certificates.size() == 1);

  const EnumerationReport rs2 =
      scan_direct(ThetaSpec::exp_quadratic(Quadratic::sqrt_of(Rat(2))), Int(1000));
  CHECK(rs2.complete);
  CHECK(rs2.members.empty());

  const EnumerationReport re3 = scan_direct(ThetaSpec::exp_rational(Rat(3)), Int(10));
  CHECK(re3.complete);
  CHECK(re3.members == std::vector<Int>{Int(1)});
}

TEST_CASE("enumerate_continuant: theta = 2 to 10^15 finds the two endpoints") {
  const EnumerationReport rep =
      enumerate_continuant(ThetaSpec::rational(Rat(2)), Int("1000000000000000"));
  CHECK(rep.complete);
  REQUIRE(rep.members.size() == 2);
  CHECK(rep.members[0] == 1);
  CHECK(rep.members[1] == Int("777451915729368"));
  // Exactly two candidates pass the lambda filter (c = 1 at k = 1 and k = 18).
  CHECK(rep.candidates_examined == 2);
  REQUIRE(rep.certificates.size() == 2);
  CHECK(rep.certificates[0].c.has_value());
  CHECK(*rep.certificates[0].c == 1);
  CHECK(*rep.certificates[0].k == 1);
  CHECK(*rep.certificates[1].k == 18);
}

TEST_CASE("enumerate_continuant: input validation") {
  CHECK_THROWS_AS(enumerate_continuant(ThetaSpec::exp_rational(Rat(2)), Int(100)),
                  input_error);
  // theta = e^(2*sqrt5), log = 4.47 > 3.
  const Quadratic w(Int(0), Int(2), Int(1), Int(5));
  CHECK_THROWS_AS(enumerate_continuant(ThetaSpec::exp_quadratic(w), Int(100)),
                  input_error);
}

TEST_CASE("oracle equivalence: continuant enumeration against the direct scan") {
  Rng rng(987654321);
  for (int s = 0; s < 5; ++s) {
    const ThetaSpec theta = sample_exp_quadratic(rng);
    const Int N(3000);
    const EnumerationReport fast = enumerate_continuant(theta, N);
    const EnumerationReport slow = scan_direct(theta, N);
    REQUIRE(fast.complete);
    REQUIRE(slow.complete);
    CHECK(fast.members == slow.members);
    // Necessity: every direct hit decomposes as c*B_{2k-1}.
    for (size_t i = 0; i < slow.members.size(); ++i) {
      bool found = false;
      for (const AtypicalCertificate& c : fast.certificates)
        if (c.n == slow.members[i] && c.c.has_value()) found = true;
      CHECK(found);
    }
  }
}

TEST_CASE("q_set_membership: two routes agree and witness the window") {
  RefinePolicy policy;
  // theta = e^(2 sqrt 5): the infinite-family base point.
  const Quadratic w(Int(0), Int(2), Int(1), Int(5));
  const ThetaSpec theta = ThetaSpec::exp_quadratic(w);
  long members = 0;
  for (long n = 1; n <= 10000; ++n) {
    const QSetResult q = q_set_membership(theta, Int(n), policy);
    REQUIRE(q.member != Tri::Undecided);
    if (q.member == Tri::True) {
      ++members;
      REQUIRE(q.witness_m.has_value());
      // 0 < m - n/log theta < 1/(2n), checked exactly in the field.
      const Quadratic gap =
          Quadratic(*q.witness_m) - Quadratic(Int(n)) / w;
      CHECK(gap.sign() > 0);
      CHECK(gap.cmp(Rat(1, 2 * n)) < 0);
      CHECK(q.c.has_value());
    }
  }
  CHECK(members > 0);

  // The continuant direction: odd-index continuants of 1/log theta whose
  // tau exceeds 2 are members.
  CFExpansion cf = theta.cf_recip_log(Int(10000), 6, policy);
  for (long i = 1; i <= 5; ++i) {
    const Int S = cf.convergent(2 * i - 1).B;
    const LambdaValue tau = cf.lambda(2 * i, 96);
    REQUIRE(tau.exact.has_value());
    if (tau.exact->cmp(Rat(2)) > 0) {
      CHECK(q_set_membership(theta, S, policy).member == Tri::True);
    }
  }

  // Any n with {n/log theta} <= 1/2 fails by the witness route.
  for (long n = 1; n <= 200; ++n) {
    const Quadratic frac = (Quadratic(Int(n)) / w).frac();
    if (frac.cmp(Rat(1, 2)) <= 0) {
      CHECK(q_set_membership(theta, Int(n), policy).member == Tri::False);
    }
  }
}

TEST_CASE("rational_bound: Theorem-2 style scans") {
  const RationalBoundReport r3 = rational_bound(Int(3), Int(1));
  CHECK(r3.bound == Rat(3, 2));
  CHECK(r3.pass);
  CHECK(r3.scan.members == std::vector<Int>{Int(1)});

  const RationalBoundReport r10 = rational_bound(Int(10), Int(1));
  CHECK(r10.bound == Rat(50, 3));
  CHECK(r10.pass);
  for (const Int& n : r10.scan.members) CHECK(n < 17);

  const RationalBoundReport r2 = rational_bound(Int(2), Int(1));
  CHECK(r2.pass);
  CHECK(r2.scan.members.empty());

  CHECK_THROWS_AS(rational_bound(Int(1), Int(2)), input_error);
}

TEST_CASE("classify_continuant: the infinite-family continuants are atypical") {
  RefinePolicy policy;
  const Quadratic w(Int(0), Int(2), Int(1), Int(5));  // log theta = 2 sqrt 5
  const ThetaSpec theta = ThetaSpec::exp_quadratic(w);
  for (long k = 3; k <= 12; ++k) {
    const ClassifyOutcome out = classify_continuant(theta, k, Rat(2), policy);
    CHECK(out.k0 == 3);
    CHECK(out.lemma_applied);
    CHECK(out.cls == ContinuantClass::Atypical);
  }
  // k below the computed k0 names it.
  CHECK_THROWS_WITH_AS(classify_continuant(theta, 2, Rat(2), policy),
                       doctest::Contains("k0"), input_error);
  // Small lambda: theta = e^sqrt2 has every lambda_{2k} < 4 < 6/(log - delta),
  // so the lemma does not apply and the direct test says Typical.
  const ThetaSpec es2 = ThetaSpec::exp_quadratic(Quadratic::sqrt_of(Rat(2)));
  const ClassifyOutcome t = classify_continuant(es2, 6, std::nullopt, policy);
  CHECK(!t.lemma_applied);
  CHECK(t.cls == ContinuantClass::Typical);
  // Range guard: theta >= e^6.
  const Quadratic big(Int(0), Int(3), Int(1), Int(5));  // 3 sqrt 5 = 6.7
  CHECK_THROWS_AS(classify_continuant(ThetaSpec::exp_quadratic(big), 3, std::nullopt, policy),
                  input_error);
}

TEST_CASE("certificates replay bit-for-bit through JSON") {
  const EnumerationReport rep =
      enumerate_continuant(ThetaSpec::rational(Rat(2)), Int("1000000000000000"));
  const Json j = report_to_json(rep, /*with_timestamp=*/false);
  // Round-trip the JSON text.
  const std::string text = j.dump(2);
  const Json parsed = Json::parse(text);
  const ReplayResult rr = replay_report(parsed);
  CHECK(rr.total == 2);
  CHECK(rr.ok == 2);
  CHECK(rr.failures.empty());

  // A tampered certificate fails replay.
  Json bad = parsed;
  bad["certificates"][0]["atypical"] = false;
  const ReplayResult rb = replay_report(bad);
  CHECK(rb.ok == 1);
  CHECK(rb.failures.size() == 1);
}

TEST_CASE("scan_direct undecided entries stay explicit") {
  // A cap so low that even the exact route cannot certify the typical value
  // comparison for every n forces explicit undecided entries rather than
  // guesses. With theta = 2 the window route needs ~bits(n) precision; a
  // 16-bit cap cannot even confirm the floor of n/log2 for large n.
  RefinePolicy tiny;
  tiny.start_bits = 8;
  tiny.cap_bits = 16;
  const EnumerationReport rep = scan_direct(ThetaSpec::rational(Rat(2)), Int(40),
                                            tiny);
  // Nothing may be *wrongly* classified: members must be a subset of {1}.
  for (const Int& n : rep.members) CHECK(n == 1);
  CHECK((rep.complete || !rep.undecided.empty()));
}

// Copyright 2026 the fproots authors
// SPDX-License-Identifier: Apache-2.0

#include "fproots/json_io.hpp"

#include "fproots/parse.hpp"

namespace fproots {

namespace {

Json dyadic_to_json(const Dyadic& d) {
  return Json{{"m", dec(d.mant())}, {"e", d.exp()}};
}

Dyadic dyadic_from_json(const Json& j) {
  return Dyadic(Int(j.at("m").get<std::string>()), j.at("e").get<long>());
}

std::string method_name(EnumerationReport::Method m) {
  switch (m) {
    case EnumerationReport::Method::Direct: return "direct";
    case EnumerationReport::Method::Continuant: return "continuant";
    case EnumerationReport::Method::Both: return "both";
  }
  return "direct";
}

std::string via_name(MembershipResult::Via v) {
  switch (v) {
    case MembershipResult::Via::FirstEquiv: return "first-equiv";
    case MembershipResult::Via::SecondEquiv: return "second-equiv";
    case MembershipResult::Via::ExactPath: return "exact";
  }
  return "first-equiv";
}

MembershipResult::Via via_from(const std::string& s) {
  if (s == "second-equiv") return MembershipResult::Via::SecondEquiv;
  if (s == "exact") return MembershipResult::Via::ExactPath;
  return MembershipResult::Via::FirstEquiv;
}

}  // namespace

Json ball_to_json(const Ball& b) {
  Json j;
  j["lo"] = dyadic_to_json(b.lo());
  j["hi"] = dyadic_to_json(b.hi());
  j["dec"] = dec_string(b.mid().to_rat(), 12);
  j["width"] = dec_string(b.width().to_rat(), 3);
  return j;
}

Ball ball_from_json(const Json& j) {
  return Ball(dyadic_from_json(j.at("lo")), dyadic_from_json(j.at("hi")));
}

Json quadratic_to_json(const Quadratic& q) {
  return Json{{"a", dec(q.a())}, {"b", dec(q.b())}, {"c", dec(q.c())},
              {"d", dec(q.d())}, {"dec", dec_string(q.enclose(64).mid().to_rat(), 12)}};
}

Quadratic quadratic_from_json(const Json& j) {
  return Quadratic(Int(j.at("a").get<std::string>()), Int(j.at("b").get<std::string>()),
                   Int(j.at("c").get<std::string>()), Int(j.at("d").get<std::string>()));
}

Json cf_input_to_json(const CFInput& cf) {
  Json pre = Json::array(), per = Json::array();
  for (const Int& a : cf.head) pre.push_back(dec(a));
  for (const Int& a : cf.period) per.push_back(dec(a));
  Json j;
  j["preperiod"] = pre;
  if (cf.periodic()) j["period"] = per;
  return j;
}

Json certificate_to_json(const AtypicalCertificate& c) {
  Json j;
  j["n"] = dec(c.n);
  j["atypical"] = c.atypical;
  j["via"] = via_name(c.via);
  j["precision_bits"] = c.precision_bits;
  if (c.frac_exact) j["frac_exact"] = quadratic_to_json(*c.frac_exact);
  if (c.frac_ball) j["frac"] = ball_to_json(*c.frac_ball);
  if (c.f_ball) j["f"] = ball_to_json(*c.f_ball);
  if (c.c) {
    Json d;
    d["c"] = dec(*c.c);
    d["k"] = *c.k;
    if (c.lambda_ball) d["lambda_2k"] = ball_to_json(*c.lambda_ball);
    if (c.threshold_ball) d["threshold"] = ball_to_json(*c.threshold_ball);
    d["precision_bits"] = c.lambda_precision_bits;
    j["decomposition"] = d;
  }
  return j;
}

AtypicalCertificate certificate_from_json(const Json& j) {
  AtypicalCertificate c;
  c.n = Int(j.at("n").get<std::string>());
  c.atypical = j.at("atypical").get<bool>();
  c.via = via_from(j.at("via").get<std::string>());
  c.precision_bits = j.at("precision_bits").get<long>();
  if (j.contains("frac_exact")) c.frac_exact = quadratic_from_json(j.at("frac_exact"));
  if (j.contains("frac")) c.frac_ball = ball_from_json(j.at("frac"));
  if (j.contains("f")) c.f_ball = ball_from_json(j.at("f"));
  if (j.contains("decomposition")) {
    const Json& d = j.at("decomposition");
    c.c = Int(d.at("c").get<std::string>());
    c.k = d.at("k").get<long>();
    if (d.contains("lambda_2k")) c.lambda_ball = ball_from_json(d.at("lambda_2k"));
    if (d.contains("threshold")) c.threshold_ball = ball_from_json(d.at("threshold"));
    c.lambda_precision_bits = d.at("precision_bits").get<long>();
  }
  return c;
}

Json report_to_json(const EnumerationReport& r, bool with_timestamp) {
  Json j;
  j["schema_version"] = 1;
  j["kind"] = "enumeration-report";
  if (with_timestamp) j["generated_at"] = static_cast<long>(::time(nullptr));
  j["theta"] = r.theta;
  j["limit"] = dec(r.limit);
  j["method"] = method_name(r.method);
  j["complete"] = r.complete;
  j["candidates_examined"] = r.candidates_examined;
  Json members = Json::array();
  for (const Int& n : r.members) members.push_back(dec(n));
  j["members"] = members;
  Json undec = Json::array();
  for (const UndecidedEntry& u : r.undecided) {
    undec.push_back(Json{{"n", dec(u.n)}, {"precision_cap", u.precision_cap},
                         {"what", u.what}});
  }
  j["undecided"] = undec;
  Json certs = Json::array();
  for (const AtypicalCertificate& c : r.certificates) certs.push_back(certificate_to_json(c));
  j["certificates"] = certs;
  return j;
}

Json verify_report_to_json(const VerifyReport& r) {
  Json j;
  j["schema_version"] = 1;
  j["kind"] = "verify-report";
  j["pass"] = r.pass;
  Json lines = Json::array();
  for (const VerifyLine& l : r.lines) {
    lines.push_back(Json{{"check", l.what}, {"pass", l.pass}, {"detail", l.detail}});
  }
  j["checks"] = lines;
  Json certs = Json::array();
  for (const AtypicalCertificate& c : r.certificates) certs.push_back(certificate_to_json(c));
  j["certificates"] = certs;
  return j;
}

ReplayResult replay_report(const Json& report, const RefinePolicy& policy) {
  ReplayResult out;
  const ThetaSpec theta = ThetaSpec::parse(report.at("theta").get<std::string>());
  const Int limit = parse_big_int(report.at("limit").get<std::string>());
  for (const Json& cj : report.at("certificates")) {
    ++out.total;
    const AtypicalCertificate cert = certificate_from_json(cj);
    std::string why;
    const MembershipResult m = decide_membership_at(theta, cert.n, cert.precision_bits);
    if (!m.decided() || m.atypical != cert.atypical) {
      why = "membership decision did not reproduce";
    } else if (cert.frac_ball && (!m.frac_ball || !(*m.frac_ball == *cert.frac_ball))) {
      why = "fractional-part ball differs";
    } else if (cert.f_ball && (!m.f_ball || !(*m.f_ball == *cert.f_ball))) {
      why = "f ball differs";
    } else if (cert.frac_exact && (!m.frac_exact || !(*m.frac_exact == *cert.frac_exact))) {
      why = "exact fractional part differs";
    } else if (cert.c && cert.k) {
      // Re-verify the continuant filter at the recorded indices.
      CFExpansion cf = theta.cf_two_over_log(limit, 10, policy);
      const long idx = 2 * *cert.k - 1;
      if (idx > cf.certified_upto() || cf.convergent(idx).B * *cert.c != cert.n) {
        why = "continuant decomposition did not reproduce";
      } else {
        const LambdaValue lam = cf.lambda(2 * *cert.k, cert.lambda_precision_bits);
        const Ball thr =
            (Real(Int(6 * *cert.c * *cert.c)) * theta.recip_log())
                .enclose(cert.lambda_precision_bits);
        if (!(Ball::cmp_strict(lam.ball, thr) > 0))
          why = "lambda filter did not re-certify";
      }
    }
    if (why.empty()) {
      ++out.ok;
    } else {
      out.failures.push_back("n=" + dec(cert.n) + ": " + why);
    }
  }
  return out;
}

}  // namespace fproots

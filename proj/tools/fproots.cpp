// Copyright 2026 the fproots authors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: computes M_theta / M'_theta tables, enumerates
// the atypical set, prints continued fractions with lambda values, runs
// the named verification scenarios, samples count statistics, and replays
// serialized certificates.
//
// Exit codes: 0 ok, 1 undecided/incomplete results, 2 bad input,
// 3 internal disagreement (a bug, not bad math), 4 verification failure.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "fproots/json_io.hpp"
#include "fproots/parse.hpp"
#include "fproots/sampling.hpp"

using namespace fproots;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUndecided = 1;
constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;
constexpr int kExitVerifyFail = 4;

struct CommonOpts {
  long precision_start = 64;
  long precision_cap = 16384;
  std::string format = "table";
  int jobs = 1;
  std::uint64_t seed = 1;
  bool paranoid = false;
  bool no_timestamp = false;

  RefinePolicy policy() const {
    RefinePolicy p;
    p.start_bits = precision_start;
    p.cap_bits = precision_cap;
    return p;
  }
};

void add_common(CLI::App* cmd, CommonOpts* o) {
  cmd->add_option("--precision-start", o->precision_start, "starting precision in bits")
      ->envname("FPROOTS_PRECISION_START");
  cmd->add_option("--precision-cap", o->precision_cap, "precision cap in bits")
      ->envname("FPROOTS_PRECISION_CAP");
  cmd->add_option("--format", o->format, "output format: json, csv or table")
      ->check(CLI::IsMember({"json", "csv", "table"}))
      ->envname("FPROOTS_FORMAT");
  cmd->add_option("--jobs", o->jobs, "worker threads for scans")
      ->envname("FPROOTS_JOBS");
  cmd->add_option("--seed", o->seed, "seed for sampling commands")
      ->envname("FPROOTS_SEED");
  cmd->add_flag("--paranoid", o->paranoid,
                "cross-check each membership decision three ways");
  cmd->add_flag("--no-timestamp", o->no_timestamp, "omit generated_at from JSON");
}

Json config_json(const std::string& command, const CommonOpts& o) {
  Json j;
  j["command"] = command;
  j["precision_start"] = o.precision_start;
  j["precision_cap"] = o.precision_cap;
  j["format"] = o.format;
  j["jobs"] = o.jobs;
  j["seed"] = o.seed;
  j["paranoid"] = o.paranoid;
  return j;
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

std::string ball_text(const Ball& b) {
  return dec_string(b.mid().to_rat(), 12) + " +- " + dec_string(b.width().to_rat(), 3);
}

std::map<std::string, std::string> parse_params(const std::string& s) {
  std::map<std::string, std::string> out;
  size_t pos = 0;
  while (pos < s.size()) {
    size_t comma = s.find(',', pos);
    const std::string tok =
        s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    const size_t eq = tok.find('=');
    if (eq == std::string::npos) throw input_error("expected key=value in --params");
    out[tok.substr(0, eq)] = tok.substr(eq + 1);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

// ---------------------------------------------------------------- mtheta --

int cmd_mtheta(const std::string& theta_str, const std::string& range_str,
               const CommonOpts& o) {
  const ThetaSpec theta = ThetaSpec::parse(theta_str);
  const auto [lo, hi] = parse_range(range_str);
  const RefinePolicy policy = o.policy();
  bool any_undecided = false;

  struct Row {
    Int n;
    std::optional<Int> m, mp, tv;
    std::optional<bool> atypical;
    std::string status;  // "ok", "undecided", or a domain note
  };
  std::vector<Row> rows;
  for (Int n = lo; n <= hi; n += 1) {
    Row row;
    row.n = n;
    row.status = "ok";
    if (sgn(n) == 0) {
      row.status = "undefined at n = 0";
      rows.push_back(row);
      continue;
    }
    const FloorDecision mp = m_prime(theta, n, policy);
    if (mp.decided()) row.mp = mp.value;
    if (n >= 1) {
      try {
        const FloorDecision m = m_theta(theta, n, policy);
        if (m.decided()) row.m = m.value;
      } catch (const input_error&) {
        row.status = "M undefined ({theta^(1/n)} = 0)";
      }
      const FloorDecision tv = typical_value(theta, n, policy);
      if (tv.decided()) row.tv = tv.value;
      const MembershipResult mem = is_atypical(theta, n, policy, o.paranoid);
      if (mem.decided()) row.atypical = mem.atypical;
    }
    if ((n >= 1 && (!row.mp || !row.tv || !row.atypical)) || (n < 0 && !row.mp)) {
      if (row.status == "ok") row.status = "undecided";
      any_undecided = true;
    }
    rows.push_back(std::move(row));
  }

  auto cell = [](const std::optional<Int>& v) {
    return v ? dec(*v) : std::string("-");
  };
  if (o.format == "json") {
    Json j;
    j["schema_version"] = 1;
    j["kind"] = "mtheta-rows";
    if (!o.no_timestamp) j["generated_at"] = static_cast<long>(::time(nullptr));
    j["config"] = config_json("mtheta", o);
    j["theta"] = theta.str();
    Json arr = Json::array();
    for (const Row& r : rows) {
      Json row;
      row["n"] = dec(r.n);
      row["m_theta"] = r.m ? Json(dec(*r.m)) : Json(nullptr);
      row["m_prime"] = r.mp ? Json(dec(*r.mp)) : Json(nullptr);
      row["typical"] = r.tv ? Json(dec(*r.tv)) : Json(nullptr);
      row["atypical"] = r.atypical ? Json(*r.atypical) : Json(nullptr);
      row["status"] = r.status;
      arr.push_back(row);
    }
    j["rows"] = arr;
    emit(j);
  } else if (o.format == "csv") {
    std::cout << "n,m_theta,m_prime,typical,atypical,status\n";
    for (const Row& r : rows) {
      std::cout << dec(r.n) << "," << cell(r.m) << "," << cell(r.mp) << ","
                << cell(r.tv) << ","
                << (r.atypical ? (*r.atypical ? "true" : "false") : "-") << ","
                << r.status << "\n";
    }
  } else {
    std::cout << "theta = " << theta.str() << "\n";
    std::cout << "      n       M_theta       M'_theta   floor(n/log-1/2)  atypical\n";
    for (const Row& r : rows) {
      std::printf("%7s %13s %14s %17s  %s%s\n", dec(r.n).c_str(), cell(r.m).c_str(),
                  cell(r.mp).c_str(), cell(r.tv).c_str(),
                  r.atypical ? (*r.atypical ? "yes" : "no") : "-",
                  r.status == "ok" ? "" : ("  [" + r.status + "]").c_str());
    }
  }
  return any_undecided ? kExitUndecided : kExitOk;
}

// -------------------------------------------------------------- atypical --

int cmd_atypical(const std::string& theta_str, const std::string& limit_str,
                 const std::string& method, const CommonOpts& o) {
  const ThetaSpec theta = ThetaSpec::parse(theta_str);
  const Int limit = parse_big_int(limit_str);
  const RefinePolicy policy = o.policy();

  EnumerationReport rep;
  if (method == "direct") {
    rep = scan_direct(theta, limit, policy, o.paranoid, o.jobs);
  } else if (method == "continuant") {
    rep = enumerate_continuant(theta, limit, policy);
  } else {
    const EnumerationReport fast = enumerate_continuant(theta, limit, policy);
    const EnumerationReport slow = scan_direct(theta, limit, policy, o.paranoid, o.jobs);
    if (fast.members != slow.members) {
      std::cerr << "method disagreement: continuant and direct scans differ\n";
      return kExitInternal;
    }
    rep = fast;
    rep.method = EnumerationReport::Method::Both;
    rep.candidates_examined += slow.candidates_examined;
    rep.complete = rep.complete && slow.complete;
  }

  if (o.format == "csv") {
    std::cout << "n\n";
    for (const Int& n : rep.members) std::cout << dec(n) << "\n";
  } else if (o.format == "table") {
    std::cout << "theta = " << rep.theta << ", limit = " << dec(rep.limit) << "\n";
    std::cout << "members (" << rep.members.size() << "):";
    for (const Int& n : rep.members) std::cout << " " << dec(n);
    std::cout << "\ncandidates examined: " << rep.candidates_examined
              << ", complete: " << (rep.complete ? "yes" : "no") << "\n";
  } else {
    Json j = report_to_json(rep, !o.no_timestamp);
    j["config"] = config_json("atypical", o);
    emit(j);
  }
  return rep.complete ? kExitOk : kExitUndecided;
}

// -------------------------------------------------------------------- cf --

int cmd_cf(const std::string& value_str, long terms, const CommonOpts& o) {
  const ValueSpec vs = parse_value_spec(value_str);
  const RefinePolicy policy = o.policy();
  CFExpansion cf = [&] {
    if (vs.theta) {
      if (vs.mult == 2) return vs.theta->cf_two_over_log(Int(0), terms + 2, policy);
      return vs.theta->cf_recip_log(Int(0), terms + 2, policy);
    }
    const RealSpec& spec = *vs.direct;
    if (const auto* q = std::get_if<RealSpec::QuadIrr>(&spec.variant()))
      return cf_of_quadratic(q->q);
    if (const auto* t = std::get_if<RealSpec::TwoOverCF>(&spec.variant())) {
      if (t->cf.periodic()) return cf_of_quadratic(cf_periodic_value(t->cf));
    }
    return cf_of_real(spec, terms, policy);
  }();

  const long shown = std::min(terms, cf.certified_upto());
  const bool shortfall = shown < terms;

  Json j;
  j["schema_version"] = 1;
  j["kind"] = "cf-table";
  if (!o.no_timestamp) j["generated_at"] = static_cast<long>(::time(nullptr));
  j["config"] = config_json("cf", o);
  j["value"] = value_str;
  j["periodic"] = cf.periodic();
  if (cf.periodic()) j["expansion"] = cf_input_to_json(cf.input());
  j["certified_upto"] = cf.certified_upto() >= CFExpansion::kUnbounded / 2
                            ? Json(nullptr)
                            : Json(cf.certified_upto());
  Json rows = Json::array();
  for (long k = 0; k <= shown; ++k) {
    Json row;
    row["k"] = k;
    row["a"] = dec(cf.term(k));
    const Convergent c = cf.convergent(k);
    row["A"] = dec(c.A);
    row["B"] = dec(c.B);
    if (k >= 1) {
      const LambdaValue lam = cf.lambda(k, 96);
      row["lambda"] = ball_to_json(lam.ball);
      row["lambda_flag"] = lam.exact ? "exact" : (lam.coarse ? "coarse" : "certified");
    }
    rows.push_back(row);
  }
  j["rows"] = rows;

  if (o.format == "json") {
    emit(j);
  } else if (o.format == "csv") {
    std::cout << "k,a,A,B,lambda,lambda_flag\n";
    for (const Json& row : j["rows"]) {
      std::cout << row["k"] << "," << row["a"].get<std::string>() << ","
                << row["A"].get<std::string>() << "," << row["B"].get<std::string>();
      if (row.contains("lambda"))
        std::cout << "," << row["lambda"]["dec"].get<std::string>() << ","
                  << row["lambda_flag"].get<std::string>();
      else
        std::cout << ",,";
      std::cout << "\n";
    }
  } else {
    std::cout << "value = " << value_str << "\n";
    if (cf.periodic()) std::cout << "expansion: " << cf.input().str() << "\n";
    std::printf("%4s %10s %22s %22s  %s\n", "k", "a_k", "A_k", "B_k", "lambda_k");
    for (long k = 0; k <= shown; ++k) {
      const Convergent c = cf.convergent(k);
      std::string lam;
      if (k >= 1) {
        const LambdaValue lv = cf.lambda(k, 96);
        lam = ball_text(lv.ball) + (lv.exact ? " (exact)" : (lv.coarse ? " (coarse)" : ""));
      }
      std::printf("%4ld %10s %22s %22s  %s\n", k, dec(cf.term(k)).c_str(),
                  dec(c.A).c_str(), dec(c.B).c_str(), lam.c_str());
    }
  }
  if (shortfall) {
    std::cerr << "certified only " << shown << " of " << terms
              << " requested terms\n";
    return kExitUndecided;
  }
  return kExitOk;
}

// ---------------------------------------------------------------- verify --

int cmd_verify(const std::string& case_name, const std::string& params_str,
               long depth, const std::string& limit_str, const CommonOpts& o) {
  const RefinePolicy policy = o.policy();
  const auto params = parse_params(params_str);
  VerifyReport rep;
  if (case_name == "log2-endpoints") {
    rep = verify_log2_endpoints(policy);
  } else if (case_name == "root2-identity") {
    const long span = limit_str.empty() ? 10000 : mpz_get_si(parse_big_int(limit_str).get_mpz_t());
    rep = verify_root2_identity(span, policy);
  } else if (case_name == "family-empty") {
    FamilyParams fp = params.count("a")
                          ? build_empty_family(parse_cf(params.at("a")))
                          : build_empty_family_c(std::stol(params.at("c")));
    const Int limit = limit_str.empty() ? Int(10000) : parse_big_int(limit_str);
    rep = verify_empty(fp, depth > 0 ? depth : 25, limit, policy);
  } else if (case_name == "family-infinite") {
    FamilyParams fp = params.count("a")
                          ? build_infinite_family(parse_cf(params.at("a")))
                          : build_infinite_family_c(std::stol(params.at("c")));
    rep = verify_infinite(fp, depth > 0 ? depth : 20, policy);
  } else if (case_name == "rational-bound") {
    const RationalBoundReport rb = rational_bound(parse_big_int(params.at("p")),
                                                  parse_big_int(params.at("q")),
                                                  100, policy);
    rep.add("A_theta within [1, p^2/(6q)) for theta = e^(p/q)", rb.pass,
            "bound " + dec(rb.bound) + ", " + std::to_string(rb.scan.members.size()) +
                " member(s)");
  } else {
    throw input_error("unknown verify case '" + case_name + "'");
  }

  if (o.format == "json") {
    Json j = verify_report_to_json(rep);
    if (!o.no_timestamp) j["generated_at"] = static_cast<long>(::time(nullptr));
    j["config"] = config_json("verify", o);
    j["case"] = case_name;
    emit(j);
  } else {
    std::cout << "verify " << case_name << "\n";
    for (const VerifyLine& l : rep.lines) {
      std::cout << "  [" << (l.pass ? "PASS" : "FAIL") << "] " << l.what;
      if (!l.detail.empty()) std::cout << " (" << l.detail << ")";
      std::cout << "\n";
    }
    std::cout << (rep.pass ? "PASS" : "FAIL") << "\n";
    if (!rep.pass && !rep.certificates.empty()) {
      Json certs = Json::array();
      for (const auto& c : rep.certificates) certs.push_back(certificate_to_json(c));
      std::cout << "certificates:\n" << certs.dump(2) << "\n";
    }
  }
  return rep.pass ? kExitOk : kExitVerifyFail;
}

// ----------------------------------------------------------------- stats --

int cmd_stats(long samples, const std::string& limit_str,
              const std::string& include_theta, const CommonOpts& o) {
  const Int N = parse_big_int(limit_str);
  const RefinePolicy policy = o.policy();
  Rng rng(o.seed);
  std::vector<ThetaSpec> thetas;
  if (!include_theta.empty()) thetas.push_back(ThetaSpec::parse(include_theta));
  for (long s = 0; s < samples; ++s) thetas.push_back(sample_exp_quadratic(rng));

  Rat sum_count(0), sum_expected(0);
  std::cout << "theta,limit,count,expected,ratio,complete\n";
  for (const ThetaSpec& theta : thetas) {
    std::string row_status = "yes";
    try {
      const CountStats cs = count_statistics(theta, N, policy);
      sum_count += Rat(cs.count);
      sum_expected += cs.expected.mid().to_rat();
      std::cout << theta.str() << "," << dec(N) << "," << dec(cs.count) << ","
                << dec_string(cs.expected.mid().to_rat(), 6) << ","
                << dec_string(sgn(cs.expected.mid().to_rat()) > 0
                                  ? Rat(cs.count) / cs.expected.mid().to_rat()
                                  : Rat(0),
                              6)
                << "," << (cs.report.complete ? "yes" : "no") << "\n";
    } catch (const std::exception& e) {
      std::cout << theta.str() << "," << dec(N) << ",error,,," << e.what() << "\n";
      row_status = "no";
    }
    (void)row_status;
  }
  const Rat ratio = sgn(sum_expected) > 0 ? sum_count / sum_expected : Rat(0);
  std::cout << "aggregate," << dec(N) << "," << dec_string(sum_count, 6) << ","
            << dec_string(sum_expected, 6) << "," << dec_string(ratio, 6) << ",\n";
  if (!(ratio >= Rat(1, 2) && ratio <= Rat(2))) {
    std::cerr << "warning: aggregate ratio " << dec_string(ratio, 4)
              << " outside [0.5, 2.0] (measure-theoretic prediction; not an error)\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------- replay --

int cmd_replay(const std::string& path, const CommonOpts& o) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open '" + path + "'");
  Json j;
  in >> j;
  const ReplayResult r = replay_report(j, o.policy());
  std::cout << "replayed " << r.total << " certificate(s): " << r.ok << " ok, "
            << (r.total - r.ok) << " failed\n";
  for (const std::string& f : r.failures) std::cout << "  " << f << "\n";
  return r.failures.empty() ? kExitOk : kExitVerifyFail;
}

// --------------------------------------------------------------- explore --

int cmd_explore(const std::string& theta_str, const std::string& limit_str,
                long depth, const CommonOpts& o) {
  const ThetaSpec theta = ThetaSpec::parse(theta_str);
  const Int limit = parse_big_int(limit_str);
  const RefinePolicy policy = o.policy();

  Json j;
  j["schema_version"] = 1;
  j["kind"] = "exploration";
  if (!o.no_timestamp) j["generated_at"] = static_cast<long>(::time(nullptr));
  j["config"] = config_json("explore", o);
  j["theta"] = theta.str();
  j["note"] = "observed candidates only; no completeness or finiteness claims";

  bool undecided_any = false;
  Json candidates = Json::array();
  if (!theta.log_is_rational()) {
    CFExpansion cf = theta.cf_two_over_log(limit, 8, policy);
    const Rat log_hi = enclose_best_effort(theta.log_theta(), 32).hi().to_rat();
    for (long k = 1; 2 * k <= cf.certified_upto() && (depth <= 0 || k <= depth); ++k) {
      const Int B = cf.convergent(2 * k - 1).B;
      if (B > limit) break;
      const Rat ub = Rat(cf.term(2 * k) + 2) * log_hi / 6;
      Int cmax = isqrt(floor_rat(ub));
      while (cmax >= 1 && Rat(cmax * cmax) >= ub) cmax -= 1;
      for (Int c = 1; c <= cmax; c += 1) {
        const Int n = c * B;
        if (n > limit) break;
        Json cand;
        cand["k"] = k;
        cand["c"] = dec(c);
        cand["n"] = dec(n);
        const MembershipResult m = is_atypical(theta, n, policy, false);
        cand["membership"] =
            m.decided() ? (m.atypical ? "atypical" : "typical") : "undecided";
        if (!m.decided()) undecided_any = true;
        candidates.push_back(cand);
      }
    }
  }
  j["continuant_candidates"] = candidates;

  Json direct = Json::array();
  const Int scan_to = limit < 2000 ? limit : Int(2000);
  for (Int n = 1; n <= scan_to; n += 1) {
    const MembershipResult m = is_atypical(theta, n, policy, false);
    if (!m.decided()) {
      undecided_any = true;
      continue;
    }
    if (m.atypical) direct.push_back(dec(n));
  }
  j["direct_scan_to"] = dec(scan_to);
  j["direct_members"] = direct;
  emit(j);
  return undecided_any ? kExitUndecided : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"certified computations around M_theta(n) = floor(1/{theta^(1/n)})"};
  app.require_subcommand(1);

  CommonOpts o;

  auto* c_mtheta = app.add_subcommand("mtheta", "tabulate M, M' and the typical value");
  std::string theta_str, range_str = "1..10";
  c_mtheta->add_option("--theta", theta_str, "theta spec")->required();
  c_mtheta->add_option("--n", range_str, "n or a..b range");
  add_common(c_mtheta, &o);

  auto* c_atyp = app.add_subcommand("atypical", "enumerate the atypical set");
  std::string limit_str = "1000", method = "continuant";
  c_atyp->add_option("--theta", theta_str, "theta spec")->required();
  c_atyp->add_option("--limit", limit_str, "upper bound N (accepts 1e15)");
  c_atyp->add_option("--method", method, "direct, continuant or both")
      ->check(CLI::IsMember({"direct", "continuant", "both"}));
  add_common(c_atyp, &o);

  auto* c_cf = app.add_subcommand("cf", "continued fraction with convergents and lambda");
  std::string value_str;
  long terms = 20;
  c_cf->add_option("--value", value_str, "2/log(theta), 1/log(theta), quad:... or cf:...")
      ->required();
  c_cf->add_option("--terms", terms, "number of terms");
  add_common(c_cf, &o);

  auto* c_verify = app.add_subcommand("verify", "run a named verification scenario");
  std::string case_name, params_str;
  long depth = 0;
  c_verify->add_option("--case", case_name,
                       "log2-endpoints, root2-identity, family-empty, "
                       "family-infinite, rational-bound")
      ->required();
  c_verify->add_option("--params", params_str, "comma-separated key=value parameters");
  c_verify->add_option("--depth", depth, "verification depth K");
  c_verify->add_option("--limit", limit_str, "scan limit where applicable");
  add_common(c_verify, &o);

  auto* c_stats = app.add_subcommand("stats", "sampled counts against the density law");
  long samples = 50;
  std::string include_theta;
  c_stats->add_option("--samples", samples, "number of sampled theta");
  c_stats->add_option("--limit", limit_str, "count limit N");
  c_stats->add_option("--include-theta", include_theta, "force one extra theta sample");
  add_common(c_stats, &o);

  auto* c_replay = app.add_subcommand("replay", "re-run certificates from a report");
  std::string file;
  c_replay->add_option("--file", file, "enumeration report JSON")->required();
  add_common(c_replay, &o);

  auto* c_explore = app.add_subcommand("explore", "observed candidates, no claims");
  c_explore->add_option("--theta", theta_str, "theta spec")->required();
  c_explore->add_option("--limit", limit_str, "candidate bound");
  c_explore->add_option("--depth", depth, "max continuant index k");
  add_common(c_explore, &o);

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(c_mtheta)) return cmd_mtheta(theta_str, range_str, o);
    if (app.got_subcommand(c_atyp)) return cmd_atypical(theta_str, limit_str, method, o);
    if (app.got_subcommand(c_cf)) return cmd_cf(value_str, terms, o);
    if (app.got_subcommand(c_verify))
      return cmd_verify(case_name, params_str, depth, limit_str, o);
    if (app.got_subcommand(c_stats)) return cmd_stats(samples, limit_str, include_theta, o);
    if (app.got_subcommand(c_replay)) return cmd_replay(file, o);
    if (app.got_subcommand(c_explore)) return cmd_explore(theta_str, limit_str, depth, o);
  } catch (const input_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const internal_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const precision_limit& e) {
    std::cerr << "undecided: " << e.what() << "\n";
    return kExitUndecided;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitOk;
}

// Copyright 2026 the fproots authors
// SPDX-License-Identifier: Apache-2.0

#include "fproots/parse.hpp"

#include <algorithm>
#include <cctype>

namespace fproots {

namespace {

std::string strip(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

bool is_plain_int(const std::string& s) {
  if (s.empty()) return false;
  size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  return std::all_of(s.begin() + i, s.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  size_t pos = 0;
  while (true) {
    size_t next = s.find(sep, pos);
    if (next == std::string::npos) {
      out.push_back(s.substr(pos));
      return out;
    }
    out.push_back(s.substr(pos, next - pos));
    pos = next + 1;
  }
}

}  // namespace

Int parse_big_int(const std::string& raw) {
  const std::string s = strip(raw);
  const size_t epos = s.find_first_of("eE");
  if (epos == std::string::npos) {
    if (!is_plain_int(s)) throw input_error("bad integer: '" + raw + "'");
    return Int(s);
  }
  const std::string mant = s.substr(0, epos), exp = s.substr(epos + 1);
  if (!is_plain_int(mant) || !is_plain_int(exp) || exp.find('-') != std::string::npos)
    throw input_error("bad integer: '" + raw + "'");
  Int m(mant);
  const unsigned long e = std::stoul(exp);
  Int p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, e);
  return m * p;
}

Rat parse_rat(const std::string& raw) {
  const std::string s = strip(raw);
  const size_t slash = s.find('/');
  if (slash == std::string::npos) {
    Rat r(parse_big_int(s));
    return r;
  }
  const Int num = parse_big_int(s.substr(0, slash));
  const Int den = parse_big_int(s.substr(slash + 1));
  if (sgn(den) == 0) throw input_error("zero denominator in '" + raw + "'");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

std::pair<Int, Int> parse_range(const std::string& raw) {
  const std::string s = strip(raw);
  const size_t dots = s.find("..");
  if (dots == std::string::npos) {
    Int n = parse_big_int(s);
    return {n, n};
  }
  Int lo = parse_big_int(s.substr(0, dots));
  Int hi = parse_big_int(s.substr(dots + 2));
  if (lo > hi) throw input_error("empty range '" + raw + "'");
  return {std::move(lo), std::move(hi)};
}

CFInput parse_cf(const std::string& raw) {
  std::string s = strip(raw);
  if (s.size() < 2 || s.front() != '[' || s.back() != ']')
    throw input_error("continued fraction must be bracketed: '" + raw + "'");
  s = s.substr(1, s.size() - 2);
  CFInput cf;
  // Normalize the a0;rest separator to a comma, then split carefully
  // around "period(...)".
  const size_t semi = s.find(';');
  if (semi != std::string::npos) s[semi] = ',';
  size_t pos = 0;
  bool saw_period = false;
  while (pos < s.size()) {
    size_t comma = s.find(',', pos);
    std::string tok = strip(s.substr(pos, comma == std::string::npos ? std::string::npos
                                                                     : comma - pos));
    if (tok.rfind("period(", 0) == 0) {
      // Consume through the matching close paren (it may contain commas).
      size_t open = s.find('(', pos);
      size_t close = s.find(')', open);
      if (close == std::string::npos) throw input_error("unterminated period(...)");
      const std::string inner = s.substr(open + 1, close - open - 1);
      for (const std::string& t : split(inner, ','))
        cf.period.push_back(parse_big_int(t));
      saw_period = true;
      pos = close + 1;
      if (pos < s.size() && s[pos] == ',') ++pos;
      continue;
    }
    if (saw_period && !tok.empty())
      throw input_error("terms after period(...) in '" + raw + "'");
    if (!tok.empty()) cf.head.push_back(parse_big_int(tok));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  cf.validate();
  return cf;
}

Quadratic parse_quad_literal(const std::string& raw) {
  std::string s = strip(raw);
  if (s.find("sqrt") == std::string::npos) {
    return Quadratic(parse_rat(s));
  }
  // (a+b*sqrt(d))/c with integer a, b, d, c; b may carry a sign.
  if (s.front() != '(') throw input_error("quadratic literal must start with '(': " + raw);
  const size_t close = s.rfind(')');
  size_t inner_close = s.find("))", 1);
  if (inner_close == std::string::npos)
    throw input_error("malformed quadratic literal '" + raw + "'");
  const std::string body = s.substr(1, inner_close + 1 - 1);  // a+b*sqrt(d)
  std::string denom = strip(s.substr(inner_close + 2));
  Int c(1);
  if (!denom.empty()) {
    if (denom[0] != '/') throw input_error("expected /c in '" + raw + "'");
    c = parse_big_int(denom.substr(1));
  }
  const size_t star = body.find("*sqrt(");
  if (star == std::string::npos) throw input_error("expected b*sqrt(d) in '" + raw + "'");
  // Split a and b at the sign just before b.
  size_t bpos = star;
  while (bpos > 0 && body[bpos - 1] != '+' && body[bpos - 1] != '-') --bpos;
  if (bpos == 0) throw input_error("expected a+b*sqrt(d) in '" + raw + "'");
  const char sign = body[bpos - 1];
  const std::string a_str = body.substr(0, bpos - 1);
  std::string b_str = body.substr(bpos, star - bpos);
  if (b_str.empty()) b_str = "1";
  const size_t dopen = body.find('(', star);
  const size_t dclose = body.find(')', dopen);
  const std::string d_str = body.substr(dopen + 1, dclose - dopen - 1);
  Int a = parse_big_int(a_str.empty() ? "0" : a_str);
  Int b = parse_big_int(b_str);
  if (sign == '-') b = -b;
  const Int d = parse_big_int(d_str);
  (void)close;
  return Quadratic(std::move(a), std::move(b), std::move(c), d);
}

ThetaSpec ThetaSpec::parse(const std::string& raw) {
  const std::string s = strip(raw);
  const size_t colon = s.find(':');
  if (colon == std::string::npos)
    throw input_error("theta spec needs a 'kind:' prefix: '" + raw + "'");
  const std::string kind = s.substr(0, colon), rest = s.substr(colon + 1);
  if (kind == "rational") return ThetaSpec::rational(parse_rat(rest));
  if (kind == "exp-rational") return ThetaSpec::exp_rational(parse_rat(rest));
  if (kind == "exp-quadratic") return ThetaSpec::exp_quadratic(parse_quad_literal(rest));
  if (kind == "from-cf") return ThetaSpec::from_cf(parse_cf(rest));
  throw input_error("unknown theta kind '" + kind + "'");
}

RealSpec RealSpec::parse(const std::string& raw) {
  const std::string s = strip(raw);
  if (s.rfind("rat:", 0) == 0) return RealSpec::rational(parse_rat(s.substr(4)));
  if (s.rfind("sqrt:", 0) == 0) return RealSpec::sqrt_rational(parse_rat(s.substr(5)));
  if (s.rfind("quad:", 0) == 0) return RealSpec::quad_irr(parse_quad_literal(s.substr(5)));
  if (s.rfind("cf:", 0) == 0) return RealSpec::cf_value(parse_cf(s.substr(3)));
  if (s.rfind("log(rational:", 0) == 0 && s.back() == ')')
    return RealSpec::log_of_rational(parse_rat(s.substr(13, s.size() - 14)));
  for (int mult : {1, 2}) {
    const std::string prefix = std::to_string(mult) + "/log(rational:";
    if (s.rfind(prefix, 0) == 0 && s.back() == ')')
      return RealSpec::recip_log_theta(parse_rat(s.substr(prefix.size(),
                                                          s.size() - prefix.size() - 1)),
                                       mult);
  }
  throw input_error("unknown real spec '" + raw + "'");
}

ValueSpec parse_value_spec(const std::string& raw) {
  const std::string s = strip(raw);
  ValueSpec v;
  for (int mult : {1, 2}) {
    const std::string prefix = std::to_string(mult) + "/log(";
    if (s.rfind(prefix, 0) == 0 && s.back() == ')') {
      v.mult = mult;
      v.theta = ThetaSpec::parse(s.substr(prefix.size(), s.size() - prefix.size() - 1));
      return v;
    }
  }
  if (s.rfind("quad:", 0) == 0 || s.rfind("cf:", 0) == 0 || s.rfind("sqrt:", 0) == 0 ||
      s.rfind("rat:", 0) == 0) {
    v.direct = RealSpec::parse(s);
    return v;
  }
  throw input_error("unknown value spec '" + raw + "' (want m/log(theta), quad:, cf:)");
}

FamilySpecParse parse_family(const std::string& raw) {
  const std::string s = strip(raw);
  FamilySpecParse f;
  std::string rest;
  if (s.rfind("empty:", 0) == 0) {
    f.empty_family = true;
    rest = s.substr(6);
  } else if (s.rfind("infinite:", 0) == 0) {
    f.empty_family = false;
    rest = s.substr(9);
  } else {
    throw input_error("family spec must start with empty: or infinite:");
  }
  if (rest.rfind("c=", 0) == 0) {
    f.c = std::stol(rest.substr(2));
    return f;
  }
  if (rest.rfind("a=", 0) == 0) {
    f.cf = parse_cf(rest.substr(2));
    return f;
  }
  throw input_error("family spec needs c=<int> or a=[...]");
}

std::string dec_string(const Rat& q, int significant) {
  if (significant < 1) significant = 1;
  if (sgn(q) == 0) return "0";
  const bool neg = sgn(q) < 0;
  const Rat a = abs(q);
  // decimal exponent e10 with 10^e10 <= a < 10^(e10+1)
  long e10 = static_cast<long>(
      static_cast<double>(bit_length(a.get_num()) - bit_length(a.get_den())) * 0.30103);
  auto pow10 = [](long k) {
    Int p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(k < 0 ? -k : k));
    return p;
  };
  auto cmp_pow10 = [&](long k) {  // a <=> 10^k
    if (k >= 0) return cmp(a, Rat(pow10(k)));
    return cmp(a * Rat(pow10(-k)), Rat(1));
  };
  while (cmp_pow10(e10) < 0) --e10;
  while (cmp_pow10(e10 + 1) >= 0) ++e10;
  // digits = round(a * 10^(significant-1-e10))
  const long shift = significant - 1 - e10;
  Rat scaled = a;
  if (shift >= 0) scaled = scaled * Rat(pow10(shift));
  else scaled = scaled / Rat(pow10(-shift));
  Int digits = floor_rat(scaled + Rat(1, 2));
  std::string ds = digits.get_str(10);
  if (static_cast<long>(ds.size()) > significant) {  // rounding carried over
    ds.pop_back();
    ++e10;
  }
  while (ds.size() > 1 && ds.back() == '0') ds.pop_back();
  std::string out = neg ? "-" : "";
  if (e10 >= 0 && e10 < significant + 2 && e10 < 15) {
    if (static_cast<long>(ds.size()) <= e10) ds.append(e10 + 1 - ds.size(), '0');
    out += ds.substr(0, e10 + 1);
    if (ds.size() > static_cast<size_t>(e10 + 1)) out += "." + ds.substr(e10 + 1);
  } else if (e10 < 0 && e10 >= -4) {
    out += "0.";
    out.append(-e10 - 1, '0');
    out += ds;
  } else {
    out += ds.substr(0, 1);
    if (ds.size() > 1) out += "." + ds.substr(1);
    out += "e" + std::to_string(e10);
  }
  return out;
}

}  // namespace fproots

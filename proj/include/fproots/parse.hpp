// Copyright 2026 the fproots authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <utility>

#include "fproots/mtheta.hpp"

namespace fproots {

/// Decimal integer, optionally in mantissa-e-exponent form ("1e15",
/// "25e3"); must denote an exact integer.
Int parse_big_int(const std::string& s);

/// "u/v" or plain "u".
Rat parse_rat(const std::string& s);

/// "a..b" (inclusive) or a single "n".
std::pair<Int, Int> parse_range(const std::string& s);

/// "[a0;a1,a2,...]" with an optional trailing "period(p1,p2,...)".
CFInput parse_cf(const std::string& s);

/// "(a+b*sqrt(d))/c"; also accepts a bare rational.
Quadratic parse_quad_literal(const std::string& s);

/// Value grammar of the cf command: "2/log(<theta>)", "1/log(<theta>)",
/// "quad:(a+b*sqrt(d))/c" or "cf:[...]".
struct ValueSpec {
  int mult = 0;                       // 1 or 2 when the m/log(theta) form
  std::optional<ThetaSpec> theta;
  std::optional<RealSpec> direct;     // quad:/cf: literal forms
};
ValueSpec parse_value_spec(const std::string& s);

/// Family generator grammar: "empty:c=3", "empty:a=[...]", "infinite:c=4",
/// "infinite:a=[...]".
struct FamilySpecParse {
  bool empty_family = true;
  std::optional<long> c;
  std::optional<CFInput> cf;
};
FamilySpecParse parse_family(const std::string& s);

/// Fixed-significant-digit decimal rendering (deterministic, no locale).
std::string dec_string(const Rat& q, int significant);

}  // namespace fproots

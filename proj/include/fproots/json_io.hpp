// Copyright 2026 the fproots authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <json.hpp>

#include "fproots/families.hpp"

namespace fproots {

using Json = nlohmann::ordered_json;

/// All big integers serialize as decimal strings; balls carry their exact
/// dyadic endpoints plus a 12-digit decimal rendering for reading.
Json ball_to_json(const Ball& b);
Ball ball_from_json(const Json& j);

Json quadratic_to_json(const Quadratic& q);
Quadratic quadratic_from_json(const Json& j);

Json cf_input_to_json(const CFInput& cf);

Json certificate_to_json(const AtypicalCertificate& c);
AtypicalCertificate certificate_from_json(const Json& j);

Json report_to_json(const EnumerationReport& r, bool with_timestamp);
Json verify_report_to_json(const VerifyReport& r);

struct ReplayResult {
  long total = 0;
  long ok = 0;
  std::vector<std::string> failures;
};

/// Re-runs every certificate of a serialized enumeration report at its
/// recorded precision: the single-shot membership kernel must reproduce
/// the decision and its witness balls bit for bit; continuant filters are
/// re-verified at the decision level.
ReplayResult replay_report(const Json& report, const RefinePolicy& policy = {});

}  // namespace fproots

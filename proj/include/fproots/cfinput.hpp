// Copyright 2026 the fproots authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "fproots/common.hpp"

namespace fproots {

/// Partial quotients of a simple continued fraction [a0; a1, a2, ...]:
/// an explicit head, optionally followed by a repeating period. Empty
/// period means a finite (rational-valued) expansion.
struct CFInput {
  std::vector<Int> head;
  std::vector<Int> period;

  bool periodic() const { return !period.empty(); }
  long head_len() const { return static_cast<long>(head.size()); }

  bool has_term(long k) const {
    return k >= 0 && (periodic() || k < head_len());
  }

  const Int& term(long k) const {
    if (k < head_len()) return head[k];
    if (!periodic()) throw input_error("continued-fraction term beyond finite expansion");
    return period[(k - head_len()) % static_cast<long>(period.size())];
  }

  /// a0 may be any integer; every later term must be >= 1.
  void validate() const {
    if (head.empty() && period.empty())
      throw input_error("empty continued fraction");
    for (size_t i = 1; i < head.size(); ++i)
      if (head[i] < 1) throw input_error("partial quotient a_" + std::to_string(i) + " < 1");
    for (size_t i = 0; i < period.size(); ++i)
      if (period[i] < 1) throw input_error("periodic partial quotient < 1");
  }

  std::string str() const;

  bool operator==(const CFInput&) const = default;
};

}  // namespace fproots

// Copyright 2026 the fproots authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <optional>

#include "fproots/quadratic.hpp"

namespace fproots {

/// A computable real: either an exact quadratic-field value, or a lazy
/// evaluator that produces an enclosing Ball of width <= 2^-p on request
/// (throwing precision_limit when the underlying data cannot support p,
/// e.g. a value pinned down only by finitely many partial quotients).
///
/// Arithmetic stays exact as long as the operands live in one quadratic
/// field; otherwise it degrades to certified interval evaluation. Values
/// are immutable and cheap to copy; enclosures are cached per node and
/// intersected on refinement, so repeated queries are nested.
class Real {
 public:
  Real() : Real(Quadratic()) {}
  Real(long v) : Real(Quadratic(Int(v))) {}  // NOLINT(runtime/explicit)
  explicit Real(const Int& v) : Real(Quadratic(v)) {}
  explicit Real(const Rat& v) : Real(Quadratic(v)) {}
  explicit Real(Quadratic q);

  static Real from_fn(std::function<Ball(long)> eval);

  /// Enclosure with width <= 2^-prec.
  Ball enclose(long prec) const;

  const std::optional<Quadratic>& exact() const;
  bool is_exact() const { return exact().has_value(); }

  friend Real operator+(const Real& x, const Real& y);
  friend Real operator-(const Real& x, const Real& y);
  friend Real operator*(const Real& x, const Real& y);
  friend Real operator/(const Real& x, const Real& y);
  friend Real operator-(const Real& x);

  Real recip() const { return Real(1) / *this; }

 private:
  struct Node;
  std::shared_ptr<Node> node_;
};

/// e^x - 1, e^x, log x as certified reals.
Real real_expm1(const Real& x);
Real real_exp(const Real& x);
Real real_log(const Real& x);

/// The tightest enclosure available at prec or any coarser fallback, for
/// values whose information content may run out (finite partial-quotient
/// sources). Sets *degraded when the fallback fired.
Ball enclose_best_effort(const Real& x, long prec, bool* degraded = nullptr);

/// Precision schedule for certified decisions: start, grow, stop at cap.
struct RefinePolicy {
  long start_bits = 64;
  double growth = 2.0;
  long cap_bits = 16384;

  long next(long p) const {
    long n = static_cast<long>(static_cast<double>(p) * growth);
    if (n <= p) n = p + 1;
    return n < cap_bits ? n : cap_bits;
  }
};

/// Outcome of a certified floor computation.
struct FloorDecision {
  enum class Kind { Decided, ExactInteger, Undecided };
  Kind kind = Kind::Undecided;
  Int value;            // floor for Decided; the value itself for ExactInteger
  long precision_bits = 0;  // precision used, or the cap when Undecided
  std::optional<Ball> witness;

  bool decided() const { return kind != Kind::Undecided; }
  /// The floor when decided (for ExactInteger the value is its own floor).
  std::optional<Int> result() const {
    if (!decided()) return std::nullopt;
    return value;
  }

  static FloorDecision decided_at(Int v, long p, Ball w) {
    return FloorDecision{Kind::Decided, std::move(v), p, std::move(w)};
  }
  static FloorDecision exact_integer(Int v, long p) {
    return FloorDecision{Kind::ExactInteger, std::move(v), p, std::nullopt};
  }
  static FloorDecision undecided(long cap) {
    return FloorDecision{Kind::Undecided, Int(0), cap, std::nullopt};
  }
};

/// floor(x), certified: exact for quadratic-field values, otherwise by
/// interval refinement with the value shown to lie strictly inside
/// (v, v+1).
FloorDecision floor_certified(const Real& x, const RefinePolicy& policy = {});

enum class Tri { True, False, Undecided };

inline Tri tri_not(Tri t) {
  if (t == Tri::True) return Tri::False;
  if (t == Tri::False) return Tri::True;
  return Tri::Undecided;
}

/// Certified strict comparison a < b (exact equality yields False).
Tri certified_less(const Real& a, const Real& b, const RefinePolicy& policy = {});

/// Truth of {x} < bound when strict_less, of {x} >= bound otherwise.
Tri frac_compare(const Real& x, const Real& bound, bool strict_less,
                 const RefinePolicy& policy = {});

/// {x} as a Real, along with the certified floor it came from.
std::optional<Real> frac_part(const Real& x, const RefinePolicy& policy,
                              FloorDecision* floor_out = nullptr);

}  // namespace fproots

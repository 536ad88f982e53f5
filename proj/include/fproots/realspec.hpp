// Copyright 2026 the fproots authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <variant>

#include "fproots/cfinput.hpp"
#include "fproots/real.hpp"

namespace fproots {

/// Symbolic description of a real number, the serializable face of Real.
/// Every variant evaluates to a certified enclosure at any requested
/// precision; the variant also records what is known about the value
/// exactly (rationality, the quadratic field, provable irrationality).
class RealSpec {
 public:
  struct Rational {
    Rat v;
    bool operator==(const Rational&) const = default;
  };
  struct SqrtRational {  // sqrt(r), r >= 0
    Rat r;
    bool operator==(const SqrtRational&) const = default;
  };
  struct QuadIrr {
    Quadratic q;
    bool operator==(const QuadIrr&) const = default;
  };
  struct LogOfRational {  // log theta, rational theta > 1
    Rat theta;
    bool operator==(const LogOfRational&) const = default;
  };
  struct RecipLogTheta {  // mult / log theta, rational theta > 1, mult in {1, 2}
    Rat theta;
    int mult = 1;
    bool operator==(const RecipLogTheta&) const = default;
  };
  struct TwoOverCF {  // the value ell = [a0; a1, ...] given by its quotients
    CFInput cf;
    bool operator==(const TwoOverCF&) const = default;
  };

  using Variant = std::variant<Rational, SqrtRational, QuadIrr, LogOfRational,
                               RecipLogTheta, TwoOverCF>;

  explicit RealSpec(Variant v)
      : v_(std::move(v)), cache_(std::make_shared<Cache>()) {
    validate();
  }

  static RealSpec rational(Rat v) { return RealSpec(Rational{std::move(v)}); }
  static RealSpec sqrt_rational(Rat r) { return RealSpec(SqrtRational{std::move(r)}); }
  static RealSpec quad_irr(Quadratic q) { return RealSpec(QuadIrr{std::move(q)}); }
  static RealSpec log_of_rational(Rat theta) {
    return RealSpec(LogOfRational{std::move(theta)});
  }
  static RealSpec recip_log_theta(Rat theta, int mult) {
    return RealSpec(RecipLogTheta{std::move(theta), mult});
  }
  static RealSpec cf_value(CFInput cf) { return RealSpec(TwoOverCF{std::move(cf)}); }

  const Variant& variant() const { return v_; }

  /// The value as a certified Real (exact where the variant allows). One
  /// shared Real backs all calls on a spec and its copies, so successive
  /// enclosures of one spec are nested.
  Real to_real() const;

  /// True when the variant's structure guarantees irrationality: nonsquare
  /// roots, quadratic irrationals, logs of rationals > 1 (Lindemann), and
  /// infinite (periodic) continued fractions.
  bool provably_irrational() const;

  std::string str() const;
  static RealSpec parse(const std::string& s);

  bool operator==(const RealSpec& o) const { return v_ == o.v_; }

 private:
  struct Cache {
    std::mutex mu;
    std::optional<Real> real;
  };

  void validate() const;
  Real build_real() const;

  Variant v_;
  std::shared_ptr<Cache> cache_;
};

/// Enclosure of x with width <= 2^-prec (the module-level eval operation).
Ball eval(const RealSpec& x, long prec);

}  // namespace fproots

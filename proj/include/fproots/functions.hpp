// Copyright 2026 the fproots authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "fproots/ball.hpp"

namespace fproots {

/// log 2 enclosed with width <= 2^-prec. Cached across calls.
Ball log2_ball(long prec);

/// log q for rational q > 0, width <= 2^-prec.
Ball log_rat_ball(const Rat& q, long prec);

/// Natural log over an interval; requires x.lo > 0.
Ball log_ball(const Ball& x, long prec);

/// e^y - 1 for every y in x. The rounding/truncation contribution to the
/// width is below 2^-prec; the propagated input width comes on top (callers
/// that need a hard width target refine their input and re-call).
Ball expm1_ball(const Ball& x, long prec);

/// e^y for every y in x (expm1 + 1, the final add is exact).
Ball exp_ball(const Ball& x, long prec);

/// sqrt(r) for rational r >= 0, width <= 2^-prec; exact point for perfect
/// squares of dyadics.
Ball sqrt_rat_ball(const Rat& r, long prec);

/// atanh u for |u| <= 1/3, width <= 2^-prec. Building block of the logs,
/// exposed for tests.
Ball atanh_rat_ball(const Rat& u, long prec);

}  // namespace fproots

// Copyright 2026 the fproots authors
// SPDX-License-Identifier: Apache-2.0

#include "fproots/ball.hpp"

#include <algorithm>

namespace fproots {

Ball::Ball(Dyadic lo, Dyadic hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (lo_ > hi_) throw internal_error("Ball endpoints out of order");
}

Ball Ball::from_rat(const Rat& q, long abs_prec) {
  return Ball(Dyadic::from_rat(q, abs_prec + 1, Round::Down),
              Dyadic::from_rat(q, abs_prec + 1, Round::Up));
}

Ball Ball::from_rat_pair(const Rat& lo, const Rat& hi, long abs_prec) {
  return Ball(Dyadic::from_rat(lo, abs_prec + 1, Round::Down),
              Dyadic::from_rat(hi, abs_prec + 1, Round::Up));
}

Ball Ball::hull(const Ball& a, const Ball& b) {
  return Ball(std::min(a.lo_, b.lo_), std::max(a.hi_, b.hi_));
}

Ball Ball::add(const Ball& a, const Ball& b, long work_prec) {
  return Ball(a.lo_ + b.lo_, a.hi_ + b.hi_).round_out(work_prec);
}

Ball Ball::sub(const Ball& a, const Ball& b, long work_prec) {
  return Ball(a.lo_ - b.hi_, a.hi_ - b.lo_).round_out(work_prec);
}

Ball Ball::mul(const Ball& a, const Ball& b, long work_prec) {
  const Dyadic p1 = a.lo_ * b.lo_;
  const Dyadic p2 = a.lo_ * b.hi_;
  const Dyadic p3 = a.hi_ * b.lo_;
  const Dyadic p4 = a.hi_ * b.hi_;
  Dyadic lo = std::min(std::min(p1, p2), std::min(p3, p4));
  Dyadic hi = std::max(std::max(p1, p2), std::max(p3, p4));
  return Ball(std::move(lo), std::move(hi)).round_out(work_prec);
}

Ball Ball::mul_int(const Ball& a, const Int& n, long work_prec) {
  const Dyadic d(n, 0);
  Ball r = sgn(n) >= 0 ? Ball(a.lo_ * d, a.hi_ * d) : Ball(a.hi_ * d, a.lo_ * d);
  return r.round_out(work_prec);
}

Ball Ball::div_uint(const Ball& a, unsigned long n, long work_prec) {
  const Dyadic d(Int(n), 0);
  return Ball(Dyadic::div(a.lo_, d, work_prec, Round::Down),
              Dyadic::div(a.hi_, d, work_prec, Round::Up));
}

std::optional<Ball> Ball::recip(const Ball& a, long work_prec) {
  if (a.contains_zero()) return std::nullopt;
  const Dyadic one(1);
  return Ball(Dyadic::div(one, a.hi_, work_prec, Round::Down),
              Dyadic::div(one, a.lo_, work_prec, Round::Up));
}

std::optional<Ball> Ball::div(const Ball& a, const Ball& b, long work_prec) {
  auto r = recip(b, work_prec + 2);
  if (!r) return std::nullopt;
  return mul(a, *r, work_prec);
}

std::optional<Ball> Ball::intersect(const Ball& a, const Ball& b) {
  Dyadic lo = std::max(a.lo_, b.lo_);
  Dyadic hi = std::min(a.hi_, b.hi_);
  if (lo > hi) return std::nullopt;
  return Ball(std::move(lo), std::move(hi));
}

}  // namespace fproots

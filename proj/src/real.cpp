// Copyright 2026 the fproots authors
// SPDX-License-Identifier: Apache-2.0

#include "fproots/real.hpp"

#include "fproots/functions.hpp"

namespace fproots {

namespace {
constexpr long kMaxEvalBits = 1L << 22;
}

struct Real::Node {
  std::optional<Quadratic> exact;
  std::function<Ball(long)> eval;
  mutable std::mutex mu;
  mutable long cached_prec = -1;
  mutable Ball cached;
};

Real::Real(Quadratic q) : node_(std::make_shared<Node>()) {
  node_->exact = std::move(q);
  const Quadratic* e = &*node_->exact;
  node_->eval = [e](long p) { return e->enclose(p); };
}

Real Real::from_fn(std::function<Ball(long)> eval) {
  Real r;
  r.node_ = std::make_shared<Node>();
  r.node_->eval = std::move(eval);
  return r;
}

const std::optional<Quadratic>& Real::exact() const { return node_->exact; }

Ball Real::enclose(long prec) const {
  if (prec < 2) prec = 2;
  std::lock_guard<std::mutex> lock(node_->mu);
  if (node_->cached_prec >= prec) return node_->cached;
  Ball b = node_->eval(prec);
  if (node_->cached_prec >= 0) {
    auto isect = Ball::intersect(b, node_->cached);
    if (!isect) throw internal_error("disjoint refinements of one real");
    b = *isect;
  }
  node_->cached = b;
  node_->cached_prec = prec;
  return b;
}

namespace {

// Generic lazy node: refine both operands until the combined ball meets
// the width contract. `op` may decline (nullopt) while an operand still
// straddles a singularity, e.g. division by an interval containing zero.
using BinOp = std::function<std::optional<Ball>(const Ball&, const Ball&, long)>;

Real make_binary(const Real& x, const Real& y, BinOp op) {
  return Real::from_fn([x, y, op = std::move(op)](long p) -> Ball {
    for (long w = p + 8;; w *= 2) {
      const Ball bx = x.enclose(w);
      const Ball by = y.enclose(w);
      if (auto r = op(bx, by, w + 4)) {
        if (r->width_leq_2exp(p)) return *r;
      }
      if (w > kMaxEvalBits) throw precision_limit(w);
    }
  });
}

using UnOp = std::function<std::optional<Ball>(const Ball&, long)>;

Real make_unary(const Real& x, UnOp op) {
  return Real::from_fn([x, op = std::move(op)](long p) -> Ball {
    for (long w = p + 8;; w *= 2) {
      const Ball bx = x.enclose(w);
      if (auto r = op(bx, w + 4)) {
        if (r->width_leq_2exp(p)) return *r;
      }
      if (w > kMaxEvalBits) throw precision_limit(w);
    }
  });
}

}  // namespace

Real operator+(const Real& x, const Real& y) {
  if (x.is_exact() && y.is_exact()) {
    if (auto r = Quadratic::try_add(*x.exact(), *y.exact())) return Real(*r);
  }
  return make_binary(x, y, [](const Ball& a, const Ball& b, long w) {
    return Ball::add(a, b, w);
  });
}

Real operator-(const Real& x, const Real& y) {
  if (x.is_exact() && y.is_exact()) {
    if (auto r = Quadratic::try_sub(*x.exact(), *y.exact())) return Real(*r);
  }
  return make_binary(x, y, [](const Ball& a, const Ball& b, long w) {
    return Ball::sub(a, b, w);
  });
}

Real operator*(const Real& x, const Real& y) {
  if (x.is_exact() && y.is_exact()) {
    if (auto r = Quadratic::try_mul(*x.exact(), *y.exact())) return Real(*r);
  }
  return make_binary(x, y, [](const Ball& a, const Ball& b, long w) {
    return Ball::mul(a, b, w);
  });
}

Real operator/(const Real& x, const Real& y) {
  if (y.is_exact() && y.exact()->is_zero()) throw input_error("division by zero");
  if (x.is_exact() && y.is_exact()) {
    if (auto r = Quadratic::try_div(*x.exact(), *y.exact())) return Real(*r);
  }
  return make_binary(x, y, [](const Ball& a, const Ball& b, long w) {
    return Ball::div(a, b, w);
  });
}

Real operator-(const Real& x) {
  if (x.is_exact()) return Real(-*x.exact());
  return make_unary(x, [](const Ball& a, long) { return Ball::neg(a); });
}

Real real_expm1(const Real& x) {
  if (x.is_exact() && x.exact()->is_zero()) return Real(0);
  return make_unary(x, [](const Ball& a, long w) { return expm1_ball(a, w); });
}

Real real_exp(const Real& x) {
  if (x.is_exact() && x.exact()->is_zero()) return Real(1);
  return make_unary(x, [](const Ball& a, long w) { return exp_ball(a, w); });
}

Real real_log(const Real& x) {
  if (x.is_exact()) {
    const Quadratic& q = *x.exact();
    if (q.sign() <= 0) throw input_error("log of non-positive value");
    if (q.is_rational() && q.as_rational() == 1) return Real(0);
  }
  return make_unary(x, [](const Ball& a, long w) -> std::optional<Ball> {
    if (a.lo().sign() <= 0) return std::nullopt;  // refine until positive
    return log_ball(a, w);
  });
}

Ball enclose_best_effort(const Real& x, long prec, bool* degraded) {
  for (long p = prec; p >= 8; p /= 2) {
    try {
      Ball b = x.enclose(p);
      if (degraded) *degraded = (p < prec);
      return b;
    } catch (const precision_limit&) {
      continue;
    }
  }
  throw precision_limit(prec);
}

FloorDecision floor_certified(const Real& x, const RefinePolicy& policy) {
  if (x.is_exact()) {
    const Quadratic& q = *x.exact();
    if (q.is_rational()) {
      const Rat r = q.as_rational();
      Int f = floor_rat(r);
      if (r.get_den() == 1) return FloorDecision::exact_integer(std::move(f), 0);
      return FloorDecision::decided_at(std::move(f), 0, q.enclose(64));
    }
    return FloorDecision::decided_at(q.floor(), 0, q.enclose(64));
  }
  long p = policy.start_bits;
  while (true) {
    Ball b;
    try {
      b = x.enclose(p);
    } catch (const precision_limit&) {
      return FloorDecision::undecided(p);
    }
    Int fl = b.floor_lo();
    if (fl == b.floor_hi() && b.lo() > Dyadic(fl, 0)) {
      return FloorDecision::decided_at(std::move(fl), p, std::move(b));
    }
    if (p >= policy.cap_bits) return FloorDecision::undecided(policy.cap_bits);
    p = policy.next(p);
  }
}

Tri certified_less(const Real& a, const Real& b, const RefinePolicy& policy) {
  const Real d = a - b;
  if (d.is_exact()) return d.exact()->sign() < 0 ? Tri::True : Tri::False;
  long p = policy.start_bits;
  while (true) {
    Ball bd;
    try {
      bd = d.enclose(p);
    } catch (const precision_limit&) {
      return Tri::Undecided;
    }
    const int s = bd.sign();
    if (s != 0) return s < 0 ? Tri::True : Tri::False;
    if (p >= policy.cap_bits) return Tri::Undecided;
    p = policy.next(p);
  }
}

std::optional<Real> frac_part(const Real& x, const RefinePolicy& policy,
                              FloorDecision* floor_out) {
  FloorDecision fd = floor_certified(x, policy);
  if (floor_out) *floor_out = fd;
  if (!fd.decided()) return std::nullopt;
  if (fd.kind == FloorDecision::Kind::ExactInteger) return Real(0);
  return x - Real(fd.value);
}

Tri frac_compare(const Real& x, const Real& bound, bool strict_less,
                 const RefinePolicy& policy) {
  auto f = frac_part(x, policy);
  if (!f) return Tri::Undecided;
  const Tri less = certified_less(*f, bound, policy);
  return strict_less ? less : tri_not(less);
}

}  // namespace fproots

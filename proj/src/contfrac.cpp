// Copyright 2026 the fproots authors
// SPDX-License-Identifier: Apache-2.0

#include "fproots/contfrac.hpp"

#include <algorithm>
#include <map>

namespace fproots {

std::string CFInput::str() const {
  std::string s = "[";
  for (size_t i = 0; i < head.size(); ++i) {
    if (i == 1) s += ";";
    else if (i > 1) s += ",";
    s += dec(head[i]);
  }
  if (periodic()) {
    if (head.size() > 1) s += ",";
    else if (head.size() == 1) s += ";";
    s += "period(";
    for (size_t i = 0; i < period.size(); ++i) {
      if (i > 0) s += ",";
      s += dec(period[i]);
    }
    s += ")";
  }
  return s + "]";
}

struct CFExpansion::State {
  CFInput cf;
  std::optional<Real> source;
  std::optional<Quadratic> quad_source;
  long certified_upto = -1;
  mutable std::mutex mu;
  // Convergents shifted by 2: A[i] holds A_{i-2}, with A_{-2}=0, A_{-1}=1,
  // B_{-2}=1, B_{-1}=0.
  mutable std::vector<Int> A{Int(0), Int(1)};
  mutable std::vector<Int> B{Int(1), Int(0)};

  void extend(long k) const {  // callers hold mu
    for (long i = static_cast<long>(A.size()) - 2; i <= k; ++i) {
      const Int& a = cf.term(i);
      A.push_back(a * A[i + 1] + A[i]);
      B.push_back(a * B[i + 1] + B[i]);
    }
  }
  // A_k/B_k with k >= -2 allowed; callers hold mu.
  const Int& cA(long k) const { return A[k + 2]; }
  const Int& cB(long k) const { return B[k + 2]; }
};

CFExpansion CFExpansion::exact_periodic(CFInput cf, std::optional<Quadratic> source) {
  cf.validate();
  if (!cf.periodic()) throw internal_error("exact_periodic without a period");
  CFExpansion e;
  e.st_ = std::make_shared<State>();
  e.st_->cf = std::move(cf);
  e.st_->quad_source = std::move(source);
  e.st_->certified_upto = kUnbounded;
  return e;
}

CFExpansion CFExpansion::certified_truncation(std::vector<Int> terms, Real source) {
  CFExpansion e;
  e.st_ = std::make_shared<State>();
  e.st_->cf.head = std::move(terms);
  if (!e.st_->cf.head.empty()) e.st_->cf.validate();
  e.st_->source = std::move(source);
  e.st_->certified_upto = e.st_->cf.head_len() - 1;
  return e;
}

bool CFExpansion::periodic() const { return st_->cf.periodic(); }
const CFInput& CFExpansion::input() const { return st_->cf; }
long CFExpansion::certified_upto() const { return st_->certified_upto; }
bool CFExpansion::has_term(long k) const { return k >= 0 && k <= st_->certified_upto; }

Int CFExpansion::term(long k) const {
  if (!has_term(k)) throw input_error("partial quotient beyond certified terms");
  return st_->cf.term(k);
}

Convergent CFExpansion::convergent(long k) const {
  if (k < 0) throw input_error("convergent index must be nonnegative");
  if (k > st_->certified_upto) throw input_error("convergent beyond certified terms");
  std::lock_guard<std::mutex> lock(st_->mu);
  st_->extend(k);
  return Convergent{st_->cA(k), st_->cB(k), k};
}

Quadratic CFExpansion::tail_value(long k) const {
  if (!periodic()) throw internal_error("tail_value needs a periodic expansion");
  if (k < 0) throw input_error("tail index must be nonnegative");
  const long m = st_->cf.head_len();
  CFInput shifted;
  if (k <= m - 1) {
    shifted.head.assign(st_->cf.head.begin() + k, st_->cf.head.end());
    shifted.period = st_->cf.period;
  } else {
    const long L = static_cast<long>(st_->cf.period.size());
    const long off = (k - m) % L;
    shifted.period.reserve(L);
    for (long i = 0; i < L; ++i)
      shifted.period.push_back(st_->cf.period[(off + i) % L]);
  }
  return cf_periodic_value(shifted);
}

const std::optional<Quadratic>& CFExpansion::source_quadratic() const {
  return st_->quad_source;
}
const std::optional<Real>& CFExpansion::source() const { return st_->source; }

LambdaValue CFExpansion::lambda(long k, long prec) const {
  if (k < 1) throw input_error("lambda index must be >= 1");
  if (!periodic() && k > st_->certified_upto + 1)
    throw input_error("lambda beyond certified terms");
  Int Bk1, Bk2;
  {
    std::lock_guard<std::mutex> lock(st_->mu);
    st_->extend(std::min(k, st_->certified_upto));
    Bk2 = st_->cB(k - 2);
    Bk1 = st_->cB(k - 1);
  }
  Rat head(Bk2, Bk1);
  head.canonicalize();
  if (periodic()) {
    const Quadratic tail = tail_value(k);
    auto exact = Quadratic::try_add(Quadratic(head), tail);
    if (!exact) throw internal_error("lambda head/tail field mismatch");
    return LambdaValue{exact->enclose(prec), *exact, false};
  }
  const long K = st_->certified_upto;
  if (k <= K) {
    std::vector<Int> rest;
    for (long i = k; i <= K; ++i) rest.push_back(st_->cf.term(i));
    Rat t1 = cf_finite_value(rest);
    rest.back() += 1;
    Rat t2 = cf_finite_value(rest);
    if (t1 > t2) std::swap(t1, t2);
    Ball ball = Ball::from_rat_pair(head + t1, head + t2, prec + 2);
    return LambdaValue{ball, std::nullopt, !ball.width_leq_2exp(prec)};
  }
  if (k == K + 1 && st_->source) {
    // Tail recovered from the source value via the convergent Moebius map:
    // zeta_k = (A_{k-2} - B_{k-2} x) / (B_{k-1} x - A_{k-1}).
    Int Ak1, Ak2;
    {
      std::lock_guard<std::mutex> lock(st_->mu);
      Ak2 = st_->cA(k - 2);
      Ak1 = st_->cA(k - 1);
    }
    const Real& x = *st_->source;
    Real zeta = (Real(Ak2) - Real(Bk2) * x) / (Real(Bk1) * x - Real(Ak1));
    Real lam = Real(head) + zeta;
    bool degraded = false;
    Ball ball = enclose_best_effort(lam, prec, &degraded);
    return LambdaValue{ball, std::nullopt, degraded};
  }
  throw input_error("lambda beyond certified terms");
}

Rat cf_finite_value(const std::vector<Int>& terms) {
  if (terms.empty()) throw input_error("empty continued fraction");
  Int A2(0), A1(1), B2(1), B1(0);
  for (const Int& a : terms) {
    Int A = a * A1 + A2;
    Int B = a * B1 + B2;
    A2 = A1;
    A1 = A;
    B2 = B1;
    B1 = B;
  }
  Rat v(A1, B1);
  v.canonicalize();
  return v;
}

Quadratic cf_periodic_value(const CFInput& cf) {
  cf.validate();
  if (!cf.periodic()) throw input_error("expansion has no period");
  // Purely periodic tail value y = [q0; q1, ..., q_{L-1}, y].
  Int A2(0), A1(1), B2(1), B1(0);
  for (const Int& a : cf.period) {
    Int A = a * A1 + A2;
    Int B = a * B1 + B2;
    A2 = A1;
    A1 = A;
    B2 = B1;
    B1 = B;
  }
  // y = (A1 y + A2) / (B1 y + B2)  =>  B1 y^2 + (B2 - A1) y - A2 = 0.
  const Int disc = (A1 - B2) * (A1 - B2) + 4 * B1 * A2;
  Quadratic y(A1 - B2, 1, 2 * B1, disc);
  if (y.is_rational())
    throw internal_error("periodic continued fraction produced a rational");
  if (!cf.head.empty()) {
    Int hA2(0), hA1(1), hB2(1), hB1(0);
    for (const Int& a : cf.head) {
      Int A = a * hA1 + hA2;
      Int B = a * hB1 + hB2;
      hA2 = hA1;
      hA1 = A;
      hB2 = hB1;
      hB1 = B;
    }
    Quadratic num = Quadratic(hA1) * y + Quadratic(hA2);
    Quadratic den = Quadratic(hB1) * y + Quadratic(hB2);
    y = num / den;
  }
  return y;
}

RealSpec value_from_cf(const CFInput& cf) {
  cf.validate();
  if (!cf.periodic()) return RealSpec::rational(cf_finite_value(cf.head));
  return RealSpec::quad_irr(cf_periodic_value(cf));
}

CFExpansion cf_of_quadratic(const Quadratic& q) {
  if (q.is_rational())
    throw input_error("rational value: use the finite continued-fraction path");
  Int P, Q, D;
  if (sgn(q.b()) > 0) {
    P = q.a();
    Q = q.c();
  } else {
    P = -q.a();
    Q = -q.c();
  }
  D = q.b() * q.b() * q.d();
  {
    Int rem = D - P * P;
    if (!mpz_divisible_p(rem.get_mpz_t(), Q.get_mpz_t())) {
      Int aq = abs(Q);
      P *= aq;
      D *= Q * Q;
      Q *= aq;
    }
  }

  std::vector<Int> terms;
  std::map<std::pair<Int, Int>, long> seen;
  long cycle_start = -1;
  while (true) {
    auto key = std::make_pair(P, Q);
    auto it = seen.find(key);
    if (it != seen.end()) {
      cycle_start = it->second;
      break;
    }
    seen.emplace(std::move(key), static_cast<long>(terms.size()));
    const Quadratic alpha(P, 1, Q, D);
    Int a = alpha.floor();
    P = a * Q - P;
    Int Qn = (D - P * P) / Q;
    if (sgn(Qn) == 0 || (D - P * P) != Qn * Q)
      throw internal_error("quadratic CF state update failed");
    Q = Qn;
    terms.push_back(std::move(a));
  }

  const long n = static_cast<long>(terms.size()) - cycle_start;
  long L = n;
  for (long cand = 1; cand < n; ++cand) {
    if (n % cand != 0) continue;
    bool ok = true;
    for (long i = 0; i < n && ok; ++i)
      ok = terms[cycle_start + i] == terms[cycle_start + (i + cand) % n];
    if (ok) {
      L = cand;
      break;
    }
  }
  long s = cycle_start;
  while (s > 0 && terms[s - 1] == terms[s - 1 + L]) s -= 1;

  CFInput cf;
  cf.head.assign(terms.begin(), terms.begin() + s);
  cf.period.assign(terms.begin() + s, terms.begin() + s + L);
  return CFExpansion::exact_periodic(std::move(cf), q);
}

CFExpansion cf_of_real(const Real& x, long K, const RefinePolicy& policy) {
  if (K < 0) throw input_error("term count must be nonnegative");
  std::vector<Int> best;
  long p = std::max(policy.start_bits, 16L);
  bool exhausted = false;
  while (true) {
    std::optional<Ball> b;
    try {
      b = x.enclose(p);
    } catch (const precision_limit&) {
      try {
        bool degraded = false;
        b = enclose_best_effort(x, p / 2, &degraded);
      } catch (const precision_limit&) {
        b = std::nullopt;
      }
      exhausted = true;
    }
    if (b) {
      std::vector<Int> terms;
      Rat lo = b->lo().to_rat(), hi = b->hi().to_rat();
      while (static_cast<long>(terms.size()) < K + 1 && lo < hi) {
        const Int fl = floor_rat(lo);
        if (fl != floor_rat(hi)) break;
        terms.push_back(fl);
        const Rat flo = lo - Rat(fl), fhi = hi - Rat(fl);
        if (sgn(flo) == 0) break;
        lo = 1 / fhi;
        hi = 1 / flo;
      }
      if (terms.size() > best.size()) best = std::move(terms);
      if (static_cast<long>(best.size()) >= K + 1) {
        best.resize(K + 1);
        return CFExpansion::certified_truncation(std::move(best), x);
      }
    }
    if (exhausted || p >= policy.cap_bits)
      return CFExpansion::certified_truncation(std::move(best), x);
    p = policy.next(p);
  }
}

CFExpansion cf_of_real(const RealSpec& x, long K, const RefinePolicy& policy) {
  if (!x.provably_irrational())
    throw input_error("value is not provably irrational: use the finite path");
  return cf_of_real(x.to_real(), K, policy);
}

CFInput halve_cf(const CFInput& in) {
  in.validate();
  CFInput a = in;
  if (a.periodic() && a.period.size() % 2 == 1) {
    a.period.reserve(2 * a.period.size());
    a.period.insert(a.period.end(), in.period.begin(), in.period.end());
  }
  const long m = a.head_len();
  const long span = m + 2 * static_cast<long>(a.period.size());
  for (long k = 0; k < (a.periodic() ? span : m); k += 2) {
    if (mpz_odd_p(a.term(k).get_mpz_t()))
      throw input_error("even-indexed quotient a_" + std::to_string(k) +
                        " is odd; halving transform requires it even");
  }
  CFInput out;
  out.head.reserve(a.head.size());
  for (long i = 0; i < m; ++i) {
    out.head.push_back(i % 2 == 0 ? Int(a.head[i] / 2) : Int(2 * a.head[i]));
  }
  out.period.reserve(a.period.size());
  for (size_t j = 0; j < a.period.size(); ++j) {
    const long g = m + static_cast<long>(j);
    out.period.push_back(g % 2 == 0 ? Int(a.period[j] / 2) : Int(2 * a.period[j]));
  }
  out.validate();
  return out;
}

std::optional<BestApproxWitness> best_approx_witness(const RealSpec& spec, const Int& m,
                                                     const Int& n,
                                                     const RefinePolicy& policy) {
  if (n < 1) throw input_error("denominator must be positive");
  if (m < 1) throw input_error("numerator must be positive");
  if (!spec.provably_irrational())
    throw input_error("best-approximation witness needs an irrational value");
  const Real x = spec.to_real();
  Rat approx(m, n);
  approx.canonicalize();
  Rat bound(1, 2 * n * n);
  bound.canonicalize();
  const Real diff = x - Real(approx);
  const Tri above = certified_less(Real(bound), diff, policy);
  const Tri below = certified_less(diff, Real(-bound), policy);
  if (above == Tri::True || below == Tri::True) return std::nullopt;
  if (above == Tri::Undecided || below == Tri::Undecided)
    throw precision_limit(policy.cap_bits);

  const Int g = gcd(m, n);
  const Int m0 = m / g, n0 = n / g;

  CFExpansion cf = [&] {
    if (x.is_exact()) return cf_of_quadratic(*x.exact());
    long K = 16;
    while (true) {
      CFExpansion e = cf_of_real(x, K, policy);
      const long cu = e.certified_upto();
      if (cu >= 0 && e.convergent(cu).B > n0) return e;
      if (cu < K) return e;  // source exhausted, work with what we have
      K *= 2;
    }
  }();

  for (long k = 0; k <= cf.certified_upto(); ++k) {
    const Convergent c = cf.convergent(k);
    if (c.B > n0) break;
    if (c.B == n0 && c.A == m0) {
      const Int mult = g;
      const Rat thr(2 * mult * mult);
      for (long p = policy.start_bits;; p = policy.next(p)) {
        const LambdaValue lam = cf.lambda(k + 1, p);
        if (lam.exact) {
          if (lam.exact->cmp(thr) > 0) return BestApproxWitness{mult, k};
          throw internal_error("best-approximation lambda bound failed");
        }
        if (lam.ball.lo().to_rat() > thr) return BestApproxWitness{mult, k};
        if (lam.ball.hi().to_rat() < thr)
          throw internal_error("best-approximation lambda bound failed");
        if (p >= policy.cap_bits) throw precision_limit(policy.cap_bits);
      }
    }
  }
  throw internal_error("approximation within 1/(2n^2) was not a convergent multiple");
}

}  // namespace fproots

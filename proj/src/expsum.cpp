#include "expsum/expsum.hpp"

#include <string>

namespace expsum {

namespace {

Point reduced_alpha(std::span<const i64> alpha, std::size_t n, u64 p) {
  if (alpha.size() != n) throw Error(ErrorKind::InvalidArgument, "alpha has the wrong dimension");
  Point a(n);
  for (std::size_t i = 0; i < n; ++i) a[i] = static_cast<i64>(reduce(alpha[i], p));
  return a;
}

long double points(u64 base, std::size_t exponent) {
  long double v = 1;
  for (std::size_t i = 0; i < exponent; ++i) v *= static_cast<long double>(base);
  return v;
}

bool defined_at(const RationalFunc& f, std::span<const i64> x, u64 p) {
  return f.den().eval_mod(x, p) != 0;
}

// Odometer over the coset {alpha + p t : t in [0, extent)^n}.
template <class Fn>
void for_each_in_coset(const Point& alpha, u64 p, u64 extent, Fn&& fn) {
  const std::size_t n = alpha.size();
  std::vector<u64> t(n, 0);
  Point y(n);
  while (true) {
    for (std::size_t i = 0; i < n; ++i) y[i] = alpha[i] + static_cast<i64>(p * t[i]);
    fn(static_cast<const Point&>(y));
    std::size_t k = n;
    while (k-- > 0) {
      if (++t[k] < extent) break;
      t[k] = 0;
    }
    if (k == static_cast<std::size_t>(-1)) return;
  }
}

}  // namespace

StationaryData::StationaryData(const RationalFunc& f_in, u64 p_in)
    : f(f_in), p(p_in), grad(scaled_gradient(f_in, p_in)), hess(scaled_hessian(grad)) {}

std::optional<std::vector<u64>> StationaryData::scaled_gradient_at(std::span<const i64> x,
                                                                   unsigned k) const {
  if (!defined_at(f, x, p)) return std::nullopt;
  std::vector<u64> out(grad.components.size(), 0);
  if (k == 0) return out;
  const PrimePower pk(p, k);
  for (std::size_t i = 0; i < out.size(); ++i) {
    auto v = grad.components[i].try_eval_mod(x, pk);
    if (!v) return std::nullopt;
    out[i] = *v;
  }
  return out;
}

ModMatrix StationaryData::scaled_hessian_mod_p(std::span<const i64> x) const {
  const PrimePower pp(p, 1);
  ModMatrix h(hess.size(), std::vector<u64>(hess.size()));
  for (std::size_t i = 0; i < hess.size(); ++i)
    for (std::size_t j = 0; j < hess.size(); ++j) h[i][j] = hess[i][j].eval_mod(x, pp);
  return h;
}

CycloElement brute_full_sum(const RationalFunc& f, const PrimePower& q, u64 budget) {
  check_budget(points(q.q(), f.n_vars()), budget, "full sum");
  const PointEvaluator eval(f, q);
  const Lattice box{Point(f.n_vars(), 0), 1, q.q()};
  return CycloElement::from_exponent_counts(q, exponent_histogram(eval, box, q.q()));
}

CycloElement brute_full_sum_serial(const RationalFunc& f, const PrimePower& q, u64 budget) {
  check_budget(points(q.q(), f.n_vars()), budget, "full sum");
  const PointEvaluator eval(f, q);
  const Lattice box{Point(f.n_vars(), 0), 1, q.q()};
  return CycloElement::from_exponent_counts(q, exponent_histogram_serial(eval, box, q.q()));
}

CycloElement restricted_sum_alpha(const RationalFunc& f, const PrimePower& q,
                                  std::span<const i64> alpha, u64 budget) {
  const Point a = reduced_alpha(alpha, f.n_vars(), q.p());
  const u64 extent = q.q() / q.p();
  check_budget(points(extent, f.n_vars()), budget, "restricted sum");
  const PointEvaluator eval(f, q);
  const Lattice box{a, static_cast<i64>(q.p()), extent};
  return CycloElement::from_exponent_counts(q, exponent_histogram(eval, box, q.q()));
}

CycloElement prop1_reduce(const RationalFunc& f, const PrimePower& q, std::span<const i64> alpha,
                          u64 budget) {
  const StationaryData data(f, q.p());
  const int r = data.r();
  const int m = static_cast<int>(q.m());
  const int d = m - r;
  if (d < 1)
    throw Error(ErrorKind::NotApplicable, "m - r = " + std::to_string(d) + " < 1");
  const std::size_t n = f.n_vars();
  const Point a = reduced_alpha(alpha, n, q.p());

  // y ranges over [0, p^s)^n with y = alpha (mod p); the scaled gradient
  // must vanish mod p^c; the sum is scaled by p^e.
  unsigned s, c;
  u64 e_times_2;
  if (d % 2 == 0) {
    s = static_cast<unsigned>(d / 2);
    c = s;
    e_times_2 = n * static_cast<u64>(m + r);
  } else {
    s = static_cast<unsigned>((d + 1) / 2);
    c = static_cast<unsigned>((d - 1) / 2);
    e_times_2 = n * static_cast<u64>(m + r - 1);
  }
  const u64 extent = ipow(q.p(), s - 1);
  check_budget(points(extent, n), budget, "reduced sum");

  std::vector<i64> counts(q.q(), 0);
  for_each_in_coset(a, q.p(), extent, [&](const Point& y) {
    auto g = data.scaled_gradient_at(y, c);
    if (!g) return;
    for (u64 v : *g)
      if (v != 0) return;
    ++counts[f.eval_mod(y, q)];
  });
  const i64 scale = static_cast<i64>(ipow(q.p(), static_cast<unsigned>(e_times_2 / 2)));
  return CycloElement::from_exponent_counts(q, counts).scaled(scale);
}

bool is_critical_mod_p(const StationaryData& data, std::span<const i64> alpha) {
  auto g = data.scaled_gradient_at(alpha, 1);
  if (!g) return false;
  for (u64 v : *g)
    if (v != 0) return false;
  return true;
}

std::vector<CriticalPoint> critical_points_mod_p(const RationalFunc& f, u64 p) {
  const StationaryData data(f, p);
  const std::size_t n = f.n_vars();
  std::vector<CriticalPoint> out;
  for_each_in_coset(Point(n, 0), 1, p, [&](const Point& alpha) {
    if (!is_critical_mod_p(data, alpha)) return;
    CriticalPoint cp;
    cp.alpha = alpha;
    cp.r = data.r();
    cp.hesse_scaled_det_mod_p = det_mod_p(data.scaled_hessian_mod_p(alpha), p);
    cp.singular = cp.hesse_scaled_det_mod_p == 0;
    out.push_back(std::move(cp));
  });
  return out;
}

Point hensel_lift_critical(const RationalFunc& f, const PrimePower& q, std::span<const i64> alpha) {
  return hensel_lift_critical(StationaryData(f, q.p()), q, alpha);
}

Point hensel_lift_critical(const StationaryData& data, const PrimePower& q,
                           std::span<const i64> alpha) {
  const u64 p = q.p();
  Point x = reduced_alpha(alpha, data.f.n_vars(), p);
  if (!is_critical_mod_p(data, x))
    throw Error(ErrorKind::InvalidArgument, "alpha is not a critical point mod p");
  if (det_mod_p(data.scaled_hessian_mod_p(x), p) == 0)
    throw Error(ErrorKind::SingularHessian, "scaled Hessian is singular mod p");

  u64 pk = 1;
  for (unsigned k = 1; k < q.m(); ++k) {
    pk *= p;
    auto g = data.scaled_gradient_at(x, k + 1);
    if (!g) throw Error(ErrorKind::NoConvergence, "Newton iterate hit a pole");
    std::vector<u64> rhs(g->size());
    for (std::size_t i = 0; i < g->size(); ++i) {
      if ((*g)[i] % pk != 0) throw Error(ErrorKind::NoConvergence, "lost precision in lift");
      rhs[i] = submod(0, (*g)[i] / pk, p);
    }
    std::vector<u64> delta = solve_mod_p(data.scaled_hessian_mod_p(x), rhs, p);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += static_cast<i64>(pk * delta[i]);
  }
  auto g = data.scaled_gradient_at(x, q.m());
  if (!g) throw Error(ErrorKind::NoConvergence, "lift is a pole");
  for (u64 v : *g)
    if (v != 0) throw Error(ErrorKind::NoConvergence, "lift does not solve the gradient system");
  for (i64& v : x) v = static_cast<i64>(reduce(v, q.q()));
  return x;
}

namespace {

struct Theorem1Setup {
  bool zero = false;
  Point lift;
  int r = 0;
  int d = 0;
};

Theorem1Setup theorem1_setup(const StationaryData& data, const PrimePower& q, const Point& a) {
  Theorem1Setup st;
  st.r = data.r();
  st.d = static_cast<int>(q.m()) - st.r;
  if (st.d < 2)
    throw Error(ErrorKind::NotApplicable, "m - r = " + std::to_string(st.d) + " < 2");
  if (!is_critical_mod_p(data, a)) {
    st.zero = true;  // also covers cosets consisting of poles
    return st;
  }
  if (det_mod_p(data.scaled_hessian_mod_p(a), q.p()) == 0)
    throw Error(ErrorKind::SingularHessianOutOfScope, "critical point with singular Hessian");
  st.lift = hensel_lift_critical(data, q, a);
  return st;
}

CycloElement closed_form(const StationaryData& data, const PrimePower& q, const Theorem1Setup& st) {
  const u64 p = q.p();
  const std::size_t n = data.f.n_vars();
  const int m = static_cast<int>(q.m());
  const CycloElement phase = CycloElement::root_of_unity(q, static_cast<i64>(data.f.eval_mod(st.lift, q)));
  if (st.d % 2 == 0)
    return phase.scaled(static_cast<i64>(ipow(p, static_cast<unsigned>(n * (m + st.r) / 2))));

  const u64 det_lift = det_mod_p(data.scaled_hessian_mod_p(st.lift), p);
  // det(2^{-1} H) = 2^{-n} det(H) mod p
  const u64 half_n = powmod(mod_inverse(2, p), n, p);
  const int symbol = legendre_symbol(static_cast<i64>(mulmod(half_n, det_lift, p)), p);
  const CycloElement gauss = gauss_sum_brute(p, 1).lifted(q).pow(static_cast<unsigned>(n));
  const i64 scale = static_cast<i64>(ipow(p, static_cast<unsigned>(n * (m + st.r - 1) / 2)));
  return (phase * gauss).scaled(symbol * scale);
}

// f(a* + p^s u) = f(a*) + p^{m-1} (2^{-1} u^t H u) mod p^m for all u, where
// s = (m - r - 1)/2 and H is the scaled Hessian at a*.
bool quadratic_truncation_holds(const StationaryData& data, const PrimePower& q,
                                const Theorem1Setup& st) {
  const u64 p = q.p(), Q = q.q();
  const std::size_t n = data.f.n_vars();
  const u64 ps = ipow(p, static_cast<unsigned>((st.d - 1) / 2));
  const u64 pm1 = Q / p;
  const ModMatrix h = data.scaled_hessian_mod_p(st.lift);
  const u64 inv2 = mod_inverse(2, p);
  const u64 base = data.f.eval_mod(st.lift, q);
  bool ok = true;
  for_each_in_coset(Point(n, 0), 1, p, [&](const Point& u) {
    if (!ok) return;
    Point x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = st.lift[i] + static_cast<i64>(ps) * u[i];
    u64 quad = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        quad = addmod(quad, mulmod(mulmod(h[i][j], static_cast<u64>(u[i]), p), static_cast<u64>(u[j]), p), p);
    const u64 expected = addmod(base, mulmod(pm1, mulmod(inv2, quad, p), Q), Q);
    ok = data.f.eval_mod(x, q) == expected;
  });
  return ok;
}

}  // namespace

CycloElement theorem1_eval(const RationalFunc& f, const PrimePower& q, std::span<const i64> alpha) {
  return theorem1_eval(StationaryData(f, q.p()), q, alpha);
}

CycloElement theorem1_eval(const StationaryData& data, const PrimePower& q,
                           std::span<const i64> alpha) {
  const Point a = reduced_alpha(alpha, data.f.n_vars(), q.p());
  const Theorem1Setup st = theorem1_setup(data, q, a);
  if (st.zero) return CycloElement::zero(q);
  // Cubic Taylor terms carry at least p^{3s + r - 1}; that reaches p^m for
  // every odd m - r unless p = 3 and m - r = 3.
  if (st.d % 2 == 1 && q.p() == 3 && st.d == 3 && !quadratic_truncation_holds(data, q, st))
    throw Error(ErrorKind::TaylorRemainder,
                "cubic Taylor term survives mod p^m (p = 3, m - r = 3)");
  return closed_form(data, q, st);
}

CycloElement theorem1_formula_unchecked(const StationaryData& data, const PrimePower& q,
                                        std::span<const i64> alpha) {
  const Point a = reduced_alpha(alpha, data.f.n_vars(), q.p());
  const Theorem1Setup st = theorem1_setup(data, q, a);
  if (st.zero) return CycloElement::zero(q);
  return closed_form(data, q, st);
}

CycloElement full_sum_via_theorem1(const RationalFunc& f, const PrimePower& q) {
  const StationaryData data(f, q.p());
  CycloElement total = CycloElement::zero(q);
  for_each_in_coset(Point(f.n_vars(), 0), 1, q.p(),
                    [&](const Point& alpha) { total += theorem1_eval(data, q, alpha); });
  return total;
}

CycloElement gauss_sum_brute(u64 q, i64 a, u64 budget) {
  check_budget(static_cast<long double>(q), budget, "Gauss sum");
  const Conductor c(q);
  const u64 ar = reduce(a, q);
  std::vector<i64> counts(q, 0);
  for (u64 x = 0; x < q; ++x) ++counts[mulmod(ar, mulmod(x, x, q), q)];
  return CycloElement::from_exponent_counts(c, counts);
}

CycloElement gauss_sum_closed(u64 q, i64 a, u64 budget) {
  if (gcd(reduce(a, q), q) != 1)
    throw Error(ErrorKind::NotCoprime,
                std::to_string(a) + " is not coprime to " + std::to_string(q));
  return gauss_sum_brute(q, 1, budget).scaled(jacobi_symbol(a, q));
}

}  // namespace expsum

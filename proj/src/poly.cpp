#include "expsum/poly.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace expsum {

namespace {

i64 checked_add(i64 a, i64 b) {
  i64 r;
  if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorKind::Overflow, "coefficient addition");
  return r;
}

i64 checked_mul(i64 a, i64 b) {
  i64 r;
  if (__builtin_mul_overflow(a, b, &r))
    throw Error(ErrorKind::Overflow, "coefficient multiplication");
  return r;
}

void require_same_vars(const MultiPoly& a, const MultiPoly& b) {
  if (a.n_vars() != b.n_vars())
    throw Error(ErrorKind::InvalidArgument, "polynomials in different numbers of variables");
}

}  // namespace

MultiPoly::MultiPoly(std::size_t n_vars) : n_vars_(n_vars) {
  if (n_vars == 0) throw Error(ErrorKind::InvalidArgument, "need at least one variable");
}

MultiPoly MultiPoly::constant(std::size_t n_vars, i64 c) {
  MultiPoly f(n_vars);
  f.add_term(Exponents(n_vars, 0), c);
  return f;
}

MultiPoly MultiPoly::variable(std::size_t n_vars, std::size_t i) {
  if (i >= n_vars) throw Error(ErrorKind::InvalidArgument, "variable index out of range");
  Exponents e(n_vars, 0);
  e[i] = 1;
  MultiPoly f(n_vars);
  f.add_term(e, 1);
  return f;
}

MultiPoly MultiPoly::monomial(i64 coef, Exponents exps) {
  MultiPoly f(exps.size());
  f.add_term(exps, coef);
  return f;
}

void MultiPoly::add_term(const Exponents& exps, i64 coef) {
  if (exps.size() != n_vars_)
    throw Error(ErrorKind::InvalidArgument, "exponent tuple length differs from n_vars");
  if (coef == 0) return;
  auto [it, inserted] = terms_.try_emplace(exps, coef);
  if (!inserted) {
    it->second = checked_add(it->second, coef);
    if (it->second == 0) terms_.erase(it);
  }
}

bool MultiPoly::is_constant() const noexcept {
  return terms_.empty() ||
         (terms_.size() == 1 &&
          std::all_of(terms_.begin()->first.begin(), terms_.begin()->first.end(),
                      [](unsigned e) { return e == 0; }));
}

i64 MultiPoly::constant_term() const {
  auto it = terms_.find(Exponents(n_vars_, 0));
  return it == terms_.end() ? 0 : it->second;
}

unsigned MultiPoly::total_degree() const noexcept {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) {
    unsigned s = 0;
    for (unsigned k : e) s += k;
    d = std::max(d, s);
  }
  return d;
}

unsigned MultiPoly::degree_in(std::size_t i) const noexcept {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[i]);
  return d;
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
  require_same_vars(*this, o);
  MultiPoly r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const { return *this + (-o); }

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
  require_same_vars(*this, o);
  MultiPoly r(n_vars_);
  Exponents e(n_vars_);
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : o.terms_) {
      for (std::size_t i = 0; i < n_vars_; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, checked_mul(ca, cb));
    }
  }
  return r;
}

MultiPoly MultiPoly::operator-() const { return scaled(-1); }

MultiPoly MultiPoly::scaled(i64 c) const {
  MultiPoly r(n_vars_);
  for (const auto& [e, v] : terms_) r.add_term(e, checked_mul(v, c));
  return r;
}

MultiPoly MultiPoly::divided_exact(i64 d) const {
  if (d == 0) throw Error(ErrorKind::InvalidArgument, "division by zero");
  MultiPoly r(n_vars_);
  for (const auto& [e, v] : terms_) {
    if (v % d != 0)
      throw Error(ErrorKind::InvalidArgument,
                  "coefficient " + std::to_string(v) + " not divisible by " + std::to_string(d));
    r.add_term(e, v / d);
  }
  return r;
}

MultiPoly MultiPoly::derivative(std::size_t i) const {
  if (i >= n_vars_) throw Error(ErrorKind::InvalidArgument, "variable index out of range");
  MultiPoly r(n_vars_);
  for (const auto& [e, c] : terms_) {
    if (e[i] == 0) continue;
    Exponents d = e;
    --d[i];
    r.add_term(d, checked_mul(c, static_cast<i64>(e[i])));
  }
  return r;
}

u64 MultiPoly::eval_mod(std::span<const i64> x, u64 q) const {
  if (x.size() != n_vars_) throw Error(ErrorKind::InvalidArgument, "point dimension mismatch");
  std::vector<u64> xr(n_vars_);
  for (std::size_t i = 0; i < n_vars_; ++i) xr[i] = reduce(x[i], q);
  u64 acc = 0;
  for (const auto& [e, c] : terms_) {
    u64 t = reduce(c, q);
    for (std::size_t i = 0; i < n_vars_ && t != 0; ++i)
      if (e[i] != 0) t = mulmod(t, powmod(xr[i], e[i], q), q);
    acc = addmod(acc, t, q);
  }
  return acc;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Highest terms first reads more naturally.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    bool unit = true;
    for (unsigned k : e) unit = unit && k == 0;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    i64 a = c < 0 ? -c : c;
    if (a != 1 || unit) os << a;
    bool need_star = a != 1;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (need_star) os << "*";
      os << "x" << (i + 1);
      if (e[i] > 1) os << "^" << e[i];
      need_star = true;
    }
    first = false;
  }
  return os.str();
}

unsigned poly_ord_p(const MultiPoly& f, u64 p) {
  if (f.is_zero()) throw Error(ErrorKind::ZeroFunction, "ord_p of the zero polynomial");
  unsigned best = std::numeric_limits<unsigned>::max();
  for (const auto& [e, c] : f.terms()) best = std::min(best, *int_valuation(c, p));
  return best;
}

RationalFunc::RationalFunc(MultiPoly num, MultiPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw Error(ErrorKind::InvalidArgument, "zero denominator");
  require_same_vars(num_, den_);
}

RationalFunc::RationalFunc(MultiPoly num)
    : num_(std::move(num)), den_(MultiPoly::constant(num_.n_vars(), 1)) {}

bool RationalFunc::is_polynomial() const noexcept {
  return den_.is_constant() && den_.constant_term() == 1;
}

std::optional<u64> RationalFunc::try_eval_mod(std::span<const i64> x, const PrimePower& q) const {
  u64 d = den_.eval_mod(x, q.q());
  if (d % q.p() == 0) return std::nullopt;
  return mulmod(num_.eval_mod(x, q.q()), mod_inverse(static_cast<i64>(d), q.q()), q.q());
}

u64 RationalFunc::eval_mod(std::span<const i64> x, const PrimePower& q) const {
  auto v = try_eval_mod(x, q);
  if (!v) throw Error(ErrorKind::PoleModP, "denominator vanishes mod " + std::to_string(q.p()));
  return *v;
}

std::string RationalFunc::to_string() const {
  if (is_polynomial()) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

int poly_ord_p(const RationalFunc& f, u64 p) {
  if (f.is_zero()) throw Error(ErrorKind::ZeroFunction, "ord_p of the zero function");
  return static_cast<int>(poly_ord_p(f.num(), p)) - static_cast<int>(poly_ord_p(f.den(), p));
}

RationalFunc partial_derivative(const RationalFunc& f, std::size_t i) {
  if (f.den().is_constant()) {
    // c constant: (num / c)' = num' / c
    return RationalFunc(f.num().derivative(i), f.den());
  }
  MultiPoly top = f.num().derivative(i) * f.den() - f.num() * f.den().derivative(i);
  return RationalFunc(std::move(top), f.den() * f.den());
}

std::vector<RationalFunc> gradient(const RationalFunc& f) {
  std::vector<RationalFunc> g;
  g.reserve(f.n_vars());
  for (std::size_t i = 0; i < f.n_vars(); ++i) g.push_back(partial_derivative(f, i));
  return g;
}

std::vector<std::vector<RationalFunc>> hessian(const RationalFunc& f) {
  std::vector<std::vector<RationalFunc>> h;
  for (const auto& gi : gradient(f)) h.push_back(gradient(gi));
  return h;
}

ScaledGradient scaled_gradient(const RationalFunc& f, u64 p) {
  std::vector<RationalFunc> grad = gradient(f);
  std::optional<int> r;
  for (const auto& g : grad)
    if (!g.is_zero()) r = std::min(r.value_or(std::numeric_limits<int>::max()), poly_ord_p(g, p));
  if (!r) throw Error(ErrorKind::AllDerivativesZero, "every partial derivative vanishes");

  ScaledGradient out;
  out.r = *r;
  const std::size_t n = f.n_vars();
  for (const auto& g : grad) {
    if (g.is_zero()) {
      out.components.emplace_back(MultiPoly(n), MultiPoly::constant(n, 1));
      continue;
    }
    unsigned on = poly_ord_p(g.num(), p);
    unsigned od = poly_ord_p(g.den(), p);
    int shift = static_cast<int>(on) - static_cast<int>(od) - *r;  // >= 0
    MultiPoly num = g.num().divided_exact(static_cast<i64>(ipow(p, on)))
                        .scaled(static_cast<i64>(ipow(p, static_cast<unsigned>(shift))));
    MultiPoly den = g.den().divided_exact(static_cast<i64>(ipow(p, od)));
    out.components.emplace_back(std::move(num), std::move(den));
  }
  return out;
}

int grad_ord(const RationalFunc& f, u64 p) { return scaled_gradient(f, p).r; }

std::vector<std::vector<RationalFunc>> scaled_hessian(const ScaledGradient& g) {
  std::vector<std::vector<RationalFunc>> h;
  for (const auto& c : g.components) h.push_back(gradient(c));
  return h;
}

namespace {

// Dense univariate polynomial over F_p, low degree first, trimmed.
using Fp = std::vector<u64>;

void trim(Fp& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Fp to_fp(const MultiPoly& f, u64 p) {
  Fp a(f.degree_in(0) + 1, 0);
  for (const auto& [e, c] : f.terms()) a[e[0]] = addmod(a[e[0]], reduce(c, p), p);
  trim(a);
  return a;
}

Fp fp_rem(Fp a, const Fp& b, u64 p) {
  u64 lead_inv = mod_inverse(static_cast<i64>(b.back()), p);
  while (a.size() >= b.size()) {
    u64 factor = mulmod(a.back(), lead_inv, p);
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i)
      a[shift + i] = submod(a[shift + i], mulmod(factor, b[i], p), p);
    trim(a);
  }
  return a;
}

}  // namespace

Coprimality coprime_mod_p(const RationalFunc& f, u64 p) {
  if (f.n_vars() != 1) return Coprimality::Unverified;
  Fp a = to_fp(f.num(), p);
  Fp b = to_fp(f.den(), p);
  // gcd(0, b) = b and gcd(a, 0) = a; coprime iff the gcd is a nonzero constant.
  while (!b.empty()) {
    Fp r = fp_rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a.size() == 1 ? Coprimality::Coprime : Coprimality::NotCoprime;
}

}  // namespace expsum

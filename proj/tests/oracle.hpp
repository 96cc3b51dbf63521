#pragma once

// Slow, independent reference computations for the tests: direct complex
// sums, search-based inverses, squares tables. Nothing here calls the
// library's evaluators.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <optional>
#include <vector>

#include "expsum/poly.hpp"

namespace oracle {

using cplx = std::complex<long double>;
using ll = long long;

struct Term {
  ll c;
  std::vector<unsigned> e;
};
using Terms = std::vector<Term>;

inline Terms terms_of(const expsum::MultiPoly& f) {
  Terms t;
  for (const auto& [e, c] : f.terms()) t.push_back({c, e});
  return t;
}

inline ll md(__int128 v, ll q) {
  ll r = static_cast<ll>(v % q);
  return r < 0 ? r + q : r;
}

inline ll eval(const Terms& f, const std::vector<ll>& x, ll q) {
  __int128 acc = 0;
  for (const Term& t : f) {
    __int128 v = t.c;
    for (std::size_t i = 0; i < x.size(); ++i)
      for (unsigned k = 0; k < t.e[i]; ++k) v = (v * x[i]) % q;
    acc = (acc + v) % q;
  }
  return md(acc, q);
}

inline ll inverse_by_search(ll a, ll q) {
  a = md(a, q);
  for (ll b = 1; b < q; ++b)
    if (a * b % q == 1) return b;
  return -1;
}

inline cplx e(ll a, ll q) {
  const long double t = 2 * std::numbers::pi_v<long double> * static_cast<long double>(md(a, q)) / q;
  return {std::cos(t), std::sin(t)};
}

inline void for_box(std::size_t n, ll lo, ll hi, const std::function<void(const std::vector<ll>&)>& fn) {
  std::vector<ll> x(n, lo);
  while (true) {
    fn(x);
    std::size_t i = n;
    while (i-- > 0) {
      if (++x[i] <= hi) break;
      x[i] = lo;
    }
    if (i == static_cast<std::size_t>(-1)) return;
  }
}

/// sum over x in [0, q)^n (optionally x = alpha mod p) of e_q(num/den), skipping den = 0 mod p.
inline cplx expsum(const Terms& num, const Terms& den, std::size_t n, ll p, ll q,
                   const std::vector<ll>* alpha = nullptr) {
  cplx s = 0;
  for_box(n, 0, q - 1, [&](const std::vector<ll>& x) {
    if (alpha)
      for (std::size_t i = 0; i < n; ++i)
        if (x[i] % p != (*alpha)[i]) return;
    const ll d = den.empty() ? 1 : eval(den, x, q);
    if (d % p == 0) return;
    s += e(eval(num, x, q) * inverse_by_search(d, q), q);
  });
  return s;
}

inline int legendre_by_squares(ll a, ll p) {
  a = md(a, p);
  if (a == 0) return 0;
  for (ll x = 1; x < p; ++x)
    if (x * x % p == a) return 1;
  return -1;
}

inline cplx gauss(ll q, ll a) {
  cplx s = 0;
  for (ll x = 0; x < q; ++x) s += e(a * x % q * x, q);
  return s;
}

inline bool close(cplx a, std::complex<double> b, long double tol = 1e-7) {
  return std::abs(a - cplx(b.real(), b.imag())) <= tol * (1 + std::abs(a));
}

}  // namespace oracle

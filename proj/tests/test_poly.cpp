#include <doctest.h>

#include <random>

#include "expsum/poly.hpp"
#include "oracle.hpp"

using namespace expsum;

namespace {

MultiPoly poly(std::size_t n, std::initializer_list<std::pair<i64, Exponents>> terms) {
  MultiPoly f(n);
  for (const auto& [c, e] : terms) f.add_term(e, c);
  return f;
}

MultiPoly random_poly(std::mt19937_64& rng, std::size_t n, unsigned deg) {
  MultiPoly f(n);
  const int terms = 1 + static_cast<int>(rng() % 5);
  for (int t = 0; t < terms; ++t) {
    Exponents e(n, 0);
    unsigned left = static_cast<unsigned>(rng() % (deg + 1));
    for (std::size_t i = 0; i < n; ++i) {
      e[i] = static_cast<unsigned>(rng() % (left + 1));
      left -= e[i];
    }
    f.add_term(e, static_cast<i64>(rng() % 19) - 9);
  }
  return f;
}

// Value of a formal rational function at x mod q, or nullopt at a pole.
std::optional<u64> at(const RationalFunc& f, std::span<const i64> x, const PrimePower& q) {
  return f.try_eval_mod(x, q);
}

}  // namespace

TEST_CASE("canonical form drops zeros and merges terms") {
  MultiPoly f = poly(2, {{3, {1, 0}}, {-3, {1, 0}}, {2, {0, 2}}, {5, {0, 2}}});
  CHECK(f.terms().size() == 1);
  CHECK(f.terms().at({0, 2}) == 7);
  CHECK((f - f).is_zero());
  const MultiPoly x = MultiPoly::variable(2, 0), y = MultiPoly::variable(2, 1);
  CHECK((x + y) * (x - y) == x * x - y * y);
  CHECK(f.total_degree() == 2);
  CHECK_THROWS_AS(MultiPoly::monomial(1, {1}) + x, Error);
}

TEST_CASE("lexicographic term order") {
  MultiPoly f = poly(2, {{1, {0, 3}}, {1, {2, 0}}, {1, {1, 1}}});
  std::vector<Exponents> order;
  for (const auto& [e, c] : f.terms()) order.push_back(e);
  CHECK(order == std::vector<Exponents>{{0, 3}, {1, 1}, {2, 0}});
}

TEST_CASE("partial derivatives") {
  const MultiPoly x2 = MultiPoly::monomial(1, {2});
  CHECK(partial_derivative(x2, 0).num() == MultiPoly::monomial(2, {1}));
  CHECK(partial_derivative(x2, 0).is_polynomial());

  // d/dx (1/x) = -1/x^2, compared pointwise
  const RationalFunc inv(MultiPoly::constant(1, 1), MultiPoly::monomial(1, {1}));
  const RationalFunc expected(MultiPoly::constant(1, -1), MultiPoly::monomial(1, {2}));
  const RationalFunc d = partial_derivative(inv, 0);
  const PrimePower q(3, 2);
  for (i64 x = 0; x < 9; ++x) {
    const std::vector<i64> pt{x};
    CHECK(at(d, pt, q) == at(expected, pt, q));
  }

  // gradient examples
  const MultiPoly X = MultiPoly::variable(2, 0), Y = MultiPoly::variable(2, 1);
  auto g = gradient(X * X + Y * Y);
  CHECK(g[0].num() == X.scaled(2));
  CHECK(g[1].num() == Y.scaled(2));
  g = gradient(X * Y);
  CHECK(g[0].num() == Y);
  CHECK(g[1].num() == X);
  g = gradient(X * X * Y);
  CHECK(g[0].num() == (X * Y).scaled(2));
  CHECK(g[1].num() == X * X);
}

TEST_CASE("gradient of the twisted quadratic amplitude") {
  // f = h Q(y) + k.y with k = p^r L, h = p^r l: df/dy_i = p^r (l dQ/dy_i + l_i)
  const u64 p = 3;
  const i64 r = 2, l = 2;
  const std::vector<i64> L{1, -1, 4};
  const i64 A[3][3] = {{1, 2, 0}, {2, -1, 1}, {0, 1, 3}};
  MultiPoly Q(3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      Exponents e(3, 0);
      ++e[i];
      ++e[j];
      Q.add_term(e, A[i][j]);
    }
  const i64 pr = static_cast<i64>(ipow(p, r));
  MultiPoly f = Q.scaled(pr * l);
  for (std::size_t i = 0; i < 3; ++i) f = f + MultiPoly::variable(3, i).scaled(pr * L[i]);
  const auto g = gradient(f);
  for (std::size_t i = 0; i < 3; ++i) {
    const MultiPoly expected = (Q.derivative(i).scaled(l) + MultiPoly::constant(3, L[i])).scaled(pr);
    CHECK(g[i].num() == expected);
  }
  CHECK(grad_ord(f, p) == r);
  // Hessian is the constant matrix 2 p^r l A
  const auto H = hessian(f);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(H[i][j].num() == MultiPoly::constant(3, 2 * pr * l * A[i][j]));
}

TEST_CASE("hessian examples") {
  const auto h = hessian(MultiPoly::monomial(1, {2}));
  CHECK(h[0][0].num() == MultiPoly::constant(1, 2));
  const auto h3 = hessian(MultiPoly::monomial(1, {3}));
  CHECK(h3[0][0].num() == MultiPoly::monomial(6, {1}));
}

TEST_CASE("p-adic order") {
  CHECK(poly_ord_p(poly(2, {{3, {1, 0}}, {9, {0, 1}}}), 3) == 1u);
  CHECK(poly_ord_p(poly(1, {{1, {1}}, {2, {0}}}), 5) == 0u);
  CHECK(poly_ord_p(RationalFunc(MultiPoly::monomial(3, {1}), poly(1, {{1, {0}}, {1, {1}}})), 3) == 1);
  CHECK(poly_ord_p(RationalFunc(MultiPoly::monomial(1, {1}), MultiPoly::constant(1, 9)), 3) == -2);
  CHECK_THROWS_AS(poly_ord_p(MultiPoly(2), 3), Error);
}

TEST_CASE("grad_ord examples") {
  CHECK(grad_ord(MultiPoly::monomial(1, {2}), 3) == 0);
  CHECK(grad_ord(MultiPoly::monomial(3, {2}), 3) == 1);
  CHECK(grad_ord(MultiPoly::monomial(1, {3}), 3) == 1);
  try {
    grad_ord(MultiPoly::constant(2, 5), 3);
    FAIL("expected AllDerivativesZero");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::AllDerivativesZero);
  }
}

TEST_CASE("eval_mod") {
  const PrimePower q9(3, 2);
  CHECK(RationalFunc(MultiPoly::monomial(1, {2})).eval_mod(std::vector<i64>{4}, q9) == 7);
  const RationalFunc inv(MultiPoly::constant(1, 1), MultiPoly::monomial(1, {1}));
  CHECK(inv.eval_mod(std::vector<i64>{2}, q9) == 5);
  try {
    inv.eval_mod(std::vector<i64>{3}, q9);
    FAIL("expected PoleModP");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PoleModP);
  }
  CHECK(!inv.try_eval_mod(std::vector<i64>{6}, q9).has_value());
}

TEST_CASE("property: linearity of differentiation") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + rng() % 3;
    const MultiPoly f = random_poly(rng, n, 4), g = random_poly(rng, n, 4);
    for (std::size_t i = 0; i < n; ++i) CHECK((f + g).derivative(i) == f.derivative(i) + g.derivative(i));
  }
}

TEST_CASE("property: hessian symmetry at random points mod 9") {
  std::mt19937_64 rng(6);
  const PrimePower q(3, 2);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 2 + rng() % 2;
    const RationalFunc f = random_poly(rng, n, 4);
    const auto H = hessian(f);
    for (int k = 0; k < 50; ++k) {
      std::vector<i64> x(n);
      for (auto& v : x) v = static_cast<i64>(rng() % 9);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) CHECK(at(H[i][j], x, q) == at(H[j][i], x, q));
    }
  }
}

TEST_CASE("property: scaled gradient is p-integral and somewhere a unit") {
  std::mt19937_64 rng(8);
  for (u64 p : {3, 5, 7}) {
    for (int t = 0; t < 30; ++t) {
      const std::size_t n = 1 + rng() % 2;
      MultiPoly num = random_poly(rng, n, 4).scaled(static_cast<i64>(ipow(p, rng() % 3)));
      MultiPoly den = MultiPoly::constant(n, 1);
      if (t % 3 == 0) den = random_poly(rng, n, 2) + MultiPoly::constant(n, 1);
      if (den.is_zero() || num.total_degree() == 0) continue;
      const RationalFunc f(num, den);
      ScaledGradient g;
      try {
        g = scaled_gradient(f, p);
      } catch (const Error&) {
        continue;
      }
      CHECK(g.r == grad_ord(f, p));
      for (const RationalFunc& c : g.components) CHECK(poly_ord_p(c.den(), p) == 0u);
      // p^{-r} df/dx_i * p^r == df/dx_i at every defined point mod p^2
      const PrimePower q(p, 2 + static_cast<unsigned>(g.r));
      const auto grad = gradient(f);
      bool unit_somewhere = false;
      for (const RationalFunc& c : g.components) unit_somewhere = unit_somewhere || (!c.num().is_zero() && poly_ord_p(c.num(), p) == 0);
      oracle::for_box(n, 0, static_cast<oracle::ll>(p) - 1, [&](const std::vector<oracle::ll>& xl) {
        const std::vector<i64> x(xl.begin(), xl.end());
        for (std::size_t i = 0; i < n; ++i) {
          const auto scaled = at(g.components[i], x, q);
          const auto plain = at(grad[i], x, q);
          if (!scaled || !plain) continue;
          CHECK(mulmod(*scaled, ipow(p, static_cast<unsigned>(g.r)), q.q()) == *plain);
        }
      });
      CHECK(unit_somewhere);
    }
  }
}

TEST_CASE("property: evaluation is a ring homomorphism") {
  std::mt19937_64 rng(9);
  const PrimePower q(5, 3);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 1 + rng() % 3;
    const MultiPoly f = random_poly(rng, n, 3), g = random_poly(rng, n, 3);
    std::vector<i64> x(n);
    for (auto& v : x) v = static_cast<i64>(rng() % 200) - 100;
    CHECK((f * g).eval_mod(x, q.q()) == mulmod(f.eval_mod(x, q.q()), g.eval_mod(x, q.q()), q.q()));
    CHECK((f + g).eval_mod(x, q.q()) == addmod(f.eval_mod(x, q.q()), g.eval_mod(x, q.q()), q.q()));
    std::vector<oracle::ll> xl(x.begin(), x.end());
    CHECK(static_cast<oracle::ll>(f.eval_mod(x, q.q())) == oracle::eval(oracle::terms_of(f), xl, 125));
  }
}

TEST_CASE("coprimality flag") {
  const MultiPoly x = MultiPoly::variable(1, 0);
  const MultiPoly one = MultiPoly::constant(1, 1);
  CHECK(coprime_mod_p(RationalFunc(x * x, x + one), 3) == Coprimality::Coprime);
  // x^2 - 1 and x + 4 share the root -1 mod 3
  CHECK(coprime_mod_p(RationalFunc(x * x - one, x + one.scaled(4)), 3) == Coprimality::NotCoprime);
  const MultiPoly X = MultiPoly::variable(2, 0), Y = MultiPoly::variable(2, 1);
  CHECK(coprime_mod_p(RationalFunc(X, Y + MultiPoly::constant(2, 1)), 3) == Coprimality::Unverified);
}

#include <doctest.h>

#include <random>

#include "expsum/expsum.hpp"
#include "expsum/suites.hpp"
#include "oracle.hpp"

using namespace expsum;

namespace {

const MultiPoly X1 = MultiPoly::variable(1, 0);
const MultiPoly X = MultiPoly::variable(2, 0), Y = MultiPoly::variable(2, 1);

CycloElement integer(const PrimePower& q, i64 v) { return CycloElement::integer(q, v); }

oracle::cplx oracle_sum(const RationalFunc& f, const PrimePower& q, const std::vector<i64>* alpha = nullptr) {
  const oracle::Terms den = f.is_polynomial() ? oracle::Terms{} : oracle::terms_of(f.den());
  std::vector<oracle::ll> a;
  if (alpha) a.assign(alpha->begin(), alpha->end());
  return oracle::expsum(oracle::terms_of(f.num()), den, f.n_vars(), static_cast<oracle::ll>(q.p()),
                        static_cast<oracle::ll>(q.q()), alpha ? &a : nullptr);
}

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("brute force sums") {
  const PrimePower q9(3, 2);
  CHECK(brute_full_sum(X1 * X1, q9) == integer(q9, 3));
  CHECK(oracle::close(oracle_sum(X1 * X1, q9), {3, 0}));
  CHECK(brute_full_sum(X1, q9).is_zero());
  // constant c in n variables: p^{mn} zeta^c
  const PrimePower q25(5, 2);
  CHECK(brute_full_sum(MultiPoly::constant(2, 7), q25) == root_of_unity(q25, 7).scaled(625));
  CHECK_THROWS_AS(brute_full_sum(X * X, PrimePower(7, 5), 1000), Error);
}

TEST_CASE("brute force agrees with the direct complex oracle") {
  std::mt19937_64 rng(21);
  for (const StationaryCase& c : stationary_cases(4, 40, 20'000)) {
    if (std::pow(static_cast<double>(c.q.q()), static_cast<double>(c.f.n_vars())) > 50'000) continue;
    CHECK(oracle::close(oracle_sum(c.f, c.q), brute_full_sum(c.f, c.q).embed_complex(), 1e-7));
    CHECK(brute_full_sum(c.f, c.q) == brute_full_sum_serial(c.f, c.q));
    const std::vector<i64> a(c.alpha.begin(), c.alpha.end());
    CHECK(oracle::close(oracle_sum(c.f, c.q, &a), restricted_sum_alpha(c.f, c.q, c.alpha).embed_complex(), 1e-7));
  }
}

TEST_CASE("restricted sums") {
  const PrimePower q9(3, 2), q25(5, 2);
  CHECK(restricted_sum_alpha(X1 * X1, q9, std::vector<i64>{0}) == integer(q9, 3));
  CHECK(restricted_sum_alpha(X1 * X1, q9, std::vector<i64>{1}).is_zero());
  CycloElement total = CycloElement::zero(q25);
  for (i64 a = 0; a < 5; ++a)
    for (i64 b = 0; b < 5; ++b) total += restricted_sum_alpha(X * X + Y * Y, q25, std::vector<i64>{a, b});
  CHECK(total == brute_full_sum(X * X + Y * Y, q25));
}

TEST_CASE("property: coset partition") {
  for (const StationaryCase& c : stationary_cases(5, 30, 20'000)) {
    CycloElement total = CycloElement::zero(c.q);
    oracle::for_box(c.f.n_vars(), 0, static_cast<oracle::ll>(c.q.p()) - 1, [&](const std::vector<oracle::ll>& a) {
      total += restricted_sum_alpha(c.f, c.q, std::vector<i64>(a.begin(), a.end()));
    });
    CHECK(total == brute_full_sum(c.f, c.q));
  }
}

TEST_CASE("stationary-phase reduction") {
  const PrimePower q9(3, 2), q27(3, 3);
  CHECK(prop1_reduce(X1 * X1, q9, std::vector<i64>{0}) == integer(q9, 3));
  CHECK(prop1_reduce(X1 * X1, q27, std::vector<i64>{0}) == restricted_sum_alpha(X1 * X1, q27, std::vector<i64>{0}));
  CHECK(kind_of([&] { prop1_reduce(X1 * X1 * MultiPoly::constant(1, 9), q9, std::vector<i64>{0}); }) ==
        ErrorKind::NotApplicable);
}

TEST_CASE("stationary-phase reduction: every alpha, p = 5, n = 2, m = 3") {
  std::mt19937_64 rng(17);
  const PrimePower q(5, 3);
  for (int t = 0; t < 12; ++t) {
    MultiPoly f(2);
    for (int k = 0; k < 4; ++k) {
      const unsigned a = static_cast<unsigned>(rng() % 5);
      f.add_term({a, static_cast<unsigned>(rng() % (5 - a))}, static_cast<i64>(rng() % 11) - 5);
    }
    if (f.total_degree() == 0) continue;
    int r = 0;
    try {
      r = grad_ord(f, 5);
    } catch (const Error&) {
      continue;
    }
    if (r >= 3) continue;
    for (i64 a = 0; a < 5; ++a)
      for (i64 b = 0; b < 5; ++b) {
        const std::vector<i64> alpha{a, b};
        CHECK(prop1_reduce(f, q, alpha) == restricted_sum_alpha(f, q, alpha));
      }
  }
}

TEST_CASE("critical points") {
  auto cps = critical_points_mod_p(X1 * X1, 3);
  REQUIRE(cps.size() == 1);
  CHECK(cps[0].alpha == Point{0});
  CHECK(!cps[0].singular);

  // x^3 - x mod 5: 3x^2 - 1 = 0 needs x^2 = 2, a non-residue mod 5
  const MultiPoly g = X1 * X1 * X1 - X1;
  CHECK(critical_points_mod_p(g, 5).empty());
  std::size_t roots = 0;
  for (i64 x = 0; x < 5; ++x) roots += (3 * x * x - 1) % 5 == 0;
  CHECK(roots == 0);
  // x^3 - x mod 7: x^2 = 5 has no root either; mod 11, x^2 = 4 gives {2, 9}
  cps = critical_points_mod_p(g, 11);
  REQUIRE(cps.size() == 2);
  CHECK(cps[0].alpha == Point{2});
  CHECK(cps[1].alpha == Point{9});

  // p^s l Q(y) + p^r L.y with s > r has no critical points
  const u64 p = 3;
  MultiPoly f = (X * X + X * Y + Y * Y.scaled(2)).scaled(9 * 2) + (X + Y.scaled(2)).scaled(3);
  CHECK(critical_points_mod_p(f, p).empty());
}

TEST_CASE("Hensel lifting") {
  CHECK(hensel_lift_critical(X1 * X1, PrimePower(3, 2), std::vector<i64>{0}) == Point{0});
  CHECK(hensel_lift_critical(X1 * X1 + X1.scaled(3), PrimePower(3, 2), std::vector<i64>{0}) == Point{3});

  const MultiPoly f = X * X + Y * Y + X * Y + X.scaled(5);
  const auto cps = critical_points_mod_p(f, 7);
  REQUIRE(cps.size() == 1);
  const Point lift = hensel_lift_critical(f, PrimePower(7, 2), cps[0].alpha);
  // brute-force search over [0,49)^2 for the gradient zero in the coset
  std::vector<Point> found;
  for (i64 x = 0; x < 49; ++x)
    for (i64 y = 0; y < 49; ++y)
      if ((2 * x + y + 5) % 49 == 0 && (2 * y + x) % 49 == 0) found.push_back({x, y});
  REQUIRE(found.size() == 1);
  CHECK(lift == found[0]);
  CHECK(lift[0] % 7 == cps[0].alpha[0]);

  CHECK(kind_of([&] { hensel_lift_critical(X1 * X1 * X1, PrimePower(5, 3), std::vector<i64>{0}); }) ==
        ErrorKind::SingularHessian);
}

TEST_CASE("property: Hensel fixed point") {
  for (const StationaryCase& c : stationary_cases(9, 120)) {
    const StationaryData data(c.f, c.q.p());
    for (const CriticalPoint& cp : critical_points_mod_p(c.f, c.q.p())) {
      if (cp.singular) continue;
      const Point lift = hensel_lift_critical(data, c.q, cp.alpha);
      const auto g = data.scaled_gradient_at(lift, c.q.m());
      REQUIRE(g.has_value());
      for (u64 v : *g) CHECK(v == 0);
      for (std::size_t i = 0; i < lift.size(); ++i) CHECK(reduce(lift[i], c.q.p()) == static_cast<u64>(cp.alpha[i]));
      CHECK(det_mod_p(data.scaled_hessian_mod_p(lift), c.q.p()) == cp.hesse_scaled_det_mod_p);
    }
  }
}

TEST_CASE("property: cosets off the critical set sum to zero") {
  for (const StationaryCase& c : stationary_cases(10, 80, 100000)) {
    if (static_cast<int>(c.q.m()) - c.r < 2) continue;
    const StationaryData data(c.f, c.q.p());
    oracle::for_box(c.f.n_vars(), 0, static_cast<oracle::ll>(c.q.p()) - 1, [&](const std::vector<oracle::ll>& a) {
      const Point alpha(a.begin(), a.end());
      if (!is_critical_mod_p(data, alpha)) CHECK(restricted_sum_alpha(c.f, c.q, alpha).is_zero());
    });
  }
}

TEST_CASE("closed form at nonsingular critical points") {
  const PrimePower q9(3, 2), q27(3, 3);
  CHECK(theorem1_eval(X1 * X1, q9, std::vector<i64>{0}) == integer(q9, 3));
  const CycloElement s = theorem1_eval(X1 * X1, q27, std::vector<i64>{0});
  CHECK(s == restricted_sum_alpha(X1 * X1, q27, std::vector<i64>{0}));
  CHECK(std::abs(s.embed_complex() - std::complex<double>(0, 3 * std::sqrt(3.0))) < 1e-9);
  const std::vector<i64> a0{0};
  CHECK(oracle::close(oracle_sum(X1 * X1, q27, &a0), s.embed_complex(), 1e-9));
  CHECK(theorem1_eval(X1 * X1, q9, std::vector<i64>{1}).is_zero());

  CHECK(kind_of([&] { theorem1_eval(X1 * X1 * X1, PrimePower(5, 3), std::vector<i64>{0}); }) ==
        ErrorKind::SingularHessianOutOfScope);
  CHECK(kind_of([&] { theorem1_eval(X1 * X1 * MultiPoly::constant(1, 3), q9, std::vector<i64>{0}); }) ==
        ErrorKind::NotApplicable);
}

TEST_CASE("closed form: p = 3, m - r = 3 with a surviving cubic term") {
  // f = x^3 + 3x^2: r = 1, q = 81, critical coset alpha = 0
  const MultiPoly f = X1 * X1 * X1 + (X1 * X1).scaled(3);
  const PrimePower q(3, 4);
  const StationaryData data(f, 3);
  CHECK(data.r() == 1);
  const CycloElement brute = restricted_sum_alpha(f, q, std::vector<i64>{0});
  const std::vector<i64> a0{0};
  CHECK(oracle::close(oracle_sum(f, q, &a0), brute.embed_complex(), 1e-9));
  CHECK(std::abs(brute.embed_complex() - std::complex<double>(13.5, -7.794228634059948)) < 1e-9);
  CHECK(kind_of([&] { theorem1_eval(data, q, a0); }) == ErrorKind::TaylorRemainder);
  const CycloElement printed = theorem1_formula_unchecked(data, q, a0);
  CHECK(!(printed == brute));
  CHECK(std::abs(printed.embed_complex() - std::complex<double>(0, 9 * std::sqrt(3.0))) < 1e-9);
  // the same f is fine once m - r != 3
  for (unsigned m : {3u, 5u, 6u}) {
    const PrimePower qm(3, m);
    CHECK(theorem1_eval(data, qm, a0) == restricted_sum_alpha(f, qm, a0));
  }
  // the reduction itself is unaffected
  CHECK(prop1_reduce(f, q, a0) == brute);
}

TEST_CASE("full sums through the closed form") {
  CHECK(full_sum_via_theorem1(X1 * X1, PrimePower(3, 2)) == integer(PrimePower(3, 2), 3));
  CHECK(full_sum_via_theorem1(X * X + Y * Y, PrimePower(5, 2)) == brute_full_sum(X * X + Y * Y, PrimePower(5, 2)));
  const MultiPoly f = (X * X).scaled(2) + X * Y + (Y * Y).scaled(3);
  CHECK(full_sum_via_theorem1(f, PrimePower(3, 3)) == brute_full_sum(f, PrimePower(3, 3)));
}

TEST_CASE("Gauss sums") {
  const std::complex<double> g3 = gauss_sum_brute(3, 1).embed_complex();
  CHECK(std::abs(g3 - std::complex<double>(0, std::sqrt(3.0))) < 1e-12);
  CHECK(gauss_sum_brute(9, 1) == CycloElement::integer(Conductor(9), 3));
  for (u64 q : {3, 9, 15, 21, 125}) CHECK(gauss_sum_brute(q, 0) == CycloElement::integer(Conductor(q), static_cast<i64>(q)));
  CHECK(gauss_sum_closed(3, 2) == -gauss_sum_brute(3, 1));
  CHECK(gauss_sum_closed(9, 2) == CycloElement::integer(Conductor(9), 3));
  for (u64 q : {5, 27, 35, 99}) CHECK(gauss_sum_closed(q, 1) == gauss_sum_brute(q, 1));
  CHECK(kind_of([] { gauss_sum_closed(9, 6); }) == ErrorKind::NotCoprime);
  for (u64 q : {7, 15, 45, 77, 243}) CHECK(oracle::close(oracle::gauss(static_cast<oracle::ll>(q), 2), gauss_sum_brute(q, 2).embed_complex(), 1e-9));
}

TEST_CASE("suites are reproducible from the seed") {
  const auto a = stationary_cases(42, 30), b = stationary_cases(42, 30);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].to_string() == b[i].to_string());
}

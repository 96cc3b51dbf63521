#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <random>

#include "expsum/kernels.hpp"

using namespace expsum;

TEST_CASE("budget") {
  CHECK_NOTHROW(check_budget(100, 100, "x"));
  try {
    check_budget(101, 100, "census");
    FAIL("expected BudgetExceeded");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BudgetExceeded);
    CHECK(std::string(e.what()).find("census") != std::string::npos);
  }
  setenv("EXPSUM_BUDGET", "1234", 1);
  CHECK(default_budget() == 1234);
  unsetenv("EXPSUM_BUDGET");
  CHECK(default_budget() == 10'000'000);
}

TEST_CASE("parallel histogram matches serial") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 1 + rng() % 3;
    const PrimePower q(rng() % 2 ? 5 : 3, 2 + static_cast<unsigned>(rng() % 2));
    MultiPoly num(n), den = MultiPoly::constant(n, 1);
    for (int k = 0; k < 4; ++k) {
      Exponents e(n);
      for (auto& v : e) v = static_cast<unsigned>(rng() % 3);
      num.add_term(e, static_cast<i64>(rng() % 13) - 6);
    }
    if (t % 2) den = den + MultiPoly::variable(n, 0);
    const PointEvaluator f(RationalFunc(num, den), q);
    const Lattice box{std::vector<i64>(n, static_cast<i64>(rng() % 3)), t % 3 ? 1 : static_cast<i64>(q.p()), q.q() / (t % 3 ? 1 : q.p())};
    CHECK(exponent_histogram(f, box, q.q()) == exponent_histogram_serial(f, box, q.q()));
  }
}

TEST_CASE("weighted count: fiber solve matches direct scan") {
  const std::vector<std::vector<std::vector<i64>>> forms = {
      {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}},
      {{2, 1, 0}, {1, 4, 0}, {0, 0, 6}},
      {{3, 1, 1}, {1, -2, 0}, {1, 0, 5}},
      {{0, 1, 0}, {1, 0, 0}, {0, 0, 3}},  // last diagonal entry is divisible by 3
      {{0, 1}, {1, 0}}};
  int positive = 0;
  for (const auto& A : forms)
    for (unsigned m : {1u, 2u, 3u}) {
      WeightedCountJob job;
      job.A = A;
      job.p = 3;
      job.q = ipow(3, m);
      job.N = 2.5;
      job.radius = 4;
      job.x0.assign(A.size(), 0);
      job.x0[0] = 1;
      const double fast = weighted_count(job), slow = weighted_count_serial(job);
      CHECK(fast == doctest::Approx(slow).epsilon(1e-12));
      positive += fast > 0;
    }
  CHECK(positive >= 12);
}

TEST_CASE("box zero count: fiber solve matches direct scan") {
  const std::vector<std::vector<std::vector<i64>>> forms = {
      {{1, 0, 0}, {0, 1, 0}, {0, 0, -1}},
      {{1, -1, 0}, {-1, 1, -1}, {0, -1, 1}},
      {{0, 1, 0}, {1, 0, 0}, {0, 0, 0}},
      {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}},
      {{0, 1}, {1, 0}},
      {{2, 3, 1}, {3, -4, 0}, {1, 0, -7}}};
  for (const auto& A : forms)
    for (i64 N : {0, 1, 4, 9}) CHECK(box_zero_count(A, N) == box_zero_count_serial(A, N));
}

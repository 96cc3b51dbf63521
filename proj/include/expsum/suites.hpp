#pragma once

// Seeded randomized oracle suites shared by the CLI and the acceptance run.

#include <map>
#include <random>
#include <string>
#include <vector>

#include "expsum/census.hpp"
#include "expsum/expsum.hpp"

namespace expsum {

struct SuiteReport {
  std::string name;
  u64 seed = 0;
  std::size_t cases = 0;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::map<std::string, std::size_t> counters;
  std::vector<std::string> failures;  // first few descriptions
  double seconds = 0;

  bool ok() const { return failed == 0 && cases > 0; }
  void record(bool pass, const std::string& what);
};

/// One randomized stationary-phase case: f, q = p^m and a residue alpha.
struct StationaryCase {
  RationalFunc f;
  PrimePower q;
  Point alpha;
  int r = 0;
  std::string to_string() const;
};

/// Deterministic case list: p in {3,5,7}, n in {1,2,3}, m in {2..5},
/// polynomial and rational f of degree <= 4, with and without r > 0.
/// Cases are kept to restricted sums of at most max_points points.
std::vector<StationaryCase> stationary_cases(u64 seed, std::size_t count, u64 max_points = 2'000'000);

SuiteReport prop1_suite(u64 seed, std::size_t count = 240);
/// The closed form on every prop1 case whose preconditions hold. Counters:
/// "applicable", "odd_critical", "even_critical", "refused_taylor",
/// "skipped_singular", "skipped_small_d".
SuiteReport thm1_suite(u64 seed, std::size_t count = 240);
/// All odd q in [3, qmax], `per_q` random units each.
SuiteReport gauss_suite(u64 seed, u64 qmax = 2000, std::size_t per_q = 20);
/// Closed vs brute E-sums, restricted vs unrestricted, vanishing for
/// ord_p(h) != r, and the h-average. p^{mn} is kept within budget.
SuiteReport esum_suite(u64 seed, std::size_t count = 120, u64 budget = default_budget());

/// Random symmetric n x n matrix with entries in [-bound, bound], nonsingular mod p.
IntMatrix random_form_matrix(std::mt19937_64& rng, std::size_t n, u64 p, i64 bound, bool cross_terms);

}  // namespace expsum

#pragma once

// Enumeration kernels. Each kernel has an OpenMP version and a plain serial
// reference kept for testing and benchmarking; results agree exactly for
// the integer kernels and to ~1e-12 relative for the weighted count.

#include <cstdint>
#include <span>
#include <vector>

#include "expsum/modular.hpp"
#include "expsum/poly.hpp"

namespace expsum {

/// Default enumeration budget (points); EXPSUM_BUDGET overrides it.
u64 default_budget();
/// Throws BudgetExceeded when points > budget.
void check_budget(long double points, u64 budget, const char* what);

/// Flat, modulus-reduced form of a rational function for hot loops.
class PointEvaluator {
 public:
  PointEvaluator(const RationalFunc& f, const PrimePower& q);

  std::size_t n_vars() const noexcept { return n_; }
  /// Writes f(x) mod q into out; false at a pole (den(x) = 0 mod p).
  bool eval(const u64* x, u64& out) const noexcept;

 private:
  struct Flat {
    std::vector<u64> coef;
    std::vector<unsigned> exps;  // row-major, n per term
    unsigned max_deg = 0;
  };
  static Flat flatten(const MultiPoly& f, u64 q);
  u64 eval_poly(const Flat& f, const u64* pw) const noexcept;

  std::size_t n_;
  u64 p_, q_;
  Flat num_, den_;
  bool den_is_one_;
  unsigned max_deg_;
};

/// The points base_i + step * t_i, t_i in [0, extent), i < dim.
struct Lattice {
  std::vector<i64> base;
  i64 step = 1;
  u64 extent = 0;

  u64 size() const;
};

/// counts[v] = #{x in lattice, x not a pole : f(x) = v mod q}, length q.
std::vector<i64> exponent_histogram(const PointEvaluator& f, const Lattice& box, u64 q);
std::vector<i64> exponent_histogram_serial(const PointEvaluator& f, const Lattice& box, u64 q);

/// Data for the Gaussian-weighted count of x in Z^n with x != 0 mod p and
/// x^t A x = 0 mod q, weight prod_i exp(-pi ((x_i - x0_i)/N)^2), over the box
/// |x_i - x0_i| <= floor(radius * N).
struct WeightedCountJob {
  std::vector<std::vector<i64>> A;  // symmetric
  u64 p = 0;
  u64 q = 0;
  double N = 1;
  double radius = 8;
  std::vector<i64> x0;
};

/// Solves for the last coordinate residue class by a square-root table mod q.
/// Falls back to the direct scan if A[n-1][n-1] is not a unit mod p.
double weighted_count(const WeightedCountJob& job);
/// Direct box scan with a congruence filter.
double weighted_count_serial(const WeightedCountJob& job);

/// #{x in Z^n : x^t A x = 0, |x_i| <= N}.
u64 box_zero_count(const std::vector<std::vector<i64>>& A, i64 N);
u64 box_zero_count_serial(const std::vector<std::vector<i64>>& A, i64 N);

}  // namespace expsum

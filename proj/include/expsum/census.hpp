#pragma once

// Quadratic congruences Q(x) = x^t A x = 0 mod p^m: solution censuses, the
// local density b_p, dual forms, exact evaluation of the twisted sums
//   E(k, h; p^m) = sum_y e_{p^m}(h Q(y) + k.y),
// and the Gaussian-weighted small-box counts together with their Poisson
// decomposition T = T0 + U.

#include <complex>
#include <string>
#include <vector>

#include "expsum/cyclo.hpp"
#include "expsum/kernels.hpp"
#include "expsum/matrix.hpp"

namespace expsum {

class QuadraticForm {
 public:
  explicit QuadraticForm(IntMatrix a);

  std::size_t n() const noexcept { return a_.size(); }
  const IntMatrix& matrix() const noexcept { return a_; }
  i64 det() const noexcept { return det_; }
  const IntMatrix& adjugate() const noexcept { return adj_; }

  /// Q(x) over Z.
  __int128 value(std::span<const i64> x) const;
  u64 value_mod(std::span<const i64> x, u64 q) const;
  /// Q as a polynomial h*Q + k.y (k may be empty for zero).
  MultiPoly as_polynomial(i64 h = 1, std::span<const i64> k = {}) const;
  /// Throws SingularModP when p | det(A).
  void require_nonsingular_mod(u64 p) const;

  std::string to_string() const;

 private:
  IntMatrix a_;
  i64 det_;
  IntMatrix adj_;
};

/// Q'(L) = L^t adj(A)^t L.
QuadraticForm dual_form(const QuadraticForm& Q);

struct Rational {
  i64 num = 0;
  i64 den = 1;  // > 0, gcd(num, den) = 1

  static Rational make(i64 num, i64 den);
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string to_string() const;
  friend bool operator==(const Rational&, const Rational&) = default;
};

/// #{x in [0, p^m)^n : x != 0 mod p, Q(x) = 0 mod p^m}.
u64 count_A(const QuadraticForm& Q, u64 p, unsigned m, u64 budget = default_budget());

struct CensusResult {
  u64 p = 0;
  unsigned m = 0;
  u64 count_A = 0;
  Rational b_p;  // count_A / p^{m(n-1)}
};
CensusResult census(const QuadraticForm& Q, u64 p, unsigned m, u64 budget = default_budget());

/// count_A(m) == p^{(n-1)(m-1)} count_A(1).
bool hensel_scaling_check(const QuadraticForm& Q, u64 p, unsigned m, u64 budget = default_budget());

/// b_p = count_A(Q, p, 1) / p^{n-1}.
Rational local_density(const QuadraticForm& Q, u64 p, u64 budget = default_budget());

/// E(k, h; p^m) by enumeration; restrict_nonzero drops y = 0 mod p.
CycloElement esum_brute(const QuadraticForm& Q, std::span<const i64> k, i64 h, u64 p, unsigned m,
                        bool restrict_nonzero, u64 budget = default_budget());

/// Closed form of E(p^r L, p^r l; p^m) for L != 0 mod p, p not dividing l.
/// Odd m - r carries the symbol (det(A) l^n / p).
/// Requires m - r >= 2.
CycloElement esum_closed(const QuadraticForm& Q, std::span<const i64> l_vec, i64 l, unsigned r,
                         u64 p, unsigned m);

struct HAverage {
  CycloElement value;
  i64 dual_value = 0;           // Q'(L)
  bool predicted_zero = false;  // p^{m-r-1} does not divide Q'(L)
  bool vanishing_holds = true;  // predicted_zero implies value == 0
  double magnitude = 0;
  double bound = 0;             // p^{(m+r)n/2 + (m-r)}
  bool bound_holds = true;
};
/// sum over units l in [1, p^{m-r}] of esum_closed.
HAverage esum_h_average(const QuadraticForm& Q, std::span<const i64> l_vec, unsigned r, u64 p,
                        unsigned m);

/// Gaussian weight exp(-pi t^2); it is its own Fourier transform.
struct GaussianWeight {
  double radius = 8;
  static double phi(double t);
  static double phi_hat(double t) { return phi(t); }
};

/// Weighted count of x != 0 mod p with Q(x) = 0 mod p^m near x0.
double weighted_count_T(const QuadraticForm& Q, u64 p, unsigned m, double N,
                        std::span<const i64> x0, double radius = 8,
                        u64 budget = default_budget());
/// Independent direct-scan evaluation of the same quantity.
double weighted_count_T_scan(const QuadraticForm& Q, u64 p, unsigned m, double N,
                             std::span<const i64> x0, double radius = 8,
                             u64 budget = default_budget());

/// b_p N^n / p^m.
double main_term_T0(const QuadraticForm& Q, u64 p, unsigned m, double N,
                    u64 budget = default_budget());

struct PoissonAssembly {
  double T0 = 0;
  double U = 0;
  double total() const { return T0 + U; }
};
/// T0 plus the k != 0 Poisson terms, |k_i| <= k_max, with the inner sums
/// sum_h E(k, h; p^m) computed by enumeration.
PoissonAssembly poisson_assembly(const QuadraticForm& Q, u64 p, unsigned m, double N,
                                 std::span<const i64> x0, i64 k_max,
                                 u64 budget = default_budget());

struct SweepRow {
  u64 p = 0;
  unsigned m = 0;
  double epsilon = 0;
  double N = 0;
  double T = 0;
  double T0 = 0;
  double ratio = 0;
  double deviation = 0;
  double runtime_ms = 0;
};
struct SweepReport {
  std::vector<SweepRow> rows;
  bool non_increasing = false;
  bool final_below = false;
  double final_threshold = 0.3;
  bool converging() const { return non_increasing && final_below; }
};
/// N = ceil(p^{(1/2 + eps) m}) for each m.
double sweep_box_size(u64 p, unsigned m, double epsilon);
SweepReport theorem2_sweep(const QuadraticForm& Q, u64 p, const std::vector<unsigned>& m_list,
                           double epsilon, std::span<const i64> x0, double radius = 8,
                           u64 budget = default_budget());

/// #{x in Z^n : Q(x) = 0, |x_i| <= N}.
u64 box_zero_count(const QuadraticForm& Q, i64 N, u64 budget = default_budget());

struct GrowthRow {
  i64 N = 0;
  u64 count = 0;
  u64 count_double = 0;  // count at 2N
  double ratio = 0;
  double exponent = 0;   // log2(ratio)
};
std::vector<GrowthRow> growth_table(const QuadraticForm& Q, const std::vector<i64>& Ns,
                                    u64 budget = default_budget());

}  // namespace expsum

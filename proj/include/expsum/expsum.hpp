#pragma once

// Exponential sums S(f, p^m) = sum_x e_{p^m}(f(x)) over (Z/p^m)^n and their
// coset pieces S_alpha (x = alpha mod p): brute-force oracles, the
// stationary-phase reduction, Hensel lifting of critical points, closed
// forms at nonsingular critical points, and quadratic Gauss sums.
//
// All values are exact elements of Z[zeta_q]. Points where the denominator
// of f vanishes mod p are skipped.

#include <optional>
#include <span>
#include <vector>

#include "expsum/cyclo.hpp"
#include "expsum/kernels.hpp"
#include "expsum/matrix.hpp"
#include "expsum/poly.hpp"

namespace expsum {

using Point = std::vector<i64>;

/// Symbolic data shared by the stationary-phase routines for a fixed (f, p).
struct StationaryData {
  RationalFunc f;
  u64 p;
  ScaledGradient grad;                           // p^{-r} grad f
  std::vector<std::vector<RationalFunc>> hess;   // p^{-r} Hesse(f)

  StationaryData(const RationalFunc& f, u64 p);

  int r() const noexcept { return grad.r; }
  /// Scaled gradient at x mod p^k; nullopt at a pole.
  std::optional<std::vector<u64>> scaled_gradient_at(std::span<const i64> x, unsigned k) const;
  /// Scaled Hessian at x mod p.
  ModMatrix scaled_hessian_mod_p(std::span<const i64> x) const;
};

struct CriticalPoint {
  Point alpha;                 // in [0, p)^n
  int r = 0;
  std::optional<Point> lift;   // in [0, p^m)^n once lifted
  u64 hesse_scaled_det_mod_p = 0;  // det(p^{-r} Hesse(f)(alpha)) mod p
  bool singular = false;
};

CycloElement brute_full_sum(const RationalFunc& f, const PrimePower& q,
                            u64 budget = default_budget());
CycloElement restricted_sum_alpha(const RationalFunc& f, const PrimePower& q,
                                  std::span<const i64> alpha, u64 budget = default_budget());
/// Serial-kernel variants, kept as references for the parallel versions.
CycloElement brute_full_sum_serial(const RationalFunc& f, const PrimePower& q,
                                   u64 budget = default_budget());

/// Right-hand side of the stationary-phase reduction for the coset of alpha.
/// Requires m - r >= 1 (NotApplicable otherwise).
CycloElement prop1_reduce(const RationalFunc& f, const PrimePower& q, std::span<const i64> alpha,
                          u64 budget = default_budget());

std::vector<CriticalPoint> critical_points_mod_p(const RationalFunc& f, u64 p);
bool is_critical_mod_p(const StationaryData& data, std::span<const i64> alpha);

/// The unique alpha* = alpha (mod p) with p^{-r} grad f(alpha*) = 0 (mod p^m),
/// one Newton step per power of p.
Point hensel_lift_critical(const RationalFunc& f, const PrimePower& q, std::span<const i64> alpha);
Point hensel_lift_critical(const StationaryData& data, const PrimePower& q,
                           std::span<const i64> alpha);

/// Closed-form S_alpha. Requires m - r >= 2. Zero off the critical set;
/// SingularHessianOutOfScope at singular critical points. For p = 3 and
/// m - r = 3 the cubic Taylor term of f around alpha* can survive mod p^m;
/// when it does, TaylorRemainder is thrown instead of a wrong value.
CycloElement theorem1_eval(const RationalFunc& f, const PrimePower& q, std::span<const i64> alpha);
CycloElement theorem1_eval(const StationaryData& data, const PrimePower& q,
                           std::span<const i64> alpha);

/// The same closed form with the cubic-remainder check disabled. Used to
/// exhibit the p = 3, m - r = 3 counterexamples.
CycloElement theorem1_formula_unchecked(const StationaryData& data, const PrimePower& q,
                                        std::span<const i64> alpha);

/// Sum of theorem1_eval over every alpha in F_p^n.
CycloElement full_sum_via_theorem1(const RationalFunc& f, const PrimePower& q);

/// G_q(a) = sum_{x=1}^{q} e_q(a x^2), q odd.
CycloElement gauss_sum_brute(u64 q, i64 a, u64 budget = default_budget());
/// (a/q) G_q(1); NotCoprime when gcd(a, q) > 1.
CycloElement gauss_sum_closed(u64 q, i64 a, u64 budget = default_budget());

}  // namespace expsum

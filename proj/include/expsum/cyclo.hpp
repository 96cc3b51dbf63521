#pragma once

// Exact arithmetic in Z[zeta_q] for odd conductors q.
//
// For q = p^m the canonical basis is {zeta^j : 0 <= j < phi(q)} and an
// exponent j = phi(q) + u is rewritten as -sum_{t=0}^{p-2} zeta^{t p^{m-1} + u}.
// A composite odd q = q_1 ... q_k (coprime prime powers) uses the tensor
// product of the prime-power bases, zeta_q = prod zeta_{q_i}^{c_i} with
// c_i = (q/q_i)^{-1} mod q_i.

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "expsum/modular.hpp"

namespace expsum {

class Conductor {
 public:
  explicit Conductor(u64 q);
  Conductor(const PrimePower& q) : Conductor(q.q()) {}  // NOLINT(google-explicit-constructor)

  u64 q() const noexcept { return q_; }
  u64 phi() const noexcept { return phi_; }
  const std::vector<PrimeFactor>& factors() const noexcept { return factors_; }
  bool is_prime_power() const noexcept { return factors_.size() <= 1; }

  /// Exponent J (mod q) of the basis element with flat canonical index idx.
  u64 exponent_of(std::size_t idx) const;

  friend bool operator==(const Conductor& a, const Conductor& b) { return a.q_ == b.q_; }

 private:
  u64 q_;
  u64 phi_;
  std::vector<PrimeFactor> factors_;
  std::vector<u64> basis_mult_;  // q / q_i
  std::vector<u64> crt_coef_;    // (q / q_i)^{-1} mod q_i
  std::vector<u64> phis_;        // phi(q_i)

  friend class CycloElement;
};

class CycloElement {
 public:
  static CycloElement zero(const Conductor& c);
  static CycloElement integer(const Conductor& c, i64 value);
  /// zeta_q^{a mod q}
  static CycloElement root_of_unity(const Conductor& c, i64 a);
  /// sum_j counts[j] zeta_q^j for j in [0, q); counts.size() must equal q.
  static CycloElement from_exponent_counts(const Conductor& c, std::span<const i64> counts);

  const Conductor& conductor() const noexcept { return cond_; }
  const std::vector<i64>& coeffs() const noexcept { return coeffs_; }

  bool is_zero() const noexcept;
  /// The rational-integer value if the element lies in Z.
  std::optional<i64> as_integer() const;

  CycloElement operator+(const CycloElement& o) const;
  CycloElement operator-(const CycloElement& o) const;
  CycloElement operator-() const;
  CycloElement operator*(const CycloElement& o) const;
  CycloElement& operator+=(const CycloElement& o);
  CycloElement scaled(i64 c) const;
  CycloElement pow(unsigned e) const;

  /// Image under zeta_q -> zeta_Q^{Q/q}; requires q | Q.
  CycloElement lifted(const Conductor& target) const;

  /// Diagnostic only; never used to decide equality.
  std::complex<double> embed_complex() const;

  std::string to_string() const;

  friend bool operator==(const CycloElement& a, const CycloElement& b) {
    return a.cond_ == b.cond_ && a.coeffs_ == b.coeffs_;
  }

 private:
  CycloElement(Conductor c, std::vector<i64> coeffs) : cond_(std::move(c)), coeffs_(std::move(coeffs)) {}

  Conductor cond_;
  std::vector<i64> coeffs_;
};

CycloElement root_of_unity(const PrimePower& q, i64 a);
CycloElement scalar_mul(i64 c, const CycloElement& x);
CycloElement lift_conductor(const CycloElement& x, const Conductor& target);
std::complex<double> embed_complex(const CycloElement& x);

/// Equality after lifting both sides to the least common conductor.
bool equal_lifted(const CycloElement& a, const CycloElement& b);

}  // namespace expsum

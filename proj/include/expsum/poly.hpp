#pragma once

// Sparse multivariate polynomials over Z and quotients of them, with formal
// differentiation, p-adic content and evaluation modulo prime powers.

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "expsum/modular.hpp"

namespace expsum {

using Exponents = std::vector<unsigned>;

class MultiPoly {
 public:
  explicit MultiPoly(std::size_t n_vars = 1);

  static MultiPoly constant(std::size_t n_vars, i64 c);
  /// x_i, zero-based index.
  static MultiPoly variable(std::size_t n_vars, std::size_t i);
  static MultiPoly monomial(i64 coef, Exponents exps);

  std::size_t n_vars() const noexcept { return n_vars_; }
  /// Canonical terms, lexicographic in the exponent tuple, no zero coefficients.
  const std::map<Exponents, i64>& terms() const noexcept { return terms_; }

  /// Adds coef * x^exps in place (merging, dropping zeros).
  void add_term(const Exponents& exps, i64 coef);

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  /// Constant coefficient (0 if absent).
  i64 constant_term() const;
  unsigned total_degree() const noexcept;
  unsigned degree_in(std::size_t i) const noexcept;

  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator-(const MultiPoly& o) const;
  MultiPoly operator*(const MultiPoly& o) const;
  MultiPoly operator-() const;
  MultiPoly scaled(i64 c) const;
  /// Divides every coefficient by d; throws InvalidArgument if any is not divisible.
  MultiPoly divided_exact(i64 d) const;

  MultiPoly derivative(std::size_t i) const;

  /// Value at x modulo q (coordinates may be any integers).
  u64 eval_mod(std::span<const i64> x, u64 q) const;

  std::string to_string() const;

  friend bool operator==(const MultiPoly&, const MultiPoly&) = default;

 private:
  std::size_t n_vars_;
  std::map<Exponents, i64> terms_;
};

/// Minimum valuation of the coefficients. Throws ZeroFunction for 0.
unsigned poly_ord_p(const MultiPoly& f, u64 p);

/// f = num / den. No cancellation is ever attempted.
class RationalFunc {
 public:
  RationalFunc(MultiPoly num, MultiPoly den);
  /// Polynomial f / 1.
  RationalFunc(MultiPoly num);  // NOLINT(google-explicit-constructor)

  std::size_t n_vars() const noexcept { return num_.n_vars(); }
  const MultiPoly& num() const noexcept { return num_; }
  const MultiPoly& den() const noexcept { return den_; }
  bool is_polynomial() const noexcept;
  bool is_zero() const noexcept { return num_.is_zero(); }

  /// Throws PoleModP when den(x) = 0 (mod p), q = p^m.
  u64 eval_mod(std::span<const i64> x, const PrimePower& q) const;
  /// nullopt at poles.
  std::optional<u64> try_eval_mod(std::span<const i64> x, const PrimePower& q) const;

  std::string to_string() const;

  friend bool operator==(const RationalFunc&, const RationalFunc&) = default;

 private:
  MultiPoly num_;
  MultiPoly den_;
};

/// ord_p(num) - ord_p(den). Throws ZeroFunction for f = 0.
int poly_ord_p(const RationalFunc& f, u64 p);

/// Zero-based variable index i.
RationalFunc partial_derivative(const RationalFunc& f, std::size_t i);
std::vector<RationalFunc> gradient(const RationalFunc& f);
std::vector<std::vector<RationalFunc>> hessian(const RationalFunc& f);

/// r = min_i ord_p(df/dx_i). Throws AllDerivativesZero.
int grad_ord(const RationalFunc& f, u64 p);

/// p^{-r} grad f with integer coefficients: every component has the form
/// P / D with p not dividing the content of D.
struct ScaledGradient {
  int r = 0;
  std::vector<RationalFunc> components;
};
ScaledGradient scaled_gradient(const RationalFunc& f, u64 p);

/// Jacobian of the scaled gradient, i.e. p^{-r} Hesse(f).
std::vector<std::vector<RationalFunc>> scaled_hessian(const ScaledGradient& g);

enum class Coprimality { Coprime, NotCoprime, Unverified };

/// Whether num and den reduce to coprime polynomials mod p. Decided by
/// Euclid over F_p for one variable; reported as Unverified otherwise.
Coprimality coprime_mod_p(const RationalFunc& f, u64 p);

}  // namespace expsum

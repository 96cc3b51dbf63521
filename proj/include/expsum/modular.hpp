#pragma once

// Residue arithmetic modulo odd prime powers, valuations and quadratic
// residue symbols.
//
// Every modulus handled here satisfies q < 2^32, so the product of two
// reduced residues fits in an unsigned 64-bit word.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "expsum/error.hpp"

namespace expsum {

using i64 = std::int64_t;
using u64 = std::uint64_t;

inline constexpr u64 kMaxModulus = (u64{1} << 32) - 1;

bool is_prime(u64 n);

/// Odd prime power q = p^m, validated at construction.
class PrimePower {
 public:
  PrimePower(u64 p, unsigned m);

  u64 p() const noexcept { return p_; }
  unsigned m() const noexcept { return m_; }
  u64 q() const noexcept { return q_; }
  /// p^k for 0 <= k <= m.
  u64 pow(unsigned k) const;
  /// Euler phi of q.
  u64 phi() const noexcept { return q_ / p_ * (p_ - 1); }

  PrimePower with_exponent(unsigned k) const { return PrimePower(p_, k); }

  friend bool operator==(const PrimePower&, const PrimePower&) = default;

 private:
  u64 p_;
  unsigned m_;
  u64 q_;
};

/// Canonical representative in [0, q).
class Residue {
 public:
  Residue(i64 value, const PrimePower& modulus);

  u64 value() const noexcept { return value_; }
  const PrimePower& modulus() const noexcept { return modulus_; }

  Residue operator+(const Residue& o) const;
  Residue operator-(const Residue& o) const;
  Residue operator*(const Residue& o) const;
  Residue operator-() const;
  Residue inverse() const;

  friend bool operator==(const Residue&, const Residue&) = default;

 private:
  u64 value_;
  PrimePower modulus_;
};

/// Reduce any signed integer into [0, q).
inline u64 reduce(i64 a, u64 q) noexcept {
  i64 r = a % static_cast<i64>(q);
  return static_cast<u64>(r < 0 ? r + static_cast<i64>(q) : r);
}

inline u64 mulmod(u64 a, u64 b, u64 q) noexcept { return a * b % q; }
inline u64 addmod(u64 a, u64 b, u64 q) noexcept {
  u64 s = a + b;
  return s >= q ? s - q : s;
}
inline u64 submod(u64 a, u64 b, u64 q) noexcept { return a >= b ? a - b : a + q - b; }

u64 powmod(u64 base, u64 exp, u64 q) noexcept;

/// Checked integer power; throws Overflow rather than wrapping.
u64 ipow(u64 base, unsigned exp);

/// b in [0, q) with a*b = 1 (mod q). Throws NotInvertible when gcd(a, q) > 1.
u64 mod_inverse(i64 a, u64 q);
Residue mod_inverse(i64 a, const PrimePower& q);

/// Legendre symbol (a/p) for an odd prime p.
int legendre_symbol(i64 a, u64 p);

/// Jacobi symbol (n/q) for odd q >= 1.
int jacobi_symbol(i64 n, u64 q);

/// p-adic valuation of an integer; nullopt stands for +infinity (a = 0).
using Valuation = std::optional<unsigned>;
Valuation int_valuation(i64 a, u64 p);

struct PrimeFactor {
  u64 p;
  unsigned m;
  u64 q;  // p^m
};

/// Trial-division factorization of n >= 1, primes ascending.
std::vector<PrimeFactor> factorize(u64 n);

u64 gcd(u64 a, u64 b) noexcept;

}  // namespace expsum

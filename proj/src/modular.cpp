#include "expsum/modular.hpp"

#include <limits>
#include <utility>

namespace expsum {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::NotCoprime: return "NotCoprime";
    case ErrorKind::ZeroFunction: return "ZeroFunction";
    case ErrorKind::AllDerivativesZero: return "AllDerivativesZero";
    case ErrorKind::PoleModP: return "PoleModP";
    case ErrorKind::ConductorMismatch: return "ConductorMismatch";
    case ErrorKind::IncompatibleConductors: return "IncompatibleConductors";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::NotApplicable: return "NotApplicable";
    case ErrorKind::SingularHessian: return "SingularHessian";
    case ErrorKind::SingularHessianOutOfScope: return "SingularHessianOutOfScope";
    case ErrorKind::TaylorRemainder: return "TaylorRemainder";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::SingularModP: return "SingularModP";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (u64 d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

u64 gcd(u64 a, u64 b) noexcept {
  while (b != 0) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

u64 ipow(u64 base, unsigned exp) {
  u64 r = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (__builtin_mul_overflow(r, base, &r))
      throw Error(ErrorKind::Overflow, "integer power " + std::to_string(base) + "^" +
                                           std::to_string(exp));
  }
  return r;
}

PrimePower::PrimePower(u64 p, unsigned m) : p_(p), m_(m), q_(1) {
  if (p % 2 == 0 || !is_prime(p))
    throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not an odd prime");
  if (m < 1) throw Error(ErrorKind::InvalidArgument, "exponent must be >= 1");
  for (unsigned i = 0; i < m; ++i) {
    q_ *= p;
    if (q_ > kMaxModulus)
      throw Error(ErrorKind::Overflow,
                  std::to_string(p) + "^" + std::to_string(m) + " exceeds the modulus width");
  }
}

u64 PrimePower::pow(unsigned k) const {
  if (k > m_) throw Error(ErrorKind::InvalidArgument, "power above modulus exponent");
  u64 r = 1;
  for (unsigned i = 0; i < k; ++i) r *= p_;
  return r;
}

Residue::Residue(i64 value, const PrimePower& modulus)
    : value_(reduce(value, modulus.q())), modulus_(modulus) {}

namespace {
void require_same(const PrimePower& a, const PrimePower& b) {
  if (!(a == b)) throw Error(ErrorKind::InvalidArgument, "residues with different moduli");
}
}  // namespace

Residue Residue::operator+(const Residue& o) const {
  require_same(modulus_, o.modulus_);
  return Residue(static_cast<i64>(addmod(value_, o.value_, modulus_.q())), modulus_);
}

Residue Residue::operator-(const Residue& o) const {
  require_same(modulus_, o.modulus_);
  return Residue(static_cast<i64>(submod(value_, o.value_, modulus_.q())), modulus_);
}

Residue Residue::operator*(const Residue& o) const {
  require_same(modulus_, o.modulus_);
  return Residue(static_cast<i64>(mulmod(value_, o.value_, modulus_.q())), modulus_);
}

Residue Residue::operator-() const {
  return Residue(static_cast<i64>(submod(0, value_, modulus_.q())), modulus_);
}

Residue Residue::inverse() const { return mod_inverse(static_cast<i64>(value_), modulus_); }

u64 powmod(u64 base, u64 exp, u64 q) noexcept {
  u64 r = 1 % q;
  base %= q;
  while (exp > 0) {
    if (exp & 1) r = mulmod(r, base, q);
    base = mulmod(base, base, q);
    exp >>= 1;
  }
  return r;
}

u64 mod_inverse(i64 a, u64 q) {
  if (q == 0) throw Error(ErrorKind::InvalidArgument, "modulus must be >= 1");
  if (q == 1) return 0;
  // Extended Euclid on (a mod q, q).
  i64 old_r = static_cast<i64>(reduce(a, q)), r = static_cast<i64>(q);
  i64 old_s = 1, s = 0;
  while (r != 0) {
    i64 quot = old_r / r;
    old_r -= quot * r;
    std::swap(old_r, r);
    old_s -= quot * s;
    std::swap(old_s, s);
  }
  if (old_r != 1)
    throw Error(ErrorKind::NotInvertible,
                std::to_string(a) + " has no inverse modulo " + std::to_string(q));
  return reduce(old_s, q);
}

Residue mod_inverse(i64 a, const PrimePower& q) {
  return Residue(static_cast<i64>(mod_inverse(a, q.q())), q);
}

int jacobi_symbol(i64 n, u64 q) {
  if (q == 0 || q % 2 == 0) throw Error(ErrorKind::InvalidArgument, "Jacobi modulus must be odd");
  u64 a = reduce(n, q);
  u64 b = q;
  int sign = 1;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      u64 b8 = b % 8;
      if (b8 == 3 || b8 == 5) sign = -sign;
    }
    std::swap(a, b);
    if (a % 4 == 3 && b % 4 == 3) sign = -sign;
    a %= b;
  }
  return b == 1 ? sign : 0;
}

int legendre_symbol(i64 a, u64 p) {
  if (p % 2 == 0 || !is_prime(p))
    throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not an odd prime");
  return jacobi_symbol(a, p);
}

Valuation int_valuation(i64 a, u64 p) {
  if (p < 2) throw Error(ErrorKind::InvalidArgument, "valuation base must be >= 2");
  if (a == 0) return std::nullopt;
  // |INT64_MIN| is not representable; it is 2^63 so only p = 2 divides it.
  u64 v = a == std::numeric_limits<i64>::min() ? u64{1} << 63
                                               : static_cast<u64>(a < 0 ? -a : a);
  unsigned k = 0;
  while (v % p == 0) {
    v /= p;
    ++k;
  }
  return k;
}

std::vector<PrimeFactor> factorize(u64 n) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "cannot factor 0");
  std::vector<PrimeFactor> out;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    PrimeFactor f{d, 0, 1};
    while (n % d == 0) {
      n /= d;
      ++f.m;
      f.q *= d;
    }
    out.push_back(f);
  }
  if (n > 1) out.push_back({n, 1, n});
  return out;
}

}  // namespace expsum

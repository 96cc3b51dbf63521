#include "expsum/cyclo.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace expsum {

namespace {

i64 checked_add(i64 a, i64 b) {
  i64 r;
  if (__builtin_add_overflow(a, b, &r))
    throw Error(ErrorKind::Overflow, "cyclotomic coefficient overflow");
  return r;
}

i64 checked_mul(i64 a, i64 b) {
  i64 r;
  if (__builtin_mul_overflow(a, b, &r))
    throw Error(ErrorKind::Overflow, "cyclotomic coefficient overflow");
  return r;
}

void require_same(const Conductor& a, const Conductor& b) {
  if (!(a == b))
    throw Error(ErrorKind::ConductorMismatch,
                "conductors " + std::to_string(a.q()) + " and " + std::to_string(b.q()));
}

// Rewrites axis `axis` of a row-major tensor from length p^m to phi(p^m)
// using the relation sum_{t<p} zeta^{t p^{m-1}} = 0.
std::vector<i64> reduce_axis(const std::vector<i64>& data, std::vector<u64>& dims, std::size_t axis,
                             const PrimeFactor& f) {
  u64 outer = 1, inner = 1;
  for (std::size_t i = 0; i < axis; ++i) outer *= dims[i];
  for (std::size_t i = axis + 1; i < dims.size(); ++i) inner *= dims[i];
  const u64 len = f.q;
  const u64 block = f.q / f.p;  // p^{m-1}
  const u64 phi = len - block;

  std::vector<i64> out(outer * phi * inner, 0);
  for (u64 o = 0; o < outer; ++o) {
    const i64* src = data.data() + o * len * inner;
    i64* dst = out.data() + o * phi * inner;
    for (u64 e = 0; e < phi; ++e)
      for (u64 in = 0; in < inner; ++in) dst[e * inner + in] = src[e * inner + in];
    for (u64 u = 0; u < block; ++u) {
      for (u64 in = 0; in < inner; ++in) {
        i64 v = src[(phi + u) * inner + in];
        if (v == 0) continue;
        for (u64 t = 0; t + 1 < f.p; ++t) {
          i64& slot = dst[(t * block + u) * inner + in];
          slot = checked_add(slot, -v);
        }
      }
    }
  }
  dims[axis] = phi;
  return out;
}

}  // namespace

Conductor::Conductor(u64 q) : q_(q), phi_(1) {
  if (q == 0 || q % 2 == 0) throw Error(ErrorKind::InvalidArgument, "conductor must be odd");
  if (q > kMaxModulus) throw Error(ErrorKind::Overflow, "conductor too large");
  factors_ = factorize(q);
  for (const auto& f : factors_) {
    u64 ph = f.q / f.p * (f.p - 1);
    phis_.push_back(ph);
    phi_ *= ph;
    basis_mult_.push_back(q / f.q);
    crt_coef_.push_back(mod_inverse(static_cast<i64>((q / f.q) % f.q), f.q));
  }
}

u64 Conductor::exponent_of(std::size_t idx) const {
  u64 J = 0;
  for (std::size_t i = factors_.size(); i-- > 0;) {
    u64 j = idx % phis_[i];
    idx /= phis_[i];
    J = (J + j * basis_mult_[i]) % q_;
  }
  return J;
}

CycloElement CycloElement::zero(const Conductor& c) {
  return CycloElement(c, std::vector<i64>(c.phi(), 0));
}

CycloElement CycloElement::integer(const Conductor& c, i64 value) {
  // 1 = zeta^0 sits at flat index 0 in every basis.
  CycloElement z = zero(c);
  z.coeffs_[0] = value;
  return z;
}

CycloElement CycloElement::root_of_unity(const Conductor& c, i64 a) {
  std::vector<i64> counts(c.q(), 0);
  counts[reduce(a, c.q())] = 1;
  return from_exponent_counts(c, counts);
}

CycloElement CycloElement::from_exponent_counts(const Conductor& c, std::span<const i64> counts) {
  if (counts.size() != c.q())
    throw Error(ErrorKind::InvalidArgument, "exponent histogram length must equal the conductor");
  if (c.factors_.empty()) return integer(c, counts[0]);

  if (c.is_prime_power()) {
    std::vector<u64> dims{c.q()};
    std::vector<i64> data(counts.begin(), counts.end());
    return CycloElement(c, reduce_axis(data, dims, 0, c.factors_[0]));
  }

  // Scatter into the CRT tensor, then reduce one axis at a time.
  const std::size_t k = c.factors_.size();
  std::vector<u64> dims(k);
  for (std::size_t i = 0; i < k; ++i) dims[i] = c.factors_[i].q;
  std::vector<i64> data(c.q(), 0);
  for (u64 J = 0; J < c.q(); ++J) {
    if (counts[J] == 0) continue;
    u64 flat = 0;
    for (std::size_t i = 0; i < k; ++i)
      flat = flat * dims[i] + mulmod(J % dims[i], c.crt_coef_[i], dims[i]);
    data[flat] = checked_add(data[flat], counts[J]);
  }
  for (std::size_t i = 0; i < k; ++i) data = reduce_axis(data, dims, i, c.factors_[i]);
  return CycloElement(c, std::move(data));
}

bool CycloElement::is_zero() const noexcept {
  for (i64 v : coeffs_)
    if (v != 0) return false;
  return true;
}

std::optional<i64> CycloElement::as_integer() const {
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) return std::nullopt;
  return coeffs_[0];
}

CycloElement CycloElement::operator+(const CycloElement& o) const {
  CycloElement r = *this;
  r += o;
  return r;
}

CycloElement& CycloElement::operator+=(const CycloElement& o) {
  require_same(cond_, o.cond_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] = checked_add(coeffs_[i], o.coeffs_[i]);
  return *this;
}

CycloElement CycloElement::operator-(const CycloElement& o) const { return *this + (-o); }

CycloElement CycloElement::operator-() const { return scaled(-1); }

CycloElement CycloElement::scaled(i64 c) const {
  CycloElement r = *this;
  for (i64& v : r.coeffs_) v = checked_mul(v, c);
  return r;
}

CycloElement CycloElement::operator*(const CycloElement& o) const {
  require_same(cond_, o.cond_);
  const u64 q = cond_.q();
  std::vector<std::pair<u64, i64>> a, b;
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) a.emplace_back(cond_.exponent_of(i), coeffs_[i]);
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i)
    if (o.coeffs_[i] != 0) b.emplace_back(cond_.exponent_of(i), o.coeffs_[i]);
  std::vector<i64> counts(q, 0);
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      i64& slot = counts[addmod(ea, eb, q)];
      slot = checked_add(slot, checked_mul(ca, cb));
    }
  return from_exponent_counts(cond_, counts);
}

CycloElement CycloElement::pow(unsigned e) const {
  CycloElement result = integer(cond_, 1);
  CycloElement base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

CycloElement CycloElement::lifted(const Conductor& target) const {
  if (target.q() % cond_.q() != 0)
    throw Error(ErrorKind::IncompatibleConductors,
                std::to_string(cond_.q()) + " does not divide " + std::to_string(target.q()));
  if (target == cond_) return *this;
  const u64 scale = target.q() / cond_.q();
  std::vector<i64> counts(target.q(), 0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    i64& slot = counts[cond_.exponent_of(i) * scale];
    slot = checked_add(slot, coeffs_[i]);
  }
  return from_exponent_counts(target, counts);
}

std::complex<double> CycloElement::embed_complex() const {
  const double q = static_cast<double>(cond_.q());
  long double re = 0, im = 0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    long double angle = 2.0L * std::numbers::pi_v<long double> *
                        static_cast<long double>(cond_.exponent_of(i)) / q;
    re += static_cast<long double>(coeffs_[i]) * std::cos(angle);
    im += static_cast<long double>(coeffs_[i]) * std::sin(angle);
  }
  return {static_cast<double>(re), static_cast<double>(im)};
}

std::string CycloElement::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    i64 c = coeffs_[i];
    if (c == 0) continue;
    u64 J = cond_.exponent_of(i);
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    i64 a = c < 0 ? -c : c;
    if (J == 0) {
      os << a;
    } else {
      if (a != 1) os << a << "*";
      os << "z" << cond_.q() << "^" << J;
    }
    first = false;
  }
  return first ? "0" : os.str();
}

CycloElement root_of_unity(const PrimePower& q, i64 a) { return CycloElement::root_of_unity(q, a); }

CycloElement scalar_mul(i64 c, const CycloElement& x) { return x.scaled(c); }

CycloElement lift_conductor(const CycloElement& x, const Conductor& target) {
  return x.lifted(target);
}

std::complex<double> embed_complex(const CycloElement& x) { return x.embed_complex(); }

bool equal_lifted(const CycloElement& a, const CycloElement& b) {
  u64 qa = a.conductor().q(), qb = b.conductor().q();
  Conductor common(qa / gcd(qa, qb) * qb);
  return a.lifted(common) == b.lifted(common);
}

}  // namespace expsum

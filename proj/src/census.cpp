#include "expsum/census.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>

#include "expsum/expsum.hpp"

namespace expsum {

QuadraticForm::QuadraticForm(IntMatrix a) : a_(std::move(a)), det_(0) {
  if (a_.size() < 2) throw Error(ErrorKind::InvalidArgument, "quadratic forms need n >= 2");
  if (!is_symmetric(a_)) throw Error(ErrorKind::InvalidArgument, "form matrix is not symmetric");
  det_ = int_determinant(a_);
  adj_ = int_adjugate(a_);
}

__int128 QuadraticForm::value(std::span<const i64> x) const {
  __int128 v = 0;
  for (std::size_t i = 0; i < n(); ++i)
    for (std::size_t j = 0; j < n(); ++j) v += static_cast<__int128>(a_[i][j]) * x[i] * x[j];
  return v;
}

u64 QuadraticForm::value_mod(std::span<const i64> x, u64 q) const {
  u64 acc = 0;
  for (std::size_t i = 0; i < n(); ++i)
    for (std::size_t j = 0; j < n(); ++j)
      acc = addmod(acc, mulmod(mulmod(reduce(a_[i][j], q), reduce(x[i], q), q), reduce(x[j], q), q), q);
  return acc;
}

MultiPoly QuadraticForm::as_polynomial(i64 h, std::span<const i64> k) const {
  MultiPoly f(n());
  for (std::size_t i = 0; i < n(); ++i)
    for (std::size_t j = 0; j < n(); ++j) {
      Exponents e(n(), 0);
      ++e[i];
      ++e[j];
      f.add_term(e, a_[i][j] * h);
    }
  for (std::size_t i = 0; i < k.size(); ++i) {
    Exponents e(n(), 0);
    e[i] = 1;
    f.add_term(e, k[i]);
  }
  return f;
}

void QuadraticForm::require_nonsingular_mod(u64 p) const {
  if (reduce(det_, p) == 0)
    throw Error(ErrorKind::SingularModP,
                "det(A) = " + std::to_string(det_) + " is divisible by " + std::to_string(p));
}

std::string QuadraticForm::to_string() const {
  return as_polynomial().to_string();
}

QuadraticForm dual_form(const QuadraticForm& Q) { return QuadraticForm(int_transpose(Q.adjugate())); }

Rational Rational::make(i64 num, i64 den) {
  if (den == 0) throw Error(ErrorKind::InvalidArgument, "zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  i64 g = static_cast<i64>(gcd(static_cast<u64>(num < 0 ? -num : num), static_cast<u64>(den)));
  if (g == 0) g = 1;
  return {num / g, den / g};
}

std::string Rational::to_string() const {
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

namespace {

long double lpow(u64 base, std::size_t e) {
  long double v = 1;
  for (std::size_t i = 0; i < e; ++i) v *= static_cast<long double>(base);
  return v;
}

// Histogram of g(y) mod q over [0, q)^n, optionally without the coset y = 0 mod p.
std::vector<i64> form_histogram(const MultiPoly& g, const PrimePower& q, bool restrict_nonzero) {
  const std::size_t n = g.n_vars();
  const PointEvaluator eval{RationalFunc(g), q};
  std::vector<i64> hist =
      exponent_histogram(eval, Lattice{std::vector<i64>(n, 0), 1, q.q()}, q.q());
  if (restrict_nonzero) {
    const std::vector<i64> zero_coset =
        exponent_histogram(eval, Lattice{std::vector<i64>(n, 0), static_cast<i64>(q.p()), q.q() / q.p()}, q.q());
    for (u64 j = 0; j < q.q(); ++j) hist[j] -= zero_coset[j];
  }
  return hist;
}

bool has_unit_diagonal(const QuadraticForm& Q, u64 p) {
  for (std::size_t i = 0; i < Q.n(); ++i)
    if (reduce(Q.matrix()[i][i], p) != 0) return true;
  return false;
}

}  // namespace

u64 count_A(const QuadraticForm& Q, u64 p, unsigned m, u64 budget) {
  Q.require_nonsingular_mod(p);
  const PrimePower q(p, m);
  check_budget(lpow(q.q(), Q.n()), budget, "census");
  return static_cast<u64>(form_histogram(Q.as_polynomial(), q, true)[0]);
}

CensusResult census(const QuadraticForm& Q, u64 p, unsigned m, u64 budget) {
  CensusResult r;
  r.p = p;
  r.m = m;
  r.count_A = count_A(Q, p, m, budget);
  r.b_p = Rational::make(static_cast<i64>(r.count_A),
                         static_cast<i64>(ipow(p, m * static_cast<unsigned>(Q.n() - 1))));
  return r;
}

bool hensel_scaling_check(const QuadraticForm& Q, u64 p, unsigned m, u64 budget) {
  const u64 base = count_A(Q, p, 1, budget);
  const u64 full = count_A(Q, p, m, budget);
  const u64 factor = ipow(p, static_cast<unsigned>((Q.n() - 1) * (m - 1)));
  return full == base * factor;
}

Rational local_density(const QuadraticForm& Q, u64 p, u64 budget) {
  return census(Q, p, 1, budget).b_p;
}

CycloElement esum_brute(const QuadraticForm& Q, std::span<const i64> k, i64 h, u64 p, unsigned m,
                        bool restrict_nonzero, u64 budget) {
  if (k.size() != Q.n()) throw Error(ErrorKind::InvalidArgument, "frequency vector dimension");
  const PrimePower q(p, m);
  check_budget(lpow(q.q(), Q.n()), budget, "E-sum");
  return CycloElement::from_exponent_counts(q, form_histogram(Q.as_polynomial(h, k), q, restrict_nonzero));
}

CycloElement esum_closed(const QuadraticForm& Q, std::span<const i64> l_vec, i64 l, unsigned r,
                         u64 p, unsigned m) {
  if (m < r + 2) throw Error(ErrorKind::NotApplicable, "closed form needs m - r >= 2");
  Q.require_nonsingular_mod(p);
  const std::size_t n = Q.n();
  if (l_vec.size() != n) throw Error(ErrorKind::InvalidArgument, "frequency vector dimension");
  if (reduce(l, p) == 0) throw Error(ErrorKind::InvalidArgument, "l must be a unit mod p");
  bool lvec_unit = false;
  for (i64 v : l_vec) lvec_unit = lvec_unit || reduce(v, p) != 0;
  if (!lvec_unit) throw Error(ErrorKind::InvalidArgument, "L must be nonzero mod p");

  const PrimePower q(p, m);
  const PrimePower qr(p, m - r);
  const u64 Qr = qr.q();
  const u64 det_r = reduce(Q.det(), Qr);
  const u64 inv2 = mod_inverse(2, Qr);
  // C = -(2 det A)^{-1} (1 - 2^{-1}); since 1 - 2^{-1} = 2^{-1} this is -(4 det A)^{-1}.
  const u64 C = submod(0, mulmod(mod_inverse(static_cast<i64>(mulmod(2, det_r, Qr)), Qr),
                                 submod(1, inv2, Qr), Qr), Qr);
  if (C != submod(0, mod_inverse(static_cast<i64>(mulmod(4, det_r, Qr)), Qr), Qr))
    throw Error(ErrorKind::InvalidArgument, "inconsistent constant C");

  const QuadraticForm dual = dual_form(Q);
  const u64 dual_val = reduce(static_cast<i64>(dual.value(l_vec) % static_cast<__int128>(Qr)), Qr);
  const u64 expo = mulmod(mulmod(C, mod_inverse(l, Qr), Qr), dual_val, Qr);
  const CycloElement phase = CycloElement::root_of_unity(Conductor(Qr), static_cast<i64>(expo)).lifted(q);

  if ((m - r) % 2 == 0)
    return phase.scaled(static_cast<i64>(ipow(p, static_cast<unsigned>((m + r) * n / 2))));

  // Hessian 2lA; the symbol is that of det(2^{-1} * 2lA) = l^n det(A).
  const int sym_det = legendre_symbol(static_cast<i64>(reduce(Q.det(), p)), p);
  const int sym_l = legendre_symbol(static_cast<i64>(powmod(reduce(l, p), n, p)), p);
  const CycloElement gauss = gauss_sum_brute(p, 1).lifted(q).pow(static_cast<unsigned>(n));
  const i64 scale = static_cast<i64>(ipow(p, static_cast<unsigned>((m + r - 1) * n / 2)));
  return (phase * gauss).scaled(sym_det * sym_l * scale);
}

HAverage esum_h_average(const QuadraticForm& Q, std::span<const i64> l_vec, unsigned r, u64 p,
                        unsigned m) {
  const PrimePower q(p, m);
  HAverage out{CycloElement::zero(q)};
  const u64 Qr = ipow(p, m - r);
  for (u64 l = 1; l <= Qr; ++l) {
    if (l % p == 0) continue;
    out.value += esum_closed(Q, l_vec, static_cast<i64>(l), r, p, m);
  }
  const __int128 dv = dual_form(Q).value(l_vec);
  out.dual_value = static_cast<i64>(dv);
  const u64 pm = ipow(p, m - r - 1);
  out.predicted_zero = dv % static_cast<__int128>(pm) != 0;
  out.vanishing_holds = !out.predicted_zero || out.value.is_zero();
  out.magnitude = std::abs(out.value.embed_complex());
  out.bound = std::pow(static_cast<double>(p),
                       static_cast<double>((m + r) * Q.n()) / 2.0 + static_cast<double>(m - r));
  out.bound_holds = out.magnitude <= out.bound * (1 + 1e-6);
  return out;
}

double GaussianWeight::phi(double t) { return std::exp(-std::numbers::pi * t * t); }

namespace {

WeightedCountJob make_job(const QuadraticForm& Q, u64 p, unsigned m, double N,
                          std::span<const i64> x0, double radius) {
  if (x0.size() != Q.n()) throw Error(ErrorKind::InvalidArgument, "centre dimension");
  WeightedCountJob job;
  job.A = Q.matrix();
  job.p = p;
  job.q = PrimePower(p, m).q();
  job.N = N;
  job.radius = radius;
  job.x0.assign(x0.begin(), x0.end());
  return job;
}

}  // namespace

double weighted_count_T(const QuadraticForm& Q, u64 p, unsigned m, double N,
                        std::span<const i64> x0, double radius, u64 budget) {
  const WeightedCountJob job = make_job(Q, p, m, N, x0, radius);
  const long double side = 2 * std::floor(radius * N) + 1;
  const std::size_t dims = has_unit_diagonal(Q, p) ? Q.n() - 1 : Q.n();
  check_budget(std::pow(side, static_cast<long double>(dims)), budget, "weighted count");
  return weighted_count(job);
}

double weighted_count_T_scan(const QuadraticForm& Q, u64 p, unsigned m, double N,
                             std::span<const i64> x0, double radius, u64 budget) {
  const WeightedCountJob job = make_job(Q, p, m, N, x0, radius);
  const long double side = 2 * std::floor(radius * N) + 1;
  check_budget(std::pow(side, static_cast<long double>(Q.n())), budget, "weighted scan");
  return weighted_count_serial(job);
}

double main_term_T0(const QuadraticForm& Q, u64 p, unsigned m, double N, u64 budget) {
  const Rational bp = local_density(Q, p, budget);
  return bp.to_double() * std::pow(GaussianWeight::phi_hat(0), static_cast<double>(Q.n())) *
         std::pow(N, static_cast<double>(Q.n())) / std::pow(static_cast<double>(p), m);
}

PoissonAssembly poisson_assembly(const QuadraticForm& Q, u64 p, unsigned m, double N,
                                 std::span<const i64> x0, i64 k_max, u64 budget) {
  const std::size_t n = Q.n();
  if (x0.size() != n) throw Error(ErrorKind::InvalidArgument, "centre dimension");
  const PrimePower q(p, m);
  const u64 Q_ = q.q();
  check_budget(lpow(Q_, 2 * n + 1), budget, "Poisson assembly");

  // W(k) = sum_{h=1}^{q} E(k, h; q) for every k mod q, as complex numbers.
  u64 residues = 1;
  for (std::size_t i = 0; i < n; ++i) residues *= Q_;
  std::vector<std::complex<double>> W(residues);
  std::vector<i64> k(n);
  for (u64 idx = 0; idx < residues; ++idx) {
    u64 t = idx;
    for (std::size_t i = n; i-- > 0;) {
      k[i] = static_cast<i64>(t % Q_);
      t /= Q_;
    }
    CycloElement acc = CycloElement::zero(q);
    for (u64 h = 1; h <= Q_; ++h) acc += esum_brute(Q, k, static_cast<i64>(h), p, m, true, budget);
    W[idx] = acc.embed_complex();
  }

  const double scale = std::pow(N, static_cast<double>(n)) /
                       std::pow(static_cast<double>(Q_), static_cast<double>(n + 1));
  std::vector<double> phat(static_cast<std::size_t>(2 * k_max + 1));
  for (i64 j = -k_max; j <= k_max; ++j)
    phat[static_cast<std::size_t>(j + k_max)] = GaussianWeight::phi_hat(static_cast<double>(j) * N / static_cast<double>(Q_));

  std::complex<double> U = 0;
  std::vector<i64> kk(n, -k_max);
  while (true) {
    double w = 1;
    bool nonzero = false;
    for (std::size_t i = 0; i < n; ++i) {
      w *= phat[static_cast<std::size_t>(kk[i] + k_max)];
      nonzero = nonzero || kk[i] != 0;
    }
    if (w != 0 && nonzero) {
      u64 idx = 0;
      i64 dot = 0;
      for (std::size_t i = 0; i < n; ++i) {
        idx = idx * Q_ + reduce(kk[i], Q_);
        dot += kk[i] * x0[i];
      }
      const double angle = -2 * std::numbers::pi * static_cast<double>(reduce(dot, Q_)) / static_cast<double>(Q_);
      U += w * W[idx] * std::polar(1.0, angle);
    }
    std::size_t i = n;
    while (i-- > 0) {
      if (++kk[i] <= k_max) break;
      kk[i] = -k_max;
    }
    if (i == static_cast<std::size_t>(-1)) break;
  }
  return {main_term_T0(Q, p, m, N, budget), scale * U.real()};
}

double sweep_box_size(u64 p, unsigned m, double epsilon) {
  return std::ceil(std::pow(static_cast<long double>(p), (0.5L + epsilon) * m));
}

SweepReport theorem2_sweep(const QuadraticForm& Q, u64 p, const std::vector<unsigned>& m_list,
                           double epsilon, std::span<const i64> x0, double radius, u64 budget) {
  SweepReport rep;
  for (unsigned m : m_list) {
    if (m < 2) throw Error(ErrorKind::NotApplicable, "sweep needs m >= 2");
    const auto start = std::chrono::steady_clock::now();
    SweepRow row;
    row.p = p;
    row.m = m;
    row.epsilon = epsilon;
    row.N = sweep_box_size(p, m, epsilon);
    row.T = weighted_count_T(Q, p, m, row.N, x0, radius, budget);
    row.T0 = main_term_T0(Q, p, m, row.N, budget);
    row.ratio = row.T / row.T0;
    row.deviation = std::abs(row.ratio - 1);
    row.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    rep.rows.push_back(row);
  }
  rep.non_increasing = true;
  for (std::size_t i = 1; i < rep.rows.size(); ++i)
    rep.non_increasing = rep.non_increasing && rep.rows[i].deviation <= rep.rows[i - 1].deviation;
  rep.final_below = !rep.rows.empty() && rep.rows.back().deviation < rep.final_threshold;
  return rep;
}

u64 box_zero_count(const QuadraticForm& Q, i64 N, u64 budget) {
  if (N < 0) throw Error(ErrorKind::InvalidArgument, "N must be >= 0");
  bool diag = false;
  for (std::size_t i = 0; i < Q.n(); ++i) diag = diag || Q.matrix()[i][i] != 0;
  const long double side = 2.0L * N + 1;
  check_budget(std::pow(side, static_cast<long double>(diag ? Q.n() - 1 : Q.n())), budget,
               "box zero count");
  return box_zero_count(Q.matrix(), N);
}

std::vector<GrowthRow> growth_table(const QuadraticForm& Q, const std::vector<i64>& Ns, u64 budget) {
  std::vector<GrowthRow> rows;
  for (i64 N : Ns) {
    GrowthRow g;
    g.N = N;
    g.count = box_zero_count(Q, N, budget);
    g.count_double = box_zero_count(Q, 2 * N, budget);
    g.ratio = static_cast<double>(g.count_double) / static_cast<double>(g.count);
    g.exponent = std::log2(g.ratio);
    rows.push_back(g);
  }
  return rows;
}

}  // namespace expsum

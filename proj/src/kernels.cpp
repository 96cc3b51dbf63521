#include "expsum/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace expsum {

u64 default_budget() {
  if (const char* env = std::getenv("EXPSUM_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<u64>(v);
  }
  return u64{10'000'000};
}

void check_budget(long double points, u64 budget, const char* what) {
  if (points > static_cast<long double>(budget))
    throw Error(ErrorKind::BudgetExceeded,
                std::string(what) + " needs " + std::to_string(static_cast<double>(points)) +
                    " points, budget is " + std::to_string(budget));
}

PointEvaluator::Flat PointEvaluator::flatten(const MultiPoly& f, u64 q) {
  Flat out;
  for (const auto& [e, c] : f.terms()) {
    u64 cr = reduce(c, q);
    if (cr == 0) continue;
    out.coef.push_back(cr);
    for (unsigned k : e) {
      out.exps.push_back(k);
      out.max_deg = std::max(out.max_deg, k);
    }
  }
  return out;
}

PointEvaluator::PointEvaluator(const RationalFunc& f, const PrimePower& q)
    : n_(f.n_vars()),
      p_(q.p()),
      q_(q.q()),
      num_(flatten(f.num(), q.q())),
      den_(flatten(f.den(), q.q())),
      den_is_one_(f.is_polynomial()),
      max_deg_(std::max(num_.max_deg, den_.max_deg)) {}

u64 PointEvaluator::eval_poly(const Flat& f, const u64* pw) const noexcept {
  // pw holds x_i^k at pw[i * (max_deg_ + 1) + k].
  const unsigned stride = max_deg_ + 1;
  u64 acc = 0;
  for (std::size_t t = 0; t < f.coef.size(); ++t) {
    u64 v = f.coef[t];
    const unsigned* e = f.exps.data() + t * n_;
    for (std::size_t i = 0; i < n_; ++i)
      if (e[i] != 0) v = mulmod(v, pw[i * stride + e[i]], q_);
    acc = addmod(acc, v, q_);
  }
  return acc;
}

bool PointEvaluator::eval(const u64* x, u64& out) const noexcept {
  constexpr std::size_t kStack = 64;
  const unsigned stride = max_deg_ + 1;
  u64 stack_buf[kStack];
  std::vector<u64> heap_buf;
  u64* pw = stack_buf;
  if (n_ * stride > kStack) {
    heap_buf.resize(n_ * stride);
    pw = heap_buf.data();
  }
  for (std::size_t i = 0; i < n_; ++i) {
    u64 xi = x[i] % q_;
    u64 acc = 1 % q_;
    for (unsigned k = 0; k <= max_deg_; ++k) {
      pw[i * stride + k] = acc;
      acc = mulmod(acc, xi, q_);
    }
  }
  if (den_is_one_) {
    out = eval_poly(num_, pw);
    return true;
  }
  u64 d = eval_poly(den_, pw);
  if (d % p_ == 0) return false;
  out = mulmod(eval_poly(num_, pw), mod_inverse(static_cast<i64>(d), q_), q_);
  return true;
}

u64 Lattice::size() const {
  u64 total = 1;
  for (std::size_t i = 0; i < base.size(); ++i) {
    if (__builtin_mul_overflow(total, extent, &total))
      throw Error(ErrorKind::BudgetExceeded, "lattice size overflows");
  }
  return total;
}

namespace {

void decode_point(const Lattice& box, u64 flat, u64 q, u64* x) {
  const std::size_t n = box.base.size();
  for (std::size_t i = n; i-- > 0;) {
    u64 t = flat % box.extent;
    flat /= box.extent;
    x[i] = reduce(box.base[i] + box.step * static_cast<i64>(t), q);
  }
}

void require_dims(const PointEvaluator& f, const Lattice& box) {
  if (f.n_vars() != box.base.size())
    throw Error(ErrorKind::InvalidArgument, "lattice dimension differs from function arity");
}

}  // namespace

std::vector<i64> exponent_histogram_serial(const PointEvaluator& f, const Lattice& box, u64 q) {
  require_dims(f, box);
  std::vector<i64> hist(q, 0);
  const u64 total = box.size();
  std::vector<u64> x(box.base.size());
  u64 v;
  for (u64 t = 0; t < total; ++t) {
    decode_point(box, t, q, x.data());
    if (f.eval(x.data(), v)) ++hist[v];
  }
  return hist;
}

std::vector<i64> exponent_histogram(const PointEvaluator& f, const Lattice& box, u64 q) {
  require_dims(f, box);
  std::vector<i64> hist(q, 0);
  const i64 total = static_cast<i64>(box.size());
#pragma omp parallel
  {
    std::vector<i64> local(q, 0);
    std::vector<u64> x(box.base.size());
    u64 v;
#pragma omp for schedule(static)
    for (i64 t = 0; t < total; ++t) {
      decode_point(box, static_cast<u64>(t), q, x.data());
      if (f.eval(x.data(), v)) ++local[v];
    }
#pragma omp critical
    for (u64 j = 0; j < q; ++j) hist[j] += local[j];
  }
  return hist;
}

namespace {

struct BoxGeometry {
  std::size_t n;
  i64 half;                    // floor(radius * N)
  std::vector<double> weight;  // weight[d + half] = exp(-pi (d/N)^2)
};

BoxGeometry make_geometry(const WeightedCountJob& job) {
  const std::size_t n = job.A.size();
  if (n == 0 || job.x0.size() != n)
    throw Error(ErrorKind::InvalidArgument, "form and centre dimensions differ");
  if (!(job.N > 0)) throw Error(ErrorKind::InvalidArgument, "N must be positive");
  BoxGeometry g{n, static_cast<i64>(std::floor(job.radius * job.N)), {}};
  g.weight.resize(static_cast<std::size_t>(2 * g.half + 1));
  for (i64 d = -g.half; d <= g.half; ++d) {
    double t = static_cast<double>(d) / job.N;
    g.weight[static_cast<std::size_t>(d + g.half)] = std::exp(-std::numbers::pi * t * t);
  }
  return g;
}

u64 form_mod(const std::vector<std::vector<i64>>& A, const std::vector<i64>& x, u64 q) {
  const std::size_t n = x.size();
  u64 acc = 0;
  for (std::size_t i = 0; i < n; ++i) {
    u64 xi = reduce(x[i], q);
    for (std::size_t j = 0; j < n; ++j)
      acc = addmod(acc, mulmod(mulmod(reduce(A[i][j], q), xi, q), reduce(x[j], q), q), q);
  }
  return acc;
}

std::vector<std::vector<i64>> swap_last(const std::vector<std::vector<i64>>& A, std::size_t k) {
  auto B = A;
  const std::size_t n = A.size();
  for (std::size_t i = 0; i < n; ++i) std::swap(B[i][k], B[i][n - 1]);
  std::swap(B[k], B[n - 1]);
  return B;
}

bool all_divisible(const std::vector<i64>& x, u64 p) {
  for (i64 v : x)
    if (reduce(v, p) != 0) return false;
  return true;
}

}  // namespace

double weighted_count_serial(const WeightedCountJob& job) {
  const BoxGeometry g = make_geometry(job);
  const std::size_t n = g.n;
  std::vector<i64> d(n, -g.half), x(n);
  double total = 0;
  while (true) {
    for (std::size_t i = 0; i < n; ++i) x[i] = job.x0[i] + d[i];
    if (!all_divisible(x, job.p) && form_mod(job.A, x, job.q) == 0) {
      double w = 1;
      for (std::size_t i = 0; i < n; ++i) w *= g.weight[static_cast<std::size_t>(d[i] + g.half)];
      total += w;
    }
    std::size_t k = n;
    while (k-- > 0) {
      if (++d[k] <= g.half) break;
      d[k] = -g.half;
    }
    if (k == static_cast<std::size_t>(-1)) break;
  }
  return total;
}

double weighted_count(const WeightedCountJob& job_in) {
  const BoxGeometry g = make_geometry(job_in);
  const std::size_t n = g.n;
  const u64 q = job_in.q, p = job_in.p;
  // Put a coordinate with a unit diagonal entry last.
  std::size_t pivot = n;
  for (std::size_t k = n; k-- > 0;)
    if (reduce(job_in.A[k][k], p) != 0) {
      pivot = k;
      break;
    }
  if (pivot == n || n < 2) return weighted_count_serial(job_in);
  WeightedCountJob job = job_in;
  job.A = swap_last(job_in.A, pivot);
  std::swap(job.x0[pivot], job.x0[n - 1]);
  const u64 a = reduce(job.A[n - 1][n - 1], q);
  const u64 a_inv = mod_inverse(static_cast<i64>(a), q);

  // Square roots mod q in CSR layout: roots of v are sqrt_val[off[v] .. off[v+1]).
  std::vector<u64> off(q + 1, 0), sqrt_val(q);
  for (u64 s = 0; s < q; ++s) ++off[mulmod(s, s, q) + 1];
  for (u64 v = 0; v < q; ++v) off[v + 1] += off[v];
  {
    std::vector<u64> fill(off.begin(), off.end() - 1);
    for (u64 s = 0; s < q; ++s) sqrt_val[fill[mulmod(s, s, q)]++] = s;
  }

  const i64 width = 2 * g.half + 1;
  const i64 lo_last = job.x0[n - 1] - g.half, hi_last = job.x0[n - 1] + g.half;
  std::vector<double> partial(static_cast<std::size_t>(width), 0.0);

#pragma omp parallel for schedule(dynamic)
  for (i64 d0 = 0; d0 < width; ++d0) {
    std::vector<i64> d(n - 1, 0), x(n, 0);
    d[0] = d0;
    double acc = 0;
    while (true) {
      double w_prefix = 1;
      for (std::size_t i = 0; i + 1 < n; ++i) {
        x[i] = job.x0[i] + d[i] - g.half;
        w_prefix *= g.weight[static_cast<std::size_t>(d[i])];
      }
      // Q = a x^2 + 2 b x + c in the last coordinate.
      u64 b = 0, c = 0;
      for (std::size_t i = 0; i + 1 < n; ++i) {
        u64 xi = reduce(x[i], q);
        b = addmod(b, mulmod(reduce(job.A[i][n - 1], q), xi, q), q);
        for (std::size_t j = 0; j + 1 < n; ++j)
          c = addmod(c, mulmod(mulmod(reduce(job.A[i][j], q), xi, q), reduce(x[j], q), q), q);
      }
      const u64 disc = submod(mulmod(b, b, q), mulmod(a, c, q), q);
      bool prefix_zero = true;
      for (std::size_t i = 0; i + 1 < n; ++i) prefix_zero = prefix_zero && reduce(x[i], p) == 0;
      for (u64 k = off[disc]; k < off[disc + 1]; ++k) {
        const u64 rho = mulmod(a_inv, submod(sqrt_val[k], b, q), q);
        // First representative of rho in [lo_last, hi_last].
        i64 xl = lo_last + static_cast<i64>(submod(rho, reduce(lo_last, q), q));
        for (; xl <= hi_last; xl += static_cast<i64>(q)) {
          if (prefix_zero && reduce(xl, p) == 0) continue;
          acc += w_prefix * g.weight[static_cast<std::size_t>(xl - lo_last)];
        }
      }
      // Odometer over coordinates 1..n-2.
      std::size_t k = n - 1;
      while (--k > 0) {
        if (++d[k] < width) break;
        d[k] = 0;
      }
      if (k == 0) break;
    }
    partial[static_cast<std::size_t>(d0)] = acc;
  }
  double total = 0;
  for (double v : partial) total += v;
  return total;
}

namespace {

__int128 isqrt128(__int128 v) {
  if (v < 0) return -1;
  __int128 s = static_cast<__int128>(std::sqrt(static_cast<long double>(v)));
  while (s * s > v) --s;
  while ((s + 1) * (s + 1) <= v) ++s;
  return s;
}

bool divides_into(__int128 num, __int128 den, i64& out) {
  if (num % den != 0) return false;
  out = static_cast<i64>(num / den);
  return true;
}

}  // namespace

u64 box_zero_count_serial(const std::vector<std::vector<i64>>& A, i64 N) {
  const std::size_t n = A.size();
  std::vector<i64> x(n, -N);
  u64 count = 0;
  while (true) {
    __int128 v = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) v += static_cast<__int128>(A[i][j]) * x[i] * x[j];
    if (v == 0) ++count;
    std::size_t k = n;
    while (k-- > 0) {
      if (++x[k] <= N) break;
      x[k] = -N;
    }
    if (k == static_cast<std::size_t>(-1)) break;
  }
  return count;
}

u64 box_zero_count(const std::vector<std::vector<i64>>& A0, i64 N) {
  const std::size_t n = A0.size();
  std::size_t pivot = n;
  for (std::size_t k = n; k-- > 0;)
    if (A0[k][k] != 0) {
      pivot = k;
      break;
    }
  if (pivot == n || n < 2) return box_zero_count_serial(A0, N);
  const auto A = swap_last(A0, pivot);
  const __int128 a = A[n - 1][n - 1];
  u64 total = 0;

#pragma omp parallel for schedule(dynamic) reduction(+ : total)
  for (i64 x0 = -N; x0 <= N; ++x0) {
    std::vector<i64> x(n - 1, -N);
    x[0] = x0;
    u64 local = 0;
    while (true) {
      __int128 b = 0, c = 0;
      for (std::size_t i = 0; i + 1 < n; ++i) {
        b += static_cast<__int128>(A[i][n - 1]) * x[i];
        for (std::size_t j = 0; j + 1 < n; ++j) c += static_cast<__int128>(A[i][j]) * x[i] * x[j];
      }
      // a t^2 + 2 b t + c = 0  =>  t = (-b +- sqrt(b^2 - a c)) / a
      const __int128 disc = b * b - a * c;
      if (disc >= 0) {
        const __int128 s = isqrt128(disc);
        if (s * s == disc) {
          i64 t;
          if (divides_into(-b + s, a, t) && t >= -N && t <= N) ++local;
          if (s != 0 && divides_into(-b - s, a, t) && t >= -N && t <= N) ++local;
        }
      }
      std::size_t k = n - 1;
      while (--k > 0) {
        if (++x[k] <= N) break;
        x[k] = -N;
      }
      if (k == 0) break;
    }
    total += local;
  }
  return total;
}

}  // namespace expsum

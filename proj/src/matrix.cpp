#include "expsum/matrix.hpp"

#include <utility>

namespace expsum {

namespace {

void require_square(const IntMatrix& a) {
  for (const auto& row : a)
    if (row.size() != a.size()) throw Error(ErrorKind::InvalidArgument, "matrix is not square");
}

i64 narrow(__int128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw Error(ErrorKind::Overflow, "matrix entry overflow");
  return static_cast<i64>(v);
}

}  // namespace

i64 int_determinant(const IntMatrix& a0) {
  require_square(a0);
  const std::size_t n = a0.size();
  if (n == 0) return 1;
  std::vector<std::vector<__int128>> a(n, std::vector<__int128>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = a0[i][j];
  __int128 prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t s = k + 1;
      while (s < n && a[s][k] == 0) ++s;
      if (s == n) return 0;
      std::swap(a[k], a[s]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return narrow(sign * a[n - 1][n - 1]);
}

IntMatrix int_adjugate(const IntMatrix& a) {
  require_square(a);
  const std::size_t n = a.size();
  if (n == 1) return {{1}};
  IntMatrix adj(n, std::vector<i64>(n));
  IntMatrix minor(n - 1, std::vector<i64>(n - 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t r = 0, mr = 0; r < n; ++r) {
        if (r == i) continue;
        for (std::size_t c = 0, mc = 0; c < n; ++c) {
          if (c == j) continue;
          minor[mr][mc++] = a[r][c];
        }
        ++mr;
      }
      i64 cof = int_determinant(minor);
      // adj = transpose of cofactors
      adj[j][i] = (i + j) % 2 == 0 ? cof : -cof;
    }
  }
  return adj;
}

IntMatrix int_multiply(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  IntMatrix c(n, std::vector<i64>(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      __int128 s = 0;
      for (std::size_t t = 0; t < k; ++t) s += static_cast<__int128>(a[i][t]) * b[t][j];
      c[i][j] = narrow(s);
    }
  return c;
}

IntMatrix int_transpose(const IntMatrix& a) {
  if (a.empty()) return {};
  IntMatrix t(a[0].size(), std::vector<i64>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
  return t;
}

bool is_symmetric(const IntMatrix& a) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != a.size()) return false;
    for (std::size_t j = 0; j < i; ++j)
      if (a[i][j] != a[j][i]) return false;
  }
  return true;
}

u64 det_mod_p(ModMatrix a, u64 p) {
  const std::size_t n = a.size();
  u64 det = 1 % p;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && a[piv][k] % p == 0) ++piv;
    if (piv == n) return 0;
    if (piv != k) {
      std::swap(a[piv], a[k]);
      det = submod(0, det, p);
    }
    det = mulmod(det, a[k][k], p);
    u64 inv = mod_inverse(static_cast<i64>(a[k][k]), p);
    for (std::size_t i = k + 1; i < n; ++i) {
      u64 f = mulmod(a[i][k], inv, p);
      if (f == 0) continue;
      for (std::size_t j = k; j < n; ++j) a[i][j] = submod(a[i][j], mulmod(f, a[k][j], p), p);
    }
  }
  return det;
}

std::vector<u64> solve_mod_p(ModMatrix a, std::vector<u64> b, u64 p) {
  const std::size_t n = a.size();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && a[piv][k] % p == 0) ++piv;
    if (piv == n) throw Error(ErrorKind::SingularHessian, "singular system mod p");
    std::swap(a[piv], a[k]);
    std::swap(b[piv], b[k]);
    u64 inv = mod_inverse(static_cast<i64>(a[k][k]), p);
    for (std::size_t j = k; j < n; ++j) a[k][j] = mulmod(a[k][j], inv, p);
    b[k] = mulmod(b[k], inv, p);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || a[i][k] == 0) continue;
      u64 f = a[i][k];
      for (std::size_t j = k; j < n; ++j) a[i][j] = submod(a[i][j], mulmod(f, a[k][j], p), p);
      b[i] = submod(b[i], mulmod(f, b[k], p), p);
    }
  }
  return b;
}

}  // namespace expsum

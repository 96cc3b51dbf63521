#pragma once

// Small dense matrices: exact integer determinant/adjugate and linear
// algebra over F_p.

#include <vector>

#include "expsum/modular.hpp"

namespace expsum {

using IntMatrix = std::vector<std::vector<i64>>;
using ModMatrix = std::vector<std::vector<u64>>;

/// Exact determinant by fraction-free (Bareiss) elimination.
i64 int_determinant(const IntMatrix& a);
/// Exact adjugate (transpose of the cofactor matrix).
IntMatrix int_adjugate(const IntMatrix& a);
IntMatrix int_multiply(const IntMatrix& a, const IntMatrix& b);
IntMatrix int_transpose(const IntMatrix& a);
bool is_symmetric(const IntMatrix& a);

/// Determinant over F_p of entries already reduced mod p.
u64 det_mod_p(ModMatrix a, u64 p);
/// Solves a x = b over F_p; throws SingularHessian when a is singular.
std::vector<u64> solve_mod_p(ModMatrix a, std::vector<u64> b, u64 p);

}  // namespace expsum

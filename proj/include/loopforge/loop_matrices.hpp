// The matrix realization of a loop: the cyclic shift P, the diagonal of run
// powers L, their product D = L*P whose powers obey an exponent rule, the
// column-stacked matrix M whose k-th column is D^{k-1} applied to ones, and
// the identities tying them to the loop vector: the central identity
// [n] = gamma/(2^rho - 3^nu) * M * (3^{nu-1},...,1)^T, the D-based variants,
// and the inter-loop transforms (unimodular and row-stochastic) plus the
// affine fixed-point form.
#pragma once

#include "loopforge/exact_linalg.hpp"
#include "loopforge/loop.hpp"

namespace loopforge {

struct LoopMatrices {
    IntMatrix P;          // one at (j, j+1 mod nu)
    IntMatrix L;          // diag(2^{m_j})
    IntMatrix D;          // L * P
    IntMatrix M;          // column k = D^{k-1} * ones
    IntVector three_vec;  // (3^{nu-1}, ..., 3, 1)
};

LoopMatrices build_matrices(const IntegralLoop& loop);

// D^k by the exponent rule: row j carries 2^{m_j + ... + m_{j+k-1}} (cyclic)
// in column j+k mod nu.  Agrees with the naive matrix power; D^nu = 2^rho I.
IntMatrix d_power(const LoopMatrices& lm, long k);

// [n] * (2^rho - 3^nu) == gamma * M * three_vec, checked in exact integers.
bool verify_central(const IntegralLoop& loop);

// Both D-based identities plus the determinant law:
//   [n] * (2^rho - 3^nu) == gamma * sum_i 3^{nu-1-i} D^i * ones,
//   [n] == gamma * (D - 3I)^{-1} * ones (exact rational inverse),
//   det(D - 3I) == (-1)^{nu+1} (2^rho - 3^nu).
bool dd_identities(const IntegralLoop& loop);

// T = (D_B - 3I)^{-1} (D_A - 3I); maps [A] to [B] with det T = 1.  Loops must
// share gamma, nu and rho.
RatMatrix sl_transform(const IntegralLoop& a, const IntegralLoop& b);

// T = M_B * M_A^{-1}; maps [A] to [B]; every row sums to exactly 1.  Same
// preconditions plus invertibility of M_A (singular_matrix_error otherwise).
RatMatrix ors_transform(const IntegralLoop& a, const IntegralLoop& b);

// Row sums of the exact inverse; for every invertible loop matrix M the
// result is (1, 0, ..., 0).
RatVector inverse_row_sums(const RatMatrix& m);
inline RatVector inverse_row_sums(const IntMatrix& m) { return inverse_row_sums(to_rational(m)); }

struct AffineFixedPoint {
    RatMatrix map;                  // M * diag(3^{nu-j}/(2^rho-3^nu)) * (D - 3I)
    bool fixes_loop_vector = false; // map * [n] == [n]
    bool first_row_unit = false;    // first row == (1, 0, ..., 0)
    bool conjugate_block_form = false;  // P * map * P^{-1} has last row (0,...,0,1)
};

// Requires M invertible (singular_matrix_error otherwise).
AffineFixedPoint affine_fixed_point(const IntegralLoop& loop);

}  // namespace loopforge

#include "loopforge/loop_matrices.hpp"

namespace loopforge {

namespace {

IntVector ones_vec(long nu) {
    IntVector v(nu);
    for (long i = 0; i < nu; ++i) v(i) = 1;
    return v;
}

RatMatrix d_minus_3i(const LoopMatrices& lm) {
    RatMatrix a = to_rational(lm.D);
    for (long i = 0; i < a.rows(); ++i) a(i, i) -= 3;
    return a;
}

void require_comparable(const IntegralLoop& a, const IntegralLoop& b, const char* who) {
    if (a.gamma != b.gamma)
        throw invalid_argument_error(std::string(who) + ": loops have different gamma");
    if (a.odd_count != b.odd_count || a.even_count != b.even_count)
        throw dimension_mismatch_error(std::string(who) + ": loops have different (rho, nu)");
}

}  // namespace

LoopMatrices build_matrices(const IntegralLoop& loop) {
    const long nu = loop.odd_count;
    LoopMatrices lm;
    lm.P = IntMatrix::Zero(nu, nu);
    lm.L = IntMatrix::Zero(nu, nu);
    for (long j = 0; j < nu; ++j) {
        lm.P(j, (j + 1) % nu) = 1;
        lm.L(j, j) = pow2(static_cast<unsigned long>(loop.m[static_cast<size_t>(j)]));
    }
    lm.D = lm.L * lm.P;
    lm.M = IntMatrix(nu, nu);
    IntVector col = ones_vec(nu);
    for (long k = 0; k < nu; ++k) {
        lm.M.col(k) = col;
        if (k + 1 < nu) col = lm.D * col;
    }
    lm.three_vec = IntVector(nu);
    for (long j = 0; j < nu; ++j) lm.three_vec(j) = pow3(static_cast<unsigned long>(nu - 1 - j));
    return lm;
}

IntMatrix d_power(const LoopMatrices& lm, long k) {
    if (k < 1) throw invalid_argument_error("d_power: exponent must be positive");
    const long nu = lm.D.rows();
    // Recover the run lengths from L's diagonal.
    std::vector<long> m(static_cast<size_t>(nu));
    long rho = 0;
    for (long j = 0; j < nu; ++j) {
        m[static_cast<size_t>(j)] = two_adic_valuation(lm.L(j, j));
        rho += m[static_cast<size_t>(j)];
    }
    IntMatrix r = IntMatrix::Zero(nu, nu);
    for (long j = 0; j < nu; ++j) {
        long e = (k / nu) * rho;
        for (long i = 0; i < k % nu; ++i) e += m[static_cast<size_t>((j + i) % nu)];
        r(j, (j + k) % nu) = pow2(static_cast<unsigned long>(e));
    }
    return r;
}

bool verify_central(const IntegralLoop& loop) {
    const LoopMatrices lm = build_matrices(loop);
    const LoopVector v = loop_vector(loop);
    const Int q = loop_denominator(loop);
    const IntVector rhs = lm.M * lm.three_vec;
    for (long j = 0; j < lm.M.rows(); ++j)
        if (v.entries[static_cast<size_t>(j)] * q != loop.gamma * rhs(j)) return false;
    return true;
}

bool dd_identities(const IntegralLoop& loop) {
    const LoopMatrices lm = build_matrices(loop);
    const LoopVector v = loop_vector(loop);
    const long nu = loop.odd_count;
    const Int q = loop_denominator(loop);

    // [n] * q == gamma * sum_i 3^{nu-1-i} D^i * ones, accumulated iteratively.
    IntVector power = ones_vec(nu);
    IntVector acc = IntVector::Zero(nu);
    for (long i = 0; i < nu; ++i) {
        acc += pow3(static_cast<unsigned long>(nu - 1 - i)) * power;
        if (i + 1 < nu) power = lm.D * power;
    }
    for (long j = 0; j < nu; ++j)
        if (v.entries[static_cast<size_t>(j)] * q != loop.gamma * acc(j)) return false;

    // [n] == gamma * (D - 3I)^{-1} * ones, through the exact rational inverse.
    const RatMatrix inv = inverse_exact(d_minus_3i(lm));
    const RatVector w = inv * to_rational(ones_vec(nu));
    for (long j = 0; j < nu; ++j)
        if (Rat(loop.gamma) * w(j) != Rat(v.entries[static_cast<size_t>(j)])) return false;

    // det(D - 3I) == (-1)^{nu+1} (2^rho - 3^nu).
    const Rat det = det_exact(d_minus_3i(lm));
    const Int expect = (nu % 2 == 0) ? Int(-q) : q;
    return det == Rat(expect);
}

RatMatrix sl_transform(const IntegralLoop& a, const IntegralLoop& b) {
    require_comparable(a, b, "sl_transform");
    const LoopMatrices la = build_matrices(a);
    const LoopMatrices lb = build_matrices(b);
    return inverse_exact(d_minus_3i(lb)) * d_minus_3i(la);
}

RatMatrix ors_transform(const IntegralLoop& a, const IntegralLoop& b) {
    require_comparable(a, b, "ors_transform");
    const LoopMatrices la = build_matrices(a);
    const LoopMatrices lb = build_matrices(b);
    if (det_exact(la.M) == 0)
        throw singular_matrix_error("ors_transform: M of the source loop is singular");
    return to_rational(lb.M) * inverse_exact(to_rational(la.M));
}

RatVector inverse_row_sums(const RatMatrix& m) {
    const RatMatrix inv = inverse_exact(m);
    RatVector sums(inv.rows());
    for (long i = 0; i < inv.rows(); ++i) {
        Rat s = 0;
        for (long j = 0; j < inv.cols(); ++j) s += inv(i, j);
        sums(i) = s;
    }
    return sums;
}

AffineFixedPoint affine_fixed_point(const IntegralLoop& loop) {
    const LoopMatrices lm = build_matrices(loop);
    if (det_exact(lm.M) == 0)
        throw singular_matrix_error("affine_fixed_point: M is singular");
    const long nu = loop.odd_count;
    const Rat q(loop_denominator(loop));

    RatMatrix diag = RatMatrix::Zero(nu, nu);
    for (long j = 0; j < nu; ++j) diag(j, j) = Rat(lm.three_vec(j)) / q;

    AffineFixedPoint out;
    out.map = to_rational(lm.M) * diag * d_minus_3i(lm);

    const LoopVector v = loop_vector(loop);
    RatVector vec(nu);
    for (long j = 0; j < nu; ++j) vec(j) = Rat(v.entries[static_cast<size_t>(j)]);
    const RatVector mapped = out.map * vec;
    out.fixes_loop_vector = true;
    for (long j = 0; j < nu; ++j)
        if (mapped(j) != vec(j)) out.fixes_loop_vector = false;

    out.first_row_unit = true;
    for (long j = 0; j < nu; ++j) {
        const Rat expect = (j == 0) ? Rat(1) : Rat(0);
        if (out.map(0, j) != expect) out.first_row_unit = false;
    }

    const RatMatrix p = to_rational(lm.P);
    const RatMatrix conj = p * out.map * p.transpose();
    out.conjugate_block_form = true;
    for (long j = 0; j < nu; ++j) {
        const Rat expect = (j == nu - 1) ? Rat(1) : Rat(0);
        if (conj(nu - 1, j) != expect) out.conjugate_block_form = false;
    }
    return out;
}

}  // namespace loopforge

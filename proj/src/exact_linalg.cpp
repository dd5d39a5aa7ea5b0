#include "loopforge/exact_linalg.hpp"

namespace loopforge {

namespace {

void require_square(long rows, long cols, const char* who) {
    if (rows != cols) throw dimension_mismatch_error(std::string(who) + ": matrix must be square");
    if (rows == 0) throw dimension_mismatch_error(std::string(who) + ": empty matrix");
}

}  // namespace

Int det_exact(const IntMatrix& a) {
    require_square(a.rows(), a.cols(), "det_exact");
    const long n = a.rows();
    IntMatrix w = a;
    int sign = 1;
    Int prev = 1;
    // Bareiss: every division below is exact, entries stay minors of a.
    for (long k = 0; k + 1 < n; ++k) {
        if (w(k, k) == 0) {
            long piv = -1;
            for (long i = k + 1; i < n; ++i)
                if (w(i, k) != 0) {
                    piv = i;
                    break;
                }
            if (piv < 0) return 0;
            w.row(k).swap(w.row(piv));
            sign = -sign;
        }
        for (long i = k + 1; i < n; ++i) {
            for (long j = k + 1; j < n; ++j) {
                Int t = w(i, j) * w(k, k) - w(i, k) * w(k, j);
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                w(i, j) = t;
            }
            w(i, k) = 0;
        }
        prev = w(k, k);
    }
    return sign > 0 ? Int(w(n - 1, n - 1)) : Int(-w(n - 1, n - 1));
}

Rat det_exact(const RatMatrix& a) {
    require_square(a.rows(), a.cols(), "det_exact");
    const long n = a.rows();
    // Clear denominators row by row; det scales by the product.
    IntMatrix w(n, n);
    Int scale = 1;
    for (long i = 0; i < n; ++i) {
        Int lcm = 1;
        for (long j = 0; j < n; ++j)
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), a(i, j).get_den().get_mpz_t());
        for (long j = 0; j < n; ++j)
            w(i, j) = a(i, j).get_num() * (lcm / a(i, j).get_den());
        scale *= lcm;
    }
    Rat r(det_exact(w), scale);
    r.canonicalize();
    return r;
}

RatMatrix inverse_exact(const RatMatrix& a) {
    require_square(a.rows(), a.cols(), "inverse_exact");
    const long n = a.rows();
    RatMatrix w = a;
    RatMatrix inv = RatMatrix::Identity(n, n);
    for (long k = 0; k < n; ++k) {
        long piv = -1;
        for (long i = k; i < n; ++i)
            if (w(i, k) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) throw singular_matrix_error("inverse_exact: matrix is singular");
        if (piv != k) {
            w.row(k).swap(w.row(piv));
            inv.row(k).swap(inv.row(piv));
        }
        const Rat d = w(k, k);
        for (long j = 0; j < n; ++j) {
            w(k, j) /= d;
            inv(k, j) /= d;
        }
        for (long i = 0; i < n; ++i) {
            if (i == k || w(i, k) == 0) continue;
            const Rat f = w(i, k);
            for (long j = 0; j < n; ++j) {
                w(i, j) -= f * w(k, j);
                inv(i, j) -= f * inv(k, j);
            }
        }
    }
    return inv;
}

long rank_exact(const RatMatrix& a) {
    RatMatrix w = a;
    const long rows = w.rows(), cols = w.cols();
    long r = 0;
    for (long c = 0; c < cols && r < rows; ++c) {
        long piv = -1;
        for (long i = r; i < rows; ++i)
            if (w(i, c) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != r) w.row(r).swap(w.row(piv));
        for (long i = r + 1; i < rows; ++i) {
            if (w(i, c) == 0) continue;
            const Rat f = w(i, c) / w(r, c);
            for (long j = c; j < cols; ++j) w(i, j) -= f * w(r, j);
        }
        ++r;
    }
    return r;
}

long rank_mod_p(const IntMatrix& a, const Int& p) {
    if (!is_probable_prime(p)) throw invalid_argument_error("rank_mod_p: p must be prime");
    IntMatrix w(a.rows(), a.cols());
    for (long i = 0; i < a.rows(); ++i)
        for (long j = 0; j < a.cols(); ++j) w(i, j) = mod_nonneg(a(i, j), p);
    const long rows = w.rows(), cols = w.cols();
    long r = 0;
    for (long c = 0; c < cols && r < rows; ++c) {
        long piv = -1;
        for (long i = r; i < rows; ++i)
            if (w(i, c) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != r) w.row(r).swap(w.row(piv));
        Int inv;
        if (mpz_invert(inv.get_mpz_t(), w(r, c).get_mpz_t(), p.get_mpz_t()) == 0)
            throw internal_inconsistency_error("rank_mod_p: pivot not invertible");
        for (long i = r + 1; i < rows; ++i) {
            if (w(i, c) == 0) continue;
            const Int f = mod_nonneg(w(i, c) * inv, p);
            for (long j = c; j < cols; ++j) w(i, j) = mod_nonneg(w(i, j) - f * w(r, j), p);
        }
        ++r;
    }
    return r;
}

}  // namespace loopforge

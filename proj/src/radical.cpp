#include "loopforge/radical.hpp"

#include "loopforge/exact_linalg.hpp"

#include <sstream>

namespace loopforge {

namespace {

// Resolves the common ring of two elements; universal zero adapts to anything.
long joint_ring(const RadicalElement& a, const RadicalElement& b) {
    if (a.is_universal_zero()) return b.ring_index();
    if (b.is_universal_zero()) return a.ring_index();
    if (a.ring_index() != b.ring_index())
        throw ring_mismatch_error("radical arithmetic: ring indices differ");
    return a.ring_index();
}

}  // namespace

RadicalElement RadicalElement::from_int(long nu, const Int& v) {
    RadicalElement r(nu);
    r.c_[0] = v;
    return r;
}

RadicalElement RadicalElement::s_power(long nu, long a) {
    if (a < 0) throw invalid_argument_error("s_power: exponent must be nonnegative");
    RadicalElement r(nu);
    r.c_[static_cast<size_t>(a % nu)] = pow2(static_cast<unsigned long>(a / nu));
    return r;
}

bool RadicalElement::is_zero() const {
    for (const Int& c : c_)
        if (c != 0) return false;
    return true;
}

bool RadicalElement::is_integral() const {
    for (size_t t = 1; t < c_.size(); ++t)
        if (c_[t] != 0) return false;
    return true;
}

Int RadicalElement::constant_term() const { return c_.empty() ? Int(0) : c_[0]; }

RadicalElement RadicalElement::operator-() const {
    RadicalElement r = *this;
    for (Int& c : r.c_) c = -c;
    return r;
}

RadicalElement& RadicalElement::operator+=(const RadicalElement& rhs) {
    const long nu = joint_ring(*this, rhs);
    if (rhs.is_universal_zero()) return *this;
    if (is_universal_zero()) *this = zero(nu);
    for (size_t t = 0; t < c_.size(); ++t) c_[t] += rhs.c_[t];
    return *this;
}

RadicalElement& RadicalElement::operator-=(const RadicalElement& rhs) { return *this += -rhs; }

RadicalElement operator*(const RadicalElement& a, const RadicalElement& b) {
    const long nu = joint_ring(a, b);
    if (nu == 0 || a.is_universal_zero() || b.is_universal_zero()) return {};
    RadicalElement r = RadicalElement::zero(nu);
    // Convolution folded by s^nu = 2.
    for (long i = 0; i < nu; ++i) {
        if (a.c_[static_cast<size_t>(i)] == 0) continue;
        for (long j = 0; j < nu; ++j) {
            if (b.c_[static_cast<size_t>(j)] == 0) continue;
            const Int prod = a.c_[static_cast<size_t>(i)] * b.c_[static_cast<size_t>(j)];
            const long t = i + j;
            if (t < nu)
                r.c_[static_cast<size_t>(t)] += prod;
            else
                r.c_[static_cast<size_t>(t - nu)] += 2 * prod;
        }
    }
    return r;
}

bool operator==(const RadicalElement& a, const RadicalElement& b) {
    if (a.is_universal_zero()) return b.is_zero();
    if (b.is_universal_zero()) return a.is_zero();
    return a.ring_index() == b.ring_index() && a.coeffs() == b.coeffs();
}

RadicalElement radical_mul(const RadicalElement& a, const RadicalElement& b) { return a * b; }

RadicalElement radical_det(const RadicalMatrix& a) {
    long nu = 0;
    for (long i = 0; i < a.rows(); ++i)
        for (long j = 0; j < a.cols(); ++j) {
            const RadicalElement& e = a(i, j);
            if (e.is_universal_zero()) continue;
            if (nu == 0)
                nu = e.ring_index();
            else if (nu != e.ring_index())
                throw ring_mismatch_error("radical_det: entries from different rings");
        }
    // all entries universally zero: the determinant is the universal zero
    if (nu == 0) return det_division_free<RadicalElement>(a);
    RadicalElement d = det_division_free<RadicalElement>(a);
    if (d.is_universal_zero()) d = RadicalElement::zero(nu);
    return d;
}

std::string to_string(const RadicalElement& x) {
    if (x.is_universal_zero()) return "0";
    std::ostringstream os;
    os << "(";
    const auto& c = x.coeffs();
    for (size_t t = 0; t < c.size(); ++t) {
        if (t) os << ", ";
        os << to_dec(c[t]);
    }
    os << ")";
    return os.str();
}

}  // namespace loopforge

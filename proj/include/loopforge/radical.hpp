// The ring Z[s]/(s^nu - 2): exact arithmetic for fractional powers of two.
// An element is c_0 + c_1 s + ... + c_{nu-1} s^{nu-1} with s^nu = 2, so
// s^a carries 2^{a/nu} without any rounding.  A default-constructed element
// is the "universal zero", compatible with every ring index (Eigen needs a
// meaningful default).
#pragma once

#include "loopforge/matrix.hpp"

#include <vector>

namespace loopforge {

class RadicalElement {
public:
    RadicalElement() = default;  // universal zero

    static RadicalElement zero(long nu) { return RadicalElement(nu); }
    static RadicalElement one(long nu) { return from_int(nu, 1); }
    static RadicalElement from_int(long nu, const Int& v);
    // s^a reduced by s^nu = 2, a >= 0: coefficient 2^{a/nu} at position a mod nu.
    static RadicalElement s_power(long nu, long a);

    long ring_index() const { return nu_; }  // 0 for the universal zero
    bool is_universal_zero() const { return nu_ == 0; }
    bool is_zero() const;
    // True when the element lies in Z (all coefficients above s^0 vanish).
    bool is_integral() const;
    Int constant_term() const;
    const std::vector<Int>& coeffs() const { return c_; }

    RadicalElement operator-() const;
    RadicalElement& operator+=(const RadicalElement& rhs);
    RadicalElement& operator-=(const RadicalElement& rhs);
    friend RadicalElement operator+(RadicalElement a, const RadicalElement& b) { return a += b; }
    friend RadicalElement operator-(RadicalElement a, const RadicalElement& b) { return a -= b; }
    friend RadicalElement operator*(const RadicalElement& a, const RadicalElement& b);
    friend bool operator==(const RadicalElement& a, const RadicalElement& b);
    friend bool operator!=(const RadicalElement& a, const RadicalElement& b) { return !(a == b); }

private:
    explicit RadicalElement(long nu) : nu_(nu), c_(static_cast<size_t>(nu), Int(0)) {
        if (nu < 1) throw invalid_argument_error("RadicalElement: ring index must be positive");
    }

    long nu_ = 0;
    std::vector<Int> c_;
};

RadicalElement radical_mul(const RadicalElement& a, const RadicalElement& b);

using RadicalMatrix = DenseMatrix<RadicalElement>;

// Determinant in Z[s]/(s^nu - 2) by the division-free expansion; all entries
// must share one ring index (universal zeros are fine anywhere).
RadicalElement radical_det(const RadicalMatrix& a);

std::string to_string(const RadicalElement& x);

}  // namespace loopforge

namespace Eigen {

// Storage-level traits only; RadicalElement matrices never hit Eigen's
// numeric kernels beyond products and sums.
template <>
struct NumTraits<loopforge::RadicalElement>
    : GenericNumTraits<loopforge::RadicalElement> {
    typedef loopforge::RadicalElement Real;
    typedef loopforge::RadicalElement NonInteger;
    typedef loopforge::RadicalElement Nested;
    static inline Real epsilon() { return {}; }
    static inline Real dummy_precision() { return {}; }
    static inline int digits10() { return 0; }
    enum {
        IsInteger = 0,
        IsSigned = 1,
        IsComplex = 0,
        RequireInitialization = 1,
        ReadCost = 20,
        AddCost = 400,
        MulCost = 800
    };
};

}  // namespace Eigen

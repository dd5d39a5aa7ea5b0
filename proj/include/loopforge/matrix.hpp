// Dense exact matrices: Eigen containers over GMP scalars.  Eigen supplies
// storage, expressions and products; NumTraits specializations below teach it
// the scalar costs.  Exact decompositions live in exact_linalg.hpp because
// Eigen's own factorizations assume approximate division.
#pragma once

#include "loopforge/numeric.hpp"

#include <Eigen/Dense>

namespace Eigen {

template <>
struct NumTraits<loopforge::Int> : GenericNumTraits<loopforge::Int> {
    typedef loopforge::Int Real;
    typedef loopforge::Int NonInteger;
    typedef loopforge::Int Nested;
    static inline Real epsilon() { return 0; }
    static inline Real dummy_precision() { return 0; }
    static inline int digits10() { return 0; }
    enum {
        IsInteger = 1,
        IsSigned = 1,
        IsComplex = 0,
        RequireInitialization = 1,
        ReadCost = 6,
        AddCost = 100,
        MulCost = 100
    };
};

template <>
struct NumTraits<loopforge::Rat> : GenericNumTraits<loopforge::Rat> {
    typedef loopforge::Rat Real;
    typedef loopforge::Rat NonInteger;
    typedef loopforge::Rat Nested;
    static inline Real epsilon() { return 0; }
    static inline Real dummy_precision() { return 0; }
    static inline int digits10() { return 0; }
    enum {
        IsInteger = 0,
        IsSigned = 1,
        IsComplex = 0,
        RequireInitialization = 1,
        ReadCost = 12,
        AddCost = 200,
        MulCost = 200
    };
};

}  // namespace Eigen

namespace loopforge {

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = DenseMatrix<Int>;
using IntVector = DenseVector<Int>;
using RatMatrix = DenseMatrix<Rat>;
using RatVector = DenseVector<Rat>;

// Widen an integer matrix/vector to rationals.
inline RatMatrix to_rational(const IntMatrix& a) {
    return a.cast<Rat>();
}
inline RatVector to_rational(const IntVector& v) {
    return v.cast<Rat>();
}

}  // namespace loopforge

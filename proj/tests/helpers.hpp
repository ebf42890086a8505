#pragma once

#include <doctest.h>

#include "ffl/dense_matrix.hpp"

namespace ffl::test {

inline double dist(const DenseMatrix& a, const DenseMatrix& b) {
    return (a - b).frobenius_norm();
}

inline DenseMatrix diag2(double a, double b) {
    const double d[] = {a, b};
    return DenseMatrix::diagonal(d);
}

}  // namespace ffl::test

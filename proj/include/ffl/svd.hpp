#pragma once

#include <vector>

#include "ffl/dense_matrix.hpp"

namespace ffl {

/// Relative singular-value cutoff separating true spectral gaps from fp noise
/// for inputs with condition number up to ~1e6.
inline constexpr double kRankCutoff = 1e-10;

struct SvdResult {
    DenseMatrix u;              // orthonormal columns
    std::vector<double> sigma;  // descending, nonnegative
    DenseMatrix v;              // orthonormal columns

    std::size_t rank(double tau = kRankCutoff) const;
};

/// SVD of a square complex matrix via the Hermitian eigendecomposition of x*x.
/// Singular values are refined as column norms of xV, which keeps small sigma
/// accurate well below the Gram noise floor; zero-sigma columns of U are
/// completed with an orthonormal kernel basis chosen in canonical index order.
SvdResult svd(const DenseMatrix& x, double tol = 1e-8);

/// Count of singular values above tau * sigma_1 (0 for the zero matrix).
std::size_t numerical_rank(const DenseMatrix& x, double tau = kRankCutoff);

/// Operator norm, computed as the largest singular value.
double op_norm(const DenseMatrix& x);

/// Inverse through the SVD; requires sigma_min > 1e-8 * sigma_1.
DenseMatrix inverse(const DenseMatrix& x);

/// Columns [first, first+count) of m as a Basis block.
Basis matrix_columns(const DenseMatrix& m, std::size_t first, std::size_t count);

}  // namespace ffl

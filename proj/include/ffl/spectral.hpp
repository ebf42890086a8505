#pragma once

#include <functional>
#include <vector>

#include "ffl/dense_matrix.hpp"

namespace ffl {

/// Eigenvalues (ascending) and orthonormal eigenvectors of a Hermitian element.
struct SpectralDecomposition {
    std::vector<double> eigenvalues;  // ascending
    DenseMatrix eigenvectors;         // columns, orthonormal

    /// V diag(f(lambda)) V*
    DenseMatrix assemble(const std::function<double(double)>& f) const;
    /// V diag(lambda) V*
    DenseMatrix reconstruct() const;
};

/// Cyclic Jacobi eigensolver for complex Hermitian matrices.
/// Converges when the off-diagonal Frobenius norm drops below 1e-14 * ||H||_F,
/// with a 64-sweep budget. Ties in the ascending eigenvalue sort are broken by
/// original position, so results are reproducible.
SpectralDecomposition hermitian_eigen(const DenseMatrix& h, double tol = 1e-8);

/// Spectral functional calculus: V f(Lambda) V*. The optional domain predicate
/// guards f; an eigenvalue outside the domain raises DomainViolation.
DenseMatrix apply_spectral_function(const DenseMatrix& h, const std::function<double(double)>& f);
DenseMatrix apply_spectral_function(const DenseMatrix& h, const std::function<double(double)>& f,
                                    const std::function<bool(double)>& domain);

/// Square root of a positive-semidefinite Hermitian matrix; eigenvalues in
/// [-tol*scale, 0) are clamped to zero, more negative ones are rejected.
DenseMatrix sqrt_psd(const DenseMatrix& h);

}  // namespace ffl

#pragma once

#include <span>
#include <string>
#include <vector>

#include "ffl/algebra_types.hpp"
#include "ffl/dense_matrix.hpp"

namespace ffl {

/// Real combination of pairwise-orthogonal projections, sum alpha_k p_k.
class FiniteSpectrumElement {
  public:
    static FiniteSpectrumElement from_parts(std::vector<double> coefficients,
                                            std::vector<Projection> projections,
                                            double tol = kValidationTol);

    const std::vector<double>& coefficients() const { return coefficients_; }
    const std::vector<Projection>& projections() const { return projections_; }
    std::size_t dim() const { return projections_.empty() ? 0 : projections_[0].dim(); }

    DenseMatrix reconstruct() const;

  private:
    FiniteSpectrumElement(std::vector<double> c, std::vector<Projection> p)
        : coefficients_(std::move(c)), projections_(std::move(p)) {}
    std::vector<double> coefficients_;
    std::vector<Projection> projections_;
};

/// sum alpha_k * dimension(p_k); dimensions enter as exact rationals.
double finite_spectrum_value(const FiniteSpectrumElement& fse);

/// Floor-rounding of the spectrum of a Hermitian element onto the grid
/// {k 2^-m + offset}. Bins merge whole eigenprojections of a (eigenvalues
/// closer than 1e-12 are fused first), so the result shares all spectral
/// projections with a. Reconstruction error is below 2^-m.
FiniteSpectrumElement bin_approximation(const DenseMatrix& a, int level, double offset = 0.0);

/// Limit of the binned values d(a_m) over increasing level. Exits early once
/// every eigenvalue sits on the current grid (the value is then exact to
/// 1e-12); otherwise runs to the level bound, leaving an error far below test
/// tolerances. Never inspects the trace.
double quasi_trace_hermitian(const DenseMatrix& a, double offset = 0.0);

struct QuasiTraceValue {
    cplx value;        // q(Re x) + i q(Im x)
    double real_part;  // q(Re x)
    double imag_part;  // q(Im x)
};

/// Quasi-trace of an arbitrary element through its Hermitian parts.
QuasiTraceValue quasi_trace(const DenseMatrix& x);

struct AxiomCheck {
    std::string name;
    double residual;
    bool pass;
};

/// Numerical instances of the quasi-trace axioms on the given sample:
/// abelian linearity on pairs (f(h), g(h)), the tracial property and
/// positivity of Q(x*x), the Hermitian-part decomposition, normalization,
/// real/normal homogeneity and unitary invariance.
std::vector<AxiomCheck> check_axioms(std::span<const DenseMatrix> sample, double tol = 1e-9);

}  // namespace ffl

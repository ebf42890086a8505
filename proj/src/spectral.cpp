#include "ffl/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ffl/errors.hpp"

namespace ffl {

DenseMatrix SpectralDecomposition::assemble(const std::function<double(double)>& f) const {
    const std::size_t n = eigenvalues.size();
    DenseMatrix r(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double fk = f(eigenvalues[k]);
        if (fk == 0.0) continue;
        for (std::size_t i = 0; i < n; ++i) {
            const cplx vik = eigenvectors(i, k) * fk;
            for (std::size_t j = 0; j < n; ++j) r(i, j) += vik * std::conj(eigenvectors(j, k));
        }
    }
    return r;
}

DenseMatrix SpectralDecomposition::reconstruct() const {
    return assemble([](double t) { return t; });
}

namespace {

double offdiag_frobenius(const DenseMatrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

}  // namespace

SpectralDecomposition hermitian_eigen(const DenseMatrix& h, double tol) {
    const std::size_t n = h.dim();
    if (n == 0) throw DimensionMismatch("hermitian_eigen: empty matrix");
    const double scale = h.frobenius_norm();

    {
        DenseMatrix skew = h - h.adjoint();
        if (skew.frobenius_norm() > tol * std::max(1.0, scale))
            throw NotHermitian("hermitian_eigen: input is not Hermitian within tolerance");
    }

    // Work on the symmetrized copy so tiny adjoint asymmetry cannot bias sweeps.
    DenseMatrix a = h.hermitian_part();
    DenseMatrix v = DenseMatrix::identity(n);

    const double target = 1e-14 * std::max(scale, 1e-300);
    const int max_sweeps = 64;
    bool converged = offdiag_frobenius(a) <= target;

    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag == 0.0) continue;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                // Annihilate a(p,q) with a complex plane rotation.
                const double tau = (aqq - app) / (2.0 * mag);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const cplx phase = apq / mag;
                const cplx sp = s * phase;             // R(p,q) = s*e^{i phi}
                const cplx spc = s * std::conj(phase); // -R(q,p)

                // A <- A R (columns p and q)
                for (std::size_t i = 0; i < n; ++i) {
                    const cplx aip = a(i, p);
                    const cplx aiq = a(i, q);
                    a(i, p) = c * aip - spc * aiq;
                    a(i, q) = sp * aip + c * aiq;
                }
                // A <- R* A (rows p and q)
                for (std::size_t j = 0; j < n; ++j) {
                    const cplx apj = a(p, j);
                    const cplx aqj = a(q, j);
                    a(p, j) = c * apj - sp * aqj;
                    a(q, j) = spc * apj + c * aqj;
                }
                // Keep the 2x2 block exactly Hermitian.
                a(p, q) = cplx(0.0, 0.0);
                a(q, p) = cplx(0.0, 0.0);
                a(p, p) = cplx(a(p, p).real(), 0.0);
                a(q, q) = cplx(a(q, q).real(), 0.0);

                // V <- V R
                for (std::size_t i = 0; i < n; ++i) {
                    const cplx vip = v(i, p);
                    const cplx viq = v(i, q);
                    v(i, p) = c * vip - spc * viq;
                    v(i, q) = sp * vip + c * viq;
                }
            }
        }
        converged = offdiag_frobenius(a) <= target;
    }
    if (!converged) throw NoConvergence("hermitian_eigen: sweep budget exhausted");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&a](std::size_t i, std::size_t j) {
        return a(i, i).real() < a(j, j).real();
    });

    SpectralDecomposition out;
    out.eigenvalues.resize(n);
    out.eigenvectors = DenseMatrix(n);
    for (std::size_t k = 0; k < n; ++k) {
        out.eigenvalues[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = v(i, order[k]);
    }
    return out;
}

DenseMatrix apply_spectral_function(const DenseMatrix& h, const std::function<double(double)>& f) {
    return apply_spectral_function(h, f, [](double) { return true; });
}

DenseMatrix apply_spectral_function(const DenseMatrix& h, const std::function<double(double)>& f,
                                    const std::function<bool(double)>& domain) {
    SpectralDecomposition sd = hermitian_eigen(h);
    for (double lam : sd.eigenvalues)
        if (!domain(lam))
            throw DomainViolation("apply_spectral_function: eigenvalue " + std::to_string(lam) +
                                  " outside the function domain");
    return sd.assemble(f);
}

DenseMatrix sqrt_psd(const DenseMatrix& h) {
    SpectralDecomposition sd = hermitian_eigen(h);
    double scale = 0.0;
    for (double lam : sd.eigenvalues) scale = std::max(scale, std::abs(lam));
    const double slack = 1e-8 * std::max(scale, 1.0);
    for (double lam : sd.eigenvalues)
        if (lam < -slack)
            throw DomainViolation("sqrt_psd: matrix has a negative eigenvalue " + std::to_string(lam));
    return sd.assemble([](double t) { return t > 0.0 ? std::sqrt(t) : 0.0; });
}

}  // namespace ffl

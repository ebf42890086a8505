#include "ffl/svd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ffl/errors.hpp"
#include "ffl/spectral.hpp"

namespace ffl {

namespace {

double column_norm(const std::vector<cplx>& col) {
    double s = 0.0;
    for (const cplx& v : col) s += std::norm(v);
    return std::sqrt(s);
}

void project_out(std::vector<cplx>& w, const std::vector<std::vector<cplx>>& basis) {
    for (const auto& u : basis) {
        cplx dot(0.0, 0.0);
        for (std::size_t i = 0; i < w.size(); ++i) dot += std::conj(u[i]) * w[i];
        for (std::size_t i = 0; i < w.size(); ++i) w[i] -= dot * u[i];
    }
}

}  // namespace

std::size_t SvdResult::rank(double tau) const {
    if (sigma.empty() || sigma[0] <= 0.0) return 0;
    const double cut = tau * sigma[0];
    std::size_t r = 0;
    while (r < sigma.size() && sigma[r] > cut) ++r;
    return r;
}

SvdResult svd(const DenseMatrix& x, double /*tol*/) {
    const std::size_t n = x.dim();
    if (n == 0) throw DimensionMismatch("svd: empty matrix");

    SvdResult out;
    out.sigma.assign(n, 0.0);
    if (x.frobenius_norm() == 0.0) {
        out.u = DenseMatrix::identity(n);
        out.v = DenseMatrix::identity(n);
        return out;
    }

    const DenseMatrix gram = x.adjoint() * x;
    SpectralDecomposition sd = hermitian_eigen(gram);  // ascending

    // Descending order; the ascending sort already breaks ties deterministically.
    out.v = DenseMatrix(n);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i) out.v(i, k) = sd.eigenvectors(i, n - 1 - k);

    // B = x V; refined singular values are the column norms.
    std::vector<std::vector<cplx>> b(n, std::vector<cplx>(n, cplx(0.0, 0.0)));
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i) {
            cplx s(0.0, 0.0);
            for (std::size_t l = 0; l < n; ++l) s += x(i, l) * out.v(l, k);
            b[k][i] = s;
        }
    for (std::size_t k = 0; k < n; ++k) out.sigma[k] = column_norm(b[k]);

    // Column-norm refinement may reorder within near-degenerate clusters.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return out.sigma[i] > out.sigma[j]; });
    {
        std::vector<double> sig(n);
        DenseMatrix vv(n);
        std::vector<std::vector<cplx>> bb(n);
        for (std::size_t k = 0; k < n; ++k) {
            sig[k] = out.sigma[order[k]];
            bb[k] = std::move(b[order[k]]);
            for (std::size_t i = 0; i < n; ++i) vv(i, k) = out.v(i, order[k]);
        }
        out.sigma = std::move(sig);
        out.v = std::move(vv);
        b = std::move(bb);
    }

    const double sigma1 = out.sigma[0];
    const double dust = 1e-13 * sigma1;

    std::vector<std::vector<cplx>> accepted;
    std::vector<std::size_t> slot_of_accepted;
    std::vector<std::size_t> deferred;
    for (std::size_t k = 0; k < n; ++k) {
        if (out.sigma[k] <= dust) {
            deferred.push_back(k);
            continue;
        }
        std::vector<cplx> w = b[k];
        project_out(w, accepted);
        project_out(w, accepted);  // one re-orthogonalization pass
        const double nw = column_norm(w);
        if (nw <= 0.5 * out.sigma[k]) {
            deferred.push_back(k);
            continue;
        }
        for (cplx& v : w) v /= nw;
        accepted.push_back(std::move(w));
        slot_of_accepted.push_back(k);
    }

    // Complete the kernel block with canonical vectors in index order.
    std::size_t need = deferred.size();
    std::vector<std::vector<cplx>> fillers;
    for (std::size_t i = 0; i < n && fillers.size() < need; ++i) {
        std::vector<cplx> w(n, cplx(0.0, 0.0));
        w[i] = 1.0;
        project_out(w, accepted);
        project_out(w, fillers);
        project_out(w, accepted);
        project_out(w, fillers);
        const double nw = column_norm(w);
        if (nw > 1e-3) {
            for (cplx& v : w) v /= nw;
            fillers.push_back(std::move(w));
        }
    }
    if (fillers.size() < need) throw NoConvergence("svd: kernel completion failed");

    out.u = DenseMatrix(n);
    for (std::size_t a = 0; a < accepted.size(); ++a)
        for (std::size_t i = 0; i < n; ++i) out.u(i, slot_of_accepted[a]) = accepted[a][i];
    for (std::size_t d = 0; d < deferred.size(); ++d)
        for (std::size_t i = 0; i < n; ++i) out.u(i, deferred[d]) = fillers[d][i];
    return out;
}

std::size_t numerical_rank(const DenseMatrix& x, double tau) {
    if (!(tau > 0.0 && tau < 1.0)) throw std::invalid_argument("numerical_rank: tau must lie in (0,1)");
    return svd(x).rank(tau);
}

double op_norm(const DenseMatrix& x) {
    if (x.frobenius_norm() == 0.0) return 0.0;
    return svd(x).sigma[0];
}

DenseMatrix inverse(const DenseMatrix& x) {
    const std::size_t n = x.dim();
    const SvdResult s = svd(x);
    if (s.sigma.empty() || !(s.sigma.back() > 1e-8 * s.sigma[0]))
        throw NotInvertible("inverse: smallest singular value below threshold");
    DenseMatrix r(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double inv = 1.0 / s.sigma[k];
        for (std::size_t i = 0; i < n; ++i) {
            const cplx vik = s.v(i, k) * inv;
            for (std::size_t j = 0; j < n; ++j) r(i, j) += vik * std::conj(s.u(j, k));
        }
    }
    return r;
}

Basis matrix_columns(const DenseMatrix& m, std::size_t first, std::size_t count) {
    Basis b;
    b.rows = m.dim();
    b.cols.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        std::vector<cplx> col(m.dim());
        for (std::size_t i = 0; i < m.dim(); ++i) col[i] = m(i, first + k);
        b.cols.push_back(std::move(col));
    }
    return b;
}

}  // namespace ffl

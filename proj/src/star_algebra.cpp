#include "ffl/star_algebra.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "ffl/errors.hpp"
#include "ffl/spectral.hpp"
#include "ffl/svd.hpp"

namespace ffl {

namespace {

Projection projection_from_columns(const DenseMatrix& m, std::size_t count) {
    if (count == 0) return Projection::zero(m.dim());
    const Basis b = matrix_columns(m, 0, count);
    return Projection::from_matrix(projection_onto(b));
}

}  // namespace

Projection left_support(const DenseMatrix& x) {
    const SvdResult s = svd(x);
    return projection_from_columns(s.u, s.rank());
}

Projection right_support(const DenseMatrix& x) {
    const SvdResult s = svd(x);
    return projection_from_columns(s.v, s.rank());
}

Basis range_basis(const DenseMatrix& x) {
    const SvdResult s = svd(x);
    return matrix_columns(s.u, 0, s.rank());
}

PolarDecomposition polar_decompose(const DenseMatrix& x) {
    const SvdResult s = svd(x);
    const std::size_t n = x.dim();
    const std::size_t r = s.rank();

    // v = U_r V_r*; m = V Sigma V* keeps the full spectrum, v kills the tail.
    DenseMatrix v(n);
    for (std::size_t k = 0; k < r; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) v(i, j) += s.u(i, k) * std::conj(s.v(j, k));

    DenseMatrix m(n);
    for (std::size_t k = 0; k < n; ++k) {
        if (s.sigma[k] == 0.0) continue;
        for (std::size_t i = 0; i < n; ++i) {
            const cplx vik = s.v(i, k) * s.sigma[k];
            for (std::size_t j = 0; j < n; ++j) m(i, j) += vik * std::conj(s.v(j, k));
        }
    }

    Projection left = projection_from_columns(s.u, r);
    Projection right = projection_from_columns(s.v, r);
    return {PartialIsometry::from_parts(std::move(v), std::move(left), std::move(right)),
            std::move(m)};
}

InvertibleApproximation approximate_invertible(const DenseMatrix& x, double epsilon) {
    if (!(epsilon > 0.0)) throw EpsilonNonpositive("approximate_invertible: eps must be positive");
    const SvdResult s = svd(x);
    const std::size_t n = x.dim();
    const std::size_t r = s.rank();

    // u = v + w where v is the polar part and w maps the kernel of x onto the
    // cokernel, pairing the trailing singular columns in index order. This is
    // exactly U V* over all columns.
    DenseMatrix u(n);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) u(i, j) += s.u(i, k) * std::conj(s.v(j, k));
    (void)r;

    // m + eps with m = V Sigma V*.
    DenseMatrix shifted(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double val = s.sigma[k] + epsilon;
        for (std::size_t i = 0; i < n; ++i) {
            const cplx vik = s.v(i, k) * val;
            for (std::size_t j = 0; j < n; ++j) shifted(i, j) += vik * std::conj(s.v(j, k));
        }
    }
    return {u * shifted, std::move(u)};
}

Rational dimension(const Projection& p) {
    return Rational(static_cast<std::int64_t>(p.rank()), static_cast<std::int64_t>(p.dim()));
}

std::optional<DenseMatrix> mvn_equivalent(const Projection& p, const Projection& q) {
    if (p.dim() != q.dim()) throw DimensionMismatch("mvn_equivalent: ambient dimensions differ");
    if (p.rank() != q.rank()) return std::nullopt;
    if (p.rank() == 0) return DenseMatrix::zero(p.dim());
    const Basis bp = range_basis(p.matrix());
    const Basis bq = range_basis(q.matrix());
    // x = sum_i q_i p_i*: then x*x = p and x x* = q.
    return outer_sum(bq, bp);
}

Projection lattice_join(const Projection& p, const Projection& q) {
    if (p.dim() != q.dim()) throw DimensionMismatch("lattice_join: ambient dimensions differ");
    // range(p) + range(q) = range(p + q) since both summands are PSD.
    return left_support(p.matrix() + q.matrix());
}

Projection lattice_meet(const Projection& p, const Projection& q) {
    if (p.dim() != q.dim()) throw DimensionMismatch("lattice_meet: ambient dimensions differ");
    return lattice_join(p.complement(), q.complement()).complement();
}

Projection random_projection(std::size_t n, std::size_t rank, Rng& rng) {
    if (rank > n) throw BadRank("random_projection: rank exceeds dimension");
    if (rank == 0) return Projection::zero(n);
    if (rank == n) return Projection::identity(n);
    const DenseMatrix u = random_unitary(n, rng);
    return Projection::from_matrix(projection_onto(matrix_columns(u, 0, rank)));
}

Idempotent random_idempotent(std::size_t n, std::size_t rank, double kappa, Rng& rng) {
    if (rank > n) throw BadRank("random_idempotent: rank " + std::to_string(rank) +
                                " exceeds dimension " + std::to_string(n));
    if (kappa < 1.0) throw BadRank("random_idempotent: kappa must be >= 1");
    if (rank == 0) return Idempotent::from_matrix(DenseMatrix::zero(n));
    if (rank == n) return Idempotent::from_matrix(DenseMatrix::identity(n));

    const DenseMatrix q1 = random_unitary(n, rng);
    const DenseMatrix q2 = random_unitary(n, rng);
    std::vector<double> sig(n), inv(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = n > 1 ? static_cast<double>(i) / static_cast<double>(n - 1) : 0.0;
        sig[i] = std::pow(kappa, -t);
        inv[i] = 1.0 / sig[i];
    }
    const DenseMatrix g = q1 * DenseMatrix::diagonal(sig) * q2.adjoint();
    const DenseMatrix ginv = q2 * DenseMatrix::diagonal(inv) * q1.adjoint();

    DenseMatrix pk(n);
    for (std::size_t i = 0; i < rank; ++i) pk(i, i) = 1.0;
    return Idempotent::from_matrix(g * pk * ginv);
}

}  // namespace ffl

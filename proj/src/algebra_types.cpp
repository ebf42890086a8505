#include "ffl/algebra_types.hpp"

#include <cmath>
#include <string>

#include "ffl/errors.hpp"
#include "ffl/svd.hpp"

namespace ffl {

Projection Projection::from_matrix(const DenseMatrix& m, double tol) {
    if (!m.is_finite()) throw ValidationError("Projection: non-finite entries");
    DenseMatrix p = m.hermitian_part();  // re-symmetrize fp-dirty inputs
    {
        const double asym = (m - p).frobenius_norm();
        if (asym > tol) throw ValidationError("Projection: not self-adjoint, defect " + std::to_string(asym));
    }
    const double idem = (p * p - p).frobenius_norm();
    if (idem > tol) throw ValidationError("Projection: p^2 != p, defect " + std::to_string(idem));
    const std::size_t r = numerical_rank(p);
    const double tr = p.trace().real();
    if (std::abs(tr - static_cast<double>(r)) > std::max(tol, 1e-6))
        throw ValidationError("Projection: trace " + std::to_string(tr) + " does not match rank " +
                              std::to_string(r));
    return Projection(std::move(p), r);
}

Projection Projection::identity(std::size_t n) { return Projection(DenseMatrix::identity(n), n); }

Projection Projection::zero(std::size_t n) { return Projection(DenseMatrix::zero(n), 0); }

Projection Projection::complement() const {
    return Projection(DenseMatrix::identity(dim()) - m_, dim() - rank_);
}

Idempotent Idempotent::from_matrix(const DenseMatrix& m, double tol) {
    if (!m.is_finite()) throw ValidationError("Idempotent: non-finite entries");
    const double scale = 1.0 + m.frobenius_norm() * m.frobenius_norm();
    const double defect = (m * m - m).frobenius_norm();
    if (defect > tol * scale)
        throw ValidationError("Idempotent: e^2 != e, defect " + std::to_string(defect));
    return Idempotent(m);
}

PartialIsometry::PartialIsometry(DenseMatrix v, Projection left, Projection right)
    : v_(std::move(v)), left_(std::move(left)), right_(std::move(right)) {}

PartialIsometry PartialIsometry::from_parts(DenseMatrix v, Projection left, Projection right,
                                            double tol) {
    if (v.dim() != left.dim() || v.dim() != right.dim())
        throw DimensionMismatch("PartialIsometry: support dimensions differ from v");
    const double left_defect = (v * v.adjoint() - left.matrix()).frobenius_norm();
    const double right_defect = (v.adjoint() * v - right.matrix()).frobenius_norm();
    const double triple_defect = (v * v.adjoint() * v - v).frobenius_norm();
    if (left_defect > tol || right_defect > tol || triple_defect > tol)
        throw ValidationError("PartialIsometry: support identities violated");
    return PartialIsometry(std::move(v), std::move(left), std::move(right));
}

}  // namespace ffl

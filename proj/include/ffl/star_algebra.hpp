#pragma once

#include <optional>

#include "ffl/algebra_types.hpp"
#include "ffl/dense_matrix.hpp"
#include "ffl/rational.hpp"
#include "ffl/rng.hpp"

namespace ffl {

/// Smallest projection p with p x = x: the projection onto the column space,
/// built from the singular subspaces above the rank cutoff.
Projection left_support(const DenseMatrix& x);
/// Smallest projection q with x q = x.
Projection right_support(const DenseMatrix& x);

/// Orthonormal basis of the column space of x (empty for the zero matrix).
Basis range_basis(const DenseMatrix& x);

struct PolarDecomposition {
    PartialIsometry isometry;     // the unique v with x = v m and matching supports
    DenseMatrix positive_part;    // (x*x)^{1/2}
};

/// x = v (x*x)^{1/2} with v v* = L(x), v* v = R(x).
PolarDecomposition polar_decompose(const DenseMatrix& x);

struct InvertibleApproximation {
    DenseMatrix invertible;  // y = u ((x*x)^{1/2} + eps)
    DenseMatrix unitary;     // u = v + w, w matching the kernel complements
};

/// Invertible element at operator-norm distance exactly eps from x; the
/// kernel-to-kernel partial isometry w is taken in canonical index order.
InvertibleApproximation approximate_invertible(const DenseMatrix& x, double epsilon);

/// rank(p)/n as an exact rational: the unique dimension function on M_n.
Rational dimension(const Projection& p);

/// Murray-von Neumann equivalence: a witness x with x*x = p and xx* = q when
/// the ranks agree, std::nullopt otherwise.
std::optional<DenseMatrix> mvn_equivalent(const Projection& p, const Projection& q);

/// Projection onto range(p) + range(q).
Projection lattice_join(const Projection& p, const Projection& q);
/// Projection onto range(p) ∩ range(q), computed as I - ((I-p) v (I-q)).
Projection lattice_meet(const Projection& p, const Projection& q);

/// p = U_k U_k* for the first k columns of a Haar-like unitary.
Projection random_projection(std::size_t n, std::size_t rank, Rng& rng);

/// e = g P_k g^{-1} with P_k the diagonal rank-k projection and cond(g) <= kappa.
Idempotent random_idempotent(std::size_t n, std::size_t rank, double kappa, Rng& rng);

}  // namespace ffl

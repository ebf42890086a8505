#pragma once

#include <cstddef>

#include "ffl/dense_matrix.hpp"

namespace ffl {

/// Absolute tolerance on the defining identities accepted by the validated
/// wrappers below; inputs are re-symmetrized before validation where that is
/// meaningful.
inline constexpr double kValidationTol = 1e-8;

/// p = p* = p^2 within tolerance; stores the integer rank alongside.
class Projection {
  public:
    Projection() = default;  // empty placeholder, dimension 0

    static Projection from_matrix(const DenseMatrix& m, double tol = kValidationTol);
    static Projection identity(std::size_t n);
    static Projection zero(std::size_t n);

    const DenseMatrix& matrix() const { return m_; }
    std::size_t rank() const { return rank_; }
    std::size_t dim() const { return m_.dim(); }

    Projection complement() const;

  private:
    Projection(DenseMatrix m, std::size_t rank) : m_(std::move(m)), rank_(rank) {}
    DenseMatrix m_;
    std::size_t rank_ = 0;
};

/// e = e^2 within tolerance (not necessarily self-adjoint).
class Idempotent {
  public:
    static Idempotent from_matrix(const DenseMatrix& m, double tol = kValidationTol);

    const DenseMatrix& matrix() const { return m_; }
    std::size_t dim() const { return m_.dim(); }

  private:
    explicit Idempotent(DenseMatrix m) : m_(std::move(m)) {}
    DenseMatrix m_;
};

/// v with v v* v = v, carrying its support projections as witnesses.
class PartialIsometry {
  public:
    static PartialIsometry from_parts(DenseMatrix v, Projection left, Projection right,
                                      double tol = kValidationTol);

    const DenseMatrix& matrix() const { return v_; }
    const Projection& left() const { return left_; }
    const Projection& right() const { return right_; }

  private:
    PartialIsometry(DenseMatrix v, Projection left, Projection right);
    DenseMatrix v_;
    Projection left_;
    Projection right_;
};

}  // namespace ffl

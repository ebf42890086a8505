#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace ffl {

using cplx = std::complex<double>;

/// Square complex matrix, the carrier of all algebra elements.
/// Value semantics throughout; row-major storage.
class DenseMatrix {
  public:
    DenseMatrix() = default;
    explicit DenseMatrix(std::size_t n) : n_(n), data_(n * n, cplx(0.0, 0.0)) {}
    DenseMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

    static DenseMatrix identity(std::size_t n);
    static DenseMatrix zero(std::size_t n) { return DenseMatrix(n); }
    static DenseMatrix diagonal(std::span<const double> d);
    static DenseMatrix diagonal(std::span<const cplx> d);

    std::size_t dim() const { return n_; }

    cplx& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

    DenseMatrix adjoint() const;

    /// (x + x*)/2
    DenseMatrix hermitian_part() const;
    /// (x - x*)/(2i); Hermitian by construction.
    DenseMatrix antihermitian_part() const;

    cplx trace() const;
    double frobenius_norm() const;
    double max_abs() const;
    bool is_finite() const;
    bool is_hermitian(double tol) const;

    DenseMatrix& operator+=(const DenseMatrix& o);
    DenseMatrix& operator-=(const DenseMatrix& o);
    DenseMatrix& operator*=(cplx s);

    friend DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) { return a += b; }
    friend DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) { return a -= b; }
    friend DenseMatrix operator*(DenseMatrix a, cplx s) { return a *= s; }
    friend DenseMatrix operator*(cplx s, DenseMatrix a) { return a *= s; }
    friend DenseMatrix operator-(DenseMatrix a) { return a *= cplx(-1.0, 0.0); }

  private:
    std::size_t n_ = 0;
    std::vector<cplx> data_;
};

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b);

/// Rectangular column block (n x k), used internally for range bases,
/// compressions and partial-isometry witnesses. Not a first-class
/// algebra element; columns are stored as vectors.
struct Basis {
    std::size_t rows = 0;
    std::vector<std::vector<cplx>> cols;

    std::size_t count() const { return cols.size(); }
};

/// C* x C, the compression of x to the subspace spanned by c's columns.
DenseMatrix compress(const DenseMatrix& x, const Basis& c);
/// C y C*, the embedding of a compressed element back into the big algebra.
DenseMatrix expand(const DenseMatrix& y, const Basis& c);
/// C C*, the orthogonal projection onto span(c).
DenseMatrix projection_onto(const Basis& c);
/// Sum_i a_i b_i*, an n x n matrix mapping span(b) onto span(a) columnwise.
DenseMatrix outer_sum(const Basis& a, const Basis& b);
/// x applied to each column of c (columns of x*C).
Basis apply_to_basis(const DenseMatrix& x, const Basis& c);
/// Horizontal concatenation [a b] as a square matrix; requires a.count()+b.count() == rows.
DenseMatrix concat_to_square(const Basis& a, const Basis& b);

/// [[a, b], [c, d]] as a 2n x 2n matrix; all blocks must share one size.
DenseMatrix assemble_blocks(const DenseMatrix& a, const DenseMatrix& b, const DenseMatrix& c,
                            const DenseMatrix& d);
/// Block (bi, bj) of an even-dimensional matrix viewed as 2x2 blocks.
DenseMatrix extract_block(const DenseMatrix& m, std::size_t bi, std::size_t bj);

/// Matrix text fixture format: first line "n", then n lines of n
/// whitespace-separated "re+imj" tokens.
std::string write_matrix_text(const DenseMatrix& x);
DenseMatrix read_matrix_text(std::istream& in);
DenseMatrix read_matrix_file(const std::string& path);

}  // namespace ffl

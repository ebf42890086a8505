#include "ffl/dense_matrix.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>

#include "ffl/errors.hpp"

namespace ffl {

DenseMatrix::DenseMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
    n_ = rows.size();
    data_.assign(n_ * n_, cplx(0.0, 0.0));
    std::size_t i = 0;
    for (const auto& row : rows) {
        if (row.size() != n_) throw DimensionMismatch("DenseMatrix initializer is not square");
        std::size_t j = 0;
        for (const cplx& v : row) data_[i * n_ + j++] = v;
        ++i;
    }
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

DenseMatrix DenseMatrix::diagonal(std::span<const double> d) {
    DenseMatrix m(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

DenseMatrix DenseMatrix::diagonal(std::span<const cplx> d) {
    DenseMatrix m(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

DenseMatrix DenseMatrix::adjoint() const {
    DenseMatrix r(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
}

DenseMatrix DenseMatrix::hermitian_part() const {
    DenseMatrix r(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
            r(i, j) = 0.5 * ((*this)(i, j) + std::conj((*this)(j, i)));
    return r;
}

DenseMatrix DenseMatrix::antihermitian_part() const {
    DenseMatrix r(n_);
    const cplx half_over_i(0.0, -0.5);  // 1/(2i)
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
            r(i, j) = half_over_i * ((*this)(i, j) - std::conj((*this)(j, i)));
    return r;
}

cplx DenseMatrix::trace() const {
    cplx t(0.0, 0.0);
    for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
}

double DenseMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const cplx& v : data_) s += std::norm(v);
    return std::sqrt(s);
}

double DenseMatrix::max_abs() const {
    double m = 0.0;
    for (const cplx& v : data_) m = std::max(m, std::abs(v));
    return m;
}

bool DenseMatrix::is_finite() const {
    for (const cplx& v : data_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

bool DenseMatrix::is_hermitian(double tol) const {
    double off = 0.0;
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) off += std::norm((*this)(i, j) - std::conj((*this)(j, i)));
    return std::sqrt(off) <= tol * std::max(1.0, frobenius_norm());
}

DenseMatrix& DenseMatrix::operator+=(const DenseMatrix& o) {
    if (o.n_ != n_) throw DimensionMismatch("matrix addition: size mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
}

DenseMatrix& DenseMatrix::operator-=(const DenseMatrix& o) {
    if (o.n_ != n_) throw DimensionMismatch("matrix subtraction: size mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
}

DenseMatrix& DenseMatrix::operator*=(cplx s) {
    for (cplx& v : data_) v *= s;
    return *this;
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    const std::size_t n = a.dim();
    if (b.dim() != n) throw DimensionMismatch("matrix product: size mismatch");
    DenseMatrix r(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx(0.0, 0.0)) continue;
            for (std::size_t j = 0; j < n; ++j) r(i, j) += aik * b(k, j);
        }
    }
    return r;
}

DenseMatrix compress(const DenseMatrix& x, const Basis& c) {
    const std::size_t n = x.dim();
    const std::size_t k = c.count();
    if (c.rows != n) throw DimensionMismatch("compress: basis row count mismatch");
    // y = C* x C
    DenseMatrix y(k);
    std::vector<std::vector<cplx>> xc(k, std::vector<cplx>(n, cplx(0.0, 0.0)));
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < n; ++i) {
            cplx s(0.0, 0.0);
            for (std::size_t l = 0; l < n; ++l) s += x(i, l) * c.cols[j][l];
            xc[j][i] = s;
        }
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            cplx s(0.0, 0.0);
            for (std::size_t l = 0; l < n; ++l) s += std::conj(c.cols[i][l]) * xc[j][l];
            y(i, j) = s;
        }
    return y;
}

DenseMatrix expand(const DenseMatrix& y, const Basis& c) {
    const std::size_t k = c.count();
    if (y.dim() != k) throw DimensionMismatch("expand: size mismatch");
    const std::size_t n = c.rows;
    DenseMatrix x(n);
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) {
            const cplx v = y(a, b);
            if (v == cplx(0.0, 0.0)) continue;
            for (std::size_t i = 0; i < n; ++i) {
                const cplx ci = c.cols[a][i] * v;
                for (std::size_t j = 0; j < n; ++j) x(i, j) += ci * std::conj(c.cols[b][j]);
            }
        }
    return x;
}

DenseMatrix projection_onto(const Basis& c) {
    DenseMatrix p(c.rows);
    for (const auto& col : c.cols)
        for (std::size_t i = 0; i < c.rows; ++i)
            for (std::size_t j = 0; j < c.rows; ++j) p(i, j) += col[i] * std::conj(col[j]);
    return p;
}

DenseMatrix outer_sum(const Basis& a, const Basis& b) {
    if (a.count() != b.count() || a.rows != b.rows)
        throw DimensionMismatch("outer_sum: basis shape mismatch");
    DenseMatrix x(a.rows);
    for (std::size_t k = 0; k < a.count(); ++k)
        for (std::size_t i = 0; i < a.rows; ++i)
            for (std::size_t j = 0; j < a.rows; ++j) x(i, j) += a.cols[k][i] * std::conj(b.cols[k][j]);
    return x;
}

Basis apply_to_basis(const DenseMatrix& x, const Basis& c) {
    if (x.dim() != c.rows) throw DimensionMismatch("apply_to_basis: size mismatch");
    Basis r;
    r.rows = c.rows;
    r.cols.reserve(c.count());
    for (const auto& col : c.cols) {
        std::vector<cplx> out(c.rows, cplx(0.0, 0.0));
        for (std::size_t i = 0; i < c.rows; ++i) {
            cplx s(0.0, 0.0);
            for (std::size_t l = 0; l < c.rows; ++l) s += x(i, l) * col[l];
            out[i] = s;
        }
        r.cols.push_back(std::move(out));
    }
    return r;
}

DenseMatrix concat_to_square(const Basis& a, const Basis& b) {
    if (a.rows != b.rows || a.count() + b.count() != a.rows)
        throw DimensionMismatch("concat_to_square: column count must equal row count");
    DenseMatrix m(a.rows);
    for (std::size_t j = 0; j < a.count(); ++j)
        for (std::size_t i = 0; i < a.rows; ++i) m(i, j) = a.cols[j][i];
    for (std::size_t j = 0; j < b.count(); ++j)
        for (std::size_t i = 0; i < a.rows; ++i) m(i, a.count() + j) = b.cols[j][i];
    return m;
}

DenseMatrix assemble_blocks(const DenseMatrix& a, const DenseMatrix& b, const DenseMatrix& c,
                            const DenseMatrix& d) {
    const std::size_t m = a.dim();
    if (b.dim() != m || c.dim() != m || d.dim() != m)
        throw DimensionMismatch("assemble_blocks: blocks must share one size");
    DenseMatrix r(2 * m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            r(i, j) = a(i, j);
            r(i, m + j) = b(i, j);
            r(m + i, j) = c(i, j);
            r(m + i, m + j) = d(i, j);
        }
    return r;
}

DenseMatrix extract_block(const DenseMatrix& m, std::size_t bi, std::size_t bj) {
    if (m.dim() % 2 != 0) throw DimensionMismatch("extract_block: odd dimension");
    const std::size_t h = m.dim() / 2;
    DenseMatrix r(h);
    for (std::size_t i = 0; i < h; ++i)
        for (std::size_t j = 0; j < h; ++j) r(i, j) = m(bi * h + i, bj * h + j);
    return r;
}

namespace {

std::string format_entry(const cplx& v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g%+.17gj", v.real(), v.imag());
    return buf;
}

cplx parse_entry(const std::string& tok) {
    if (tok.empty() || tok.back() != 'j')
        throw IoFailure("matrix entry must end in 'j': \"" + tok + "\"");
    const std::string body = tok.substr(0, tok.size() - 1);
    // Split at the last '+'/'-' that is not an exponent sign and not leading.
    std::size_t split = std::string::npos;
    for (std::size_t i = body.size(); i-- > 1;) {
        const char ch = body[i];
        if ((ch == '+' || ch == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    if (split == std::string::npos)
        throw IoFailure("matrix entry must look like re+imj: \"" + tok + "\"");
    try {
        const double re = std::stod(body.substr(0, split));
        const double im = std::stod(body.substr(split));
        return {re, im};
    } catch (const std::exception&) {
        throw IoFailure("cannot parse matrix entry \"" + tok + "\"");
    }
}

}  // namespace

std::string write_matrix_text(const DenseMatrix& x) {
    std::ostringstream out;
    out << x.dim() << "\n";
    for (std::size_t i = 0; i < x.dim(); ++i) {
        for (std::size_t j = 0; j < x.dim(); ++j) {
            if (j) out << ' ';
            out << format_entry(x(i, j));
        }
        out << "\n";
    }
    return out.str();
}

DenseMatrix read_matrix_text(std::istream& in) {
    long long n = 0;
    if (!(in >> n) || n <= 0) throw IoFailure("matrix fixture: bad dimension line");
    DenseMatrix x(static_cast<std::size_t>(n));
    for (long long i = 0; i < n; ++i)
        for (long long j = 0; j < n; ++j) {
            std::string tok;
            if (!(in >> tok)) throw IoFailure("matrix fixture: truncated entries");
            x(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = parse_entry(tok);
        }
    if (!x.is_finite()) throw IoFailure("matrix fixture: non-finite entries");
    return x;
}

DenseMatrix read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoFailure("cannot open matrix fixture " + path);
    return read_matrix_text(in);
}

}  // namespace ffl

#include <doctest.h>

#include <cmath>
#include <sstream>

#include "ffl/dense_matrix.hpp"
#include "ffl/errors.hpp"
#include "ffl/rng.hpp"
#include "ffl/spectral.hpp"
#include "ffl/svd.hpp"
#include "helpers.hpp"

using namespace ffl;
using ffl::test::diag2;
using ffl::test::dist;

TEST_SUITE_BEGIN("matrix-core");

TEST_CASE("adjoint is an exact involution") {
    Rng rng(99);
    const DenseMatrix x = random_gaussian(5, rng);
    const DenseMatrix xss = x.adjoint().adjoint();
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) CHECK(xss(i, j) == x(i, j));
}

TEST_CASE("hermitian_eigen: diagonal input") {
    const SpectralDecomposition sd = hermitian_eigen(diag2(3.0, 1.0));
    REQUIRE(sd.eigenvalues.size() == 2);
    CHECK(sd.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(sd.eigenvalues[1] == doctest::Approx(3.0).epsilon(1e-14));
    // eigenvectors are a permuted identity
    CHECK(std::abs(sd.eigenvectors(1, 0)) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(sd.eigenvectors(0, 1)) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("hermitian_eigen: symmetric 2x2 from its characteristic polynomial") {
    const DenseMatrix h = {{0.0, 1.0}, {1.0, 0.0}};
    const SpectralDecomposition sd = hermitian_eigen(h);
    CHECK(sd.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(sd.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("hermitian_eigen: reconstruction residual on random input") {
    Rng rng(1);
    const DenseMatrix h = random_hermitian(8, rng);
    const SpectralDecomposition sd = hermitian_eigen(h);
    CHECK(dist(sd.reconstruct(), h) <= 1e-12 * h.frobenius_norm());
    // orthonormality of the eigenvector matrix
    const DenseMatrix vtv = sd.eigenvectors.adjoint() * sd.eigenvectors;
    CHECK(dist(vtv, DenseMatrix::identity(8)) <= 1e-13);
    for (std::size_t i = 1; i < sd.eigenvalues.size(); ++i)
        CHECK(sd.eigenvalues[i - 1] <= sd.eigenvalues[i]);
}

TEST_CASE("hermitian_eigen rejects non-Hermitian input") {
    const DenseMatrix x = {{0.0, 1.0}, {0.0, 0.0}};
    CHECK_THROWS_AS(hermitian_eigen(x), NotHermitian);
}

TEST_CASE("apply_spectral_function: identity map") {
    Rng rng(7);
    const DenseMatrix h = random_hermitian(6, rng);
    const DenseMatrix same = apply_spectral_function(h, [](double t) { return t; });
    CHECK(dist(same, h) <= 1e-12 * (1.0 + h.frobenius_norm()));
}

TEST_CASE("apply_spectral_function: sqrt on a diagonal matrix") {
    const DenseMatrix r = apply_spectral_function(diag2(4.0, 9.0),
                                                  [](double t) { return std::sqrt(t); });
    CHECK(dist(r, diag2(2.0, 3.0)) <= 1e-13);
}

TEST_CASE("apply_spectral_function: f round-trips w back to xx*") {
    // w solves f(w) = xx* with f(t) = (1-t)^2/t; applying f to w must return xx*.
    Rng rng(2);
    const DenseMatrix x = random_gaussian(4, rng) + 3.0 * DenseMatrix::identity(4);
    const DenseMatrix gram = x * x.adjoint();
    const SpectralDecomposition sd = hermitian_eigen(gram);
    REQUIRE(sd.eigenvalues.front() > 0.0);
    const DenseMatrix w = sd.assemble([](double s) {
        const double root = std::sqrt(s * (s + 4.0));
        return 2.0 / ((2.0 + s) + root);
    });
    const DenseMatrix back = apply_spectral_function(
        w, [](double t) { return (1.0 - t) * (1.0 - t) / t; },
        [](double t) { return t > 0.0 && t < 1.0; });
    CHECK(dist(back, gram) <= 1e-10 * gram.frobenius_norm());
}

TEST_CASE("apply_spectral_function: domain violation is detected") {
    CHECK_THROWS_AS(apply_spectral_function(diag2(1.0, -1.0),
                                            [](double t) { return std::sqrt(t); },
                                            [](double t) { return t >= 0.0; }),
                    DomainViolation);
}

TEST_CASE("apply_spectral_function composes") {
    Rng rng(12);
    for (int rep = 0; rep < 4; ++rep) {
        const DenseMatrix h0 = random_hermitian(5, rng);
        // shift to positive spectrum so sqrt is domain-valid
        const DenseMatrix h = h0 * h0 + DenseMatrix::identity(5);
        auto g = [](double t) { return t * t + 1.0; };
        auto f = [](double t) { return std::sqrt(t); };
        const DenseMatrix lhs =
            apply_spectral_function(h, [&](double t) { return f(g(t)); });
        const DenseMatrix rhs = apply_spectral_function(apply_spectral_function(h, g), f);
        CHECK(dist(lhs, rhs) <= 1e-10 * (1.0 + lhs.frobenius_norm()));
    }
}

TEST_CASE("svd: zero matrix") {
    const SvdResult s = svd(DenseMatrix::zero(3));
    for (double sig : s.sigma) CHECK(sig == 0.0);
    CHECK(s.rank() == 0);
}

TEST_CASE("svd: diagonal with a zero") {
    const SvdResult s = svd(diag2(0.0, 2.0));
    CHECK(s.sigma[0] == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(s.sigma[1] <= 1e-14);
}

TEST_CASE("svd: reconstruction residual on random input") {
    Rng rng(3);
    const DenseMatrix x = random_gaussian(6, rng);
    const SvdResult s = svd(x);
    DenseMatrix recon(6);
    for (std::size_t k = 0; k < 6; ++k)
        for (std::size_t i = 0; i < 6; ++i)
            for (std::size_t j = 0; j < 6; ++j)
                recon(i, j) += s.u(i, k) * s.sigma[k] * std::conj(s.v(j, k));
    CHECK(dist(recon, x) <= 1e-12 * x.frobenius_norm());
    CHECK(dist(s.u.adjoint() * s.u, DenseMatrix::identity(6)) <= 1e-12);
    CHECK(dist(s.v.adjoint() * s.v, DenseMatrix::identity(6)) <= 1e-12);
    for (std::size_t i = 1; i < 6; ++i) CHECK(s.sigma[i - 1] >= s.sigma[i]);
}

TEST_CASE("svd of a projection has singular values in {0,1}") {
    Rng rng(21);
    const DenseMatrix u = random_unitary(5, rng);
    DenseMatrix p(5);
    for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = 0; j < 5; ++j) p(i, j) += u(i, k) * std::conj(u(j, k));
    const SvdResult s = svd(p);
    for (double sig : s.sigma) {
        const double gap = std::min(std::abs(sig - 1.0), std::abs(sig));
        CHECK(gap <= 1e-10);
    }
}

TEST_CASE("numerical_rank examples") {
    CHECK(numerical_rank(DenseMatrix::identity(5)) == 5);

    // rank-1 outer product in M_4
    DenseMatrix outer(4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            outer(i, j) = cplx(1.0 + static_cast<double>(i), 0.0) *
                          cplx(2.0 - static_cast<double>(j), 0.0);
    CHECK(numerical_rank(outer) == 1);

    const DenseMatrix e = {{1.0, 0.0}, {1.0, 0.0}};
    const SvdResult s = svd(e);
    CHECK(s.sigma[0] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    CHECK(s.sigma[1] <= 1e-14);
    CHECK(numerical_rank(e) == 1);

    CHECK(numerical_rank(DenseMatrix::zero(4)) == 0);
    CHECK_THROWS_AS(numerical_rank(e, 1.5), std::invalid_argument);
}

TEST_CASE("numerical_rank is invariant under unitary factors") {
    Rng rng(31);
    for (int rep = 0; rep < 6; ++rep) {
        const std::size_t n = 4 + (rep % 3);
        const std::size_t k = 1 + rng.next_u64() % n;
        DenseMatrix pk(n);
        for (std::size_t i = 0; i < k; ++i) pk(i, i) = 1.0;
        const DenseMatrix x = random_gaussian(n, rng) * pk * random_gaussian(n, rng);
        const DenseMatrix u = random_unitary(n, rng);
        const DenseMatrix v = random_unitary(n, rng);
        CHECK(numerical_rank(u * x * v) == numerical_rank(x));
    }
}

TEST_CASE("matrix text fixture round-trips") {
    Rng rng(77);
    const DenseMatrix x = random_gaussian(3, rng);
    std::istringstream in(write_matrix_text(x));
    const DenseMatrix back = read_matrix_text(in);
    CHECK(dist(back, x) == 0.0);

    std::istringstream bad("2\n1+0j 2+0j\n3+0j nope\n");
    CHECK_THROWS_AS(read_matrix_text(bad), IoFailure);
}

TEST_SUITE_END();

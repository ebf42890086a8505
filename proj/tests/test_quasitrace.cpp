#include <doctest.h>

#include <cmath>
#include <vector>

#include "ffl/errors.hpp"
#include "ffl/quasitrace.hpp"
#include "ffl/rng.hpp"
#include "ffl/star_algebra.hpp"
#include "ffl/svd.hpp"
#include "helpers.hpp"

using namespace ffl;
using ffl::test::diag2;
using ffl::test::dist;

TEST_SUITE_BEGIN("quasi-trace");

TEST_CASE("finite_spectrum_value: identity, scaled projection, signed combination") {
    const FiniteSpectrumElement one =
        FiniteSpectrumElement::from_parts({1.0}, {Projection::identity(3)});
    CHECK(finite_spectrum_value(one) == doctest::Approx(1.0).epsilon(1e-15));

    Rng rng(61);
    const Projection p2 = random_projection(2, 1, rng);
    const FiniteSpectrumElement scaled = FiniteSpectrumElement::from_parts({3.0}, {p2});
    CHECK(finite_spectrum_value(scaled) == doctest::Approx(1.5).epsilon(1e-13));

    // 2p - q with p, q orthogonal rank-1 pieces of M_4: 2/4 - 1/4 = 1/4
    const DenseMatrix u = random_unitary(4, rng);
    const Projection p = Projection::from_matrix(projection_onto(matrix_columns(u, 0, 1)));
    const Projection q = Projection::from_matrix(projection_onto(matrix_columns(u, 1, 1)));
    const FiniteSpectrumElement combo = FiniteSpectrumElement::from_parts({2.0, -1.0}, {p, q});
    CHECK(finite_spectrum_value(combo) == doctest::Approx(0.25).epsilon(1e-13));
}

TEST_CASE("FiniteSpectrumElement rejects overlapping projections") {
    const Projection p = Projection::from_matrix(diag2(1.0, 0.0));
    CHECK_THROWS_AS(FiniteSpectrumElement::from_parts({1.0, 1.0}, {p, p}), ValidationError);
}

TEST_CASE("bin_approximation: on-grid spectrum reproduces exactly") {
    const double d[] = {0.5, -1.25, 3.0};
    const DenseMatrix a = DenseMatrix::diagonal(d);
    const FiniteSpectrumElement fse = bin_approximation(a, 2);
    CHECK(dist(fse.reconstruct(), a) == 0.0);
}

TEST_CASE("bin_approximation: two-point spectrum at level 1") {
    const DenseMatrix a = diag2(0.3, 0.7);
    const FiniteSpectrumElement fse = bin_approximation(a, 1);
    REQUIRE(fse.coefficients().size() == 2);
    CHECK(fse.coefficients()[0] == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(fse.coefficients()[1] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(op_norm(fse.reconstruct() - a) <= 0.5);
    CHECK(op_norm(fse.reconstruct() - a) == doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("bin_approximation: uniform bound at level 20") {
    Rng rng(5);
    const DenseMatrix a = random_hermitian(8, rng);
    const FiniteSpectrumElement fse = bin_approximation(a, 20);
    CHECK(op_norm(fse.reconstruct() - a) <= std::ldexp(1.0, -20));
    // pairwise orthogonality of the bins
    for (std::size_t i = 0; i < fse.projections().size(); ++i)
        for (std::size_t j = i + 1; j < fse.projections().size(); ++j)
            CHECK((fse.projections()[i].matrix() * fse.projections()[j].matrix())
                      .frobenius_norm() <= 1e-10);
}

TEST_CASE("quasi_trace_hermitian: identity normalizes to one") {
    CHECK(quasi_trace_hermitian(DenseMatrix::identity(5)) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("quasi trace restricted to projections is the dimension") {
    Rng rng(67);
    for (std::size_t n = 2; n <= 6; ++n) {
        const std::size_t k = rng.next_u64() % (n + 1);
        const Projection p = random_projection(n, k, rng);
        const double q = quasi_trace_hermitian(p.matrix());
        const double d = dimension(p).to_double();
        CHECK(std::abs(q - d) <= 1e-9);
        // rational equality after rounding at 1e-9
        const double rounded = std::round(q * static_cast<double>(n)) / static_cast<double>(n);
        CHECK(rounded == doctest::Approx(d).epsilon(1e-15));
    }
}

TEST_CASE("quasi_trace_hermitian agrees with the normalized trace") {
    Rng rng(4);
    const DenseMatrix a = random_hermitian(6, rng);
    CHECK(std::abs(quasi_trace_hermitian(a) - a.trace().real() / 6.0) <= 1e-9);
}

TEST_CASE("quasi_trace: purely imaginary identity") {
    const DenseMatrix x = cplx(0.0, 1.0) * DenseMatrix::identity(3);
    const QuasiTraceValue q = quasi_trace(x);
    CHECK(std::abs(q.value - cplx(0.0, 1.0)) <= 1e-12);
    CHECK(q.real_part == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("quasi_trace of the standard idempotent is 1/2") {
    const DenseMatrix e = {{1.0, 0.0}, {1.0, 0.0}};
    CHECK(std::abs(quasi_trace(e).value - cplx(0.5, 0.0)) <= 1e-9);
}

TEST_CASE("quasi_trace agrees with the normalized trace on random input") {
    Rng rng(9);
    const DenseMatrix x = random_gaussian(4, rng);
    CHECK(std::abs(quasi_trace(x).value - x.trace() / 4.0) <= 1e-9);
}

TEST_CASE("oracle equivalence across sizes and shapes") {
    Rng rng(71);
    for (std::size_t n : {2, 3, 5, 8}) {
        for (int rep = 0; rep < 5; ++rep) {
            DenseMatrix x = random_gaussian(n, rng);
            if (rep % 2) x = random_idempotent(n, n / 2, 20.0, rng).matrix();
            CHECK(std::abs(quasi_trace(x).value - x.trace() / static_cast<double>(n)) <= 1e-9);
        }
    }
}

TEST_CASE("monotone approximation bound for every level") {
    Rng rng(73);
    const DenseMatrix a = random_hermitian(6, rng);
    const double q = quasi_trace_hermitian(a);
    for (int m = 1; m <= 20; ++m) {
        const double dm = finite_spectrum_value(bin_approximation(a, m));
        CHECK(std::abs(dm - q) <= std::ldexp(1.0, -m) + 1e-12);
        CHECK(dm <= q + 1e-12);  // floor binning approximates from below
    }
}

TEST_CASE("positivity of Q(x*x)") {
    Rng rng(79);
    for (int rep = 0; rep < 6; ++rep) {
        const DenseMatrix x = random_gaussian(3 + rep % 4, rng);
        CHECK(quasi_trace(x.adjoint() * x).real_part >= -1e-9);
    }
}

TEST_CASE("limit is independent of the binning offset") {
    Rng rng(83);
    const DenseMatrix a = random_hermitian(5, rng);
    const double base = quasi_trace_hermitian(a);
    for (double offset : {0.37, -0.11, 1e-3}) {
        CHECK(std::abs(quasi_trace_hermitian(a, offset) - base) <= 1e-9);
    }
}

TEST_CASE("check_axioms: instances from the operation examples") {
    Rng rng(89);
    const DenseMatrix x = random_gaussian(4, rng);
    const DenseMatrix y = random_gaussian(4, rng);

    // unitary invariance
    const DenseMatrix u = random_unitary(4, rng);
    CHECK(std::abs(quasi_trace(u * y * u.adjoint()).value - quasi_trace(y).value) <= 1e-9);

    // real homogeneity with alpha = -2.5
    const DenseMatrix a = x.hermitian_part();
    CHECK(std::abs(quasi_trace(cplx(-2.5, 0.0) * a).value + 2.5 * quasi_trace(a).value) <= 1e-9);

    // tracial property and positivity
    CHECK(std::abs(quasi_trace(x.adjoint() * x).value - quasi_trace(x * x.adjoint()).value) <=
          1e-9);
    CHECK(quasi_trace(x.adjoint() * x).real_part >= -1e-9);

    const DenseMatrix sample[] = {x, y};
    for (const AxiomCheck& c : check_axioms(sample, 1e-9)) {
        INFO(c.name, " residual ", c.residual);
        CHECK(c.pass);
    }
}

TEST_SUITE_END();

#include "ffl/rng.hpp"

#include <cmath>

namespace ffl {

double Rng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
}

std::uint64_t child_seed(std::uint64_t seed, int n, int trial) {
    auto mix = [](std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    };
    std::uint64_t h = mix(seed ^ 0x8BADF00DDEADBEEFULL);
    h = mix(h ^ (0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(n + 1)));
    h = mix(h ^ (0xC2B2AE3D27D4EB4FULL * static_cast<std::uint64_t>(trial + 1)));
    return h;
}

DenseMatrix random_gaussian(std::size_t n, Rng& rng) {
    DenseMatrix g(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g(i, j) = rng.complex_normal();
    return g;
}

DenseMatrix random_unitary(std::size_t n, Rng& rng) {
    DenseMatrix g = random_gaussian(n, rng);
    DenseMatrix q(n);
    // Modified Gram-Schmidt over the columns of g, with a re-orthogonalization
    // pass; Gaussian columns are almost surely in general position.
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<cplx> w(n);
        while (true) {
            for (std::size_t i = 0; i < n; ++i) w[i] = g(i, k);
            for (int pass = 0; pass < 2; ++pass) {
                for (std::size_t j = 0; j < k; ++j) {
                    cplx dot(0.0, 0.0);
                    for (std::size_t i = 0; i < n; ++i) dot += std::conj(q(i, j)) * w[i];
                    for (std::size_t i = 0; i < n; ++i) w[i] -= dot * q(i, j);
                }
            }
            double nw = 0.0;
            for (const cplx& v : w) nw += std::norm(v);
            nw = std::sqrt(nw);
            if (nw < 1e-12) {
                // Degenerate draw; replace the source column and retry.
                for (std::size_t i = 0; i < n; ++i) g(i, k) = rng.complex_normal();
                continue;
            }
            // Phase-fix so the implied R factor has positive diagonal.
            cplx lead(0.0, 0.0);
            for (std::size_t i = 0; i < n; ++i) lead += std::conj(w[i]) * g(i, k);
            const double mag = std::abs(lead);
            const cplx phase = mag > 0.0 ? lead / mag : cplx(1.0, 0.0);
            for (std::size_t i = 0; i < n; ++i) q(i, k) = w[i] / nw * phase;
            break;
        }
    }
    return q;
}

DenseMatrix random_hermitian(std::size_t n, Rng& rng) {
    return random_gaussian(n, rng).hermitian_part();
}

DenseMatrix random_conditioned(std::size_t n, double kappa, Rng& rng) {
    DenseMatrix q1 = random_unitary(n, rng);
    DenseMatrix q2 = random_unitary(n, rng);
    std::vector<double> sig(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = n > 1 ? static_cast<double>(i) / static_cast<double>(n - 1) : 0.0;
        sig[i] = std::pow(kappa, -t);  // logspaced from 1 down to 1/kappa
    }
    DenseMatrix d = DenseMatrix::diagonal(sig);
    return q1 * d * q2.adjoint();
}

}  // namespace ffl

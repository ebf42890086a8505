#pragma once

#include <cstdint>

#include "ffl/dense_matrix.hpp"

namespace ffl {

/// Deterministic splitmix64 stream. Implemented here rather than through
/// <random> distributions so that identical seeds give identical matrices on
/// every platform and standard library.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Standard normal via Box-Muller.
    double normal();

    /// Complex standard normal, E|z|^2 = 1.
    cplx complex_normal() { return {normal() * 0x1.6a09e667f3bcdp-1, normal() * 0x1.6a09e667f3bcdp-1}; }

  private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Pure child-seed derivation for (seed, n, trial): a fixed splittable-counter
/// scheme, so trials are reproducible in isolation and independent of
/// execution order.
std::uint64_t child_seed(std::uint64_t seed, int n, int trial);

/// n x n matrix of iid complex standard normals.
DenseMatrix random_gaussian(std::size_t n, Rng& rng);

/// Haar-like random unitary from the QR of a Gaussian matrix (modified
/// Gram-Schmidt with diagonal phase fixing).
DenseMatrix random_unitary(std::size_t n, Rng& rng);

/// Random Hermitian matrix (g + g*)/2.
DenseMatrix random_hermitian(std::size_t n, Rng& rng);

/// Q1 diag(logspaced sigma in [1/kappa, 1]) Q2*; cond <= kappa.
DenseMatrix random_conditioned(std::size_t n, double kappa, Rng& rng);

}  // namespace ffl

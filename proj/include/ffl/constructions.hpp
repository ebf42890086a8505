#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "ffl/algebra_types.hpp"
#include "ffl/dense_matrix.hpp"

namespace ffl {

/// Inverse of f(t) = (1-t)^2 / t on (0,1), computed by the cancellation-safe
/// root t = 2 / ((2+s) + sqrt(s(s+4))).
double f_inverse(double s);

/// Witness for the conjugation U* [[2,x],[0,0]] U = [[1,y],[z,1]] with U
/// unitary, y = w^{1/2}, z = w^{-1/2} and xx* = (1-w)^2 w^{-1}.
struct Lemma4Certificate {
    DenseMatrix conjugating_unitary;  // 2m x 2m, blocks [[a,b],[c,d]]
    DenseMatrix w;                    // positive, spectrum in (0,1)
    DenseMatrix y;                    // w^{1/2}
    DenseMatrix z;                    // w^{-1/2}
    std::map<std::string, double> residuals;
};

/// Builds the certificate for an invertible x. The four blocks are assembled
/// from scalar kernels on the singular values of x, which keeps the computed
/// U unitary to rounding even when sigma_min is close to the invertibility
/// threshold.
Lemma4Certificate lemma4_unitary(const DenseMatrix& x);

/// The identification of M_n with 2x2 block matrices over the corner algebra
/// p M_n p, for a projection p of exactly half rank. Realized as conjugation
/// by the unitary [B, vB] where B spans range(p) and v carries p to 1-p, so
/// the map is multiplicative and adjoint-compatible by construction.
struct DoublingIso {
    Projection p;
    DenseMatrix v;             // v* v = p, v v* = 1 - p
    DenseMatrix basis_change;  // unitary W with forward(x) = W* x W
    std::size_t half_dim = 0;

    DenseMatrix forward(const DenseMatrix& x) const;
    DenseMatrix inverse(const DenseMatrix& y) const;
};

DoublingIso doubling_isomorphism(const Projection& p);

struct PipelineStep {
    double epsilon;        // ||x_k - x|| for this step
    double grading;        // ||(1-2p) a_k (1-2p) + a_k|| / (1+||a_k||)
    double q_zero_gap;     // |Q(lambda a_k)|
    double q_value_gap;    // |Q(lambda e_k) - lambda/2|
};

struct Lemma5Report {
    std::vector<PipelineStep> steps;
    cplx q_value;        // Q(lambda e_K) at the last step
    cplx lambda;
    double max_grading = 0.0;
    double max_q_zero_gap = 0.0;
    double max_q_value_gap = 0.0;
    double final_gap = 0.0;  // ||e_K - e||_F
    bool converged = false;
    double oracle_gap = 0.0;  // |q_value - lambda/2|
    double phi_form_residual = 0.0;
};

/// Halves epsilon until ||e_k - e|| <= 1e-6, checking the grading identity and
/// both quasi-trace values at every step. Requires rank(L(e)) = n/2.
Lemma5Report lemma5_pipeline(const Idempotent& e, cplx lambda, int depth = 20);

enum class Theorem6Case { zero, particular, general };

struct Theorem6Report {
    Theorem6Case reduction = Theorem6Case::zero;
    cplx q_value;             // pipeline value for Q(lambda e)
    cplx lambda;
    std::size_t support_rank = 0;
    double oracle_gap = 0.0;  // |q_value - lambda rank/n|
    bool parallelogram_ok = true;
    double compression_residual = 0.0;  // |Q0(x) - Q(x)/D(p+q0)|
    double doubling_residual = 0.0;     // |Q(x) - 2 Q2(diag(x,0))|
    Lemma5Report pipeline;
    std::map<std::string, double> residuals;
};

/// Two-case reduction for Q(lambda e) = lambda D(L(e)): compression to the
/// corner (p+q0) A (p+q0) for ranks up to n/2, doubling into M_{2n} otherwise.
Theorem6Report theorem6_verify(const Idempotent& e, cplx lambda);

struct IdempotentSplit {
    DenseMatrix t;          // 1 - e(1-p), invertible
    DenseMatrix t_inverse;  // 1 + e(1-p)
    Projection p;           // L(e)
    double reconstruction_residual;  // ||t p t^{-1} - e|| / (1+||e||)
    double inverse_residual;         // ||t t^{-1} - 1||
};

/// e = t p t^{-1} with p = L(e); t is always invertible.
IdempotentSplit idempotent_to_projection(const Idempotent& e);

struct SimilarityReport {
    cplx q_conjugated;
    cplx q_plain;
    double difference;
};

/// |Q(s e s^{-1}) - Q(e)|, both sides through the quasi-trace.
SimilarityReport similarity_invariance_check(const Idempotent& e, const DenseMatrix& s);

struct AdditivityReport {
    cplx q_sum;
    cplx q_parts;
    double difference;
};

/// Q(e1 + e2) versus Q(e1) + Q(e2) for annihilating idempotents.
AdditivityReport orthogonal_additivity_check(const Idempotent& e1, const Idempotent& e2);

struct StarCombinationReport {
    cplx q_combination;
    cplx weighted_sum;
    double difference;
};

/// Q(sum alpha_k e_k) versus sum alpha_k Q(e_k) for a mutually annihilating
/// family with real coefficients.
StarCombinationReport star_combination_check(std::span<const Idempotent> family,
                                             std::span<const double> alphas);

}  // namespace ffl

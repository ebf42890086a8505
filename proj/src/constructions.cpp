#include "ffl/constructions.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "ffl/errors.hpp"
#include "ffl/quasitrace.hpp"
#include "ffl/rational.hpp"
#include "ffl/spectral.hpp"
#include "ffl/star_algebra.hpp"
#include "ffl/svd.hpp"

namespace ffl {

double f_inverse(double s) {
    if (!(s > 0.0)) throw NonpositiveInput("f_inverse: argument must be positive");
    const double root = std::sqrt(s * (s + 4.0));
    return 2.0 / ((2.0 + s) + root);
}

namespace {

// 1 - f_inverse(s) without cancellation for small s.
double one_minus_f_inverse(double s) {
    const double root = std::sqrt(s * (s + 4.0));
    return (s + root) / ((2.0 + s) + root);
}

// L diag(d) R* for orthonormal column matrices L, R.
DenseMatrix sandwich(const DenseMatrix& l, const std::vector<double>& d, const DenseMatrix& r) {
    const std::size_t n = l.dim();
    DenseMatrix out(n);
    for (std::size_t k = 0; k < n; ++k) {
        if (d[k] == 0.0) continue;
        for (std::size_t i = 0; i < n; ++i) {
            const cplx lik = l(i, k) * d[k];
            for (std::size_t j = 0; j < n; ++j) out(i, j) += lik * std::conj(r(j, k));
        }
    }
    return out;
}

double power_sum_gap(const DenseMatrix& m1, const DenseMatrix& m2) {
    DenseMatrix a = m1, b = m2;
    double worst = 0.0;
    for (int k = 1; k <= 4; ++k) {
        const cplx t1 = a.trace();
        const cplx t2 = b.trace();
        worst = std::max(worst, std::abs(t1 - t2) / (1.0 + std::abs(t1)));
        if (k < 4) {
            a = a * m1;
            b = b * m2;
        }
    }
    return worst;
}

}  // namespace

Lemma4Certificate lemma4_unitary(const DenseMatrix& x) {
    const std::size_t m = x.dim();
    if (m == 0) throw DimensionMismatch("lemma4_unitary: empty matrix");
    const SvdResult s = svd(x);
    const double sig1 = s.sigma[0];
    const double sigmin = s.sigma[m - 1];
    if (!(sigmin > kRankCutoff * sig1) || !(sigmin > 1e-8))
        throw NotInvertible("lemma4_unitary: sigma_min " + std::to_string(sigmin) +
                            " below the invertibility threshold");

    // All four blocks are functions of the singular data of x:
    //   a = (1+w)^{-1/2} w^{1/2}         = U phi_a(Sigma) U*
    //   b = (1+w)^{-1/2}                 = U phi_b(Sigma) U*
    //   c = x^{-1}(1+w)^{-1/2}w^{-1/2}(1-w) = V phi_c(Sigma) U*
    //   d = -x^{-1}(1+w)^{-1/2}(1-w)        = V phi_d(Sigma) U*
    // with w = f^{-1}(xx*). Evaluating the kernels per singular value keeps
    // every unitarity identity exact up to rounding for any admissible x.
    std::vector<double> tv(m), yv(m), zv(m), fa(m), fb(m), fc(m), fd(m);
    double margin = 1.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double sigma = s.sigma[i];
        const double s2 = sigma * sigma;
        const double t = f_inverse(s2);
        const double omt = one_minus_f_inverse(s2);
        tv[i] = t;
        yv[i] = std::sqrt(t);
        zv[i] = 1.0 / std::sqrt(t);
        fa[i] = std::sqrt(t / (1.0 + t));
        fb[i] = 1.0 / std::sqrt(1.0 + t);
        fc[i] = omt / (sigma * std::sqrt(t * (1.0 + t)));
        fd[i] = -omt / (sigma * std::sqrt(1.0 + t));
        margin = std::min({margin, t, omt});
    }
    if (!(margin > 0.0))
        throw SpectrumEscape("lemma4_unitary: spectrum of w left (0,1)");

    const DenseMatrix a = sandwich(s.u, fa, s.u);
    const DenseMatrix b = sandwich(s.u, fb, s.u);
    const DenseMatrix c = sandwich(s.v, fc, s.u);
    const DenseMatrix d = sandwich(s.v, fd, s.u);

    Lemma4Certificate cert;
    cert.w = sandwich(s.u, tv, s.u);
    cert.y = sandwich(s.u, yv, s.u);
    cert.z = sandwich(s.u, zv, s.u);
    cert.conjugating_unitary = assemble_blocks(a, b, c, d);

    const DenseMatrix& u2 = cert.conjugating_unitary;
    const DenseMatrix eye2 = DenseMatrix::identity(2 * m);
    const double unit_res = std::max((u2.adjoint() * u2 - eye2).frobenius_norm(),
                                     (u2 * u2.adjoint() - eye2).frobenius_norm());

    const DenseMatrix eye = DenseMatrix::identity(m);
    const DenseMatrix big = assemble_blocks(2.0 * eye, x, DenseMatrix::zero(m), DenseMatrix::zero(m));
    const DenseMatrix target = assemble_blocks(eye, cert.y, cert.z, eye);
    const double conj_res =
        (u2.adjoint() * big * u2 - target).frobenius_norm() / (2.0 + sig1);

    const double eig_res = std::max(power_sum_gap(big, target),
                                    (cert.y * cert.z - eye).frobenius_norm() / (1.0 + std::sqrt(m)));

    cert.residuals["unitarity"] = unit_res;
    cert.residuals["conjugation"] = conj_res;
    cert.residuals["spectrum_margin"] = margin;
    cert.residuals["eigenvalue_preservation"] = eig_res;
    return cert;
}

DenseMatrix DoublingIso::forward(const DenseMatrix& x) const {
    return basis_change.adjoint() * x * basis_change;
}

DenseMatrix DoublingIso::inverse(const DenseMatrix& y) const {
    return basis_change * y * basis_change.adjoint();
}

DoublingIso doubling_isomorphism(const Projection& p) {
    const std::size_t n = p.dim();
    if (2 * p.rank() != n)
        throw RankMismatch("doubling_isomorphism: projection must have rank n/2, got rank " +
                           std::to_string(p.rank()) + " in dimension " + std::to_string(n));
    auto witness = mvn_equivalent(p, p.complement());
    if (!witness) throw RankMismatch("doubling_isomorphism: no equivalence witness");
    // witness v satisfies v* v = p and v v* = 1 - p, so [B, vB] is unitary.
    const Basis b = range_basis(p.matrix());
    const Basis vb = apply_to_basis(*witness, b);
    DoublingIso iso;
    iso.p = p;
    iso.v = *witness;
    iso.basis_change = concat_to_square(b, vb);
    iso.half_dim = p.rank();

    const DenseMatrix eye = DenseMatrix::identity(n);
    if ((iso.basis_change.adjoint() * iso.basis_change - eye).frobenius_norm() > 1e-8)
        throw ValidationError("doubling_isomorphism: basis change is not unitary");
    return iso;
}

Lemma5Report lemma5_pipeline(const Idempotent& e, cplx lambda, int depth) {
    const std::size_t n = e.dim();
    const Projection p = left_support(e.matrix());
    if (2 * p.rank() != n)
        throw RankMismatch("lemma5_pipeline: left support must have rank n/2");

    const DoublingIso iso = doubling_isomorphism(p);
    const std::size_t m = iso.half_dim;
    const DenseMatrix phi_e = iso.forward(e.matrix());
    const DenseMatrix eye_m = DenseMatrix::identity(m);

    Lemma5Report rep;
    rep.lambda = lambda;
    {
        const double scale = 1.0 + e.matrix().frobenius_norm();
        rep.phi_form_residual =
            std::max({(extract_block(phi_e, 0, 0) - eye_m).frobenius_norm(),
                      extract_block(phi_e, 1, 0).frobenius_norm(),
                      extract_block(phi_e, 1, 1).frobenius_norm()}) /
            scale;
    }

    const DenseMatrix x_block = extract_block(phi_e, 0, 1);
    double base = op_norm(x_block);
    if (base < 1e-6) base = 1.0;  // e is numerically a projection; any schedule works

    const DenseMatrix grading_unitary = DenseMatrix::identity(n) - 2.0 * p.matrix();
    const DenseMatrix zero_m = DenseMatrix::zero(m);
    const cplx half_lambda = lambda * 0.5;

    DenseMatrix e_last = e.matrix();
    const int hard_cap = depth + 40;
    for (int k = 1; k <= hard_cap; ++k) {
        const double eps = base * std::ldexp(1.0, -k);
        const DenseMatrix xk = approximate_invertible(x_block, eps).invertible;
        const Lemma4Certificate cert = lemma4_unitary(2.0 * xk);

        const DenseMatrix ek_block = assemble_blocks(eye_m, xk, zero_m, zero_m);
        const DenseMatrix ek = iso.inverse(ek_block);
        const DenseMatrix uk = iso.inverse(cert.conjugating_unitary);
        const DenseMatrix ak =
            uk.adjoint() * ek * uk - 0.5 * DenseMatrix::identity(n);

        PipelineStep step;
        step.epsilon = eps;
        step.grading = (grading_unitary * ak * grading_unitary + ak).frobenius_norm() /
                       (1.0 + ak.frobenius_norm());
        step.q_zero_gap = std::abs(quasi_trace(lambda * ak).value);
        const cplx qe = quasi_trace(lambda * ek).value;
        step.q_value_gap = std::abs(qe - half_lambda);
        rep.steps.push_back(step);

        rep.max_grading = std::max(rep.max_grading, step.grading);
        rep.max_q_zero_gap = std::max(rep.max_q_zero_gap, step.q_zero_gap);
        rep.max_q_value_gap = std::max(rep.max_q_value_gap, step.q_value_gap);
        rep.q_value = qe;
        e_last = ek;

        if (eps <= 1e-6) break;
    }

    rep.final_gap = (e_last - e.matrix()).frobenius_norm();
    rep.converged = op_norm(e_last - e.matrix()) <= 1e-6 * 1.01;
    rep.oracle_gap = std::abs(rep.q_value - half_lambda);
    return rep;
}

namespace {

// Particular case of the reduction: D(L(e)) <= 1/2. Builds q0 = r + (p v q - p),
// compresses to the corner algebra of p + q0 and runs the half-rank pipeline.
Theorem6Report theorem6_particular(const Idempotent& e, cplx lambda) {
    const std::size_t n = e.dim();
    const Projection p = left_support(e.matrix());
    const Projection q = right_support(e.matrix());
    const std::size_t k = p.rank();

    Theorem6Report rep;
    rep.reduction = Theorem6Case::particular;
    rep.lambda = lambda;
    rep.support_rank = k;

    const Projection join = lattice_join(p, q);
    const Projection meet = lattice_meet(p, q);
    rep.parallelogram_ok =
        (join.rank() - p.rank()) == (q.rank() - meet.rank());

    // r sits under 1 - (p v q), first canonical range-basis columns.
    const std::size_t r_rank = 2 * k - join.rank();
    const Basis comp_basis = range_basis(join.complement().matrix());
    DenseMatrix r_m(n);
    for (std::size_t c = 0; c < r_rank; ++c)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                r_m(i, j) += comp_basis.cols[c][i] * std::conj(comp_basis.cols[c][j]);

    const DenseMatrix q0 = r_m + join.matrix() - p.matrix();
    rep.residuals["orthogonality_p_q0"] = (p.matrix() * q0).frobenius_norm();
    {
        // p + q0 >= p v q: the difference stays PSD.
        SpectralDecomposition sd = hermitian_eigen(p.matrix() + q0 - join.matrix());
        rep.residuals["covering_defect"] =
            sd.eigenvalues.empty() ? 0.0 : std::max(0.0, -sd.eigenvalues.front());
    }

    const Projection corner = Projection::from_matrix(p.matrix() + q0);
    if (corner.rank() != 2 * k)
        throw RankMismatch("theorem6: corner projection has rank " + std::to_string(corner.rank()) +
                           ", expected " + std::to_string(2 * k));

    const Basis c_basis = range_basis(corner.matrix());
    const DenseMatrix e0 = compress(e.matrix(), c_basis);
    rep.residuals["compression_faithful"] =
        (expand(e0, c_basis) - e.matrix()).frobenius_norm() / (1.0 + e.matrix().frobenius_norm());
    rep.residuals["compressed_support"] =
        (compress(p.matrix(), c_basis) - left_support(e0).matrix()).frobenius_norm();

    rep.pipeline = lemma5_pipeline(Idempotent::from_matrix(e0), lambda);

    const Rational corner_dim = dimension(corner);
    rep.q_value = rep.pipeline.q_value * corner_dim.to_double();

    // Compression identity Q0(x) = Q(x) / D(p + q0) for x = lambda e.
    const cplx q_direct = quasi_trace(lambda * e.matrix()).value;
    const cplx q0_direct = quasi_trace(lambda * e0).value;
    rep.compression_residual = std::abs(q0_direct - q_direct * (1.0 / corner_dim.to_double()));
    rep.residuals["compression_identity"] = rep.compression_residual;

    rep.oracle_gap = std::abs(rep.q_value - lambda * Rational(static_cast<std::int64_t>(k),
                                                              static_cast<std::int64_t>(n))
                                                 .to_double());
    rep.residuals["q_value"] = rep.pipeline.max_q_value_gap;
    rep.residuals["grading"] = rep.pipeline.max_grading;
    rep.residuals["oracle_gap"] = rep.oracle_gap;
    return rep;
}

}  // namespace

Theorem6Report theorem6_verify(const Idempotent& e, cplx lambda) {
    const std::size_t n = e.dim();
    const Projection p = left_support(e.matrix());
    const std::size_t k = p.rank();

    if (k == 0) {
        Theorem6Report rep;
        rep.reduction = Theorem6Case::zero;
        rep.lambda = lambda;
        rep.q_value = quasi_trace(lambda * e.matrix()).value;
        rep.oracle_gap = std::abs(rep.q_value);
        rep.residuals["oracle_gap"] = rep.oracle_gap;
        return rep;
    }

    if (2 * k <= n) return theorem6_particular(e, lambda);

    // General case: double into M_{2n}, where the support rank is at most half.
    const DenseMatrix zero_n = DenseMatrix::zero(n);
    const DenseMatrix doubled = assemble_blocks(e.matrix(), zero_n, zero_n, zero_n);
    const Idempotent big = Idempotent::from_matrix(doubled);

    Theorem6Report rep = theorem6_particular(big, lambda);
    rep.reduction = Theorem6Case::general;
    rep.support_rank = k;
    rep.q_value = 2.0 * rep.q_value;

    const cplx q_small = quasi_trace(lambda * e.matrix()).value;
    const cplx q_big = quasi_trace(lambda * doubled).value;
    rep.doubling_residual = std::abs(q_small - 2.0 * q_big);
    rep.residuals["doubling_identity"] = rep.doubling_residual;

    rep.oracle_gap = std::abs(rep.q_value - lambda * Rational(static_cast<std::int64_t>(k),
                                                              static_cast<std::int64_t>(n))
                                                 .to_double());
    rep.residuals["oracle_gap"] = rep.oracle_gap;
    return rep;
}

IdempotentSplit idempotent_to_projection(const Idempotent& e) {
    const std::size_t n = e.dim();
    const Projection p = left_support(e.matrix());
    const DenseMatrix eye = DenseMatrix::identity(n);
    const DenseMatrix tail = e.matrix() * (eye - p.matrix());
    const DenseMatrix t = eye - tail;
    const DenseMatrix t_inv = eye + tail;  // exact: tail is nilpotent of order 2

    IdempotentSplit out{t, t_inv, p, 0.0, 0.0};
    out.inverse_residual = (t * t_inv - eye).frobenius_norm();
    out.reconstruction_residual =
        (t * p.matrix() * t_inv - e.matrix()).frobenius_norm() /
        (1.0 + e.matrix().frobenius_norm());
    return out;
}

SimilarityReport similarity_invariance_check(const Idempotent& e, const DenseMatrix& s) {
    if (s.dim() != e.dim()) throw DimensionMismatch("similarity_invariance_check: size mismatch");
    const SvdResult sv = svd(s);
    if (!(sv.sigma.back() > 1e-8 * sv.sigma[0]))
        throw NotInvertible("similarity_invariance_check: s is numerically singular");
    const DenseMatrix s_inv = inverse(s);
    const cplx q1 = quasi_trace(s * e.matrix() * s_inv).value;
    const cplx q2 = quasi_trace(e.matrix()).value;
    return {q1, q2, std::abs(q1 - q2)};
}

AdditivityReport orthogonal_additivity_check(const Idempotent& e1, const Idempotent& e2) {
    if (e1.dim() != e2.dim()) throw DimensionMismatch("orthogonal_additivity_check: size mismatch");
    const double scale = 1.0 + e1.matrix().frobenius_norm() * e2.matrix().frobenius_norm();
    const double ann = std::max((e1.matrix() * e2.matrix()).frobenius_norm(),
                                (e2.matrix() * e1.matrix()).frobenius_norm());
    if (ann > 1e-8 * scale)
        throw NotAnnihilating("orthogonal_additivity_check: e1 e2 != 0, defect " +
                              std::to_string(ann));
    const Idempotent sum = Idempotent::from_matrix(e1.matrix() + e2.matrix());
    const cplx qs = quasi_trace(sum.matrix()).value;
    const cplx qp = quasi_trace(e1.matrix()).value + quasi_trace(e2.matrix()).value;
    return {qs, qp, std::abs(qs - qp)};
}

StarCombinationReport star_combination_check(std::span<const Idempotent> family,
                                             std::span<const double> alphas) {
    if (family.size() != alphas.size())
        throw DimensionMismatch("star_combination_check: family/coefficient count mismatch");
    if (family.empty()) return {cplx(0.0, 0.0), cplx(0.0, 0.0), 0.0};
    const std::size_t n = family[0].dim();
    for (std::size_t i = 0; i < family.size(); ++i)
        for (std::size_t j = 0; j < family.size(); ++j) {
            if (family[j].dim() != n)
                throw DimensionMismatch("star_combination_check: mixed dimensions");
            if (i == j) continue;
            const double scale =
                1.0 + family[i].matrix().frobenius_norm() * family[j].matrix().frobenius_norm();
            const double ann = (family[i].matrix() * family[j].matrix()).frobenius_norm();
            if (ann > 1e-8 * scale)
                throw NotAnnihilating("star_combination_check: family is not annihilating");
        }

    DenseMatrix combo(n);
    cplx weighted(0.0, 0.0);
    for (std::size_t i = 0; i < family.size(); ++i) {
        combo += cplx(alphas[i], 0.0) * family[i].matrix();
        weighted += alphas[i] * quasi_trace(family[i].matrix()).value;
    }
    const cplx qc = quasi_trace(combo).value;
    return {qc, weighted, std::abs(qc - weighted)};
}

}  // namespace ffl

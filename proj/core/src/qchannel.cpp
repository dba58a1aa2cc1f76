#include "releq/qchannel.hpp"

#include <Eigen/QR>
#include <cmath>

namespace releq {

namespace {
constexpr double completeness_tol = 1e-9;
constexpr double branch_drop_tol = 1e-14;
}  // namespace

kraus_channel kraus_channel::make(std::vector<cxmat> ops) {
    if (ops.empty()) throw validation_error("kraus_channel: no operators");
    const Eigen::Index d = ops[0].rows();
    for (const cxmat& a : ops) {
        if (a.rows() != d || a.cols() != d) {
            throw dim_mismatch_error("kraus_channel: operators must share a square size");
        }
    }
    cxmat sum = cxmat::Zero(d, d);
    for (const cxmat& a : ops) sum += a.adjoint() * a;
    if (max_abs_diff(sum, identity(d)) > completeness_tol) {
        throw not_trace_preserving_error("kraus_channel: completeness sum is not the identity");
    }
    return kraus_channel{std::move(ops)};
}

density_matrix apply(const kraus_channel& ch, const density_matrix& rho) {
    if (ch.dim() != rho.dim()) throw dim_mismatch_error("apply: channel/state mismatch");
    cxmat out = cxmat::Zero(rho.dim(), rho.dim());
    for (const cxmat& a : ch.ops) out += a * rho.mat * a.adjoint();
    out = 0.5 * (out + out.adjoint());
    out /= out.trace().real();
    return density_matrix{out, rho.dims};
}

std::vector<selective_branch> selective_apply(const kraus_channel& ch,
                                              const density_matrix& rho) {
    if (ch.dim() != rho.dim()) throw dim_mismatch_error("selective_apply: mismatch");
    std::vector<selective_branch> branches;
    for (const cxmat& a : ch.ops) {
        cxmat raw = a * rho.mat * a.adjoint();
        double p = raw.trace().real();
        if (p < branch_drop_tol) continue;
        cxmat normalized = 0.5 * (raw + raw.adjoint()) / p;
        branches.push_back({p, density_matrix{normalized, rho.dims}});
    }
    return branches;
}

prob_dist povm_probs(const std::vector<cxmat>& effects, const density_matrix& rho) {
    if (effects.empty()) throw incomplete_effects_error("povm_probs: no effects");
    const Eigen::Index d = rho.dim();
    cxmat sum = cxmat::Zero(d, d);
    for (const cxmat& e : effects) {
        if (e.rows() != d || e.cols() != d) throw dim_mismatch_error("povm_probs: effect size");
        if (hermiticity_defect(e) > hermiticity_tol) {
            throw negative_effect_error("povm_probs: effect is not Hermitian");
        }
        Eigen::SelfAdjointEigenSolver<cxmat> solver(e, Eigen::EigenvaluesOnly);
        if (solver.eigenvalues().minCoeff() < -1e-9) {
            throw negative_effect_error("povm_probs: effect has a negative eigenvalue");
        }
        sum += e;
    }
    if (max_abs_diff(sum, identity(d)) > completeness_tol) {
        throw incomplete_effects_error("povm_probs: effects do not sum to the identity");
    }
    std::vector<double> probs;
    probs.reserve(effects.size());
    for (const cxmat& e : effects) {
        probs.push_back(std::max(0.0, (rho.mat * e).trace().real()));
    }
    double total = 0.0;
    for (double p : probs) total += p;
    for (double& p : probs) p /= total;
    return prob_dist{std::move(probs), {}};
}

dilation dilate(const kraus_channel& ch) {
    const Eigen::Index d = ch.dim();
    const Eigen::Index k = static_cast<Eigen::Index>(ch.size());
    // |alpha> = |0> of the ancilla.  Columns of W on the system basis:
    // W (e_j (x) |alpha>) = sum_i (V_i e_j) (x) |i>, flat index s * k + i.
    cxmat isometry(d * k, d);
    for (Eigen::Index j = 0; j < d; ++j) {
        cxvec col = cxvec::Zero(d * k);
        for (Eigen::Index i = 0; i < k; ++i) {
            cxvec vi_ej = ch.ops[static_cast<std::size_t>(i)].col(j);
            for (Eigen::Index s = 0; s < d; ++s) col[s * k + i] = vi_ej[s];
        }
        isometry.col(j) = col;
    }
    // The isometry holds the W columns for inputs e_j (x) |0>; place them at
    // input indices j * k and fill the remaining ancilla slots by
    // orthonormal completion (any completion is valid, only the |alpha>
    // block is observable).
    cxmat u(d * k, d * k);
    cxmat completed = complete_to_unitary(isometry);
    for (Eigen::Index j = 0; j < d; ++j) u.col(j * k) = completed.col(j);
    Eigen::Index extra = d;
    for (Eigen::Index col = 0; col < d * k; ++col) {
        if (col % k == 0) continue;
        u.col(col) = completed.col(extra++);
    }
    cxvec alpha = cxvec::Zero(k);
    alpha[0] = 1.0;
    return dilation{u, ket{alpha, {k}}, k};
}

density_matrix apply_dilation(const dilation& d, const density_matrix& rho) {
    cxmat joint = tensor(rho.mat, projector(d.ancilla_state.amps));
    cxmat evolved = d.unitary * joint * d.unitary.adjoint();
    cxmat out = partial_trace(evolved, rho.dim(), d.ancilla_dim, 0);
    out = 0.5 * (out + out.adjoint());
    out /= out.trace().real();
    return density_matrix{out, rho.dims};
}

ppt_result ppt_check(const density_matrix& rho) {
    if (!rho.is_bipartite()) throw not_bipartite_error("ppt_check: dims must be bipartite");
    cxmat pt = partial_transpose(rho.mat, rho.dims[0], rho.dims[1], 1);
    Eigen::SelfAdjointEigenSolver<cxmat> solver(0.5 * (pt + pt.adjoint()),
                                                Eigen::EigenvaluesOnly);
    double min_eig = solver.eigenvalues().minCoeff();
    const Eigen::Index da = rho.dims[0], db = rho.dims[1];
    bool decisive = (da == 2 && db == 2) || (da == 2 && db == 3) || (da == 3 && db == 2);
    return ppt_result{min_eig, min_eig >= -eig_clip_tol, decisive};
}

cxmat random_unitary(Eigen::Index dim, rng& gen) {
    cxmat g(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index j = 0; j < dim; ++j)
            g(i, j) = std::complex<double>(gen.gaussian(), gen.gaussian());
    Eigen::HouseholderQR<cxmat> qr(g);
    cxmat q = qr.householderQ();
    cxmat r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix the phase ambiguity so the distribution is Haar.
    for (Eigen::Index i = 0; i < dim; ++i) {
        std::complex<double> diag = r(i, i);
        double mag = std::abs(diag);
        q.col(i) *= (mag > 0 ? diag / mag : 1.0);
    }
    return q;
}

kraus_channel random_channel(Eigen::Index dim, Eigen::Index kraus_count, rng& gen) {
    cxmat u = random_unitary(dim * kraus_count, gen);
    // A_i = <i|_anc U |0>_anc with ancilla as the fast index (s * K + i).
    std::vector<cxmat> ops;
    ops.reserve(static_cast<std::size_t>(kraus_count));
    for (Eigen::Index i = 0; i < kraus_count; ++i) {
        cxmat a(dim, dim);
        for (Eigen::Index r = 0; r < dim; ++r)
            for (Eigen::Index c = 0; c < dim; ++c) a(r, c) = u(r * kraus_count + i, c * kraus_count);
        ops.push_back(a);
    }
    return kraus_channel::make(std::move(ops));
}

std::vector<cxmat> random_povm(Eigen::Index dim, std::size_t effect_count, rng& gen) {
    std::vector<cxmat> raw;
    raw.reserve(effect_count);
    cxmat sum = cxmat::Zero(dim, dim);
    for (std::size_t i = 0; i < effect_count; ++i) {
        cxmat g(dim, dim);
        for (Eigen::Index r = 0; r < dim; ++r)
            for (Eigen::Index c = 0; c < dim; ++c)
                g(r, c) = std::complex<double>(gen.gaussian(), gen.gaussian());
        cxmat e = g * g.adjoint();
        raw.push_back(e);
        sum += e;
    }
    // Normalize: E_i -> S^{-1/2} E_i S^{-1/2} so the family sums to I.
    cxmat inv_root = mat_func(sum, [](double x) { return 1.0 / std::sqrt(std::max(x, 1e-300)); });
    for (cxmat& e : raw) {
        e = inv_root * e * inv_root;
        e = 0.5 * (e + e.adjoint());
    }
    return raw;
}

}  // namespace releq

#include "releq/entanglement.hpp"

#include <algorithm>
#include <cmath>

namespace releq {

namespace {

constexpr double objective_eps = 1e-9;  // boundary regularization inside the objective
constexpr Eigen::Index max_ree_dim = 16;

cxvec random_unit(Eigen::Index d, rng& gen) {
    cxvec v(d);
    for (Eigen::Index i = 0; i < d; ++i) v[i] = std::complex<double>(gen.gaussian(), gen.gaussian());
    v.normalize();
    return v;
}

// Euclidean projection onto the probability simplex (Duchi et al. 2008).
void project_simplex(std::vector<double>& w) {
    std::vector<double> sorted = w;
    std::sort(sorted.begin(), sorted.end(), std::greater<double>());
    double cumulative = 0.0;
    double theta = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        cumulative += sorted[i];
        double candidate = (cumulative - 1.0) / static_cast<double>(i + 1);
        if (sorted[i] - candidate > 0.0) theta = candidate;
    }
    for (double& v : w) v = std::max(0.0, v - theta);
}

struct objective_ctx {
    const density_matrix* rho;
    double tr_rho_ln_rho;  // nats
};

double eval_objective(const objective_ctx& ctx, const cxmat& sigma) {
    const Eigen::Index d = sigma.rows();
    cxmat reg = (1.0 - objective_eps) * sigma +
                (objective_eps / static_cast<double>(d)) * cxmat::Identity(d, d);
    Eigen::SelfAdjointEigenSolver<cxmat> eig(0.5 * (reg + reg.adjoint()));
    double tr_rho_ln_sigma = 0.0;
    const cxmat& v = eig.eigenvectors();
    cxmat rho_tilde = v.adjoint() * ctx.rho->mat * v;
    for (Eigen::Index i = 0; i < d; ++i) {
        tr_rho_ln_sigma += rho_tilde(i, i).real() * std::log(std::max(eig.eigenvalues()[i], 1e-300));
    }
    return ctx.tr_rho_ln_rho - tr_rho_ln_sigma;
}

}  // namespace

cxmat separable_ansatz::assemble() const {
    cxmat sigma = cxmat::Zero(d_a * d_b, d_a * d_b);
    for (const component& c : components) {
        cxvec prod = tensor(c.a, c.b);
        sigma.noalias() += c.weight * (prod * prod.adjoint());
    }
    return 0.5 * (sigma + sigma.adjoint());
}

separable_ansatz separable_ansatz::random(Eigen::Index d_a, Eigen::Index d_b, int count,
                                          rng& gen) {
    separable_ansatz ansatz;
    ansatz.d_a = d_a;
    ansatz.d_b = d_b;
    ansatz.components.resize(count);
    double total = 0.0;
    for (component& c : ansatz.components) {
        c.a = random_unit(d_a, gen);
        c.b = random_unit(d_b, gen);
        c.weight = -std::log(std::max(gen.uniform(), 1e-15));  // exponential => Dirichlet(1)
        total += c.weight;
    }
    for (component& c : ansatz.components) c.weight /= total;
    return ansatz;
}

double ree_objective(const density_matrix& rho, const cxmat& sigma) {
    hermitian_eig_result er = hermitian_eig(rho.mat);
    double tr_rho_ln_rho = 0.0;
    for (Eigen::Index i = 0; i < er.eigenvalues.size(); ++i) {
        tr_rho_ln_rho += xlnx(std::max(0.0, er.eigenvalues[i]));
    }
    objective_ctx ctx{&rho, tr_rho_ln_rho};
    return eval_objective(ctx, sigma);
}

cxmat ree_gradient(const density_matrix& rho, const cxmat& sigma) {
    const Eigen::Index d = sigma.rows();
    cxmat reg = (1.0 - objective_eps) * sigma +
                (objective_eps / static_cast<double>(d)) * cxmat::Identity(d, d);
    Eigen::SelfAdjointEigenSolver<cxmat> eig(0.5 * (reg + reg.adjoint()));
    const cxmat& v = eig.eigenvectors();
    const realvec& lam = eig.eigenvalues();
    cxmat rho_tilde = v.adjoint() * rho.mat * v;
    cxmat kernel(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            double x = std::max(lam[i], 1e-300), y = std::max(lam[j], 1e-300);
            double k;
            if (std::abs(x - y) <= 1e-12 * std::max({x, y, 1e-30})) {
                k = 2.0 / (x + y);
            } else {
                k = (std::log(x) - std::log(y)) / (x - y);
            }
            kernel(i, j) = rho_tilde(i, j) * k;
        }
    }
    // d/dt [-Tr rho ln(sigma + t Delta)] = Tr(G Delta)
    cxmat g = -(1.0 - objective_eps) * (v * kernel * v.adjoint());
    return 0.5 * (g + g.adjoint());
}

namespace {

struct sweep_state {
    separable_ansatz ansatz;
    cxmat sigma;
    double objective;
};

// One backtracking line-search move of a single ket; returns true if the
// objective improved.
bool ket_step(const objective_ctx& ctx, sweep_state& st, std::size_t idx, bool move_a) {
    separable_ansatz::component& c = st.ansatz.components[idx];
    if (c.weight < 1e-12) return false;
    cxmat g = ree_gradient(*ctx.rho, st.sigma);
    cxvec grad;
    const Eigen::Index d_a = st.ansatz.d_a, d_b = st.ansatz.d_b;
    if (move_a) {
        // M = (I (x) <b|) G (I (x) |b>)
        cxmat m(d_a, d_a);
        for (Eigen::Index i = 0; i < d_a; ++i)
            for (Eigen::Index j = 0; j < d_a; ++j) {
                std::complex<double> acc = 0.0;
                for (Eigen::Index r = 0; r < d_b; ++r)
                    for (Eigen::Index s = 0; s < d_b; ++s)
                        acc += std::conj(c.b[r]) * g(i * d_b + r, j * d_b + s) * c.b[s];
                m(i, j) = acc;
            }
        grad = c.weight * (m * c.a);
    } else {
        cxmat m(d_b, d_b);
        for (Eigen::Index r = 0; r < d_b; ++r)
            for (Eigen::Index s = 0; s < d_b; ++s) {
                std::complex<double> acc = 0.0;
                for (Eigen::Index i = 0; i < d_a; ++i)
                    for (Eigen::Index j = 0; j < d_a; ++j)
                        acc += std::conj(c.a[i]) * g(i * d_b + r, j * d_b + s) * c.a[j];
                m(r, s) = acc;
            }
        grad = c.weight * (m * c.b);
    }
    double gnorm = grad.norm();
    if (gnorm < 1e-14) return false;
    cxvec& target = move_a ? c.a : c.b;
    cxvec original = target;
    cxvec prod_old = tensor(c.a, c.b);
    double eta = 1.0 / gnorm;
    for (int bt = 0; bt < 25; ++bt) {
        cxvec trial = (original - eta * grad).normalized();
        target = trial;
        cxvec prod_new = tensor(c.a, c.b);
        cxmat sigma_trial = st.sigma + c.weight * (prod_new * prod_new.adjoint() -
                                                   prod_old * prod_old.adjoint());
        double f = eval_objective(ctx, sigma_trial);
        if (f < st.objective - 1e-15) {
            st.sigma = 0.5 * (sigma_trial + sigma_trial.adjoint());
            st.objective = f;
            return true;
        }
        eta *= 0.5;
    }
    target = original;
    return false;
}

bool weight_step(const objective_ctx& ctx, sweep_state& st) {
    cxmat g = ree_gradient(*ctx.rho, st.sigma);
    const std::size_t k = st.ansatz.components.size();
    std::vector<double> grad(k), w(k);
    std::vector<cxvec> prods(k);
    double gmax = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        const auto& c = st.ansatz.components[i];
        prods[i] = tensor(c.a, c.b);
        grad[i] = (prods[i].adjoint() * g * prods[i])(0, 0).real();
        w[i] = c.weight;
        gmax = std::max(gmax, std::abs(grad[i]));
    }
    if (gmax < 1e-14) return false;
    double eta = 1.0 / gmax;
    for (int bt = 0; bt < 25; ++bt) {
        std::vector<double> trial = w;
        for (std::size_t i = 0; i < k; ++i) trial[i] -= eta * grad[i];
        project_simplex(trial);
        cxmat sigma = cxmat::Zero(st.sigma.rows(), st.sigma.cols());
        for (std::size_t i = 0; i < k; ++i) {
            if (trial[i] > 0.0) sigma.noalias() += trial[i] * (prods[i] * prods[i].adjoint());
        }
        sigma = 0.5 * (sigma + sigma.adjoint());
        double f = eval_objective(ctx, sigma);
        if (f < st.objective - 1e-15) {
            for (std::size_t i = 0; i < k; ++i) st.ansatz.components[i].weight = trial[i];
            st.sigma = sigma;
            st.objective = f;
            return true;
        }
        eta *= 0.5;
    }
    return false;
}

}  // namespace

namespace {

// Starting point assembled from the spectral decomposition of rho with the
// off-diagonal Schmidt terms of every eigenvector deleted.  For pure states
// this is already the minimizer; for mixed states it is a strong separable
// candidate that the sweeps then refine.
separable_ansatz spectral_start(const density_matrix& rho, int component_count, rng& gen) {
    const Eigen::Index d_a = rho.dims[0], d_b = rho.dims[1];
    separable_ansatz ansatz;
    ansatz.d_a = d_a;
    ansatz.d_b = d_b;
    hermitian_eig_result eig = hermitian_eig(rho.mat);
    for (Eigen::Index j = eig.eigenvalues.size() - 1; j >= 0; --j) {
        double weight = std::max(0.0, eig.eigenvalues[j]);
        if (weight < 1e-12) continue;
        if (static_cast<int>(ansatz.components.size()) >= component_count) break;
        cxvec v = eig.eigenvectors.col(j).normalized();
        schmidt_decomposition sd = schmidt(ket{v, rho.dims});
        for (std::size_t r = 0; r < sd.coeffs.size(); ++r) {
            if (sd.coeffs[r] < 1e-8) continue;
            if (static_cast<int>(ansatz.components.size()) >= component_count) break;
            ansatz.components.push_back(
                {weight * sd.coeffs[r] * sd.coeffs[r], sd.basis_a[r], sd.basis_b[r]});
        }
    }
    // Pad with low-weight random product states so every slot can move.
    double total = 0.0;
    for (const auto& c : ansatz.components) total += c.weight;
    const double pad_weight = std::max(1e-4 * total, 1e-8);
    while (static_cast<int>(ansatz.components.size()) < component_count) {
        ansatz.components.push_back({pad_weight, random_unit(d_a, gen), random_unit(d_b, gen)});
        total += pad_weight;
    }
    for (auto& c : ansatz.components) c.weight /= total;
    return ansatz;
}

}  // namespace

ree_result ree(const density_matrix& rho, const ree_options& opts) {
    if (!rho.is_bipartite()) throw not_bipartite_error("ree: state must be bipartite");
    const Eigen::Index d_a = rho.dims[0], d_b = rho.dims[1];
    const Eigen::Index d = d_a * d_b;
    if (d > max_ree_dim) throw too_large_error("ree: supported up to d_a*d_b = 16");

    hermitian_eig_result er = hermitian_eig(rho.mat);
    double tr_rho_ln_rho = 0.0;
    for (Eigen::Index i = 0; i < er.eigenvalues.size(); ++i) {
        tr_rho_ln_rho += xlnx(std::max(0.0, er.eigenvalues[i]));
    }
    objective_ctx ctx{&rho, tr_rho_ln_rho};

    const int k = opts.component_count > 0 ? opts.component_count : static_cast<int>(d * d);
    rng master(opts.seed);

    sweep_state best;
    best.objective = pos_inf();
    int best_sweeps = 0;
    bool best_converged = false;
    int restarts_done = 0;

    for (int restart = 0; restart < std::max(1, opts.restarts); ++restart) {
        rng gen = master.fork();
        ++restarts_done;
        sweep_state st;
        // The first restart starts from the Schmidt-deleted spectral
        // decomposition; the rest explore from random ansatzes.
        st.ansatz = restart == 0 ? spectral_start(rho, k, gen)
                                 : separable_ansatz::random(d_a, d_b, k, gen);
        st.sigma = st.ansatz.assemble();
        st.objective = eval_objective(ctx, st.sigma);

        int sweeps = 0;
        bool converged = false;
        for (; sweeps < opts.max_iters; ++sweeps) {
            double before = st.objective;
            weight_step(ctx, st);
            for (std::size_t i = 0; i < st.ansatz.components.size(); ++i) {
                ket_step(ctx, st, i, true);
                ket_step(ctx, st, i, false);
            }
            double decrease = before - st.objective;
            if (decrease < opts.tol * std::max(1.0, std::abs(before))) {
                converged = true;
                ++sweeps;
                break;
            }
        }
        if (st.objective < best.objective) {
            best = st;
            best_sweeps = sweeps;
            best_converged = converged;
        }
        // A separable state cannot beat an objective that already hit zero.
        if (best.objective < 1e-12) break;
    }

    cxmat sigma_final = best.ansatz.assemble();
    sigma_final = 0.5 * (sigma_final + sigma_final.adjoint());
    sigma_final /= sigma_final.trace().real();
    density_matrix closest{sigma_final, rho.dims};

    // Report the unregularized relative entropy against the assembled state
    // so the result satisfies value == qrelent(rho, closest_state) exactly.
    double value_nats = qrelent_operators(rho.mat, sigma_final, units::nats);
    if (std::isinf(value_nats)) value_nats = best.objective;
    value_nats = std::max(value_nats, 0.0);

    ree_result out;
    out.value = convert_nats(value_nats, units::bits);
    out.closest_state = closest;
    out.iterations = best_sweeps;
    out.converged = best_converged;
    out.restarts_used = restarts_done;
    return out;
}

double pure_entanglement(const ket& psi, units u) {
    if (psi.dims.size() != 2) throw not_bipartite_error("pure_entanglement: need two subsystems");
    return von_neumann(reduced_state(psi, 0), u);
}

namespace {

// Extract the ket of a pure density matrix; throws when the state is mixed.
ket pure_ket_of(const density_matrix& rho) {
    hermitian_eig_result eig = hermitian_eig(rho.mat);
    const Eigen::Index top = eig.eigenvalues.size() - 1;
    if (eig.eigenvalues[top] < 1.0 - 1e-9) {
        throw not_pure_error("ensemble member is not a pure state");
    }
    cxvec v = eig.eigenvectors.col(top);
    return ket{v.normalized(), rho.dims};
}

// Off-diagonal deletion in the Schmidt basis of a bipartite pure state.
cxmat schmidt_diagonal_part(const ket& psi) {
    schmidt_decomposition sd = schmidt(psi);
    const Eigen::Index d = psi.dim();
    cxmat sigma = cxmat::Zero(d, d);
    for (std::size_t r = 0; r < sd.coeffs.size(); ++r) {
        if (sd.coeffs[r] <= 0.0) continue;
        cxvec prod = tensor(sd.basis_a[r], sd.basis_b[r]);
        sigma.noalias() += (sd.coeffs[r] * sd.coeffs[r]) * (prod * prod.adjoint());
    }
    return 0.5 * (sigma + sigma.adjoint());
}

}  // namespace

double ensemble_entanglement(const ensemble& e, units u) {
    const Eigen::Index member_count = static_cast<Eigen::Index>(e.items.size());
    const Eigen::Index d = e.dim();
    double direct_nats = 0.0;
    // Memory-extended state and the separable partner built from deleting
    // Schmidt off-diagonals in every branch; memory is the last factor.
    cxmat rho_abm = cxmat::Zero(d * member_count, d * member_count);
    cxmat sigma_abm = cxmat::Zero(d * member_count, d * member_count);
    for (Eigen::Index i = 0; i < member_count; ++i) {
        const auto& item = e.items[static_cast<std::size_t>(i)];
        ket psi = pure_ket_of(item.state);
        direct_nats += item.prob * pure_entanglement(psi, units::nats);
        cxvec flag = cxvec::Zero(member_count);
        flag[i] = 1.0;
        cxmat flag_proj = projector(flag);
        rho_abm += item.prob * tensor(item.state.mat, flag_proj);
        sigma_abm += item.prob * tensor(schmidt_diagonal_part(psi), flag_proj);
    }
    double extended_nats = qrelent_operators(rho_abm, sigma_abm, units::nats);
    if (std::abs(extended_nats - direct_nats) > 1e-9) {
        throw error("ensemble_entanglement: memory-extended identity violated: " +
                    std::to_string(extended_nats) + " vs " + std::to_string(direct_nats));
    }
    return convert_nats(direct_nats, u);
}

loss_bound_result entanglement_loss_bound(
    const ensemble& e, const std::function<double(const density_matrix&)>& entanglement_bits,
    double slack) {
    density_matrix avg = e.average();
    double lhs = -entanglement_bits(avg);
    double rhs = 0.0;
    for (const ensemble::member& m : e.items) {
        lhs += m.prob * entanglement_bits(m.state);
        rhs += m.prob * qrelent(m.state, avg, units::bits);
    }
    return {lhs, rhs, lhs <= rhs + slack};
}

double cgdc_bound(const density_matrix& rho_ab) {
    if (!(rho_ab.dims.size() == 2 && rho_ab.dims[0] == 2 && rho_ab.dims[1] == 2)) {
        throw not_two_qubit_error("cgdc_bound: need a 2x2 bipartite state");
    }
    double s_b = von_neumann(reduced_state(rho_ab, 1), units::bits);
    double s_ab = von_neumann(rho_ab, units::bits);
    return 1.0 + s_b - s_ab;
}

double assistance_upper_bound(const density_matrix& rho_ab, units u) {
    if (!rho_ab.is_bipartite()) throw not_bipartite_error("assistance_upper_bound: bipartite");
    double s_a = von_neumann(reduced_state(rho_ab, 0), u);
    double s_b = von_neumann(reduced_state(rho_ab, 1), u);
    return std::min(s_a, s_b);
}

}  // namespace releq

#include "releq/qentropy.hpp"

#include <algorithm>
#include <cmath>

namespace releq {

namespace {
constexpr double kernel_eig_tol = 1e-10;  // eigenvalues below this span the kernel
constexpr double kernel_mass_tol = 1e-9;  // sigma-mass allowed on that kernel
}  // namespace

ensemble ensemble::make(std::vector<member> items) {
    if (items.empty()) throw validation_error("ensemble: empty");
    double sum = 0.0;
    const Eigen::Index d = items[0].state.dim();
    const auto& dims = items[0].state.dims;
    for (const member& m : items) {
        if (m.prob < -1e-15) throw validation_error("ensemble: negative probability");
        if (m.state.dim() != d || m.state.dims != dims) {
            throw dim_mismatch_error("ensemble: members must share dimensions");
        }
        sum += m.prob;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        throw validation_error("ensemble: probabilities sum to " + std::to_string(sum));
    }
    return ensemble{std::move(items)};
}

density_matrix ensemble::average() const {
    cxmat avg = cxmat::Zero(dim(), dim());
    for (const member& m : items) avg += m.prob * m.state.mat;
    avg = 0.5 * (avg + avg.adjoint());
    avg /= avg.trace().real();
    return density_matrix{avg, items[0].state.dims};
}

double von_neumann(const density_matrix& rho, units u) {
    hermitian_eig_result eig = hermitian_eig(rho.mat);
    double s = 0.0;
    for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
        s -= xlnx(std::max(0.0, eig.eigenvalues[i]));
    }
    return convert_nats(std::max(s, 0.0), u);
}

double qrelent_operators(const cxmat& a, const cxmat& b, units u) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw dim_mismatch_error("qrelent: dimension mismatch");
    }
    hermitian_eig_result ea = hermitian_eig(a);
    hermitian_eig_result eb = hermitian_eig(b);
    // Tr a ln a over the support of a.
    double tr_a_ln_a = 0.0;
    for (Eigen::Index i = 0; i < ea.eigenvalues.size(); ++i) {
        tr_a_ln_a += xlnx(std::max(0.0, ea.eigenvalues[i]));
    }
    // Tr a ln b through b's eigenbasis, watching the kernel of b.
    double tr_a_ln_b = 0.0;
    double kernel_mass = 0.0;
    for (Eigen::Index j = 0; j < eb.eigenvalues.size(); ++j) {
        double mu = eb.eigenvalues[j];
        cxvec v = eb.eigenvectors.col(j);
        double weight = std::max(0.0, (v.adjoint() * a * v)(0, 0).real());
        if (mu < kernel_eig_tol) {
            kernel_mass += weight;
        } else {
            tr_a_ln_b += weight * std::log(mu);
        }
    }
    if (kernel_mass > kernel_mass_tol) return pos_inf();
    return convert_nats(tr_a_ln_a - tr_a_ln_b, u);
}

double qrelent(const density_matrix& sigma, const density_matrix& rho, units u) {
    double v = qrelent_operators(sigma.mat, rho.mat, u);
    return std::isinf(v) ? v : std::max(v, 0.0);
}

double qmutual(const density_matrix& rho_ab, units u) {
    if (!rho_ab.is_bipartite()) throw not_bipartite_error("qmutual: dims must be bipartite");
    density_matrix a = reduced_state(rho_ab, 0);
    density_matrix b = reduced_state(rho_ab, 1);
    double s = von_neumann(a, units::nats) + von_neumann(b, units::nats) -
               von_neumann(rho_ab, units::nats);
    return convert_nats(std::max(s, 0.0), u);
}

double holevo(const ensemble& e, units u) {
    density_matrix avg = e.average();
    double chi = von_neumann(avg, units::nats);
    for (const ensemble::member& m : e.items) {
        chi -= m.prob * von_neumann(m.state, units::nats);
    }
    return convert_nats(std::max(chi, 0.0), u);
}

double accessible_info(const ensemble& e, const std::vector<cxmat>& effects, units u) {
    const std::size_t n_sym = e.items.size();
    const std::size_t n_out = effects.size();
    // Validate the POVM once against the average state.
    povm_probs(effects, e.average());
    std::vector<double> joint(n_sym * n_out, 0.0);
    for (std::size_t i = 0; i < n_sym; ++i) {
        for (std::size_t j = 0; j < n_out; ++j) {
            double p = (e.items[i].state.mat * effects[j]).trace().real();
            joint[i * n_out + j] = std::max(0.0, e.items[i].prob * p);
        }
    }
    double total = 0.0;
    for (double v : joint) total += v;
    for (double& v : joint) v /= total;
    return mutual_information(prob_dist{std::move(joint), {}}, n_sym, n_out, u);
}

bosonic_capacity_result bosonic_capacity(double signal_power, double temperature) {
    if (!(signal_power > 0.0)) throw non_positive_error("bosonic_capacity: need S > 0");
    if (temperature < 0.0) throw non_positive_error("bosonic_capacity: need T >= 0");
    const double hbar = constants::hbar;
    const double k = constants::boltzmann;
    const double pi = 3.14159265358979323846;

    const double quantum = std::sqrt(pi * signal_power / (3.0 * hbar)) / ln2;
    const double classical =
        temperature > 0.0 ? signal_power / (k * temperature * ln2) : pos_inf();

    double full;
    if (temperature == 0.0) {
        full = quantum;
    } else {
        const double kt = k * temperature;
        full = pi * kt / (6.0 * hbar * ln2) *
               (std::sqrt(12.0 * hbar * signal_power / (pi * kt * kt) + 1.0) - 1.0);
    }
    // Power needed so the quantum-limit rate is one bit per second; over one
    // second that is the energy spent per bit.
    const double energy_per_bit = 3.0 * hbar * ln2 * ln2 / pi;
    return {full, classical, quantum, energy_per_bit};
}

}  // namespace releq

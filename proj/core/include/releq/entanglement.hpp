// Entanglement quantification: pure-state entanglement, relative entropy of
// entanglement by numerical minimization over the separable set,
// decomposition (memory-extended) measures, and entanglement-loss bounds.
#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "releq/qentropy.hpp"

namespace releq {

struct separable_ansatz {
    struct component {
        double weight;
        cxvec a;  // unit ket on d_a
        cxvec b;  // unit ket on d_b
    };
    std::vector<component> components;
    Eigen::Index d_a = 0;
    Eigen::Index d_b = 0;

    // sum_k w_k |a_k b_k><a_k b_k|
    cxmat assemble() const;
    static separable_ansatz random(Eigen::Index d_a, Eigen::Index d_b, int count, rng& gen);
};

struct ree_options {
    int component_count = 0;  // 0 means (d_a * d_b)^2
    int restarts = 8;
    int max_iters = 5000;     // sweeps per restart
    double tol = 1e-8;        // relative objective decrease per sweep
    std::uint64_t seed = 0;
};

struct ree_result {
    double value = 0.0;  // bits
    density_matrix closest_state;
    int iterations = 0;  // sweeps spent in the best restart
    bool converged = false;
    int restarts_used = 0;
};

// Entanglement of a bipartite pure state: entropy of either reduced state.
double pure_entanglement(const ket& psi, units u = units::bits);

// Relative entropy of entanglement  min_{sigma separable} S(rho || sigma),
// by multi-restart alternating projected gradient over a separable ansatz.
// Supported problem size d_a * d_b <= 16.  The same distance-to-separable
// definition extends to N parties (mixtures of N-fold product states); only
// the bipartite optimizer is provided here.
ree_result ree(const density_matrix& rho, const ree_options& opts = {});

// Regularized REE objective S(rho || (1-eps) sigma + eps I/d) in nats, and
// its gradient with respect to sigma (d f = Tr(G dSigma)).  Exposed for
// finite-difference validation.
double ree_objective(const density_matrix& rho, const cxmat& sigma);
cxmat ree_gradient(const density_matrix& rho, const cxmat& sigma);

// Average pure-state entanglement sum_i p_i E_v(psi_i) of an ensemble of
// bipartite pure states.  Also rebuilds the memory-extended state and its
// off-diagonal-deleted separable partner and checks the displayed
// relative-entropy identity before returning.
double ensemble_entanglement(const ensemble& e, units u = units::bits);

struct loss_bound_result {
    double lhs;  // sum p_i E(rho_i) - E(average)
    double rhs;  // sum p_i S(rho_i || average)
    bool holds;
};

// Entanglement-loss bound: the loss under mixing is capped by the Holevo
// quantity.  The slack absorbs optimizer tolerance when E is an optimizer.
loss_bound_result entanglement_loss_bound(
    const ensemble& e, const std::function<double(const density_matrix&)>& entanglement_bits,
    double slack = 0.0);

// Dense-coding cap 1 + S(rho_B) - S(rho_AB) in bits for a two-qubit state.
double cgdc_bound(const density_matrix& rho_ab);

// Upper bound min[S(rho_A), S(rho_B)] on the entanglement of assistance.
double assistance_upper_bound(const density_matrix& rho_ab, units u = units::bits);

}  // namespace releq

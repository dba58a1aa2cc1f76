// CP-maps in Kraus form, their unitary dilation, selective measurement
// updates, and the positive-partial-transpose separability test.
#pragma once

#include <utility>
#include <vector>

#include "releq/classical_info.hpp"
#include "releq/qstate.hpp"

namespace releq {

struct kraus_channel {
    std::vector<cxmat> ops;

    // Validates the completeness sum  sum_i A_i^dagger A_i = I.
    static kraus_channel make(std::vector<cxmat> ops);
    Eigen::Index dim() const { return ops.empty() ? 0 : ops[0].rows(); }
    std::size_t size() const { return ops.size(); }
};

struct dilation {
    cxmat unitary;      // on dim * ancilla_dim
    ket ancilla_state;  // |alpha>, dimension ancilla_dim
    Eigen::Index ancilla_dim;
};

struct selective_branch {
    double probability;
    density_matrix state;
};

struct ppt_result {
    double min_eigenvalue;  // of rho^{T_B}
    bool is_ppt;
    // The verdict "not PPT implies entangled and vice versa" is exact only
    // for 2x2 and 2x3 systems; elsewhere PPT is merely necessary.
    bool verdict_is_decisive;
};

density_matrix apply(const kraus_channel& ch, const density_matrix& rho);

// Outcome-resolved application: pairs (p_j, A_j rho A_j^dagger / p_j).
// Branches with probability below 1e-14 are dropped.
std::vector<selective_branch> selective_apply(const kraus_channel& ch,
                                              const density_matrix& rho);

// Probabilities Tr(rho E_i) of a positive operator-valued measure.
prob_dist povm_probs(const std::vector<cxmat>& effects, const density_matrix& rho);

// W = sum_i V_i (x) |i><alpha| completed to a unitary on dim * K.
dilation dilate(const kraus_channel& ch);

// Applies the dilation: Tr_ancilla { U (rho (x) |alpha><alpha|) U^dagger }.
density_matrix apply_dilation(const dilation& d, const density_matrix& rho);

ppt_result ppt_check(const density_matrix& rho);

// Haar-random unitary via QR of a complex Gaussian matrix.
cxmat random_unitary(Eigen::Index dim, rng& gen);

// Random channel with K Kraus operators, sliced from a Haar unitary on
// dim * K; trace preserving by construction.
kraus_channel random_channel(Eigen::Index dim, Eigen::Index kraus_count, rng& gen);

// Random POVM: random PSD effects normalized so they sum to the identity.
std::vector<cxmat> random_povm(Eigen::Index dim, std::size_t effect_count, rng& gen);

}  // namespace releq

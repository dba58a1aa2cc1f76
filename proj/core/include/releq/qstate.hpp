// Quantum state layer: pure states, density matrices, the Schmidt
// decomposition, purification, fidelity and the Bures metric.
#pragma once

#include <vector>

#include "releq/matcore.hpp"

namespace releq {

struct ket {
    cxvec amps;
    std::vector<Eigen::Index> dims;  // subsystem dimensions, slow index first

    static ket make(cxvec amps, std::vector<Eigen::Index> dims);
    Eigen::Index dim() const { return amps.size(); }
};

struct density_matrix {
    cxmat mat;
    std::vector<Eigen::Index> dims;

    static density_matrix make(cxmat mat, std::vector<Eigen::Index> dims);
    static density_matrix from_ket(const ket& psi);
    Eigen::Index dim() const { return mat.rows(); }
    bool is_bipartite() const { return dims.size() == 2; }
};

struct schmidt_decomposition {
    std::vector<double> coeffs;  // nonnegative, descending
    std::vector<cxvec> basis_a;
    std::vector<cxvec> basis_b;
};

// Schmidt form of a bipartite pure state, by eigendecomposition of the
// reduced state of the smaller factor.  Coefficients below 1e-12 get basis
// vectors by orthonormal extension rather than division.
schmidt_decomposition schmidt(const ket& psi);

// Reassemble sum_n g_n |u_n>|v_n>; for comparing against the input up to
// global phase.
ket schmidt_reassemble(const schmidt_decomposition& sd, Eigen::Index d_a, Eigen::Index d_b);

// |Psi> on dims (d, d) whose partial trace over the second factor is rho.
ket purify(const density_matrix& rho);

// Uhlmann fidelity Tr sqrt(sqrt(rho) sigma sqrt(rho)), clamped to [0, 1].
double fidelity(const density_matrix& rho, const density_matrix& sigma);

// Bures metric sqrt(1 - F^2).
double bures_distance(const density_matrix& rho, const density_matrix& sigma);

// Trace distance (1/2) || rho - sigma ||_1.
double trace_distance(const density_matrix& rho, const density_matrix& sigma);

// Haar-distributed pure state (normalized isotropic complex Gaussian).
ket random_state(Eigen::Index dim, rng& gen);

// Random density of the given rank: partial trace of a random pure state
// on dim x rank.
density_matrix random_density(Eigen::Index dim, Eigen::Index rank, rng& gen);

// True when the two kets differ only by a global unit phase.
bool equal_up_to_phase(const cxvec& a, const cxvec& b, double tol = 1e-9);

// Reduced state of one factor of a bipartite state.
density_matrix reduced_state(const density_matrix& rho, int keep);
density_matrix reduced_state(const ket& psi, int keep);

}  // namespace releq

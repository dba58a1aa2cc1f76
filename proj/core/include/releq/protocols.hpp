// Executable protocol layer: teleportation, dense coding, Schumacher
// compression with typical-subspace projection, Landauer erasure, and the
// Bekenstein limits.
#pragma once

#include <array>
#include <cstdint>

#include "releq/qentropy.hpp"

namespace releq {

struct teleportation_outcome {
    int classical_bits;        // 0..3: Phi+, Phi-, Psi+, Psi-
    ket output;                // Bob's qubit after the Pauli correction
    double fidelity_to_input;
    cxmat alice_residual;      // Alice's input qubit after the measurement
};

// One teleportation run; the Bell outcome is drawn from the exact branch
// probabilities.
teleportation_outcome teleport(const ket& input, rng& gen);

// Deterministic variant enumerating all four Bell branches with their
// probabilities.
std::array<std::pair<double, teleportation_outcome>, 4> teleport_branches(const ket& input);

// Dense-coding capacity over pure letters a|00> + b|11> as a function of
// the Schmidt weight x = |a|^2, in bits.
double dense_coding_capacity(double schmidt_weight);

// Special dense coding: Holevo value of the four equiprobable Pauli-rotated
// letters generated from the shared two-qubit state w0.
double sdc_capacity(const density_matrix& w0);

struct compression_report {
    std::size_t block_length;
    std::uint64_t typical_dim;
    double success_prob;
    double rate_bits_per_symbol;
    double source_entropy_bits;  // H2((1 + sin theta) / 2)
};

// Typical-subspace compression of the two-letter source with overlap
// sin(theta); success probability estimated by projecting sampled message
// strings onto the typical subspace.
compression_report schumacher_compress(double theta, std::size_t block_length,
                                       std::size_t trials, std::uint64_t seed);

// Total entropy increase -Tr(rho log omega) of erasing apparatus state rho
// into a reservoir in state omega; +infinity when omega is rank deficient.
double landauer_erasure(const density_matrix& rho, const density_matrix& omega,
                        units u = units::bits);

struct bekenstein_result {
    double max_bits;           // 2 pi E R / (hbar c ln 2)
    double processing_rate;    // E / (2 hbar ln 2) bits per second
};
bekenstein_result bekenstein(double energy_joules, double radius_meters);

// Bell basis |Phi+>, |Phi->, |Psi+>, |Psi->.
std::array<cxvec, 4> bell_basis();

// Pauli matrices I, X, Y, Z.
std::array<cxmat, 4> pauli_matrices();

}  // namespace releq

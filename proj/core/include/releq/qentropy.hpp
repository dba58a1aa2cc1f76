// Entropy measures: von Neumann entropy, quantum relative entropy with
// support handling, quantum mutual information, the Holevo bound, and the
// wide-band bosonic channel capacity.
#pragma once

#include <vector>

#include "releq/classical_info.hpp"
#include "releq/qchannel.hpp"
#include "releq/qstate.hpp"

namespace releq {

struct ensemble {
    struct member {
        double prob;
        density_matrix state;
    };
    std::vector<member> items;

    static ensemble make(std::vector<member> items);
    Eigen::Index dim() const { return items.empty() ? 0 : items[0].state.dim(); }
    density_matrix average() const;
};

double von_neumann(const density_matrix& rho, units u = units::bits);

// S(sigma || rho) = Tr sigma (ln sigma - ln rho).  Returns +infinity when
// sigma has mass on the kernel of rho (projected mass above 1e-9).
double qrelent(const density_matrix& sigma, const density_matrix& rho,
               units u = units::bits);

// Relative entropy Tr a (ln a - ln b) for PSD operators that need not have
// unit trace; used for the branch terms of selective monotonicity checks.
double qrelent_operators(const cxmat& a, const cxmat& b, units u = units::bits);

// I(A:B) = S(A) + S(B) - S(AB) of a bipartite state.
double qmutual(const density_matrix& rho_ab, units u = units::bits);

// chi = S(sum p_i rho_i) - sum p_i S(rho_i).
double holevo(const ensemble& e, units u = units::bits);

// Classical mutual information between the ensemble label and the POVM
// outcome, from the joint p_i Tr(rho_i E_j).
double accessible_info(const ensemble& e, const std::vector<cxmat>& effects,
                       units u = units::bits);

struct bosonic_capacity_result {
    double capacity;        // bits per second, full formula
    double classical_limit; // S / (k T ln 2)
    double quantum_limit;   // sqrt(pi S / (3 hbar)) / ln 2, the T -> 0 limit
    double energy_per_bit_at_unit_rate;  // joules needed per bit at 1 bit/s
};

// Wide-band thermal-noise channel capacity at signal power (watts) and
// noise temperature (kelvin).  T = 0 routes to the quantum limit.
bosonic_capacity_result bosonic_capacity(double signal_power, double temperature);

}  // namespace releq

// Query-model quantum computation: Deutsch's algorithm with its Holevo
// diagnostic, Grover mutual-information traces for the two-register
// communication model, entropy step bounds, the bitwise-oracle variant, and
// the no-speedup threshold.
#pragma once

#include <string>
#include <vector>

#include "releq/qentropy.hpp"

namespace releq {

// A register of up to 12 qubits carried as a density matrix with all
// subsystem dimensions equal to 2.
struct qubit_register {
    int n_qubits = 0;
    density_matrix state;

    static qubit_register make(density_matrix state);
    // Product register tensor_n (p|0><0| + (1-p)|1><1|).
    static qubit_register product(int n_qubits, double p);
};

enum class deutsch_verdict { constant, varying };

struct deutsch_result {
    deutsch_verdict verdict;
    int queries_used;       // always 1
    double holevo_diag;     // bits; distinguishability of the two output classes
    ket first_qubit_output; // |0> for constant, |1> for varying
};

// f encoded as two bits "f(0)f(1)": one of "00", "01", "10", "11".
deutsch_result deutsch(const std::string& truth_table);

struct grover_iteration {
    int k;
    double mutual_info_bits;       // I_MC(k) = S(avg) - S(initial)
    double s_avg_bits;             // entropy of the averaged computational register
    double bures_step;             // d_B(avg(k-1), avg(k)); 0 at k = 0
    double branch_entropy_mean_bits;
};

struct grover_trace_result {
    std::vector<grover_iteration> iterations;  // k = 0 .. k_max
    int n_qubits;
    double p;             // per-qubit initial weight on |0>
    int marked_count;     // single-solution oracle per memory branch
    double s0_bits;       // entropy of the initial register
    std::vector<cxmat> averaged_states;  // for recurrence diagnostics
};

// Mutual-information dynamics of the search: memory uniformly mixed over
// the N = 2^n oracle branches, computational register started in
// tensor_n (p|0><0| + (1-p)|1><1|), block = f0 . H . U_B . H per iteration.
grover_trace_result grover_trace(int n_qubits, double p, int k_max);

struct step_bound_entry {
    int k;
    double delta_s_bits;   // |S(k) - S(k-1)|
    double bound_bits;     // d_B log2 N - d_B log2 d_B
};

struct step_bound_report {
    std::vector<step_bound_entry> entries;  // k = 1 .. k_max
    double first_step_cap_bits;  // (3 / sqrt(N)) log2 N
    double first_step_delta_bits;
    double first_step_fidelity;  // F(avg(0), avg(1))
    double query_floor;          // sqrt(N) / 3
};

step_bound_report step_bound_check(const grover_trace_result& trace);

struct bitwise_trace_result {
    int queries_to_full_correlation;
    std::vector<double> mutual_info_bits;  // after query 1, 2, ..., n
};

// One bit-position comparison query per step; gains exactly one bit of
// mutual information per query and reaches log2 N after n queries.
bitwise_trace_result bitwise_oracle_trace(int n_qubits);

// Sufficient (not necessary) condition for no quantum speed-up:
// S(initial register) >= (1/2) log2 N.
bool no_speedup_predicate(double s0_bits, int n_qubits);

// Hadamard transform on n qubits as a dense matrix.
cxmat hadamard_transform(int n_qubits);

}  // namespace releq

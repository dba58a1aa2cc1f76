#include "releq/qalgo.hpp"

#include <cmath>

namespace releq {

namespace {

double entropy_bits(const cxmat& state) {
    Eigen::SelfAdjointEigenSolver<cxmat> eig(0.5 * (state + state.adjoint()),
                                             Eigen::EigenvaluesOnly);
    double s = 0.0;
    for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i) {
        s -= xlnx(std::max(0.0, eig.eigenvalues()[i]));
    }
    return std::max(s, 0.0) / ln2;
}

density_matrix as_qubit_density(const cxmat& m, int n_qubits) {
    std::vector<Eigen::Index> dims(static_cast<std::size_t>(n_qubits), 2);
    cxmat h = 0.5 * (m + m.adjoint());
    h /= h.trace().real();
    return density_matrix{h, dims};
}

}  // namespace

cxmat hadamard_transform(int n_qubits) {
    cxmat h1(2, 2);
    const double r = 1.0 / std::sqrt(2.0);
    h1 << r, r, r, -r;
    cxmat h = cxmat::Identity(1, 1);
    for (int i = 0; i < n_qubits; ++i) h = tensor(h, h1);
    return h;
}

qubit_register qubit_register::make(density_matrix state) {
    const std::size_t n = state.dims.size();
    if (n < 1 || n > 12) throw too_large_error("qubit_register: 1 to 12 qubits");
    for (Eigen::Index d : state.dims) {
        if (d != 2) throw dim_mismatch_error("qubit_register: every subsystem must be a qubit");
    }
    return qubit_register{static_cast<int>(n), std::move(state)};
}

qubit_register qubit_register::product(int n_qubits, double p) {
    if (n_qubits < 1 || n_qubits > 12) throw too_large_error("qubit_register: 1 to 12 qubits");
    if (p < 0.0 || p > 1.0) throw out_of_range_error("qubit_register: p must lie in [0,1]");
    cxmat qubit(2, 2);
    qubit << p, 0, 0, 1 - p;
    cxmat state = cxmat::Identity(1, 1);
    for (int i = 0; i < n_qubits; ++i) state = tensor(state, qubit);
    std::vector<Eigen::Index> dims(static_cast<std::size_t>(n_qubits), 2);
    return make(density_matrix::make(std::move(state), std::move(dims)));
}

deutsch_result deutsch(const std::string& truth_table) {
    if (truth_table.size() != 2 ||
        (truth_table[0] != '0' && truth_table[0] != '1') ||
        (truth_table[1] != '0' && truth_table[1] != '1')) {
        throw validation_error("deutsch: truth table must be one of 00, 01, 10, 11");
    }
    const int f0 = truth_table[0] - '0';
    const int f1 = truth_table[1] - '0';

    // Runs the circuit for a given truth table and returns the first-qubit
    // reduced state after the final Hadamard.
    auto run = [](int g0, int g1) {
        cxvec state(4);
        state << 0.5, -0.5, 0.5, -0.5;  // (|0> + |1>)(|0> - |1>) / 2
        // |x y> -> |x, y xor g(x)>
        cxvec mapped = cxvec::Zero(4);
        for (int x = 0; x < 2; ++x) {
            int g = x == 0 ? g0 : g1;
            for (int y = 0; y < 2; ++y) mapped[x * 2 + (y ^ g)] = state[x * 2 + y];
        }
        cxmat h_first = tensor(hadamard_transform(1), identity(2));
        cxvec out = h_first * mapped;
        return partial_trace(projector(out), 2, 2, 0);
    };

    cxmat first = run(f0, f1);
    const bool constant = first(0, 0).real() > 0.5;

    // Output classes over the four possible functions: the distinguishability
    // of "constant" vs "varying" outputs is the algorithm's efficiency.
    cxmat rho_const = 0.5 * (run(0, 0) + run(1, 1));
    cxmat rho_vary = 0.5 * (run(0, 1) + run(1, 0));
    cxmat rho_avg = 0.5 * (rho_const + rho_vary);
    double diag = entropy_bits(rho_avg) -
                  0.5 * (entropy_bits(rho_const) + entropy_bits(rho_vary));

    deutsch_result out;
    out.verdict = constant ? deutsch_verdict::constant : deutsch_verdict::varying;
    out.queries_used = 1;
    out.holevo_diag = std::max(diag, 0.0);
    cxvec first_qubit(2);
    first_qubit << (constant ? 1.0 : 0.0), (constant ? 0.0 : 1.0);
    out.first_qubit_output = ket{first_qubit, {2}};
    return out;
}

grover_trace_result grover_trace(int n_qubits, double p, int k_max) {
    if (n_qubits < 1 || n_qubits > 6) {
        throw too_large_error("grover_trace: n_qubits limited to 6 for the full branch mixture");
    }
    if (p < 0.0 || p > 1.0) throw out_of_range_error("grover_trace: p must lie in [0,1]");
    const Eigen::Index n = 1LL << n_qubits;

    // Initial register: product of per-qubit mixtures.
    cxmat rho0 = qubit_register::product(n_qubits, p).state.mat;
    const double s0 = entropy_bits(rho0);

    const cxmat h = hadamard_transform(n_qubits);
    // Per-branch block W_i = f0 . H . U_B(i) . H.
    std::vector<cxmat> blocks;
    blocks.reserve(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        cxmat ub_h = h;
        ub_h.row(i) *= -1.0;          // U_B(i) H
        cxmat w = h * ub_h;           // H U_B(i) H
        w.row(0) *= -1.0;             // f0 in front of |00...0>
        blocks.push_back(w);
    }

    std::vector<cxmat> branch_states(static_cast<std::size_t>(n), rho0);
    grover_trace_result trace;
    trace.n_qubits = n_qubits;
    trace.p = p;
    trace.marked_count = 1;
    trace.s0_bits = s0;

    cxmat prev_avg;
    for (int k = 0; k <= k_max; ++k) {
        if (k > 0) {
            for (Eigen::Index i = 0; i < n; ++i) {
                const cxmat& w = blocks[static_cast<std::size_t>(i)];
                cxmat& st = branch_states[static_cast<std::size_t>(i)];
                st = w * st * w.adjoint();
            }
        }
        cxmat avg = cxmat::Zero(n, n);
        double branch_entropy_sum = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            avg += branch_states[static_cast<std::size_t>(i)];
            branch_entropy_sum += entropy_bits(branch_states[static_cast<std::size_t>(i)]);
        }
        avg /= static_cast<double>(n);
        avg = 0.5 * (avg + avg.adjoint());

        grover_iteration it;
        it.k = k;
        it.s_avg_bits = entropy_bits(avg);
        it.mutual_info_bits = std::max(it.s_avg_bits - s0, 0.0);
        it.branch_entropy_mean_bits = branch_entropy_sum / static_cast<double>(n);
        if (k == 0) {
            it.bures_step = 0.0;
        } else {
            it.bures_step = bures_distance(as_qubit_density(prev_avg, n_qubits),
                                           as_qubit_density(avg, n_qubits));
        }
        trace.iterations.push_back(it);
        trace.averaged_states.push_back(avg);
        prev_avg = avg;
    }
    return trace;
}

step_bound_report step_bound_check(const grover_trace_result& trace) {
    const double n = std::pow(2.0, trace.n_qubits);
    const double log2n = static_cast<double>(trace.n_qubits);
    step_bound_report report;
    for (std::size_t k = 1; k < trace.iterations.size(); ++k) {
        double ds = std::abs(trace.iterations[k].s_avg_bits - trace.iterations[k - 1].s_avg_bits);
        if (ds < 1e-12) ds = 0.0;
        double db = trace.iterations[k].bures_step;
        double bound = db * log2n - (db > 0.0 ? db * std::log2(db) : 0.0);
        report.entries.push_back({static_cast<int>(k), ds, bound});
    }
    report.first_step_cap_bits = 3.0 / std::sqrt(n) * log2n;
    report.first_step_delta_bits = report.entries.empty() ? 0.0 : report.entries[0].delta_s_bits;
    if (trace.averaged_states.size() >= 2) {
        report.first_step_fidelity =
            fidelity(as_qubit_density(trace.averaged_states[0], trace.n_qubits),
                     as_qubit_density(trace.averaged_states[1], trace.n_qubits));
    } else {
        report.first_step_fidelity = 1.0;
    }
    report.query_floor = std::sqrt(n) / 3.0;
    return report;
}

bitwise_trace_result bitwise_oracle_trace(int n_qubits) {
    if (n_qubits < 1 || n_qubits > 6) {
        throw too_large_error("bitwise_oracle_trace: n_qubits limited to 6");
    }
    const Eigen::Index n = 1LL << n_qubits;
    // All branches start in |+>^n; the query at bit position q flips the
    // sign of components whose bit q matches the marked bit value 1.
    std::vector<cxvec> branches(static_cast<std::size_t>(n));
    cxvec plus = cxvec::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
    for (auto& b : branches) b = plus;

    bitwise_trace_result out;
    out.queries_to_full_correlation = 0;
    for (int q = 0; q < n_qubits; ++q) {
        const Eigen::Index mask = 1LL << (n_qubits - 1 - q);
        for (Eigen::Index i = 0; i < n; ++i) {
            if (!(i & mask)) continue;  // marked bit value 0: no phase anywhere
            cxvec& psi = branches[static_cast<std::size_t>(i)];
            for (Eigen::Index j = 0; j < n; ++j) {
                if (j & mask) psi[j] = -psi[j];
            }
        }
        cxmat avg = cxmat::Zero(n, n);
        for (const cxvec& psi : branches) avg += projector(psi);
        avg /= static_cast<double>(n);
        out.mutual_info_bits.push_back(entropy_bits(avg));
        out.queries_to_full_correlation = q + 1;
        if (std::abs(out.mutual_info_bits.back() - static_cast<double>(n_qubits)) < 1e-9) break;
    }
    return out;
}

bool no_speedup_predicate(double s0_bits, int n_qubits) {
    if (s0_bits < 0.0) throw out_of_range_error("no_speedup_predicate: entropy must be >= 0");
    return s0_bits >= 0.5 * static_cast<double>(n_qubits);
}

}  // namespace releq

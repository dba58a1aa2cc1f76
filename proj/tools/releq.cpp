// releq: batch command-line surface over the toolkit.  Every run echoes its
// resolved configuration, writes output atomically, and is deterministic
// for a fixed seed.  Exit codes: 0 success, 2 validation error.
#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "releq/json_io.hpp"
#include "releq/protocols.hpp"
#include "releq/qalgo.hpp"
#include "selftest.hpp"

namespace {

using namespace releq;

struct run_config {
    std::string command;
    units u = units::bits;
    std::uint64_t seed = 0;
    std::string out_path;  // empty: stdout
};

std::string units_name(units u) { return u == units::bits ? "bits" : "nats"; }

// RELEQ_SEED overrides --seed when present.
std::uint64_t resolve_seed(std::uint64_t flag_seed) {
    if (const char* env = std::getenv("RELEQ_SEED")) {
        return std::strtoull(env, nullptr, 10);
    }
    return flag_seed;
}

std::vector<std::string> config_lines(const run_config& cfg,
                                      const std::vector<std::string>& extra = {}) {
    std::vector<std::string> lines;
    lines.push_back("command=" + cfg.command);
    lines.push_back("units=" + units_name(cfg.u));
    lines.push_back("seed=" + std::to_string(cfg.seed));
    for (const std::string& e : extra) lines.push_back(e);
    return lines;
}

void write_atomic(const std::string& path, const std::string& body) {
    std::ofstream out(path + ".tmp", std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot open " + path + ".tmp");
    out << body;
    out.close();
    std::filesystem::rename(path + ".tmp", path);
}

void deliver(const run_config& cfg, const csv_table& table) {
    if (cfg.out_path.empty()) {
        std::cout << render_csv(table);
    } else {
        emit_csv(table, cfg.out_path);
    }
}

void deliver_json(const run_config& cfg, const json& j) {
    for (const std::string& line : config_lines(cfg)) std::cout << "# " << line << "\n";
    if (cfg.out_path.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        save_json(j, cfg.out_path);
        std::cout << "wrote " << cfg.out_path << "\n";
    }
}

// The default output shape: a (quantity, value, units) table.
void emit_quantities(const run_config& cfg, const std::vector<std::string>& extra_config,
                     const std::vector<std::pair<std::string, double>>& rows,
                     const std::vector<std::string>& row_units) {
    std::string body;
    for (const std::string& line : config_lines(cfg, extra_config)) body += "# " + line + "\n";
    body += "quantity,value,units\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        body += rows[i].first + "," + format_sig10(rows[i].second) + "," + row_units[i] + "\n";
    }
    if (cfg.out_path.empty()) {
        std::cout << body;
    } else {
        write_atomic(cfg.out_path, body);
    }
}

// Minimal SVG polyline rendering of a curve; no plotting dependency.
void emit_svg(const std::string& path, const std::vector<double>& xs,
              const std::vector<double>& ys, const std::string& x_label,
              const std::string& y_label) {
    const double w = 640, h = 420, margin = 50;
    double xmin = xs.front(), xmax = xs.back(), ymin = 0.0, ymax = 0.0;
    for (double y : ys) ymax = std::max(ymax, y);
    if (ymax <= ymin) ymax = ymin + 1.0;
    std::ostringstream svg;
    svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << w << "' height='" << h << "'>\n"
        << "<rect width='100%' height='100%' fill='white'/>\n"
        << "<line x1='" << margin << "' y1='" << h - margin << "' x2='" << w - margin
        << "' y2='" << h - margin << "' stroke='black'/>\n"
        << "<line x1='" << margin << "' y1='" << margin << "' x2='" << margin << "' y2='"
        << h - margin << "' stroke='black'/>\n"
        << "<text x='" << w / 2 << "' y='" << h - 10 << "' font-size='14'>" << x_label
        << "</text>\n"
        << "<text x='15' y='" << h / 2 << "' font-size='14' transform='rotate(-90 15 " << h / 2
        << ")'>" << y_label << "</text>\n"
        << "<polyline fill='none' stroke='steelblue' stroke-width='1.5' points='";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double px = margin + (xs[i] - xmin) / (xmax - xmin) * (w - 2 * margin);
        double py = h - margin - (ys[i] - ymin) / (ymax - ymin) * (h - 2 * margin);
        svg << px << "," << py << " ";
    }
    svg << "'/>\n</svg>\n";
    write_atomic(path, svg.str());
}

// ---------- subcommand bodies ----------

int cmd_entropy(const run_config& cfg, const std::string& state_path) {
    density_matrix rho = density_from_json(load_json(state_path));
    std::vector<std::pair<std::string, double>> rows;
    std::vector<std::string> row_units;
    rows.push_back({"von_neumann_entropy", von_neumann(rho, cfg.u)});
    row_units.push_back(units_name(cfg.u));
    if (rho.is_bipartite()) {
        rows.push_back({"entropy_A", von_neumann(reduced_state(rho, 0), cfg.u)});
        rows.push_back({"entropy_B", von_neumann(reduced_state(rho, 1), cfg.u)});
        rows.push_back({"quantum_mutual_information", qmutual(rho, cfg.u)});
        row_units.insert(row_units.end(), 3, units_name(cfg.u));
    }
    emit_quantities(cfg, {"state=" + state_path}, rows, row_units);
    return 0;
}

int cmd_holevo(const run_config& cfg, const std::string& ensemble_path) {
    ensemble e = ensemble_from_json(load_json(ensemble_path));
    double chi = holevo(e, cfg.u);
    density_matrix avg = e.average();
    double via_relent = 0.0;
    for (const auto& m : e.items) via_relent += m.prob * qrelent(m.state, avg, cfg.u);
    emit_quantities(cfg, {"ensemble=" + ensemble_path},
                    {{"holevo_bound", chi}, {"holevo_via_relative_entropy", via_relent}},
                    {units_name(cfg.u), units_name(cfg.u)});
    return 0;
}

int cmd_ree(const run_config& cfg, const std::string& state_path, int restarts, int max_iters,
            double tol, int components, const std::string& closest_path) {
    density_matrix rho = density_from_json(load_json(state_path));
    ree_options opts;
    opts.restarts = restarts;
    opts.max_iters = max_iters;
    opts.tol = tol;
    opts.component_count = components;
    opts.seed = cfg.seed;
    ree_result r = ree(rho, opts);
    json j = ree_result_to_json(r);
    j["assistance_upper_bound_bits"] = assistance_upper_bound(rho);
    if (!closest_path.empty()) {
        save_json(density_to_json(r.closest_state), closest_path);
        j["closest_state_path"] = closest_path;
        j.erase("closest_state");
    }
    deliver_json(cfg, j);
    return 0;
}

int cmd_channel_apply(const run_config& cfg, const std::string& channel_path,
                      const std::string& state_path) {
    kraus_channel ch = channel_from_json(load_json(channel_path));
    density_matrix rho = density_from_json(load_json(state_path));
    deliver_json(cfg, density_to_json(apply(ch, rho)));
    return 0;
}

int cmd_channel_dilate(const run_config& cfg, const std::string& channel_path) {
    kraus_channel ch = channel_from_json(load_json(channel_path));
    deliver_json(cfg, dilation_to_json(dilate(ch)));
    return 0;
}

int cmd_ppt(const run_config& cfg, const std::string& state_path) {
    density_matrix rho = density_from_json(load_json(state_path));
    ppt_result r = ppt_check(rho);
    emit_quantities(cfg,
                    {"state=" + state_path,
                     std::string("decisive=") + (r.verdict_is_decisive ? "yes" : "no")},
                    {{"min_eigenvalue_partial_transpose", r.min_eigenvalue},
                     {"is_ppt", r.is_ppt ? 1.0 : 0.0}},
                    {"dimensionless", "boolean"});
    return 0;
}

int cmd_sanov(const run_config& cfg, const std::string& q_path, const std::string& set_path) {
    prob_dist q = prob_dist_from_json(load_json(q_path));
    json set_json = load_json(set_path);
    if (!set_json.contains("candidates")) {
        throw validation_error("sanov: candidate file needs a \"candidates\" array");
    }
    std::vector<prob_dist> candidates;
    for (const auto& item : set_json.at("candidates")) {
        candidates.push_back(prob_dist_from_json(item));
    }
    sanov_result r = sanov_exponent(q, candidates, cfg.u);
    csv_table t;
    t.config_lines = config_lines(cfg, {"q=" + q_path, "candidates=" + set_path,
                                        "argmin_index=" + std::to_string(r.argmin_index),
                                        "exponent=" + format_sig10(r.exponent)});
    t.columns = {"candidate", "kl_divergence"};
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        t.rows.push_back({static_cast<double>(i), kl_divergence(candidates[i], q, cfg.u)});
    }
    deliver(cfg, t);
    return 0;
}

int cmd_types(const run_config& cfg, const std::string& sequence, const std::string& alphabet,
              const std::string& q_path, int nmax) {
    type_record rec = type_of(sequence, alphabet);
    type_count_result counts = type_counting_bounds(rec.n, rec.alphabet_size);
    csv_table t;
    t.config_lines = config_lines(
        cfg, {"sequence=" + sequence, "alphabet=" + alphabet,
              "class_size=" + rec.class_size.str(), "type_count_exact=" + counts.exact.str(),
              "type_count_bound=" + counts.bound.str()});
    // Type-class probability sandwich for the sequence's type at every n <= nmax where
    // the type stays integral, under source q (uniform when not given).
    prob_dist q = q_path.empty()
                      ? prob_dist::make(std::vector<double>(
                            rec.alphabet_size, 1.0 / static_cast<double>(rec.alphabet_size)))
                      : prob_dist_from_json(load_json(q_path));
    t.columns = {"n", "exact", "lower", "upper"};
    for (int n = 1; n <= nmax; ++n) {
        bool integral = true;
        for (double pr : rec.type_dist.probs) {
            double scaled = pr * n;
            if (std::abs(scaled - std::round(scaled)) > 1e-9) integral = false;
        }
        if (!integral) continue;
        type_class_prob_result r = type_class_prob(q, rec.type_dist, static_cast<std::size_t>(n));
        t.rows.push_back({static_cast<double>(n), r.exact, r.lower, r.upper});
    }
    deliver(cfg, t);
    return 0;
}

int cmd_compress(const run_config& cfg, double theta, int n, int trials) {
    compression_report r = schumacher_compress(theta, static_cast<std::size_t>(n),
                                               static_cast<std::size_t>(trials), cfg.seed);
    emit_quantities(cfg,
                    {"theta=" + format_sig10(theta), "n=" + std::to_string(n),
                     "trials=" + std::to_string(trials)},
                    {{"typical_dim", static_cast<double>(r.typical_dim)},
                     {"success_prob", r.success_prob},
                     {"rate", r.rate_bits_per_symbol},
                     {"source_entropy", r.source_entropy_bits}},
                    {"dimensionless", "probability", "bits/symbol", "bits"});
    return 0;
}

int cmd_teleport_demo(const run_config& cfg, int trials) {
    rng gen(cfg.seed);
    std::array<int, 4> histogram{0, 0, 0, 0};
    double min_fidelity = 1.0;
    double worst_residual = 0.0;
    for (int trial = 0; trial < trials; ++trial) {
        ket input = random_state(2, gen);
        teleportation_outcome out = teleport(input, gen);
        ++histogram[static_cast<std::size_t>(out.classical_bits)];
        min_fidelity = std::min(min_fidelity, out.fidelity_to_input);
        worst_residual =
            std::max(worst_residual, max_abs_diff(out.alice_residual, 0.5 * identity(2)));
    }
    emit_quantities(cfg, {"trials=" + std::to_string(trials)},
                    {{"outcome_phi_plus", static_cast<double>(histogram[0])},
                     {"outcome_phi_minus", static_cast<double>(histogram[1])},
                     {"outcome_psi_plus", static_cast<double>(histogram[2])},
                     {"outcome_psi_minus", static_cast<double>(histogram[3])},
                     {"min_fidelity", min_fidelity},
                     {"max_alice_residual_deviation", worst_residual}},
                    {"count", "count", "count", "count", "probability", "dimensionless"});
    return 0;
}

int cmd_dense_coding_curve(const run_config& cfg, int points, const std::string& svg_path) {
    if (points < 2) throw validation_error("dense-coding-curve: need at least 2 points");
    csv_table t;
    t.config_lines = config_lines(cfg, {"points=" + std::to_string(points)});
    t.columns = {"x", "capacity_bits"};
    std::vector<double> xs, ys;
    for (int i = 0; i < points; ++i) {
        double x = static_cast<double>(i) / static_cast<double>(points - 1);
        double c = dense_coding_capacity(x);
        t.rows.push_back({x, c});
        xs.push_back(x);
        ys.push_back(c);
    }
    deliver(cfg, t);
    if (!svg_path.empty()) emit_svg(svg_path, xs, ys, "x = |a|^2", "capacity (bits)");
    return 0;
}

int cmd_landauer(const run_config& cfg, const std::string& state_path,
                 const std::string& reservoir_path) {
    density_matrix rho = density_from_json(load_json(state_path));
    density_matrix omega = density_from_json(load_json(reservoir_path));
    double er = landauer_erasure(rho, omega, cfg.u);
    emit_quantities(cfg, {"state=" + state_path, "reservoir=" + reservoir_path},
                    {{"erasure_entropy", er},
                     {"state_entropy", von_neumann(rho, cfg.u)},
                     {"relative_entropy", qrelent(rho, omega, cfg.u)}},
                    {units_name(cfg.u), units_name(cfg.u), units_name(cfg.u)});
    return 0;
}

int cmd_bosonic(const run_config& cfg, double power, double temperature) {
    bosonic_capacity_result r = bosonic_capacity(power, temperature);
    emit_quantities(cfg,
                    {"power_watts=" + format_sig10(power),
                     "temperature_kelvin=" + format_sig10(temperature),
                     "constants=CODATA 6-digit (hbar=1.05457e-34 J s, k=1.38065e-23 J/K)"},
                    {{"capacity", r.capacity},
                     {"classical_limit", r.classical_limit},
                     {"quantum_limit", r.quantum_limit},
                     {"energy_per_bit_at_unit_rate", r.energy_per_bit_at_unit_rate}},
                    {"bits/s", "bits/s", "bits/s", "joules"});
    return 0;
}

int cmd_bekenstein(const run_config& cfg, double energy, double radius) {
    bekenstein_result r = bekenstein(energy, radius);
    emit_quantities(cfg,
                    {"energy_joules=" + format_sig10(energy),
                     "radius_meters=" + format_sig10(radius)},
                    {{"max_bits", r.max_bits}, {"processing_rate", r.processing_rate}},
                    {"bits", "bits/s"});
    return 0;
}

int cmd_deutsch(const run_config& cfg, const std::string& truth_table) {
    deutsch_result r = deutsch(truth_table);
    std::string body;
    for (const std::string& line : config_lines(cfg, {"f=" + truth_table})) {
        body += "# " + line + "\n";
    }
    body += "quantity,value,units\n";
    body += std::string("verdict,") +
            (r.verdict == deutsch_verdict::constant ? "constant" : "varying") + ",label\n";
    body += "queries_used," + std::to_string(r.queries_used) + ",count\n";
    body += "holevo_diagnostic," + format_sig10(r.holevo_diag) + ",bits\n";
    if (cfg.out_path.empty()) {
        std::cout << body;
    } else {
        write_atomic(cfg.out_path, body);
    }
    return 0;
}

int cmd_grover_mi(const run_config& cfg, int qubits, double p, int kmax,
                  const std::string& svg_path) {
    grover_trace_result trace = grover_trace(qubits, p, kmax);
    step_bound_report bounds = step_bound_check(trace);
    csv_table t;
    t.config_lines = config_lines(
        cfg, {"qubits=" + std::to_string(qubits), "p=" + format_sig10(p),
              "kmax=" + std::to_string(kmax), "s0_bits=" + format_sig10(trace.s0_bits),
              "query_floor=" + format_sig10(bounds.query_floor)});
    t.columns = {"k", "I_MC", "bound"};
    std::vector<double> xs, ys;
    for (std::size_t k = 0; k < trace.iterations.size(); ++k) {
        double bound = k == 0 ? 0.0 : bounds.entries[k - 1].bound_bits;
        t.rows.push_back({static_cast<double>(k), trace.iterations[k].mutual_info_bits, bound});
        xs.push_back(static_cast<double>(k));
        ys.push_back(trace.iterations[k].mutual_info_bits);
    }
    deliver(cfg, t);
    if (!svg_path.empty()) emit_svg(svg_path, xs, ys, "iteration k", "I_MC (bits)");
    return 0;
}

int cmd_bitwise_trace(const run_config& cfg, int qubits) {
    bitwise_trace_result r = bitwise_oracle_trace(qubits);
    csv_table t;
    t.config_lines = config_lines(
        cfg, {"qubits=" + std::to_string(qubits),
              "queries_to_full_correlation=" + std::to_string(r.queries_to_full_correlation)});
    t.columns = {"query", "I_MC"};
    for (std::size_t q = 0; q < r.mutual_info_bits.size(); ++q) {
        t.rows.push_back({static_cast<double>(q + 1), r.mutual_info_bits[q]});
    }
    deliver(cfg, t);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"releq: relative-entropy quantum information toolkit"};
    app.require_subcommand(1);

    std::string units_flag = "bits";
    std::uint64_t seed_flag = 0;
    app.add_option("--units", units_flag, "Entropy units: bits or nats")
        ->check(CLI::IsMember({"bits", "nats"}));
    app.add_option("--seed", seed_flag, "RNG seed (env RELEQ_SEED overrides)");

    std::string out_path, state_path, channel_path, ensemble_path, q_path, set_path;
    std::string sequence, alphabet = "01", truth_table, closest_path, svg_path, only;
    int restarts = 8, max_iters = 5000, components = 0, nmax = 20;
    int trials = 1000, points = 101, qubits = 4, kmax = 40, block = 8, c_trials = 32;
    double tol = 1e-8, theta = 0.5235987755982988, p_weight = 1.0;
    double power = 0.0, temperature = 0.0, energy = 0.0, radius = 0.0;
    bool fast = false;

    auto* entropy_cmd = app.add_subcommand("entropy", "Entropies of a density matrix");
    entropy_cmd->add_option("--state", state_path, "DensityMatrix JSON")->required();
    entropy_cmd->add_option("--out", out_path, "Output path (default stdout)");

    auto* holevo_cmd = app.add_subcommand("holevo", "Holevo bound of an ensemble");
    holevo_cmd->add_option("--ensemble", ensemble_path, "Ensemble JSON")->required();
    holevo_cmd->add_option("--out", out_path, "Output path");

    auto* ree_cmd = app.add_subcommand("ree", "Relative entropy of entanglement");
    ree_cmd->add_option("--state", state_path, "DensityMatrix JSON")->required();
    ree_cmd->add_option("--restarts", restarts, "Optimizer restarts");
    ree_cmd->add_option("--max-iters", max_iters, "Sweeps per restart");
    ree_cmd->add_option("--tol", tol, "Relative objective decrease for convergence");
    ree_cmd->add_option("--components", components, "Ansatz components (0: (dA*dB)^2)");
    ree_cmd->add_option("--dump-closest", closest_path, "Write the closest separable state");
    ree_cmd->add_option("--out", out_path, "Output path");

    auto* channel_cmd = app.add_subcommand("channel", "Kraus channel operations");
    channel_cmd->require_subcommand(1);
    auto* ch_apply = channel_cmd->add_subcommand("apply", "Apply a channel to a state");
    ch_apply->add_option("--channel", channel_path, "Channel JSON")->required();
    ch_apply->add_option("--state", state_path, "DensityMatrix JSON")->required();
    ch_apply->add_option("--out", out_path, "Output path");
    auto* ch_dilate = channel_cmd->add_subcommand("dilate", "Unitary dilation of a channel");
    ch_dilate->add_option("--channel", channel_path, "Channel JSON")->required();
    ch_dilate->add_option("--out", out_path, "Output path");
    auto* ch_ppt = channel_cmd->add_subcommand("ppt", "PPT separability test");
    ch_ppt->add_option("--state", state_path, "DensityMatrix JSON")->required();
    ch_ppt->add_option("--out", out_path, "Output path");

    auto* ppt_cmd = app.add_subcommand("ppt", "PPT separability test");
    ppt_cmd->add_option("--state", state_path, "DensityMatrix JSON")->required();
    ppt_cmd->add_option("--out", out_path, "Output path");

    auto* sanov_cmd = app.add_subcommand("sanov", "Closest distribution in a candidate set");
    sanov_cmd->add_option("--q", q_path, "Reference distribution JSON")->required();
    sanov_cmd->add_option("--candidates", set_path, "{\"candidates\":[...]} JSON")->required();
    sanov_cmd->add_option("--out", out_path, "Output path");

    auto* types_cmd = app.add_subcommand("types", "Type of a sequence and its probability sandwich table");
    types_cmd->add_option("--sequence", sequence, "Symbol string, e.g. 011010")->required();
    types_cmd->add_option("--alphabet", alphabet, "Alphabet string (default 01)");
    types_cmd->add_option("--q", q_path, "Source distribution JSON (default uniform)");
    types_cmd->add_option("--nmax", nmax, "Largest n in the sandwich table");
    types_cmd->add_option("--out", out_path, "Output path");

    auto* compress_cmd = app.add_subcommand("compress", "Typical-subspace compression");
    compress_cmd->add_option("--theta", theta, "Letter separation angle (radians)");
    compress_cmd->add_option("--n", block, "Block length (<= 16)");
    compress_cmd->add_option("--trials", c_trials, "Sampled messages");
    compress_cmd->add_option("--out", out_path, "Output path");

    auto* teleport_cmd = app.add_subcommand("teleport-demo", "Monte-Carlo teleportation");
    teleport_cmd->add_option("--trials", trials, "Number of teleported states");
    teleport_cmd->add_option("--out", out_path, "Output path");

    auto* curve_cmd = app.add_subcommand("dense-coding-curve", "Capacity vs Schmidt weight");
    curve_cmd->add_option("--points", points, "Grid points");
    curve_cmd->add_option("--svg", svg_path, "Also render an SVG curve");
    curve_cmd->add_option("--out", out_path, "Output path");

    auto* landauer_cmd = app.add_subcommand("landauer", "Erasure entropy cost");
    landauer_cmd->add_option("--state", state_path, "Apparatus state JSON")->required();
    landauer_cmd->add_option("--reservoir", q_path, "Reservoir state JSON")->required();
    landauer_cmd->add_option("--out", out_path, "Output path");

    auto* bosonic_cmd = app.add_subcommand("bosonic", "Thermal-noise channel capacity");
    bosonic_cmd->add_option("--power", power, "Signal power (watts)")->required();
    bosonic_cmd->add_option("--temperature", temperature, "Noise temperature (kelvin)")
        ->required();
    bosonic_cmd->add_option("--out", out_path, "Output path");

    auto* bek_cmd = app.add_subcommand("bekenstein", "Ultimate storage and processing limits");
    bek_cmd->add_option("--energy", energy, "Total energy (joules)")->required();
    bek_cmd->add_option("--radius", radius, "Enclosing radius (meters)")->required();
    bek_cmd->add_option("--out", out_path, "Output path");

    auto* deutsch_cmd = app.add_subcommand("deutsch", "Deutsch's algorithm");
    deutsch_cmd->add_option("--f", truth_table, "Truth table f(0)f(1): 00, 01, 10 or 11")
        ->required();
    deutsch_cmd->add_option("--out", out_path, "Output path");

    auto* grover_cmd = app.add_subcommand("grover-mi", "Grover mutual-information trace");
    grover_cmd->add_option("--qubits", qubits, "Register size (<= 6)");
    grover_cmd->add_option("--p", p_weight, "Per-qubit initial weight on |0>");
    grover_cmd->add_option("--kmax", kmax, "Iterations to record");
    grover_cmd->add_option("--svg", svg_path, "Also render an SVG curve");
    grover_cmd->add_option("--out", out_path, "Output path");

    auto* bitwise_cmd = app.add_subcommand("bitwise-trace", "Bitwise-oracle correlation trace");
    bitwise_cmd->add_option("--qubits", qubits, "Register size (<= 6)");
    bitwise_cmd->add_option("--out", out_path, "Output path");

    auto* selftest_cmd = app.add_subcommand("selftest", "Run the library invariant suite");
    selftest_cmd->add_flag("--fast", fast, "Reduced trial counts");
    selftest_cmd->add_option("--only", only, "Restrict to one module");

    // Let --units/--seed appear after the subcommand name as well.
    for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough(true);
    for (CLI::App* sub : channel_cmd->get_subcommands({})) sub->fallthrough(true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    run_config cfg;
    cfg.u = units_flag == "nats" ? units::nats : units::bits;
    cfg.seed = resolve_seed(seed_flag);
    cfg.out_path = out_path;

    try {
        if (app.got_subcommand(entropy_cmd)) {
            cfg.command = "entropy";
            return cmd_entropy(cfg, state_path);
        }
        if (app.got_subcommand(holevo_cmd)) {
            cfg.command = "holevo";
            return cmd_holevo(cfg, ensemble_path);
        }
        if (app.got_subcommand(ree_cmd)) {
            cfg.command = "ree";
            return cmd_ree(cfg, state_path, restarts, max_iters, tol, components, closest_path);
        }
        if (app.got_subcommand(channel_cmd)) {
            if (channel_cmd->got_subcommand(ch_apply)) {
                cfg.command = "channel apply";
                return cmd_channel_apply(cfg, channel_path, state_path);
            }
            if (channel_cmd->got_subcommand(ch_dilate)) {
                cfg.command = "channel dilate";
                return cmd_channel_dilate(cfg, channel_path);
            }
            cfg.command = "channel ppt";
            return cmd_ppt(cfg, state_path);
        }
        if (app.got_subcommand(ppt_cmd)) {
            cfg.command = "ppt";
            return cmd_ppt(cfg, state_path);
        }
        if (app.got_subcommand(sanov_cmd)) {
            cfg.command = "sanov";
            return cmd_sanov(cfg, q_path, set_path);
        }
        if (app.got_subcommand(types_cmd)) {
            cfg.command = "types";
            return cmd_types(cfg, sequence, alphabet, q_path, nmax);
        }
        if (app.got_subcommand(compress_cmd)) {
            cfg.command = "compress";
            return cmd_compress(cfg, theta, block, c_trials);
        }
        if (app.got_subcommand(teleport_cmd)) {
            cfg.command = "teleport-demo";
            return cmd_teleport_demo(cfg, trials);
        }
        if (app.got_subcommand(curve_cmd)) {
            cfg.command = "dense-coding-curve";
            return cmd_dense_coding_curve(cfg, points, svg_path);
        }
        if (app.got_subcommand(landauer_cmd)) {
            cfg.command = "landauer";
            return cmd_landauer(cfg, state_path, q_path);
        }
        if (app.got_subcommand(bosonic_cmd)) {
            cfg.command = "bosonic";
            return cmd_bosonic(cfg, power, temperature);
        }
        if (app.got_subcommand(bek_cmd)) {
            cfg.command = "bekenstein";
            return cmd_bekenstein(cfg, energy, radius);
        }
        if (app.got_subcommand(deutsch_cmd)) {
            cfg.command = "deutsch";
            return cmd_deutsch(cfg, truth_table);
        }
        if (app.got_subcommand(grover_cmd)) {
            cfg.command = "grover-mi";
            return cmd_grover_mi(cfg, qubits, p_weight, kmax, svg_path);
        }
        if (app.got_subcommand(bitwise_cmd)) {
            cfg.command = "bitwise-trace";
            return cmd_bitwise_trace(cfg, qubits);
        }
        if (app.got_subcommand(selftest_cmd)) {
            cfg.command = "selftest";
            for (const std::string& line : config_lines(cfg)) std::cout << "# " << line << "\n";
            return run_selftest(fast, cfg.seed, only);
        }
    } catch (const releq::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    std::cerr << "error: no subcommand\n";
    return 2;
}

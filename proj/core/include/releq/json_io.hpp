// JSON wire formats for every value the CLI reads or writes, plus the CSV
// emitter used by all table-producing subcommands.
//
// Matrix form: {"rows":r,"cols":c,"data":[[re,im],...]} row-major.
// Ket form:    {"dims":[...],"amps":[[re,im],...]}.
// Density matrices reuse the matrix form plus "dims".
#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "releq/entanglement.hpp"
#include "releq/qchannel.hpp"

namespace releq {

using json = nlohmann::json;

json matrix_to_json(const cxmat& m);
cxmat matrix_from_json(const json& j);

json ket_to_json(const ket& k);
ket ket_from_json(const json& j);

json density_to_json(const density_matrix& rho);
density_matrix density_from_json(const json& j);

json channel_to_json(const kraus_channel& ch);
kraus_channel channel_from_json(const json& j);

json prob_dist_to_json(const prob_dist& p);
prob_dist prob_dist_from_json(const json& j);

json ensemble_to_json(const ensemble& e);
ensemble ensemble_from_json(const json& j);

json ree_result_to_json(const ree_result& r);

json dilation_to_json(const dilation& d);

json load_json(const std::string& path);
void save_json(const json& j, const std::string& path);  // atomic: temp + rename

// CSV with a '#'-prefixed config echo, a header row, and data rows printed
// with 10 significant digits.  Written atomically.
struct csv_table {
    std::vector<std::string> config_lines;  // echoed as "# key=value" lines
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};
std::string render_csv(const csv_table& table);
void emit_csv(const csv_table& table, const std::string& path);

std::string format_sig10(double v);

}  // namespace releq

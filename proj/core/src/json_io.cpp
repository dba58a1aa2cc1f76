#include "releq/json_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

namespace releq {

json matrix_to_json(const cxmat& m) {
    json data = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            data.push_back({m(r, c).real(), m(r, c).imag()});
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

cxmat matrix_from_json(const json& j) {
    try {
        const Eigen::Index rows = j.at("rows").get<Eigen::Index>();
        const Eigen::Index cols = j.at("cols").get<Eigen::Index>();
        const auto& data = j.at("data");
        if (rows < 1 || cols < 1 || static_cast<Eigen::Index>(data.size()) != rows * cols) {
            throw validation_error("matrix JSON: data length does not match rows*cols");
        }
        cxmat m(rows, cols);
        Eigen::Index idx = 0;
        for (const auto& entry : data) {
            m(idx / cols, idx % cols) =
                std::complex<double>(entry.at(0).get<double>(), entry.at(1).get<double>());
            ++idx;
        }
        if (!m.allFinite()) throw validation_error("matrix JSON: non-finite entry");
        return m;
    } catch (const json::exception& e) {
        throw validation_error(std::string("matrix JSON: ") + e.what());
    }
}

static std::vector<Eigen::Index> dims_from_json(const json& j) {
    std::vector<Eigen::Index> dims;
    for (const auto& d : j) dims.push_back(d.get<Eigen::Index>());
    return dims;
}

json ket_to_json(const ket& k) {
    json amps = json::array();
    for (Eigen::Index i = 0; i < k.amps.size(); ++i)
        amps.push_back({k.amps[i].real(), k.amps[i].imag()});
    return json{{"dims", k.dims}, {"amps", amps}};
}

ket ket_from_json(const json& j) {
    try {
        const auto& amps = j.at("amps");
        cxvec v(static_cast<Eigen::Index>(amps.size()));
        Eigen::Index idx = 0;
        for (const auto& entry : amps) {
            v[idx++] = std::complex<double>(entry.at(0).get<double>(), entry.at(1).get<double>());
        }
        std::vector<Eigen::Index> dims;
        if (j.contains("dims")) dims = dims_from_json(j.at("dims"));
        return ket::make(std::move(v), std::move(dims));
    } catch (const json::exception& e) {
        throw validation_error(std::string("ket JSON: ") + e.what());
    }
}

json density_to_json(const density_matrix& rho) {
    json j = matrix_to_json(rho.mat);
    j["dims"] = rho.dims;
    return j;
}

density_matrix density_from_json(const json& j) {
    cxmat m = matrix_from_json(j);
    std::vector<Eigen::Index> dims;
    if (j.contains("dims")) dims = dims_from_json(j.at("dims"));
    return density_matrix::make(std::move(m), std::move(dims));
}

json channel_to_json(const kraus_channel& ch) {
    json ops = json::array();
    for (const cxmat& a : ch.ops) ops.push_back(matrix_to_json(a));
    return json{{"kraus", ops}};
}

kraus_channel channel_from_json(const json& j) {
    try {
        std::vector<cxmat> ops;
        for (const auto& op : j.at("kraus")) ops.push_back(matrix_from_json(op));
        return kraus_channel::make(std::move(ops));
    } catch (const json::exception& e) {
        throw validation_error(std::string("channel JSON: ") + e.what());
    }
}

json prob_dist_to_json(const prob_dist& p) {
    json j{{"probs", p.probs}};
    if (!p.labels.empty()) j["labels"] = p.labels;
    return j;
}

prob_dist prob_dist_from_json(const json& j) {
    try {
        std::vector<double> probs = j.at("probs").get<std::vector<double>>();
        std::vector<std::string> labels;
        if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
        return prob_dist::make(std::move(probs), std::move(labels));
    } catch (const json::exception& e) {
        throw validation_error(std::string("prob_dist JSON: ") + e.what());
    }
}

json ensemble_to_json(const ensemble& e) {
    json items = json::array();
    for (const auto& m : e.items) {
        items.push_back(json{{"prob", m.prob}, {"state", density_to_json(m.state)}});
    }
    return json{{"items", items}};
}

ensemble ensemble_from_json(const json& j) {
    try {
        std::vector<ensemble::member> items;
        for (const auto& item : j.at("items")) {
            items.push_back({item.at("prob").get<double>(),
                             density_from_json(item.at("state"))});
        }
        return ensemble::make(std::move(items));
    } catch (const json::exception& e) {
        throw validation_error(std::string("ensemble JSON: ") + e.what());
    }
}

json ree_result_to_json(const ree_result& r) {
    return json{{"value_bits", r.value},
                {"iterations", r.iterations},
                {"converged", r.converged},
                {"restarts_used", r.restarts_used},
                {"closest_state", density_to_json(r.closest_state)}};
}

json dilation_to_json(const dilation& d) {
    return json{{"unitary", matrix_to_json(d.unitary)},
                {"ancilla_dim", d.ancilla_dim},
                {"ancilla_state", ket_to_json(d.ancilla_state)}};
}

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw validation_error(path + ": " + e.what());
    }
    return j;
}

static void atomic_write(const std::string& path, const std::string& contents) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw io_error("cannot open " + tmp + " for writing");
        out << contents;
        if (!out) throw io_error("short write to " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

void save_json(const json& j, const std::string& path) {
    atomic_write(path, j.dump(2) + "\n");
}

std::string format_sig10(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

std::string render_csv(const csv_table& table) {
    std::string out;
    for (const std::string& line : table.config_lines) out += "# " + line + "\n";
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        out += table.columns[i];
        out += (i + 1 == table.columns.size()) ? "\n" : ",";
    }
    for (const auto& row : table.rows) {
        if (row.size() != table.columns.size()) {
            throw io_error("csv: row width does not match the header");
        }
        for (std::size_t i = 0; i < row.size(); ++i) {
            out += format_sig10(row[i]);
            out += (i + 1 == row.size()) ? "\n" : ",";
        }
    }
    return out;
}

void emit_csv(const csv_table& table, const std::string& path) {
    atomic_write(path, render_csv(table));
}

}  // namespace releq

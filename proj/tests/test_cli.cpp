// End-to-end tests of the releq binary: every subcommand runs against a
// stored golden transcript (numeric cells compared at 1e-9 relative), plus
// determinism, seed-override and error-path checks.
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

namespace {

const std::string cli = RELEQ_CLI_PATH;
const std::string golden_dir = RELEQ_GOLDEN_DIR;
const std::string data_dir = RELEQ_DATA_DIR;

struct run_result {
    int exit_code;
    std::string output;
};

run_result run(const std::string& args, const std::string& env_prefix = "") {
    const std::string out_path =
        (std::filesystem::temp_directory_path() / "releq_cli_out.txt").string();
    std::string command = env_prefix + cli + " " + args + " > " + out_path + " 2>&1";
    int status = std::system(command.c_str());
    std::ifstream in(out_path);
    std::stringstream ss;
    ss << in.rdbuf();
    int code = -1;
    if (WIFEXITED(status)) code = WEXITSTATUS(status);
    return {code, ss.str()};
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    REQUIRE_MESSAGE(in.good(), "missing golden file ", path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool numeric_token(const std::string& s, double& value) {
    if (s.empty()) return false;
    char* end = nullptr;
    value = std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size();
}

// Token-wise comparison: numbers match within 1e-9 relative, everything
// else byte for byte.
void check_matches_golden(const std::string& actual, const std::string& golden_name) {
    std::string expected = read_file(golden_dir + "/" + golden_name);
    std::stringstream a(actual), e(expected);
    std::string la, le;
    int line_no = 0;
    while (true) {
        bool more_a = static_cast<bool>(std::getline(a, la));
        bool more_e = static_cast<bool>(std::getline(e, le));
        CHECK_MESSAGE(more_a == more_e, golden_name, ": line count differs at line ", line_no);
        if (!more_a || !more_e) break;
        ++line_no;
        std::stringstream ta(la), te(le);
        std::string ca, ce;
        while (true) {
            bool tok_a = static_cast<bool>(std::getline(ta, ca, ','));
            bool tok_e = static_cast<bool>(std::getline(te, ce, ','));
            CHECK_MESSAGE(tok_a == tok_e, golden_name, ": token count differs on line ",
                          line_no);
            if (!tok_a || !tok_e) break;
            double va = 0, ve = 0;
            if (numeric_token(ca, va) && numeric_token(ce, ve)) {
                CHECK_MESSAGE(std::abs(va - ve) <= 1e-9 * std::max({std::abs(va),
                                                                    std::abs(ve), 1.0}),
                              golden_name, " line ", line_no, ": ", ca, " vs ", ce);
            } else {
                // Config echoes may carry paths; compare their basenames so
                // the goldens stay location independent.
                std::string na = ca, ne = ce;
                auto slash_a = na.find_last_of('/');
                auto slash_e = ne.find_last_of('/');
                if (slash_a != std::string::npos && slash_e != std::string::npos) {
                    na = na.substr(slash_a + 1);
                    ne = ne.substr(slash_e + 1);
                }
                CHECK_MESSAGE(na == ne, golden_name, " line ", line_no, ": '", ca, "' vs '",
                              ce, "'");
            }
        }
    }
}

void check_subcommand(const std::string& args, const std::string& golden_name) {
    run_result r = run(args);
    CHECK_MESSAGE(r.exit_code == 0, args, " exited ", r.exit_code, "\n", r.output);
    check_matches_golden(r.output, golden_name);
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("golden transcripts for every subcommand") {
    check_subcommand("entropy --state " + data_dir + "/bell.json", "entropy_bell.txt");
    check_subcommand("entropy --units nats --state " + data_dir + "/mixed2.json",
                     "entropy_mixed_nats.txt");
    check_subcommand("holevo --ensemble " + data_dir + "/ensemble_orthogonal.json",
                     "holevo_orthogonal.txt");
    check_subcommand("ree --state " + data_dir + "/bell.json --restarts 4", "ree_bell.txt");
    check_subcommand("channel apply --channel " + data_dir + "/dephasing_channel.json" +
                         " --state " + data_dir + "/plus.json",
                     "channel_apply_dephasing.txt");
    check_subcommand("channel dilate --channel " + data_dir + "/dephasing_channel.json",
                     "channel_dilate_dephasing.txt");
    check_subcommand("channel ppt --state " + data_dir + "/werner.json", "ppt_werner.txt");
    check_subcommand("ppt --state " + data_dir + "/bell.json", "ppt_bell.txt");
    check_subcommand("sanov --q " + data_dir + "/fair.json --candidates " + data_dir +
                         "/candidates.json --units nats",
                     "sanov_fair.txt");
    check_subcommand("types --sequence 011010 --nmax 12", "types_011010.txt");
    check_subcommand("compress --theta 0.5235987755982988 --n 8", "compress_n8.txt");
    check_subcommand("teleport-demo --trials 200 --seed 5", "teleport_200.txt");
    check_subcommand("dense-coding-curve --points 5", "dense_coding_5.txt");
    check_subcommand("landauer --state " + data_dir + "/pure0.json --reservoir " + data_dir +
                         "/mixed2.json",
                     "landauer_pure_mixed.txt");
    check_subcommand("bosonic --power 1e-12 --temperature 300", "bosonic_hot.txt");
    check_subcommand("bekenstein --energy 1.5033e-10 --radius 1e-15", "bekenstein_nucleus.txt");
    check_subcommand("deutsch --f 10", "deutsch_10.txt");
    check_subcommand("grover-mi --qubits 4 --p 1.0 --kmax 12", "grover_mi_12.txt");
    check_subcommand("grover-mi --qubits 4 --p 0.7 --kmax 12", "grover_mi_mixed.txt");
    check_subcommand("bitwise-trace --qubits 4", "bitwise_4.txt");
}

TEST_CASE("dense coding curve endpoints via three grid points") {
    run_result r = run("dense-coding-curve --points 3");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("0,1\n") != std::string::npos);
    CHECK(r.output.find("0.5,2\n") != std::string::npos);
    CHECK(r.output.find("1,1\n") != std::string::npos);
}

TEST_CASE("selftest smoke run") {
    run_result r = run("selftest --fast --only matcore");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("4/4 checks passed") != std::string::npos);
}

TEST_CASE("fixed seeds give byte-identical reruns") {
    run_result a = run("teleport-demo --trials 100 --seed 11");
    run_result b = run("teleport-demo --trials 100 --seed 11");
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
    run_result c = run("teleport-demo --trials 100 --seed 12");
    CHECK(a.output != c.output);
}

TEST_CASE("output files are written and identical to stdout content") {
    const std::string out =
        (std::filesystem::temp_directory_path() / "releq_curve.csv").string();
    run_result r = run("dense-coding-curve --points 5 --out " + out);
    CHECK(r.exit_code == 0);
    check_matches_golden(read_file(out), "dense_coding_5.txt");
    std::filesystem::remove(out);
}

TEST_CASE("RELEQ_SEED environment variable overrides --seed") {
    run_result r = run("teleport-demo --trials 10 --seed 3", "RELEQ_SEED=99 ");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("# seed=99") != std::string::npos);
}

TEST_CASE("validation failures exit with code 2 and one-line errors") {
    run_result bad_flag = run("entropy --state x.json --no-such-flag");
    CHECK(bad_flag.exit_code == 2);
    run_result missing = run("entropy --state /nonexistent/state.json");
    CHECK(missing.exit_code == 2);
    CHECK(missing.output.find("error:") != std::string::npos);
    run_result bad_units = run("entropy --units furlongs --state x.json");
    CHECK(bad_units.exit_code == 2);
    run_result bad_deutsch = run("deutsch --f 7");
    CHECK(bad_deutsch.exit_code == 2);
}

}  // TEST_SUITE

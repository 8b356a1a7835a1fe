#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "qsl/config.hpp"
#include "qsl/csvout.hpp"

using namespace qsl;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "qsltool_tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string first_line(const std::string& text) {
    return text.substr(0, text.find('\n') + 1);
}

int run_tool(const std::string& args) {
    const std::string cmd = std::string(QSLTOOL_PATH) + " " + args + " >/dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

} // namespace

TEST_CASE("config JSON round trip preserves every field") {
    RunConfig c;
    c.gamma0 = 3.25;
    c.sweep_points = 17;
    c.betas = {0.5, 0.9};
    c.seeds = {4, 5, 6};
    c.dot_kind = "coherent";
    c.norm_flavor = "hs";
    c.h_spread = "full";
    c.out_dir = "some/dir";
    const RunConfig back = config_from_json(config_to_json(c));
    CHECK(back == c);

    // partial configs keep defaults for the unmentioned fields
    const RunConfig partial = config_from_json("{\"gamma0\": 2.5}");
    CHECK(partial.gamma0 == 2.5);
    CHECK(partial.lambda == RunConfig{}.lambda);
}

TEST_CASE("config parsing rejects malformed input") {
    CHECK_THROWS_AS(config_from_json("{\"gamma_zero\": 1.0}"), config_error);
    CHECK_THROWS_AS(config_from_json("{\"gamma0\": \"big\"}"), config_error);
    CHECK_THROWS_AS(config_from_json("not json at all"), config_error);
    CHECK_THROWS_AS(config_from_json("[1, 2]"), config_error);
    CHECK_THROWS_AS(load_config_file("/nonexistent/config.json"), config_error);

    RunConfig bad;
    bad.betas = {1.5};
    CHECK_THROWS_AS(bad.validate(), config_error);
    bad = RunConfig{};
    bad.gamma0 = -1.0;
    CHECK_THROWS_AS(bad.validate(), config_error);
    bad = RunConfig{};
    bad.dot_kind = "both";
    CHECK_THROWS_AS(bad.validate(), config_error);
}

TEST_CASE("CSV number formatting carries 9 significant digits") {
    CHECK(csv_number(0.0) == "0");
    CHECK(csv_number(1.0) == "1");
    CHECK(csv_number(0.123456789123) == "0.123456789");
    CHECK(csv_number(123456789.123) == "123456789");
    CHECK(csv_number(-2.5e-7) == "-2.5e-07");
    CHECK(csv_number(3141592.65358979).substr(0, 10) == "3141592.65");
}

TEST_CASE("CSV escaping follows the quoting rules") {
    CHECK(csv_escape("plain") == "plain");
    CHECK(csv_escape("with,comma") == "\"with,comma\"");
    CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(csv_escape("two\nlines") == "\"two\nlines\"");
}

TEST_CASE("CsvWriter emits CRLF rows and enforces the column count") {
    const fs::path dir = fresh_dir("csvwriter");
    const fs::path file = dir / "t.csv";
    {
        CsvWriter w(file.string(), {"a", "b"});
        w.row({"1", "2.5"});
        w.row({CsvWriter::field(std::nullopt), csv_number(0.25)});
        CHECK_THROWS_AS(w.row({"only-one"}), contract_violation);
    }
    CHECK(slurp(file) == "a,b\r\n1,2.5\r\n,0.25\r\n");
}

TEST_CASE("trajectory command writes the documented artifacts") {
    const fs::path dir = fresh_dir("jc_traj");
    const fs::path cfg = dir / "cfg.json";
    write_file(cfg, "{\"gamma0\": 10.0, \"tau\": 1.0}");
    REQUIRE(run_tool("jc-trajectory --config " + cfg.string() + " --out " +
                     (dir / "out").string()) == 0);

    const std::string csv = slurp(dir / "out" / "jc_trajectory.csv");
    CHECK(first_line(csv) == "t,rho11,theta_r,dissipator_opnorm,gamma_rate\r\n");
    CHECK(fs::exists(dir / "out" / "jc_trajectory.svg"));
    CHECK(fs::exists(dir / "out" / "jc_trajectory_report.txt"));
    CHECK(fs::exists(dir / "out" / "config_used.json"));

    // the saved config reloads to the resolved run configuration
    const RunConfig used = load_config_file((dir / "out" / "config_used.json").string());
    CHECK(used.gamma0 == 10.0);
    CHECK(used.tau == 1.0);
}

TEST_CASE("sweep command is deterministic byte for byte") {
    const fs::path dir = fresh_dir("jc_sweep");
    const std::string cfg_text =
        "{\"gamma0_min\": 1.0, \"gamma0_max\": 4.0, \"sweep_points\": 4, \"tau\": 2.0}";
    write_file(dir / "cfg.json", cfg_text);

    for (const char* sub : {"a", "b"}) {
        REQUIRE(run_tool("jc-sweep --config " + (dir / "cfg.json").string() + " --out " +
                         (dir / sub).string() + " --jobs 2") == 0);
    }
    const std::string csv_a = slurp(dir / "a" / "jc_sweep.csv");
    CHECK(csv_a == slurp(dir / "b" / "jc_sweep.csv"));
    CHECK(first_line(csv_a) ==
          "gamma0,lambda,tau,theta_r,tau_hat,tau_hat_m,bound_previous,bound_max,"
          "bound_beta,beta,non_markovianity\r\n");
}

TEST_CASE("dot command is deterministic across reruns and job counts") {
    const fs::path dir = fresh_dir("dot_run");
    const std::string cfg_text =
        "{\"n1\": 4, \"n2\": 4, \"coupling\": 0.1, \"dot_tau\": 2.0, \"seeds\": [1, 2]}";
    write_file(dir / "cfg.json", cfg_text);

    REQUIRE(run_tool("dot-run --config " + (dir / "cfg.json").string() + " --out " +
                     (dir / "a").string() + " --jobs 1") == 0);
    REQUIRE(run_tool("dot-run --config " + (dir / "cfg.json").string() + " --out " +
                     (dir / "b").string() + " --jobs 2") == 0);

    const std::string csv_a = slurp(dir / "a" / "dot_run.csv");
    CHECK(csv_a == slurp(dir / "b" / "dot_run.csv"));
    CHECK(first_line(csv_a) == "t,theta_r,dissipator_opnorm\r\n");
    CHECK(slurp(dir / "a" / "dot_run_report.txt") == slurp(dir / "b" / "dot_run_report.txt"));
}

TEST_CASE("inequality command succeeds and reports zero violations") {
    const fs::path dir = fresh_dir("ineq");
    write_file(dir / "cfg.json", "{\"trials\": 50, \"max_dim\": 5}");
    REQUIRE(run_tool("ineq-check --config " + (dir / "cfg.json").string() + " --out " +
                     dir.string()) == 0);
    const std::string report = slurp(dir / "ineq_report.txt");
    CHECK(report.find("violations: 0") != std::string::npos);
}

TEST_CASE("exit codes distinguish config errors from numerical failures") {
    const fs::path dir = fresh_dir("exit_codes");

    // bad flag value and malformed config file are both exit 2
    CHECK(run_tool("jc-trajectory --norm-flavor bogus") == 2);
    write_file(dir / "bad.json", "{\"gamma0\": -3}");
    CHECK(run_tool("jc-trajectory --config " + (dir / "bad.json").string()) == 2);
    write_file(dir / "unknown.json", "{\"gammaO\": 3}");
    CHECK(run_tool("jc-trajectory --config " + (dir / "unknown.json").string()) == 2);
    CHECK(run_tool("dot-run --config /does/not/exist.json") == 2);
    CHECK(run_tool("") == 2);  // missing subcommand

    // frozen dynamics break the bound contracts downstream: exit 3
    write_file(dir / "frozen.json",
               "{\"n1\": 2, \"n2\": 2, \"coupling\": 0.0, \"dot_tau\": 1.0, \"seeds\": [1]}");
    CHECK(run_tool("dot-run --config " + (dir / "frozen.json").string() + " --out " +
                   (dir / "frozen_out").string()) == 3);
}

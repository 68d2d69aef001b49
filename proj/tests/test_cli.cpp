#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
    int exit_code;
};

RunResult run_cli(const std::string& args) {
    const std::string command = std::string(NETFORM_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(command.c_str());
    return RunResult{WEXITSTATUS(status)};
}

fs::path fresh_dir(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / "netform_cli_tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace

TEST_CASE("base preset run succeeds and writes the standard outputs") {
    fs::path dir = fresh_dir("base");
    CHECK(run_cli("--preset base --out-dir " + dir.string()).exit_code == 0);
    CHECK(fs::exists(dir / "trajectories.csv"));
    CHECK(fs::exists(dir / "weights.csv"));
    CHECK(fs::exists(dir / "manifest.json"));

    json manifest = json::parse(read_file(dir / "manifest.json"));
    CHECK(manifest.at("converged").get<bool>());
    CHECK(manifest.at("config").at("dt").get<double>() == 0.01);

    // symmetric setup: all four weight columns agree
    std::ifstream in(dir / "weights.csv");
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        std::stringstream row(line);
        std::string cell;
        std::vector<double> values;
        while (std::getline(row, cell, ',')) values.push_back(std::stod(cell));
        REQUIRE(values.size() == 5);
        for (int c = 2; c <= 4; ++c) CHECK(std::abs(values[c] - values[1]) <= 1e-10);
    }
}

TEST_CASE("unknown preset exits with the invalid-input code") {
    fs::path dir = fresh_dir("nosuch");
    CHECK(run_cli("--preset nosuch --out-dir " + dir.string()).exit_code == 1);
}

TEST_CASE("preset and config are mutually exclusive and one is required") {
    fs::path dir = fresh_dir("flags");
    CHECK(run_cli("--out-dir " + dir.string()).exit_code == 1);
    std::ofstream(dir / "config.json") << R"({"groups":[{"a":0,"nu":0.5,"m":1.0,"mu0_mean":0}],
                                             "horizon_T":1.0,"dt":0.01})";
    CHECK(run_cli("--preset base --config " + (dir / "config.json").string()).exit_code == 1);
}

TEST_CASE("nash verification on a preset passes and writes a report") {
    fs::path dir = fresh_dir("nash");
    CHECK(run_cli("--preset exp3 --verify-nash --out-dir " + dir.string()).exit_code == 0);
    json report = json::parse(read_file(dir / "nash_report.json"));
    REQUIRE(report.size() == 2);
    for (const auto& entry : report) {
        CHECK(entry.at("pass").get<bool>());
        CHECK(entry.at("nash_gap").get<double>() <=
              entry.at("tolerance").get<double>());
    }
}

TEST_CASE("monte carlo flags require each other") {
    fs::path dir = fresh_dir("mcflags");
    CHECK(run_cli("--preset base --mc-paths 10 --out-dir " + dir.string()).exit_code == 1);
    CHECK(run_cli("--preset base --seed 3 --out-dir " + dir.string()).exit_code == 1);
    CHECK(run_cli("--preset base --mc-paths 10 --seed 3 --out-dir " + dir.string()).exit_code == 0);
    CHECK(fs::exists(dir / "mc_summary.csv"));
    json manifest = json::parse(read_file(dir / "manifest.json"));
    CHECK(manifest.at("montecarlo").at("paths").get<int>() == 10);
    CHECK(manifest.at("montecarlo").at("seed").get<int>() == 3);
}

TEST_CASE("identical runs produce byte-identical csv outputs") {
    fs::path a = fresh_dir("det_a");
    fs::path b = fresh_dir("det_b");
    const std::string flags = "--preset exp2 --mc-paths 50 --seed 11 --out-dir ";
    CHECK(run_cli(flags + a.string()).exit_code == 0);
    CHECK(run_cli(flags + b.string()).exit_code == 0);
    CHECK(read_file(a / "trajectories.csv") == read_file(b / "trajectories.csv"));
    CHECK(read_file(a / "weights.csv") == read_file(b / "weights.csv"));
    CHECK(read_file(a / "mc_summary.csv") == read_file(b / "mc_summary.csv"));
}

TEST_CASE("a run seeded from a manifest reproduces the outputs") {
    fs::path first = fresh_dir("manifest_a");
    fs::path second = fresh_dir("manifest_b");
    CHECK(run_cli("--preset exp4 --out-dir " + first.string()).exit_code == 0);

    json manifest = json::parse(read_file(first / "manifest.json"));
    std::ofstream(first / "rerun_config.json") << manifest.at("config").dump();
    CHECK(run_cli("--config " + (first / "rerun_config.json").string() + " --out-dir " +
                  second.string())
              .exit_code == 0);
    CHECK(read_file(first / "trajectories.csv") == read_file(second / "trajectories.csv"));
    CHECK(read_file(first / "weights.csv") == read_file(second / "weights.csv"));
}

TEST_CASE("dt override changes the grid") {
    fs::path dir = fresh_dir("dt");
    CHECK(run_cli("--preset base --dt 0.005 --out-dir " + dir.string()).exit_code == 0);
    std::ifstream in(dir / "trajectories.csv");
    std::string line;
    int rows = -1;  // header
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 201);
}

TEST_CASE("iteration cap triggers the non-convergence exit code") {
    fs::path dir = fresh_dir("noconv");
    CHECK(run_cli("--preset base --max-iter 1 --eps 1e-14 --out-dir " + dir.string()).exit_code ==
          2);
    json manifest = json::parse(read_file(dir / "manifest.json"));
    CHECK_FALSE(manifest.at("converged").get<bool>());
}

TEST_CASE("refine flag reports and still succeeds") {
    fs::path dir = fresh_dir("refine");
    CHECK(run_cli("--preset base --refine --out-dir " + dir.string()).exit_code == 0);
}

TEST_CASE("config file with an unknown key is rejected") {
    fs::path dir = fresh_dir("badconfig");
    std::ofstream(dir / "config.json") << R"({"groups":[{"a":0,"nu":0.5,"m":1.0,"mu0_mean":0}],
                                             "horizon_T":1.0,"dt":0.01,"mystery":1})";
    CHECK(run_cli("--config " + (dir / "config.json").string() + " --out-dir " + dir.string())
              .exit_code == 1);
}

#include <catch2/catch_amalgamated.hpp>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

using Catch::Matchers::ContainsSubstring;
namespace fs = std::filesystem;

namespace {

struct CliResult {
    int exit_code = -1;
    std::string output;
};

// Runs the command-line tool with the given arguments, capturing both
// streams. The binary path is injected by the build.
CliResult run_cli(const std::string& args) {
    static int counter = 0;
    const fs::path capture =
        fs::temp_directory_path() /
        ("nlfv_cli_capture_" + std::to_string(::getpid()) + "_" +
         std::to_string(counter++) + ".txt");
    const std::string cmd = std::string(NLFV_CLI_PATH) + " " + args + " > " +
                            capture.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    CliResult r;
    if (WIFEXITED(status)) {
        r.exit_code = WEXITSTATUS(status);
    }
    std::ifstream in(capture);
    std::ostringstream ss;
    ss << in.rdbuf();
    r.output = ss.str();
    fs::remove(capture);
    return r;
}

// Scratch directory removed at scope exit.
struct TempDir {
    fs::path path;
    TempDir() {
        static int counter = 0;
        path = fs::temp_directory_path() /
               ("nlfv_cli_out_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    std::string str() const { return path.string(); }
};

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string first_line(const std::string& text) {
    return text.substr(0, text.find('\n'));
}

} // namespace

TEST_CASE("validate runs all checks by default and passes", "[cli]") {
    const CliResult r = run_cli("validate --case I --dx 1/40 --T 0.5");
    CAPTURE(r.output);
    REQUIRE(r.exit_code == 0);
    REQUIRE_THAT(r.output, ContainsSubstring("max-principle:"));
    REQUIRE_THAT(r.output, ContainsSubstring("conservation:"));
    REQUIRE_THAT(r.output, ContainsSubstring("entropy:"));
    REQUIRE_THAT(r.output, ContainsSubstring("validate: PASS"));
}

TEST_CASE("validate can run a single selected check", "[cli]") {
    const CliResult r =
        run_cli("validate --case II --dx 1/40 --T 0.25 --max-principle");
    CAPTURE(r.output);
    REQUIRE(r.exit_code == 0);
    REQUIRE_THAT(r.output, ContainsSubstring("max-principle:"));
    REQUIRE_THAT(r.output, !ContainsSubstring("entropy:"));
    REQUIRE_THAT(r.output, !ContainsSubstring("conservation:"));
    REQUIRE_THAT(r.output, ContainsSubstring("validate: PASS"));
}

TEST_CASE("a reduced look-ahead study writes tables and profiles", "[cli]") {
    const TempDir dir;
    const CliResult r = run_cli(
        "run --experiment example2 --case I --scale desk --dx 1/100 "
        "--T 0.25 --out " +
        dir.str());
    CAPTURE(r.output);
    REQUIRE(r.exit_code == 0);
    REQUIRE_THAT(r.output, ContainsSubstring("summary.json"));

    const std::string table = read_file(dir.path / "table2.csv");
    REQUIRE(first_line(table) == "case,eta,l1_distance");
    REQUIRE(std::count(table.begin(), table.end(), '\n') == 4); // header + 3

    const std::string godunov =
        read_file(dir.path / "snapshots_example2_caseI_godunov.csv");
    REQUIRE(first_line(godunov) == "x,rho");
    REQUIRE(fs::exists(dir.path / "snapshots_example2_caseI_eta0.1.csv"));
    REQUIRE(fs::exists(dir.path / "snapshots_example2_caseI_eta0.02.csv"));
    REQUIRE(fs::exists(dir.path / "snapshots_example2_caseI_eta0.01.csv"));

    const auto summary =
        nlohmann::json::parse(read_file(dir.path / "summary.json"));
    REQUIRE(summary["config"]["experiment"] == "example2");
    REQUIRE(summary["config"]["time"]["t_final"] == 0.25);
    REQUIRE(summary["example2"].is_array());
    REQUIRE(summary["example2"].size() == 1);
    const auto& outputs = summary["outputs"];
    REQUIRE(std::find(outputs.begin(), outputs.end(), "table2.csv") !=
            outputs.end());
}

TEST_CASE("repeated runs are byte-identical", "[cli]") {
    const TempDir a;
    const TempDir b;
    const std::string args =
        "run --experiment example2 --case I --scale desk --dx 1/100 "
        "--T 0.25 --out ";
    REQUIRE(run_cli(args + a.str()).exit_code == 0);
    REQUIRE(run_cli(args + b.str()).exit_code == 0);
    REQUIRE(read_file(a.path / "table2.csv") ==
            read_file(b.path / "table2.csv"));
    REQUIRE(read_file(a.path / "snapshots_example2_caseI_godunov.csv") ==
            read_file(b.path / "snapshots_example2_caseI_godunov.csv"));
    REQUIRE(read_file(a.path / "snapshots_example2_caseI_eta0.02.csv") ==
            read_file(b.path / "snapshots_example2_caseI_eta0.02.csv"));
}

TEST_CASE("command-line flags override the configuration file", "[cli]") {
    const TempDir dir;
    const fs::path cfg_path = dir.path / "config.json";
    {
        std::ofstream cfg(cfg_path);
        cfg << R"({"experiment": "example2", "case": "I", "scale": "desk",
                   "mesh": {"dx": "1/100"}, "time": {"t_final": 0.5}})";
    }
    const CliResult r = run_cli("run --config " + cfg_path.string() +
                                " --T 0.125 --out " + dir.str());
    CAPTURE(r.output);
    REQUIRE(r.exit_code == 0);
    const auto summary =
        nlohmann::json::parse(read_file(dir.path / "summary.json"));
    REQUIRE(summary["config"]["time"]["t_final"] == 0.125);
    REQUIRE(summary["config"]["case"] == "I");
}

TEST_CASE("configuration mistakes exit with status 2", "[cli]") {
    const TempDir dir;
    SECTION("missing config file") {
        const CliResult r =
            run_cli("run --config " + dir.str() + "/does_not_exist.json");
        REQUIRE(r.exit_code == 2);
        REQUIRE_THAT(r.output, ContainsSubstring("config error"));
    }
    SECTION("grid incompatible with the look-ahead window") {
        const CliResult r = run_cli(
            "run --experiment example1 --dx 1/41 --out " + dir.str());
        REQUIRE(r.exit_code == 2);
    }
    SECTION("unusable stability safety factor") {
        const CliResult r =
            run_cli("validate --case I --dx 1/40 --T 0.1 --cfl-safety 1.5");
        REQUIRE(r.exit_code == 2);
    }
    SECTION("unknown flag") {
        const CliResult r = run_cli("run --bogus-flag 3");
        REQUIRE(r.exit_code != 0);
    }
    SECTION("sweep with a non-dividing radius") {
        const CliResult r = run_cli("sweep --case I --dx 1/40 --eta 0.33 "
                                    "--T 0.1 --out " +
                                    dir.str());
        REQUIRE(r.exit_code == 2);
    }
}

TEST_CASE("sweeps enumerate rows deterministically across worker counts",
          "[cli]") {
    const TempDir a;
    const TempDir b;
    const std::string common =
        "sweep --case I --dx 1/40 --dx 1/80 --eta 0.4 --eta 0.2 --T 0.25 ";
    const CliResult r2 =
        run_cli(common + "--jobs 2 --out " + a.str());
    CAPTURE(r2.output);
    REQUIRE(r2.exit_code == 0);
    const CliResult r1 =
        run_cli(common + "--jobs 1 --out " + b.str());
    REQUIRE(r1.exit_code == 0);

    const std::string csv = read_file(a.path / "sweep_summary.csv");
    REQUIRE(first_line(csv) ==
            "case,dx,eta,t_final,n_steps,dt,min_density,max_density,"
            "mass_residual_rel");
    REQUIRE(std::count(csv.begin(), csv.end(), '\n') == 5); // header + 4

    // Rows appear in the requested order: grids outer, radii inner.
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line); // header
    std::getline(lines, line);
    REQUIRE_THAT(line, ContainsSubstring("I,1/40,4.0000000e-01"));
    std::getline(lines, line);
    REQUIRE_THAT(line, ContainsSubstring("I,1/40,2.0000000e-01"));
    std::getline(lines, line);
    REQUIRE_THAT(line, ContainsSubstring("I,1/80,4.0000000e-01"));
    std::getline(lines, line);
    REQUIRE_THAT(line, ContainsSubstring("I,1/80,2.0000000e-01"));

    // Worker count never changes the result.
    REQUIRE(csv == read_file(b.path / "sweep_summary.csv"));
}

TEST_CASE("custom runs write a labelled profile and health summary",
          "[cli]") {
    const TempDir dir;
    const CliResult r = run_cli(
        "run --experiment custom --dx 1/40 --T 0.1 --entropy-sweep --out " +
        dir.str());
    CAPTURE(r.output);
    REQUIRE(r.exit_code == 0);
    REQUIRE(fs::exists(dir.path / "snapshots_custom_T0.1.csv"));
    const auto summary =
        nlohmann::json::parse(read_file(dir.path / "summary.json"));
    REQUIRE(summary["custom"]["bounds_ok"] == true);
    REQUIRE(summary["custom"]["mass_ok"] == true);
    const double max_residual = summary["custom"]["entropy"]["max_residual"];
    REQUIRE(max_residual <= 1e-10);
}

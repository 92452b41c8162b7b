#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "core/runner.hpp"

using namespace nvshelf;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) {
        path = fs::temp_directory_path() / name;
        fs::remove_all(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

RunConfig fast_config() {
    RunConfig cfg = RunConfig::defaults();
    cfg.model.n_max = 6;
    cfg.isc.sigma_min = 360.0;
    cfg.isc.sigma_max = 420.0;
    cfg.isc.sigma_step = 5.0;
    cfg.isc.temperature_max = 100.0;
    cfg.isc.temperature_step = 50.0;
    return cfg;
}

} // namespace

TEST_CASE("fnv1a64 is stable") {
    CHECK(fnv1a64_hex("") == "cbf29ce484222325");
    CHECK(fnv1a64_hex("a") == "af63dc4c8601ec8c");
    CHECK(fnv1a64_hex("hello") != fnv1a64_hex("hellp"));
}

TEST_CASE("solve run writes deterministic tables") {
    TempDir dir("nvshelf_test_solve");
    const RunConfig cfg = fast_config();
    run_solve(cfg, dir.path.string());

    for (const char* name : {"eigenvalues.csv", "coefficients.csv", "summary.csv", "meta.json"})
        CHECK(fs::exists(dir.path / name));

    const std::string eigen_csv = slurp(dir.path / "eigenvalues.csv");
    CHECK(eigen_csv.find("label,index,energy_meV,energy_rel_meV") != std::string::npos);
    CHECK(eigen_csv.rfind("# nvshelf", 0) == 0);

    const std::string meta = slurp(dir.path / "meta.json");
    const auto manifest = nlohmann::json::parse(meta);
    CHECK(manifest["command"] == "solve");
    CHECK(manifest["config"]["model"]["N_max"] == 6);
    CHECK(manifest["files"].contains("eigenvalues.csv"));

    // identical config -> byte-identical outputs
    TempDir dir2("nvshelf_test_solve_again");
    run_solve(cfg, dir2.path.string());
    CHECK(slurp(dir2.path / "eigenvalues.csv") == eigen_csv);
    CHECK(slurp(dir2.path / "coefficients.csv") == slurp(dir.path / "coefficients.csv"));
}

TEST_CASE("spectrum runs write both kinds") {
    TempDir dir("nvshelf_test_spectrum");
    RunConfig cfg = fast_config();
    run_spectrum(cfg, "pl", dir.path.string());
    CHECK(fs::exists(dir.path / "spectrum_pl.csv"));
    run_spectrum(cfg, "abs", dir.path.string());
    CHECK(fs::exists(dir.path / "spectrum_abs.csv"));
    CHECK_THROWS_AS(run_spectrum(cfg, "nope", dir.path.string()), ConfigError);
}

TEST_CASE("isc runs write rate tables and crossings") {
    TempDir dir("nvshelf_test_isc");
    const RunConfig cfg = fast_config();
    run_isc(cfg, "scan", dir.path.string());
    const std::string scan = slurp(dir.path / "sigma_scan.csv");
    CHECK(scan.find("Sigma_meV,Gamma_z_MHz,Gamma_pm_MHz,Gamma_mp_MHz,lifetime_ns") !=
          std::string::npos);
    CHECK(fs::exists(dir.path / "crossings.csv"));
    run_isc(cfg, "rates", dir.path.string());
    CHECK(fs::exists(dir.path / "rates.csv"));
    CHECK_THROWS_AS(run_isc(cfg, "sideways", dir.path.string()), ConfigError);
}

TEST_CASE("json output format") {
    TempDir dir("nvshelf_test_json");
    RunConfig cfg = fast_config();
    cfg.output.format = "json";
    run_solve(cfg, dir.path.string());
    CHECK(fs::exists(dir.path / "eigenvalues.json"));
    CHECK(!fs::exists(dir.path / "eigenvalues.csv"));
    const auto doc = nlohmann::json::parse(slurp(dir.path / "eigenvalues.json"));
    CHECK(doc.contains("columns"));
    CHECK(doc["rows"].is_array());
}

TEST_CASE("derive-params report is deterministic and covers the pipeline") {
    RunConfig cfg = RunConfig::defaults();
    cfg.derivation.fit_lambda_e = false;  // keep this test fast
    const std::string report = derive_params_report(cfg);
    CHECK(report == derive_params_report(cfg));
    CHECK(report.find("C2") != std::string::npos);
    CHECK(report.find("0.9") != std::string::npos);
    CHECK(report.find("107.57") != std::string::npos);  // derived F
    CHECK(report.find("S (Huang-Rhys)") != std::string::npos);
    CHECK(report.find("0.845") != std::string::npos);
}

TEST_CASE("derive-params fit in the uncoupled limit") {
    RunConfig cfg = RunConfig::defaults();
    cfg.model.F = 0.0;
    cfg.model.n_max = 4;
    const std::string report = derive_params_report(cfg);
    CHECK(report.find("1190") != std::string::npos);  // Lambda_e equals the target ZPL
}

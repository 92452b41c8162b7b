#include <doctest.h>

#include "core/config.hpp"

using namespace nvshelf;
using nlohmann::json;

TEST_CASE("defaults validate and round-trip") {
    const RunConfig cfg = RunConfig::defaults();
    CHECK_NOTHROW(cfg.validate());
    const json j = cfg.to_json();
    const RunConfig back = RunConfig::from_json(j);
    CHECK(back.to_json() == j);
    CHECK(back.model.F == doctest::Approx(107.5735));
    CHECK(back.spectral_function.shape == "gamma");
}

TEST_CASE("unknown keys are rejected") {
    CHECK_THROWS_AS(RunConfig::from_string(R"({"model": {"bogus": 1}})"), ConfigError);
    CHECK_THROWS_AS(RunConfig::from_string(R"({"nonsense": {}})"), ConfigError);
    CHECK_THROWS_AS(RunConfig::from_string(R"({"isc": {"sigma": 1}})"), ConfigError);
}

TEST_CASE("physically invalid fields are rejected before computation") {
    CHECK_THROWS_AS(RunConfig::from_string(R"({"model": {"C2": 1.5}})"), ConfigError);
    CHECK_THROWS_AS(RunConfig::from_string(R"({"model": {"hbar_omega_E_meV": -3}})"),
                    ConfigError);
    CHECK_THROWS_AS(RunConfig::from_string(R"({"spectral_function": {"shape": "boxcar"}})"),
                    ConfigError);
    CHECK_THROWS_AS(RunConfig::from_string(R"({"output": {"format": "xml"}})"), ConfigError);
    CHECK_THROWS_AS(RunConfig::from_string(R"({"spectrum": {"grid_step_meV": 0}})"), ConfigError);
    CHECK_THROWS_AS(RunConfig::from_string(R"({"model": {"N_max": 0}})"), ConfigError);
}

TEST_CASE("parse errors surface as config errors") {
    CHECK_THROWS_AS(RunConfig::from_string("{not json"), ConfigError);
    CHECK_THROWS_AS(RunConfig::from_file("/nonexistent/config.json"), IoError);
}

TEST_CASE("partial documents keep defaults elsewhere") {
    const RunConfig cfg = RunConfig::from_string(R"({"model": {"N_max": 6}})");
    CHECK(cfg.model.n_max == 6);
    CHECK(cfg.model.hbar_omega_E == doctest::Approx(66.1));
    CHECK(cfg.isc.sigma_step == doctest::Approx(1.0));
}

TEST_CASE("set_key overrides") {
    RunConfig cfg = RunConfig::defaults();
    cfg.set_key("model.N_max", "8");
    CHECK(cfg.model.n_max == 8);
    cfg.set_key("model.F_meV", "102.47");
    CHECK(cfg.model.F == doctest::Approx(102.47));
    cfg.set_key("spectral_function.shape", "gaussian");
    CHECK(cfg.spectral_function.shape == "gaussian");
    cfg.set_key("spectrum.hr_broad_density", "true");
    CHECK(cfg.spectrum.hr_broad_density);
    cfg.set_key("isc.target_rates_MHz", "[3.0, 1.5]");
    REQUIRE(cfg.isc.target_rates_mhz.size() == 2);
    CHECK(cfg.isc.target_rates_mhz[0] == doctest::Approx(3.0));

    CHECK_THROWS_AS(cfg.set_key("model.bogus", "1"), ConfigError);
    CHECK_THROWS_AS(cfg.set_key("model.N_max", "not-a-number"), ConfigError);
    CHECK_THROWS_AS(cfg.set_key("model.C2", "2.0"), ConfigError);  // validation still runs
}

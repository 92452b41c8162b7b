#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "core/params.hpp"
#include "core/spectra.hpp"

// Single JSON configuration document driving every command; CLI flags
// override individual dotted keys. Unknown keys are rejected.

namespace nvshelf {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// APES-level inputs used by derive-params.
struct DerivationInputs {
    double e_jt = 316.0;           // Jahn-Teller energy of the distorted closed-shell state, meV
    double s2 = 0.0527864045;      // |<xi|a>|^2 of the distorted Kohn-Sham orbital
    double p2 = 0.9472135955;      // |<xi|e_x>|^2
    double r_displacement = 1.3;   // APES minimum offset in dimensionless coordinates
    double target_zpl = 1190.0;    // fit target, meV
    bool fit_lambda_e = true;      // run the Lambda_e fit inside derive-params
};

struct SpectralFunctionConfig {
    std::string shape = "gamma";  // gamma | gaussian
    double center = 66.1;         // mean of the one-phonon density, meV
    double gamma_shape = 8.0;
    double gaussian_fwhm = 15.0;  // used when shape == gaussian
    double grid_step = 0.25;      // meV
};

struct SpectrumConfig {
    GridSettings grid;        // defaults -20..400 step 0.1
    SmearingSettings smear;   // defaults 2/5/10, edges 2/30
    double hr_omega_eff = 91.8;
    double hr_smear = 1.5;
    bool hr_broad_density = false;
    double hr_density_shape = 8.0;
};

struct IscConfig {
    double sigma_min = 300.0;
    double sigma_max = 560.0;
    double sigma_step = 1.0;
    std::vector<double> target_rates_mhz = {2.70, 2.16};
    double lambda_ratio_min = 0.5;
    double lambda_ratio_max = 4.0;
    double lambda_ratio_step = 0.05;
    double temperature_min = 10.0;
    double temperature_max = 300.0;
    double temperature_step = 10.0;
    double emitter_window = 300.0;  // meV above the shelving ground level
};

struct OutputConfig {
    std::string dir = "out";
    std::string format = "csv";  // csv | json
};

struct RunConfig {
    ModelParams model;
    DerivationInputs derivation;
    SpectralFunctionConfig spectral_function;
    SpectrumConfig spectrum;
    IscConfig isc;
    OutputConfig output;

    static RunConfig defaults() { return RunConfig{}; }
    static RunConfig from_json(const nlohmann::json& j);
    static RunConfig from_file(const std::string& path);
    static RunConfig from_string(const std::string& text);

    nlohmann::json to_json() const;
    // Override one dotted key ("model.F_meV=107.5735"); the value is parsed
    // as JSON when possible, otherwise taken as a string.
    void set_key(const std::string& dotted_key, const std::string& value);
    // Throws ConfigError on any physically invalid field.
    void validate() const;
};

} // namespace nvshelf

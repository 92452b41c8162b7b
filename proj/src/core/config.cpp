#include "core/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

namespace nvshelf {

namespace {

using nlohmann::json;

void check_keys(const json& j, const std::string& section, const std::set<std::string>& allowed) {
    if (!j.is_object()) throw ConfigError("config section '" + section + "' must be an object");
    for (const auto& item : j.items())
        if (!allowed.count(item.key()))
            throw ConfigError("unknown config key '" + section + "." + item.key() + "'");
}

template <typename T>
void read(const json& j, const char* key, T& out) {
    if (!j.contains(key)) return;
    try {
        out = j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(std::string("config key '") + key + "' has the wrong type");
    }
}

} // namespace

RunConfig RunConfig::from_json(const json& j) {
    RunConfig cfg;
    check_keys(j, "<root>",
               {"model", "derivation", "spectral_function", "spectrum", "isc", "output"});

    if (j.contains("model")) {
        const json& m = j.at("model");
        check_keys(m, "model",
                   {"hbar_omega_E_meV", "F_meV", "C2", "Lambda_e_meV", "lambda_z_GHz",
                    "lambda_perp_GHz", "Sigma_meV", "N_max", "d_perp", "zpl_target_meV"});
        read(m, "hbar_omega_E_meV", cfg.model.hbar_omega_E);
        read(m, "F_meV", cfg.model.F);
        read(m, "C2", cfg.model.C2);
        read(m, "Lambda_e_meV", cfg.model.Lambda_e);
        read(m, "lambda_z_GHz", cfg.model.lambda_z);
        read(m, "lambda_perp_GHz", cfg.model.lambda_perp);
        read(m, "Sigma_meV", cfg.model.Sigma);
        read(m, "N_max", cfg.model.n_max);
        read(m, "d_perp", cfg.model.d_perp);
        read(m, "zpl_target_meV", cfg.model.zpl_singlet);
    }
    if (j.contains("derivation")) {
        const json& d = j.at("derivation");
        check_keys(d, "derivation",
                   {"E_JT_meV", "s2", "p2", "R_displacement", "target_zpl_meV", "fit_lambda_e"});
        read(d, "E_JT_meV", cfg.derivation.e_jt);
        read(d, "s2", cfg.derivation.s2);
        read(d, "p2", cfg.derivation.p2);
        read(d, "R_displacement", cfg.derivation.r_displacement);
        read(d, "target_zpl_meV", cfg.derivation.target_zpl);
        read(d, "fit_lambda_e", cfg.derivation.fit_lambda_e);
    }
    if (j.contains("spectral_function")) {
        const json& s = j.at("spectral_function");
        check_keys(s, "spectral_function",
                   {"shape", "center_meV", "gamma_shape", "gaussian_fwhm_meV", "grid_step_meV"});
        read(s, "shape", cfg.spectral_function.shape);
        read(s, "center_meV", cfg.spectral_function.center);
        read(s, "gamma_shape", cfg.spectral_function.gamma_shape);
        read(s, "gaussian_fwhm_meV", cfg.spectral_function.gaussian_fwhm);
        read(s, "grid_step_meV", cfg.spectral_function.grid_step);
    }
    if (j.contains("spectrum")) {
        const json& s = j.at("spectrum");
        check_keys(s, "spectrum",
                   {"grid_min_meV", "grid_max_meV", "grid_step_meV", "smear_zpl_meV",
                    "smear_band1_meV", "smear_band2_meV", "band1_edge_meV", "band2_edge_meV",
                    "hr_omega_eff_meV", "hr_smear_meV", "hr_broad_density", "hr_density_shape"});
        read(s, "grid_min_meV", cfg.spectrum.grid.x_min);
        read(s, "grid_max_meV", cfg.spectrum.grid.x_max);
        read(s, "grid_step_meV", cfg.spectrum.grid.step);
        read(s, "smear_zpl_meV", cfg.spectrum.smear.zpl_width);
        read(s, "smear_band1_meV", cfg.spectrum.smear.band1_width);
        read(s, "smear_band2_meV", cfg.spectrum.smear.band2_width);
        read(s, "band1_edge_meV", cfg.spectrum.smear.band1_edge);
        read(s, "band2_edge_meV", cfg.spectrum.smear.band2_edge);
        read(s, "hr_omega_eff_meV", cfg.spectrum.hr_omega_eff);
        read(s, "hr_smear_meV", cfg.spectrum.hr_smear);
        read(s, "hr_broad_density", cfg.spectrum.hr_broad_density);
        read(s, "hr_density_shape", cfg.spectrum.hr_density_shape);
    }
    if (j.contains("isc")) {
        const json& s = j.at("isc");
        check_keys(s, "isc",
                   {"sigma_min_meV", "sigma_max_meV", "sigma_step_meV", "target_rates_MHz",
                    "lambda_ratio_min", "lambda_ratio_max", "lambda_ratio_step",
                    "temperature_min_K", "temperature_max_K", "temperature_step_K",
                    "emitter_window_meV"});
        read(s, "sigma_min_meV", cfg.isc.sigma_min);
        read(s, "sigma_max_meV", cfg.isc.sigma_max);
        read(s, "sigma_step_meV", cfg.isc.sigma_step);
        read(s, "target_rates_MHz", cfg.isc.target_rates_mhz);
        read(s, "lambda_ratio_min", cfg.isc.lambda_ratio_min);
        read(s, "lambda_ratio_max", cfg.isc.lambda_ratio_max);
        read(s, "lambda_ratio_step", cfg.isc.lambda_ratio_step);
        read(s, "temperature_min_K", cfg.isc.temperature_min);
        read(s, "temperature_max_K", cfg.isc.temperature_max);
        read(s, "temperature_step_K", cfg.isc.temperature_step);
        read(s, "emitter_window_meV", cfg.isc.emitter_window);
    }
    if (j.contains("output")) {
        const json& o = j.at("output");
        check_keys(o, "output", {"dir", "format"});
        read(o, "dir", cfg.output.dir);
        read(o, "format", cfg.output.format);
    }
    cfg.validate();
    return cfg;
}

RunConfig RunConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError("config parse error in '" + path + "': " + e.what());
    }
    return from_json(j);
}

RunConfig RunConfig::from_string(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    return from_json(j);
}

nlohmann::json RunConfig::to_json() const {
    json j;
    j["model"] = {{"hbar_omega_E_meV", model.hbar_omega_E},
                  {"F_meV", model.F},
                  {"C2", model.C2},
                  {"Lambda_e_meV", model.Lambda_e},
                  {"lambda_z_GHz", model.lambda_z},
                  {"lambda_perp_GHz", model.lambda_perp},
                  {"Sigma_meV", model.Sigma},
                  {"N_max", model.n_max},
                  {"d_perp", model.d_perp},
                  {"zpl_target_meV", model.zpl_singlet}};
    j["derivation"] = {{"E_JT_meV", derivation.e_jt},
                       {"s2", derivation.s2},
                       {"p2", derivation.p2},
                       {"R_displacement", derivation.r_displacement},
                       {"target_zpl_meV", derivation.target_zpl},
                       {"fit_lambda_e", derivation.fit_lambda_e}};
    j["spectral_function"] = {{"shape", spectral_function.shape},
                              {"center_meV", spectral_function.center},
                              {"gamma_shape", spectral_function.gamma_shape},
                              {"gaussian_fwhm_meV", spectral_function.gaussian_fwhm},
                              {"grid_step_meV", spectral_function.grid_step}};
    j["spectrum"] = {{"grid_min_meV", spectrum.grid.x_min},
                     {"grid_max_meV", spectrum.grid.x_max},
                     {"grid_step_meV", spectrum.grid.step},
                     {"smear_zpl_meV", spectrum.smear.zpl_width},
                     {"smear_band1_meV", spectrum.smear.band1_width},
                     {"smear_band2_meV", spectrum.smear.band2_width},
                     {"band1_edge_meV", spectrum.smear.band1_edge},
                     {"band2_edge_meV", spectrum.smear.band2_edge},
                     {"hr_omega_eff_meV", spectrum.hr_omega_eff},
                     {"hr_smear_meV", spectrum.hr_smear},
                     {"hr_broad_density", spectrum.hr_broad_density},
                     {"hr_density_shape", spectrum.hr_density_shape}};
    j["isc"] = {{"sigma_min_meV", isc.sigma_min},
                {"sigma_max_meV", isc.sigma_max},
                {"sigma_step_meV", isc.sigma_step},
                {"target_rates_MHz", isc.target_rates_mhz},
                {"lambda_ratio_min", isc.lambda_ratio_min},
                {"lambda_ratio_max", isc.lambda_ratio_max},
                {"lambda_ratio_step", isc.lambda_ratio_step},
                {"temperature_min_K", isc.temperature_min},
                {"temperature_max_K", isc.temperature_max},
                {"temperature_step_K", isc.temperature_step},
                {"emitter_window_meV", isc.emitter_window}};
    j["output"] = {{"dir", output.dir}, {"format", output.format}};
    return j;
}

void RunConfig::set_key(const std::string& dotted_key, const std::string& value) {
    json j = to_json();
    json* node = &j;
    std::string rest = dotted_key;
    while (true) {
        const auto dot = rest.find('.');
        const std::string head = rest.substr(0, dot);
        if (!node->contains(head))
            throw ConfigError("unknown config key '" + dotted_key + "'");
        node = &(*node)[head];
        if (dot == std::string::npos) break;
        rest = rest.substr(dot + 1);
    }
    json parsed;
    try {
        parsed = json::parse(value);
    } catch (const json::exception&) {
        parsed = value;  // bare strings stay strings
    }
    if (node->is_string() && parsed.is_string())
        *node = parsed;
    else if (node->is_boolean() && parsed.is_boolean())
        *node = parsed;
    else if (node->is_number() && parsed.is_number())
        *node = parsed;
    else if (node->is_array() && parsed.is_array())
        *node = parsed;
    else
        throw ConfigError("config key '" + dotted_key + "' has the wrong type");
    *this = from_json(j);
}

void RunConfig::validate() const {
    try {
        model.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("model: ") + e.what());
    }
    const auto require = [](bool ok, const std::string& what) {
        if (!ok) throw ConfigError(what);
    };
    require(std::isfinite(derivation.e_jt) && derivation.e_jt >= 0.0,
            "derivation.E_JT_meV must be non-negative");
    require(derivation.s2 >= 0.0 && derivation.s2 <= 1.0, "derivation.s2 must lie in [0,1]");
    require(derivation.p2 >= 0.0 && derivation.p2 <= 1.0, "derivation.p2 must lie in [0,1]");
    require(derivation.r_displacement >= 0.0, "derivation.R_displacement must be non-negative");
    require(derivation.target_zpl > 0.0, "derivation.target_zpl_meV must be positive");

    require(spectral_function.shape == "gamma" || spectral_function.shape == "gaussian",
            "spectral_function.shape must be 'gamma' or 'gaussian'");
    require(spectral_function.center > 0.0, "spectral_function.center_meV must be positive");
    require(spectral_function.gamma_shape > 1.0, "spectral_function.gamma_shape must exceed 1");
    require(spectral_function.gaussian_fwhm > 0.0,
            "spectral_function.gaussian_fwhm_meV must be positive");
    require(spectral_function.grid_step > 0.0, "spectral_function.grid_step_meV must be positive");

    require(spectrum.grid.step > 0.0 && spectrum.grid.x_max > spectrum.grid.x_min,
            "spectrum grid must be increasing with positive step");
    require(spectrum.smear.zpl_width > 0.0 && spectrum.smear.band1_width > 0.0 &&
                spectrum.smear.band2_width > 0.0,
            "spectrum smearing widths must be positive");
    require(spectrum.smear.band1_edge < spectrum.smear.band2_edge,
            "spectrum band edges must be ascending");
    require(spectrum.hr_omega_eff > 0.0, "spectrum.hr_omega_eff_meV must be positive");
    require(spectrum.hr_smear > 0.0, "spectrum.hr_smear_meV must be positive");
    require(spectrum.hr_density_shape > 1.0, "spectrum.hr_density_shape must exceed 1");

    require(isc.sigma_step > 0.0 && isc.sigma_max >= isc.sigma_min, "isc sigma range invalid");
    require(isc.sigma_min > 0.0, "isc.sigma_min_meV must be positive");
    require(isc.lambda_ratio_step > 0.0 && isc.lambda_ratio_max >= isc.lambda_ratio_min &&
                isc.lambda_ratio_min > 0.0,
            "isc lambda ratio range invalid");
    require(isc.temperature_step > 0.0 && isc.temperature_max >= isc.temperature_min &&
                isc.temperature_min >= 0.0,
            "isc temperature range invalid");
    require(isc.emitter_window > 0.0, "isc.emitter_window_meV must be positive");
    for (double t : isc.target_rates_mhz)
        require(t > 0.0, "isc.target_rates_MHz entries must be positive");

    require(output.format == "csv" || output.format == "json",
            "output.format must be 'csv' or 'json'");
    require(!output.dir.empty(), "output.dir must not be empty");
}

} // namespace nvshelf

#include "core/runner.hpp"

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <vector>

#include "core/spectra.hpp"

namespace nvshelf {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

// One tabular output: header names plus rows of doubles, rendered as CSV or
// as a JSON document per output.format.
struct Table {
    std::string name;  // file stem
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    // Optional per-row string prefix column (e.g. symmetry labels).
    std::string text_column;
    std::vector<std::string> text_values;
};

std::string render_csv(const Table& t, const std::string& config_hash) {
    std::string out = "# nvshelf; config_fnv1a64=" + config_hash + "\n";
    bool first = true;
    if (!t.text_column.empty()) {
        out += t.text_column;
        first = false;
    }
    for (const auto& c : t.columns) {
        if (!first) out += ",";
        out += c;
        first = false;
    }
    out += "\n";
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        bool first_col = true;
        if (!t.text_column.empty()) {
            out += t.text_values[r];
            first_col = false;
        }
        for (double v : t.rows[r]) {
            if (!first_col) out += ",";
            out += format_double(v);
            first_col = false;
        }
        out += "\n";
    }
    return out;
}

std::string render_json(const Table& t, const std::string& config_hash) {
    json j;
    j["config_fnv1a64"] = config_hash;
    json cols = json::array();
    if (!t.text_column.empty()) cols.push_back(t.text_column);
    for (const auto& c : t.columns) cols.push_back(c);
    j["columns"] = cols;
    json rows = json::array();
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        json row = json::array();
        if (!t.text_column.empty()) row.push_back(t.text_values[r]);
        for (double v : t.rows[r]) row.push_back(v);
        rows.push_back(row);
    }
    j["rows"] = rows;
    return j.dump(2) + "\n";
}

struct OutputWriter {
    fs::path dir;
    std::string format;
    std::string config_hash;
    json manifest_files = json::object();

    void write_raw(const std::string& filename, const std::string& bytes) {
        std::error_code ec;
        fs::create_directories(dir, ec);
        if (ec) throw IoError("cannot create output directory '" + dir.string() + "'");
        const fs::path path = dir / filename;
        std::ofstream out(path, std::ios::binary);
        if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
        out << bytes;
        if (!out) throw IoError("write failed for '" + path.string() + "'");
        manifest_files[filename] = {{"bytes", bytes.size()}, {"fnv1a64", fnv1a64_hex(bytes)}};
    }

    void write_table(const Table& t) {
        if (format == "json")
            write_raw(t.name + ".json", render_json(t, config_hash));
        else
            write_raw(t.name + ".csv", render_csv(t, config_hash));
    }

    void finish(const RunConfig& cfg, const std::string& command) {
        json meta;
        meta["command"] = command;
        meta["config"] = cfg.to_json();
        meta["config_fnv1a64"] = config_hash;
        meta["files"] = manifest_files;
        const fs::path path = dir / "meta.json";
        std::ofstream out(path, std::ios::binary);
        if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
        out << meta.dump(2) << "\n";
    }
};

OutputWriter make_writer(const RunConfig& cfg, const std::string& out_dir) {
    OutputWriter w;
    w.dir = out_dir.empty() ? cfg.output.dir : out_dir;
    w.format = cfg.output.format;
    w.config_hash = fnv1a64_hex(cfg.to_json().dump());
    return w;
}

Table rate_table(const std::string& name, const std::string& x_column,
                 const std::vector<std::pair<double, RateSet>>& points) {
    Table t;
    t.name = name;
    t.columns = {x_column, "Gamma_z_MHz", "Gamma_pm_MHz", "Gamma_mp_MHz", "lifetime_ns"};
    for (const auto& [x, r] : points)
        t.rows.push_back({x, r.gamma_z, r.gamma_plus, r.gamma_minus, r.lifetime_ns()});
    return t;
}

} // namespace

std::string fnv1a64_hex(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016" PRIx64, h);
    return buf;
}

SpectralFunction make_one_phonon_density(const SpectralFunctionConfig& cfg) {
    if (cfg.shape == "gaussian")
        return gaussian_density(cfg.center, cfg.gaussian_fwhm, cfg.grid_step);
    return gamma_density(cfg.center, cfg.gamma_shape, cfg.grid_step);
}

SolvedModel solve_for_config(const RunConfig& cfg) {
    cfg.validate();
    SolvedModel m{solve_model(cfg.model), IscContext{}};
    m.isc = IscContext::build(m.eig, make_one_phonon_density(cfg.spectral_function),
                              cfg.isc.emitter_window);
    return m;
}

std::string derive_params_report(const RunConfig& cfg) {
    cfg.validate();
    const double s = std::sqrt(cfg.derivation.s2);
    const double p = std::sqrt(cfg.derivation.p2);
    const double c2 = derive_correlation_C2(s, p);
    const double f_derived = derive_coupling_F(cfg.derivation.e_jt, cfg.model.hbar_omega_E, c2);
    const double hr = huang_rhys_factor(cfg.derivation.r_displacement);

    char line[256];
    std::string report;
    report += "parameter           value            formula                          source\n";
    report += "----------------------------------------------------------------------------\n";
    std::snprintf(line, sizeof(line), "%-19s %-16s %-32s %s\n", "hbar_omega_E",
                  (format_double(cfg.model.hbar_omega_E) + " meV").c_str(),
                  "APES quasi-harmonic fit", "input");
    report += line;
    std::snprintf(line, sizeof(line), "%-19s %-16s %-32s %s\n", "E_JT",
                  (format_double(cfg.derivation.e_jt) + " meV").c_str(),
                  "APES relaxation of |xx>", "input");
    report += line;
    std::snprintf(line, sizeof(line), "%-19s %-16s %-32s %s\n", "C2",
                  format_double(c2).c_str(), "1 - 2 p^2 s^2", "derived");
    report += line;
    std::snprintf(line, sizeof(line), "%-19s %-16s %-32s %s\n", "F",
                  (format_double(f_derived) + " meV").c_str(),
                  "sqrt(2 hw E_JT) / (1 + C2)", "derived");
    report += line;
    std::snprintf(line, sizeof(line), "%-19s %-16s %-32s %s\n", "F (config)",
                  (format_double(cfg.model.F) + " meV").c_str(), "configured coupling",
                  "config");
    report += line;
    std::snprintf(line, sizeof(line), "%-19s %-16s %-32s %s\n", "S (Huang-Rhys)",
                  format_double(hr).c_str(), "R^2 / 2", "derived");
    report += line;

    if (cfg.derivation.fit_lambda_e) {
        const FitResult fit = fit_electronic_gap(cfg.derivation.target_zpl, cfg.model);
        std::snprintf(line, sizeof(line), "%-19s %-16s %-32s %s\n", "Lambda_e",
                      (format_double(fit.lambda_e) + " meV").c_str(),
                      "bisection on ZPL(Lambda_e)", "fitted");
        report += line;
        std::snprintf(line, sizeof(line), "%-19s %-16s %-32s %s\n", "ZPL (check)",
                      (format_double(fit.zpl) + " meV").c_str(),
                      ("target " + format_double(cfg.derivation.target_zpl)).c_str(), "fitted");
        report += line;
    } else {
        std::snprintf(line, sizeof(line), "%-19s %-16s %-32s %s\n", "Lambda_e",
                      (format_double(cfg.model.Lambda_e) + " meV").c_str(), "configured gap",
                      "config");
        report += line;
    }
    return report;
}

std::string run_derive_params(const RunConfig& cfg, const std::string& out_dir) {
    OutputWriter w = make_writer(cfg, out_dir);
    w.write_raw("derive_params.txt", derive_params_report(cfg));
    w.finish(cfg, "derive-params");
    return w.dir.string();
}

std::string run_solve(const RunConfig& cfg, const std::string& out_dir) {
    cfg.validate();
    const VibronicEigensystem eig = solve_model(cfg.model);
    OutputWriter w = make_writer(cfg, out_dir);

    Table levels;
    levels.name = "eigenvalues";
    levels.text_column = "label";
    levels.columns = {"index", "energy_meV", "energy_rel_meV"};
    for (int k = 0; k < eig.dim(); ++k) {
        levels.text_values.push_back(irrep_name(eig.labels[k]));
        levels.rows.push_back({double(k), eig.eigenvalues(k), eig.level(k)});
    }
    w.write_table(levels);

    const CoefficientTable table = extract_coefficients(eig, 25);
    Table coeffs;
    coeffs.name = "coefficients";
    coeffs.text_column = "label";
    coeffs.columns = {"state",          "energy_rel_meV", "n_phonon",
                      "w_EelecA1ph",    "w_A1elecEph",    "w_EelecEph",
                      "w_EelecA2ph",    "w_A1elecA1ph",   "w_A1elecA2ph"};
    for (const auto& entry : table.entries) {
        for (int n = 0; n <= eig.basis.n_max; ++n) {
            const ShellWeights& sw = entry.weights;
            coeffs.text_values.push_back(irrep_name(entry.label));
            coeffs.rows.push_back({double(entry.state), entry.energy_rel, double(n),
                                   sw.e_elec_a1_ph[n], sw.a1_elec_e_ph[n], sw.e_elec_e_ph[n],
                                   sw.e_elec_a2_ph[n], sw.a1_elec_a1_ph[n], sw.a1_elec_a2_ph[n]});
        }
    }
    w.write_table(coeffs);

    Table summary;
    summary.name = "summary";
    summary.columns = {"zpl_meV", "a1_ladder_spacing_meV", "pjt_relaxation_meV"};
    summary.rows.push_back(
        {zpl_energy(eig), effective_a1_spacing(eig), pjt_relaxation_energy(eig)});
    w.write_table(summary);

    w.finish(cfg, "solve");
    return w.dir.string();
}

std::string run_spectrum(const RunConfig& cfg, const std::string& kind,
                         const std::string& out_dir) {
    cfg.validate();
    OutputWriter w = make_writer(cfg, out_dir);
    SpectrumGrid grid;
    if (kind == "pl") {
        const VibronicEigensystem eig = solve_model(cfg.model);
        grid = pl_spectrum(eig, cfg.spectrum.smear, cfg.spectrum.grid);
    } else if (kind == "abs") {
        HuangRhysSettings hr;
        hr.S = huang_rhys_factor(cfg.derivation.r_displacement);
        hr.hbar_omega_eff = cfg.spectrum.hr_omega_eff;
        hr.smear = cfg.spectrum.hr_smear;
        hr.broad_density = cfg.spectrum.hr_broad_density;
        hr.density_shape = cfg.spectrum.hr_density_shape;
        hr.density_step = cfg.spectral_function.grid_step;
        grid = hr_absorption(hr, cfg.spectrum.grid);
    } else {
        throw ConfigError("spectrum kind must be 'pl' or 'abs', got '" + kind + "'");
    }

    Table t;
    t.name = "spectrum_" + kind;
    t.columns = {"energy_meV", "intensity"};
    for (int i = 0; i < grid.size(); ++i) t.rows.push_back({grid.x_at(i), grid.intensity[i]});
    w.write_table(t);
    w.finish(cfg, "spectrum " + kind);
    return w.dir.string();
}

std::string run_isc(const RunConfig& cfg, const std::string& mode, const std::string& out_dir) {
    cfg.validate();
    if (mode != "rates" && mode != "scan" && mode != "lambda" && mode != "temperature")
        throw ConfigError("isc mode must be rates|scan|lambda|temperature, got '" + mode + "'");

    const SolvedModel m = solve_for_config(cfg);
    OutputWriter w = make_writer(cfg, out_dir);

    if (mode == "rates") {
        const RateSet r = isc_rates(cfg.model.Sigma, m.isc);
        w.write_table(rate_table("rates", "Sigma_meV", {{cfg.model.Sigma, r}}));
    } else if (mode == "scan") {
        const auto scan = sigma_scan(cfg.isc.sigma_min, cfg.isc.sigma_max, cfg.isc.sigma_step,
                                     m.isc);
        std::vector<std::pair<double, RateSet>> points;
        points.reserve(scan.size());
        for (const auto& p : scan) points.emplace_back(p.sigma, p.rates);
        w.write_table(rate_table("sigma_scan", "Sigma_meV", points));

        Table crossings;
        crossings.name = "crossings";
        crossings.columns = {"target_rate_MHz", "Sigma_meV"};
        for (double target : cfg.isc.target_rates_mhz)
            for (double sigma : find_crossings(scan, target))
                crossings.rows.push_back({target, sigma});
        w.write_table(crossings);
    } else if (mode == "lambda") {
        Table t;
        t.name = "lambda_scan";
        t.columns = {"lambda_perp_over_lambda_z", "lambda_perp_GHz", "Gamma_z_over_Gamma_perp"};
        for (double ratio = cfg.isc.lambda_ratio_min; ratio <= cfg.isc.lambda_ratio_max + 1e-12;
             ratio += cfg.isc.lambda_ratio_step) {
            const double lp = ratio * cfg.model.lambda_z;
            t.rows.push_back({ratio, lp, lambda_ratio(cfg.model.Sigma, lp, m.isc)});
        }
        w.write_table(t);
    } else {
        std::vector<std::pair<double, RateSet>> points;
        for (double temp = cfg.isc.temperature_min; temp <= cfg.isc.temperature_max + 1e-9;
             temp += cfg.isc.temperature_step)
            points.emplace_back(temp, thermal_rates(temp, cfg.model.Sigma, m.isc));
        w.write_table(rate_table("temperature", "T_K", points));
    }

    w.finish(cfg, "isc " + mode);
    return w.dir.string();
}

} // namespace nvshelf

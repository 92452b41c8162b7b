// nvshelf command-line front end. Links the shared C API only.

#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nvshelf.h"

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_dir;
    std::vector<std::string> sets;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_path, "JSON configuration file");
    cmd->add_option("--out", opts.out_dir, "output directory (default: config output.dir)");
    cmd->add_option("--set", opts.sets, "override a config key, e.g. --set model.N_max=8")
        ->take_all();
}

int report_error(nvshelf_status status) {
    std::fprintf(stderr, "nvshelf: error: %s\n", nvshelf_last_error());
    return static_cast<int>(status);
}

// Builds the config from file/defaults plus --set overrides. Returns nullptr
// after printing the error.
nvshelf_config* make_config(const CommonOpts& opts, int* exit_code) {
    nvshelf_config* cfg = nullptr;
    nvshelf_status status = opts.config_path.empty()
                                ? nvshelf_config_default(&cfg)
                                : nvshelf_config_load_file(opts.config_path.c_str(), &cfg);
    if (status != NVSHELF_OK) {
        *exit_code = report_error(status);
        return nullptr;
    }
    for (const auto& kv : opts.sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) {
            std::fprintf(stderr, "nvshelf: error: --set expects key=value, got '%s'\n",
                         kv.c_str());
            nvshelf_config_free(cfg);
            *exit_code = 2;
            return nullptr;
        }
        status = nvshelf_config_set(cfg, kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str());
        if (status != NVSHELF_OK) {
            nvshelf_config_free(cfg);
            *exit_code = report_error(status);
            return nullptr;
        }
    }
    *exit_code = 0;
    return cfg;
}

const char* out_dir_arg(const CommonOpts& opts) {
    return opts.out_dir.empty() ? nullptr : opts.out_dir.c_str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"nvshelf — vibronic solver for the NV-center singlet shelving state"};
    app.require_subcommand(1);

    CommonOpts derive_opts, solve_opts, spectrum_opts, isc_opts;
    std::string spectrum_kind, isc_mode;

    CLI::App* derive = app.add_subcommand(
        "derive-params", "derive and calibrate the model parameters, print a provenance table");
    add_common(derive, derive_opts);

    CLI::App* solve = app.add_subcommand(
        "solve", "diagonalize the vibronic Hamiltonian, write eigenvalues and coefficients");
    add_common(solve, solve_opts);

    CLI::App* spectrum = app.add_subcommand("spectrum", "emit a lineshape (pl or abs)");
    spectrum->add_option("kind", spectrum_kind, "pl | abs")->required();
    add_common(spectrum, spectrum_opts);

    CLI::App* isc = app.add_subcommand("isc", "intersystem-crossing rate tables");
    isc->add_option("mode", isc_mode, "rates | scan | lambda | temperature")->required();
    add_common(isc, isc_opts);

    CLI11_PARSE(app, argc, argv);

    int exit_code = 0;
    if (derive->parsed()) {
        nvshelf_config* cfg = make_config(derive_opts, &exit_code);
        if (cfg == nullptr) return exit_code;
        char* report = nullptr;
        const nvshelf_status status =
            nvshelf_run_derive_params(cfg, out_dir_arg(derive_opts), &report);
        if (status == NVSHELF_OK) {
            std::fputs(report, stdout);
            nvshelf_string_free(report);
        } else {
            exit_code = report_error(status);
        }
        nvshelf_config_free(cfg);
        return exit_code;
    }

    if (solve->parsed()) {
        nvshelf_config* cfg = make_config(solve_opts, &exit_code);
        if (cfg == nullptr) return exit_code;
        const nvshelf_status status = nvshelf_run_solve(cfg, out_dir_arg(solve_opts));
        if (status == NVSHELF_OK)
            std::printf("wrote eigenvalues, coefficients and summary tables\n");
        else
            exit_code = report_error(status);
        nvshelf_config_free(cfg);
        return exit_code;
    }

    if (spectrum->parsed()) {
        nvshelf_config* cfg = make_config(spectrum_opts, &exit_code);
        if (cfg == nullptr) return exit_code;
        const nvshelf_status status =
            nvshelf_run_spectrum(cfg, spectrum_kind.c_str(), out_dir_arg(spectrum_opts));
        if (status == NVSHELF_OK)
            std::printf("wrote spectrum_%s table\n", spectrum_kind.c_str());
        else
            exit_code = report_error(status);
        nvshelf_config_free(cfg);
        return exit_code;
    }

    if (isc->parsed()) {
        nvshelf_config* cfg = make_config(isc_opts, &exit_code);
        if (cfg == nullptr) return exit_code;
        const nvshelf_status status = nvshelf_run_isc(cfg, isc_mode.c_str(), out_dir_arg(isc_opts));
        if (status == NVSHELF_OK)
            std::printf("wrote isc %s table(s)\n", isc_mode.c_str());
        else
            exit_code = report_error(status);
        nvshelf_config_free(cfg);
        return exit_code;
    }
    return 0;
}

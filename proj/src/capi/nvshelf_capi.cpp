#include "nvshelf.h"

#include <cstring>
#include <new>
#include <string>

#include "core/config.hpp"
#include "core/isc.hpp"
#include "core/runner.hpp"
#include "core/vibronic.hpp"

// extern-C surface over the core library. Handles own plain C++ objects;
// every entry point catches and maps exceptions to status codes.

namespace {

thread_local std::string g_last_error;

nvshelf_status fail(nvshelf_status code, const char* what) {
    g_last_error = what != nullptr ? what : "unknown error";
    return code;
}

template <typename Fn>
nvshelf_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return NVSHELF_OK;
    } catch (const nvshelf::ConfigError& e) {
        return fail(NVSHELF_ERR_CONFIG, e.what());
    } catch (const nvshelf::IoError& e) {
        return fail(NVSHELF_ERR_IO, e.what());
    } catch (const nvshelf::NumericError& e) {
        return fail(NVSHELF_ERR_NUMERIC, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(NVSHELF_ERR_CONFIG, e.what());
    } catch (const std::domain_error& e) {
        return fail(NVSHELF_ERR_CONFIG, e.what());
    } catch (const std::bad_alloc& e) {
        return fail(NVSHELF_ERR_NUMERIC, e.what());
    } catch (const std::exception& e) {
        return fail(NVSHELF_ERR_NUMERIC, e.what());
    }
}

char* copy_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

} // namespace

struct nvshelf_config {
    nvshelf::RunConfig cfg;
};

struct nvshelf_model {
    nvshelf::SolvedModel solved;
};

extern "C" {

const char* nvshelf_last_error(void) { return g_last_error.c_str(); }

void nvshelf_string_free(char* s) { delete[] s; }

nvshelf_status nvshelf_config_default(nvshelf_config** out) {
    if (out == nullptr) return fail(NVSHELF_ERR_CONFIG, "null output pointer");
    return guarded([&] { *out = new nvshelf_config{nvshelf::RunConfig::defaults()}; });
}

nvshelf_status nvshelf_config_load_file(const char* path, nvshelf_config** out) {
    if (path == nullptr || out == nullptr)
        return fail(NVSHELF_ERR_CONFIG, "null argument");
    return guarded([&] { *out = new nvshelf_config{nvshelf::RunConfig::from_file(path)}; });
}

nvshelf_status nvshelf_config_load_string(const char* json_text, nvshelf_config** out) {
    if (json_text == nullptr || out == nullptr)
        return fail(NVSHELF_ERR_CONFIG, "null argument");
    return guarded(
        [&] { *out = new nvshelf_config{nvshelf::RunConfig::from_string(json_text)}; });
}

nvshelf_status nvshelf_config_set(nvshelf_config* cfg, const char* key, const char* value) {
    if (cfg == nullptr || key == nullptr || value == nullptr)
        return fail(NVSHELF_ERR_CONFIG, "null argument");
    return guarded([&] { cfg->cfg.set_key(key, value); });
}

nvshelf_status nvshelf_config_dump(const nvshelf_config* cfg, char** json_out) {
    if (cfg == nullptr || json_out == nullptr)
        return fail(NVSHELF_ERR_CONFIG, "null argument");
    return guarded([&] { *json_out = copy_string(cfg->cfg.to_json().dump(2)); });
}

void nvshelf_config_free(nvshelf_config* cfg) { delete cfg; }

nvshelf_status nvshelf_model_solve(const nvshelf_config* cfg, nvshelf_model** out) {
    if (cfg == nullptr || out == nullptr)
        return fail(NVSHELF_ERR_CONFIG, "null argument");
    return guarded([&] { *out = new nvshelf_model{nvshelf::solve_for_config(cfg->cfg)}; });
}

void nvshelf_model_free(nvshelf_model* model) { delete model; }

nvshelf_status nvshelf_model_dimension(const nvshelf_model* m, int32_t* out) {
    if (m == nullptr || out == nullptr) return fail(NVSHELF_ERR_CONFIG, "null argument");
    *out = m->solved.eig.dim();
    return NVSHELF_OK;
}

nvshelf_status nvshelf_model_eigenvalues(const nvshelf_model* m, double* buf, int32_t cap) {
    if (m == nullptr || buf == nullptr) return fail(NVSHELF_ERR_CONFIG, "null argument");
    if (cap < m->solved.eig.dim()) return fail(NVSHELF_ERR_CONFIG, "buffer too small");
    for (int k = 0; k < m->solved.eig.dim(); ++k) buf[k] = m->solved.eig.eigenvalues(k);
    return NVSHELF_OK;
}

nvshelf_status nvshelf_model_labels(const nvshelf_model* m, int32_t* buf, int32_t cap) {
    if (m == nullptr || buf == nullptr) return fail(NVSHELF_ERR_CONFIG, "null argument");
    if (cap < m->solved.eig.dim()) return fail(NVSHELF_ERR_CONFIG, "buffer too small");
    for (int k = 0; k < m->solved.eig.dim(); ++k)
        buf[k] = static_cast<int32_t>(m->solved.eig.labels[k]);
    return NVSHELF_OK;
}

nvshelf_status nvshelf_model_zpl(const nvshelf_model* m, double* zpl_mev) {
    if (m == nullptr || zpl_mev == nullptr) return fail(NVSHELF_ERR_CONFIG, "null argument");
    return guarded([&] { *zpl_mev = nvshelf::zpl_energy(m->solved.eig); });
}

nvshelf_status nvshelf_model_a1_spacing(const nvshelf_model* m, double* spacing_mev) {
    if (m == nullptr || spacing_mev == nullptr)
        return fail(NVSHELF_ERR_CONFIG, "null argument");
    return guarded([&] { *spacing_mev = nvshelf::effective_a1_spacing(m->solved.eig); });
}

nvshelf_status nvshelf_model_relaxation_energy(const nvshelf_model* m, double* e_pjt_mev) {
    if (m == nullptr || e_pjt_mev == nullptr) return fail(NVSHELF_ERR_CONFIG, "null argument");
    return guarded([&] { *e_pjt_mev = nvshelf::pjt_relaxation_energy(m->solved.eig); });
}

nvshelf_status nvshelf_model_isc_rates(const nvshelf_model* m, double sigma_mev,
                                       double* gamma_z_mhz, double* gamma_plus_mhz,
                                       double* gamma_minus_mhz) {
    if (m == nullptr || gamma_z_mhz == nullptr || gamma_plus_mhz == nullptr ||
        gamma_minus_mhz == nullptr)
        return fail(NVSHELF_ERR_CONFIG, "null argument");
    return guarded([&] {
        const nvshelf::RateSet r = nvshelf::isc_rates(sigma_mev, m->solved.isc);
        *gamma_z_mhz = r.gamma_z;
        *gamma_plus_mhz = r.gamma_plus;
        *gamma_minus_mhz = r.gamma_minus;
    });
}

nvshelf_status nvshelf_model_thermal_rates(const nvshelf_model* m, double temperature_k,
                                           double sigma_mev, double* gamma_z_mhz,
                                           double* gamma_plus_mhz, double* gamma_minus_mhz) {
    if (m == nullptr || gamma_z_mhz == nullptr || gamma_plus_mhz == nullptr ||
        gamma_minus_mhz == nullptr)
        return fail(NVSHELF_ERR_CONFIG, "null argument");
    return guarded([&] {
        const nvshelf::RateSet r =
            nvshelf::thermal_rates(temperature_k, sigma_mev, m->solved.isc);
        *gamma_z_mhz = r.gamma_z;
        *gamma_plus_mhz = r.gamma_plus;
        *gamma_minus_mhz = r.gamma_minus;
    });
}

nvshelf_status nvshelf_fit_electronic_gap(const nvshelf_config* cfg, double target_zpl_mev,
                                          double* lambda_e_mev) {
    if (cfg == nullptr || lambda_e_mev == nullptr)
        return fail(NVSHELF_ERR_CONFIG, "null argument");
    return guarded([&] {
        *lambda_e_mev = nvshelf::fit_electronic_gap(target_zpl_mev, cfg->cfg.model).lambda_e;
    });
}

nvshelf_status nvshelf_run_derive_params(const nvshelf_config* cfg, const char* out_dir,
                                         char** report_out) {
    if (cfg == nullptr) return fail(NVSHELF_ERR_CONFIG, "null argument");
    return guarded([&] {
        const std::string report = nvshelf::derive_params_report(cfg->cfg);
        if (out_dir != nullptr) nvshelf::run_derive_params(cfg->cfg, out_dir);
        if (report_out != nullptr) *report_out = copy_string(report);
    });
}

nvshelf_status nvshelf_run_solve(const nvshelf_config* cfg, const char* out_dir) {
    if (cfg == nullptr) return fail(NVSHELF_ERR_CONFIG, "null argument");
    return guarded([&] { nvshelf::run_solve(cfg->cfg, out_dir != nullptr ? out_dir : ""); });
}

nvshelf_status nvshelf_run_spectrum(const nvshelf_config* cfg, const char* kind,
                                    const char* out_dir) {
    if (cfg == nullptr || kind == nullptr) return fail(NVSHELF_ERR_CONFIG, "null argument");
    return guarded(
        [&] { nvshelf::run_spectrum(cfg->cfg, kind, out_dir != nullptr ? out_dir : ""); });
}

nvshelf_status nvshelf_run_isc(const nvshelf_config* cfg, const char* mode,
                               const char* out_dir) {
    if (cfg == nullptr || mode == nullptr) return fail(NVSHELF_ERR_CONFIG, "null argument");
    return guarded([&] { nvshelf::run_isc(cfg->cfg, mode, out_dir != nullptr ? out_dir : ""); });
}

} // extern "C"

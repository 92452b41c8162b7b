/* nvshelf — vibronic solver for the NV-center singlet shelving state.
 *
 * C interface to the solver library: opaque handles, integer status codes,
 * UTF-8 strings. All energies are meV, spin-orbit strengths GHz, rates MHz,
 * temperatures K. Strings returned through char** must be released with
 * nvshelf_string_free().
 */

#ifndef NVSHELF_H
#define NVSHELF_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nvshelf_status {
    NVSHELF_OK = 0,
    NVSHELF_ERR_CONFIG = 2,  /* invalid configuration / arguments */
    NVSHELF_ERR_NUMERIC = 3, /* fit or eigensolver failure */
    NVSHELF_ERR_IO = 4       /* file system failure */
} nvshelf_status;

typedef struct nvshelf_config nvshelf_config;
typedef struct nvshelf_model nvshelf_model;

/* Message describing the most recent error on this thread ("" when none). */
const char* nvshelf_last_error(void);

void nvshelf_string_free(char* s);

/* --- configuration ------------------------------------------------------ */

nvshelf_status nvshelf_config_default(nvshelf_config** out);
nvshelf_status nvshelf_config_load_file(const char* path, nvshelf_config** out);
nvshelf_status nvshelf_config_load_string(const char* json_text, nvshelf_config** out);
/* Override one dotted key, e.g. ("model.N_max", "8"). */
nvshelf_status nvshelf_config_set(nvshelf_config* cfg, const char* key, const char* value);
/* Resolved configuration as a JSON document. */
nvshelf_status nvshelf_config_dump(const nvshelf_config* cfg, char** json_out);
void nvshelf_config_free(nvshelf_config* cfg);

/* --- solving and queries -------------------------------------------------- */

/* Builds and diagonalizes the vibronic Hamiltonian and prepares the phonon
 * overlap machinery. */
nvshelf_status nvshelf_model_solve(const nvshelf_config* cfg, nvshelf_model** out);
void nvshelf_model_free(nvshelf_model* model);

nvshelf_status nvshelf_model_dimension(const nvshelf_model* m, int32_t* out);
/* Eigenvalues in meV, ascending; cap is the buffer length. */
nvshelf_status nvshelf_model_eigenvalues(const nvshelf_model* m, double* buf, int32_t cap);
/* Symmetry labels per eigenstate: 0 = A1, 1 = A2, 2 = E. */
nvshelf_status nvshelf_model_labels(const nvshelf_model* m, int32_t* buf, int32_t cap);

nvshelf_status nvshelf_model_zpl(const nvshelf_model* m, double* zpl_mev);
nvshelf_status nvshelf_model_a1_spacing(const nvshelf_model* m, double* spacing_mev);
nvshelf_status nvshelf_model_relaxation_energy(const nvshelf_model* m, double* e_pjt_mev);

/* Low-temperature ISC rates at the given singlet-triplet gap. */
nvshelf_status nvshelf_model_isc_rates(const nvshelf_model* m, double sigma_mev,
                                       double* gamma_z_mhz, double* gamma_plus_mhz,
                                       double* gamma_minus_mhz);
/* Boltzmann-averaged rates over the thermally occupied vibronic levels. */
nvshelf_status nvshelf_model_thermal_rates(const nvshelf_model* m, double temperature_k,
                                           double sigma_mev, double* gamma_z_mhz,
                                           double* gamma_plus_mhz, double* gamma_minus_mhz);

/* Bisection fit of the electronic gap to the target ZPL. */
nvshelf_status nvshelf_fit_electronic_gap(const nvshelf_config* cfg, double target_zpl_mev,
                                          double* lambda_e_mev);

/* --- whole-run commands (CLI verbs) --------------------------------------- */

/* Parameter provenance report; also written to out_dir when non-NULL. */
nvshelf_status nvshelf_run_derive_params(const nvshelf_config* cfg, const char* out_dir,
                                         char** report_out);
nvshelf_status nvshelf_run_solve(const nvshelf_config* cfg, const char* out_dir);
/* kind: "pl" | "abs". */
nvshelf_status nvshelf_run_spectrum(const nvshelf_config* cfg, const char* kind,
                                    const char* out_dir);
/* mode: "rates" | "scan" | "lambda" | "temperature". */
nvshelf_status nvshelf_run_isc(const nvshelf_config* cfg, const char* mode, const char* out_dir);

#ifdef __cplusplus
}
#endif

#endif /* NVSHELF_H */

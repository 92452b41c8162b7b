#pragma once

#include <string>

#include "core/config.hpp"
#include "core/isc.hpp"
#include "core/spectral.hpp"
#include "core/vibronic.hpp"

// Whole-run commands backing the CLI verbs and the C API: solve the model,
// derive parameters, and write CSV/JSON outputs with a meta.json manifest.

namespace nvshelf {

// One-phonon density per the spectral_function section.
SpectralFunction make_one_phonon_density(const SpectralFunctionConfig& cfg);

// Solve + ISC context for the given configuration.
struct SolvedModel {
    VibronicEigensystem eig;
    IscContext isc;
};
SolvedModel solve_for_config(const RunConfig& cfg);

// Parameter provenance report (deterministic text); runs the Lambda_e fit
// when derivation.fit_lambda_e is set.
std::string derive_params_report(const RunConfig& cfg);

// Commands; out_dir empty means the config's output.dir. Each writes data
// files plus meta.json and returns the output directory used.
std::string run_derive_params(const RunConfig& cfg, const std::string& out_dir);
std::string run_solve(const RunConfig& cfg, const std::string& out_dir);
std::string run_spectrum(const RunConfig& cfg, const std::string& kind, const std::string& out_dir);
std::string run_isc(const RunConfig& cfg, const std::string& mode, const std::string& out_dir);

// FNV-1a 64-bit content hash, lowercase hex.
std::string fnv1a64_hex(const std::string& bytes);

} // namespace nvshelf

#pragma once

#include <vector>

#include "core/spectral.hpp"
#include "core/vibronic.hpp"

// Fermi-golden-rule intersystem-crossing rates from the shelving doublet to
// the triplet ground state: the axial channel is driven by the A1-electronic
// admixture (lambda_z), the transverse channels by the E-electronic weight
// (lambda_perp), each modulated by autoconvolved phonon overlap functions.

namespace nvshelf {

struct RateSet {
    double gamma_z = 0.0;      // MHz
    double gamma_plus = 0.0;   // MHz
    double gamma_minus = 0.0;  // MHz

    double gamma_perp() const { return gamma_plus + gamma_minus; }
    double total() const { return gamma_z + gamma_plus + gamma_minus; }
    double lifetime_ns() const;  // 1e3 / total(); infinite when all rates vanish
};

// F(Sigma) = sum_n w_n S^(n)(Sigma) with S^(n) the n-fold autoconvolution of
// the one-phonon density. The n = 0 term is a point mass at Sigma = 0 and
// never contributes at Sigma > 0.
struct OverlapFunction {
    std::vector<double> weights;  // by phonon number n = 0..n_max
    const ConvolutionLadder* ladder = nullptr;

    // Density value in 1/meV; sets *out_of_support when Sigma falls beyond the
    // tabulated convolutions (result 0).
    double value(double sigma, bool* out_of_support = nullptr) const;
    double total_weight() const;
    // Integral over Sigma >= 0 including the n = 0 point mass.
    double integral() const;
};

// Channel weights of one emitting vibronic level, grouped by phonon number.
struct IscEmitter {
    int state = 0;
    double energy_rel = 0.0;        // meV above the shelving ground doublet
    std::vector<double> w_z;        // A1-electronic weight -> Gamma_z
    std::vector<double> w_plus;     // E-electronic (x) A1-phonon weight -> Gamma_+/-
    std::vector<double> w_minus;    // E-electronic (x) E-phonon weight -> Gamma_-/+
};

struct IscContext {
    ModelParams params;
    ConvolutionLadder ladder;            // powers of the one-phonon density
    std::vector<IscEmitter> emitters;    // lowest levels of the shelving manifold
    std::vector<double> all_levels_rel;  // every eigenvalue, relative to ground

    OverlapFunction overlap_z() const;      // F_E   (d-type weights)
    OverlapFunction overlap_plus() const;   // F_E'  (c-type weights)
    OverlapFunction overlap_minus() const;  // F_E'' (f-type weights)

    static IscContext build(const VibronicEigensystem& eig, const SpectralFunction& one_phonon,
                            double emitter_window_mev = 300.0);
};

// Low-temperature rates from the ground doublet, at gap Sigma (meV).
RateSet isc_rates(double sigma, const IscContext& ctx);

// Rates of a single emitting level with the energy bookkeeping Sigma + E_k.
RateSet emitter_rates(double sigma, const IscEmitter& emitter, const IscContext& ctx);

struct SigmaScanPoint {
    double sigma = 0.0;
    RateSet rates;
};
std::vector<SigmaScanPoint> sigma_scan(double sigma_min, double sigma_max, double step,
                                       const IscContext& ctx);

// Sigma values where the total rate crosses `target_mhz` (linear interpolation
// between scan points), ascending.
std::vector<double> find_crossings(const std::vector<SigmaScanPoint>& scan, double target_mhz);

// Gamma_z / Gamma_perp at fixed Sigma for a given transverse strength.
double lambda_ratio(double sigma, double lambda_perp_ghz, const IscContext& ctx);

// Boltzmann-weighted rates over the thermally occupied vibronic levels.
// Throws when the excluded occupation weight exceeds 1e-4.
RateSet thermal_rates(double temperature_K, double sigma, const IscContext& ctx);

} // namespace nvshelf

#include "core/isc.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "core/constants.hpp"

namespace nvshelf {

namespace {

// Rate prefactors in MHz per (1/meV) of overlap density.
double prefactor_z_mhz(const ModelParams& p) {
    const double lam = p.lambda_z * constants::mev_per_GHz;
    return 8.0 * constants::pi * lam * lam * p.C2 / constants::hbar_mev_s * 1e-6;
}

double prefactor_perp_mhz(const ModelParams& p) {
    const double lam = p.lambda_perp * constants::mev_per_GHz;
    return 2.0 * constants::pi * (1.0 - p.C2) * lam * lam / constants::hbar_mev_s * 1e-6;
}

} // namespace

double RateSet::lifetime_ns() const {
    const double t = total();
    if (t <= 0.0) return std::numeric_limits<double>::infinity();
    return 1e3 / t;
}

double OverlapFunction::value(double sigma, bool* out_of_support) const {
    if (out_of_support) *out_of_support = false;
    double acc = 0.0;
    bool any_support = false;
    for (std::size_t n = 1; n < weights.size(); ++n) {
        const SpectralFunction& s = ladder->power(static_cast<int>(n));
        if (sigma <= s.x_max()) any_support = true;
        if (weights[n] != 0.0) acc += weights[n] * s(sigma);
    }
    if (!any_support && out_of_support) *out_of_support = true;
    return acc;
}

double OverlapFunction::total_weight() const {
    double acc = 0.0;
    for (double w : weights) acc += w;
    return acc;
}

double OverlapFunction::integral() const {
    double acc = weights.empty() ? 0.0 : weights[0];  // n = 0 point mass
    for (std::size_t n = 1; n < weights.size(); ++n)
        acc += weights[n] * ladder->power(static_cast<int>(n)).mass();
    return acc;
}

OverlapFunction IscContext::overlap_z() const {
    return OverlapFunction{emitters.at(0).w_z, &ladder};
}
OverlapFunction IscContext::overlap_plus() const {
    return OverlapFunction{emitters.at(0).w_plus, &ladder};
}
OverlapFunction IscContext::overlap_minus() const {
    return OverlapFunction{emitters.at(0).w_minus, &ladder};
}

IscContext IscContext::build(const VibronicEigensystem& eig, const SpectralFunction& one_phonon,
                             double emitter_window_mev) {
    IscContext ctx;
    ctx.params = eig.params;
    ctx.ladder = ConvolutionLadder::build(one_phonon, eig.basis.n_max);

    ctx.all_levels_rel.reserve(eig.dim());
    for (int k = 0; k < eig.dim(); ++k) ctx.all_levels_rel.push_back(eig.level(k));

    for (int k = 0; k < eig.dim(); ++k) {
        const double e_rel = eig.level(k);
        if (e_rel > emitter_window_mev) break;
        const ShellWeights w = extract_shell_weights(eig, k);
        IscEmitter emitter;
        emitter.state = k;
        emitter.energy_rel = e_rel;
        emitter.w_z = w.a1_elec();
        emitter.w_plus = w.e_elec_a1_ph;
        emitter.w_minus = w.e_elec_e_ph;
        ctx.emitters.push_back(std::move(emitter));
    }
    if (ctx.emitters.empty()) throw std::runtime_error("IscContext: no emitters in window");
    return ctx;
}

RateSet emitter_rates(double sigma, const IscEmitter& emitter, const IscContext& ctx) {
    if (sigma <= 0.0) throw std::domain_error("isc rates: Sigma must be positive");
    const double shifted = sigma + emitter.energy_rel;
    RateSet r;
    r.gamma_z = prefactor_z_mhz(ctx.params) *
                OverlapFunction{emitter.w_z, &ctx.ladder}.value(shifted);
    const double pre_perp = prefactor_perp_mhz(ctx.params);
    r.gamma_plus = pre_perp * OverlapFunction{emitter.w_plus, &ctx.ladder}.value(shifted);
    r.gamma_minus = pre_perp * OverlapFunction{emitter.w_minus, &ctx.ladder}.value(shifted);
    return r;
}

RateSet isc_rates(double sigma, const IscContext& ctx) {
    return emitter_rates(sigma, ctx.emitters.front(), ctx);
}

std::vector<SigmaScanPoint> sigma_scan(double sigma_min, double sigma_max, double step,
                                       const IscContext& ctx) {
    if (step <= 0.0 || sigma_max < sigma_min) throw std::domain_error("sigma_scan: bad range");
    std::vector<SigmaScanPoint> out;
    const int n = static_cast<int>(std::floor((sigma_max - sigma_min) / step + 1e-9)) + 1;
    out.reserve(n);
    for (int i = 0; i < n; ++i) {
        SigmaScanPoint p;
        p.sigma = sigma_min + i * step;
        p.rates = isc_rates(p.sigma, ctx);
        out.push_back(p);
    }
    return out;
}

std::vector<double> find_crossings(const std::vector<SigmaScanPoint>& scan, double target_mhz) {
    std::vector<double> out;
    for (std::size_t i = 1; i < scan.size(); ++i) {
        const double f0 = scan[i - 1].rates.total() - target_mhz;
        const double f1 = scan[i].rates.total() - target_mhz;
        if (f0 == 0.0) out.push_back(scan[i - 1].sigma);
        if ((f0 < 0.0 && f1 > 0.0) || (f0 > 0.0 && f1 < 0.0)) {
            const double t = f0 / (f0 - f1);
            out.push_back(scan[i - 1].sigma + t * (scan[i].sigma - scan[i - 1].sigma));
        }
    }
    return out;
}

double lambda_ratio(double sigma, double lambda_perp_ghz, const IscContext& ctx) {
    IscContext scaled = ctx;  // cheap: ladder copy shares nothing mutable
    scaled.params.lambda_perp = lambda_perp_ghz;
    const RateSet r = isc_rates(sigma, scaled);
    if (r.gamma_perp() <= 0.0)
        throw std::domain_error("lambda_ratio: transverse rate vanishes");
    return r.gamma_z / r.gamma_perp();
}

RateSet thermal_rates(double temperature_K, double sigma, const IscContext& ctx) {
    if (temperature_K < 0.0) throw std::domain_error("thermal_rates: negative temperature");
    const double kt = constants::k_B_mev_per_K * temperature_K;

    if (kt <= 0.0) return isc_rates(sigma, ctx);

    double z_included = 0.0;
    RateSet acc;
    for (const auto& emitter : ctx.emitters) {
        const double p = std::exp(-emitter.energy_rel / kt);
        const RateSet r = emitter_rates(sigma, emitter, ctx);
        acc.gamma_z += p * r.gamma_z;
        acc.gamma_plus += p * r.gamma_plus;
        acc.gamma_minus += p * r.gamma_minus;
        z_included += p;
    }

    double z_excluded = 0.0;
    for (std::size_t k = ctx.emitters.size(); k < ctx.all_levels_rel.size(); ++k)
        z_excluded += std::exp(-ctx.all_levels_rel[k] / kt);
    if (z_excluded / (z_included + z_excluded) > 1e-4)
        throw std::runtime_error("thermal_rates: excluded Boltzmann weight " +
                                 std::to_string(z_excluded / (z_included + z_excluded)) +
                                 " exceeds 1e-4; enlarge the emitter window");

    acc.gamma_z /= z_included;
    acc.gamma_plus /= z_included;
    acc.gamma_minus /= z_included;
    return acc;
}

} // namespace nvshelf

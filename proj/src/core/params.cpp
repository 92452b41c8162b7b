#include "core/params.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "core/vibronic.hpp"

namespace nvshelf {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument(what);
}

bool finite(double x) { return std::isfinite(x); }

} // namespace

void ModelParams::validate() const {
    require(finite(hbar_omega_E) && hbar_omega_E > 0.0, "hbar_omega_E must be positive");
    require(finite(F) && F >= 0.0, "F must be non-negative");
    require(finite(C2) && C2 >= 0.0 && C2 <= 1.0, "C2 must lie in [0,1]");
    require(finite(Lambda_e), "Lambda_e must be finite");
    require(finite(lambda_z) && lambda_z >= 0.0, "lambda_z must be non-negative");
    require(finite(lambda_perp) && lambda_perp >= 0.0, "lambda_perp must be non-negative");
    require(finite(Sigma), "Sigma must be finite");
    require(n_max >= 1, "n_max must be at least 1");
    require(finite(d_perp), "d_perp must be finite");
    require(finite(zpl_singlet) && zpl_singlet > 0.0, "zpl_singlet must be positive");
}

double derive_coupling_F(double e_jt, double hbar_omega_E, double c2) {
    require(finite(e_jt) && e_jt >= 0.0, "derive_coupling_F: E_JT must be non-negative");
    require(finite(hbar_omega_E) && hbar_omega_E > 0.0,
            "derive_coupling_F: hbar_omega_E must be positive");
    require(finite(c2) && c2 >= 0.0 && c2 <= 1.0, "derive_coupling_F: C2 must lie in [0,1]");
    return std::sqrt(2.0 * hbar_omega_E * e_jt) / (1.0 + c2);
}

double derive_correlation_C2(double s, double p) {
    require(finite(s) && finite(p), "derive_correlation_C2: amplitudes must be finite");
    require(p * p + s * s <= 1.0 + 1e-9, "derive_correlation_C2: amplitudes exceed normalization");
    const double c2 = 1.0 - 2.0 * p * p * s * s;
    if (c2 < 0.0 || c2 > 1.0)
        throw std::invalid_argument("derive_correlation_C2: result outside [0,1]");
    return c2;
}

double huang_rhys_factor(double r) {
    require(finite(r) && r >= 0.0, "huang_rhys_factor: R must be non-negative");
    return r * r / 2.0;
}

FitResult fit_electronic_gap(double target_zpl, const ModelParams& params) {
    require(finite(target_zpl) && target_zpl > 0.0, "fit_electronic_gap: target ZPL must be positive");

    FitResult result;
    auto zpl_at = [&](double lambda_e) {
        ModelParams p = params;
        p.Lambda_e = lambda_e;
        ++result.evaluations;
        return zpl_energy(solve_model(p));
    };

    // The vibronic correction shifts the ZPL above Lambda_e by at most a few
    // relaxation energies; start near the target and widen if needed.
    double lo = std::max(0.0, target_zpl - 300.0);
    double hi = target_zpl + 50.0;
    double f_lo = zpl_at(lo) - target_zpl;
    double f_hi = zpl_at(hi) - target_zpl;
    while (f_lo > 0.0 && lo > 0.0) {
        lo = std::max(0.0, lo - 300.0);
        f_lo = zpl_at(lo) - target_zpl;
    }
    while (f_hi < 0.0 && hi < 2.0 * target_zpl) {
        hi = std::min(2.0 * target_zpl, hi + 300.0);
        f_hi = zpl_at(hi) - target_zpl;
    }
    if (f_lo > 0.0 || f_hi < 0.0)
        throw std::runtime_error("fit_electronic_gap: no bracket in [0, 2*target]");

    const double bracket_tol = 0.05;  // meV on Lambda_e
    const double zpl_tol = 0.1;       // meV on the reproduced ZPL
    double mid = 0.5 * (lo + hi);
    double f_mid = zpl_at(mid) - target_zpl;
    while (hi - lo > bracket_tol && std::abs(f_mid) > zpl_tol / 2.0) {
        if ((f_mid > 0.0) == (f_hi > 0.0)) {
            hi = mid;
            f_hi = f_mid;
        } else {
            lo = mid;
            f_lo = f_mid;
        }
        mid = 0.5 * (lo + hi);
        f_mid = zpl_at(mid) - target_zpl;
    }

    result.lambda_e = mid;
    result.zpl = f_mid + target_zpl;
    if (std::abs(result.zpl - target_zpl) > zpl_tol)
        throw std::runtime_error("fit_electronic_gap: bisection failed to reach tolerance");
    return result;
}

} // namespace nvshelf

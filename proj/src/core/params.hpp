#pragma once

#include <string>

// Calibrated scalar parameters of the two-singlet electron-phonon model and
// the derivations that produce them from APES-level inputs.

namespace nvshelf {

struct ModelParams {
    double hbar_omega_E = 66.1;   // effective E-phonon quantum, meV
    double F = 107.5735;          // linear Jahn-Teller coupling, meV
                                  // = sqrt(2*hbar_omega_E*E_JT)/(1+C2) at E_JT = 316
    double C2 = 0.9;              // weight of |1E> in the correlated doublet
    double Lambda_e = 1129.4;     // electronic singlet gap, meV
    double lambda_z = 15.78;      // axial spin-orbit strength, GHz
    double lambda_perp = 18.936;  // transverse spin-orbit strength, GHz
    double Sigma = 379.0;         // singlet-triplet gap, meV (2.70 MHz crossing)
    int n_max = 10;               // phonon truncation n_x+n_y <= n_max
    double d_perp = 1.0;          // transition dipole unit (relative intensities)
    double zpl_singlet = 1190.0;  // target singlet ZPL, meV

    // Throws std::invalid_argument on any violated invariant.
    void validate() const;
};

// Inverts E_JT = ((C^2 2F + (1-C^2) F)^2) / (2 hbar_omega) for F.
double derive_coupling_F(double e_jt, double hbar_omega_E, double c2);

// C^2 = 1 - 2 p^2 s^2 from the orbital overlap amplitudes of the distorted
// Kohn-Sham state.
double derive_correlation_C2(double s, double p);

// Huang-Rhys factor of a displaced oscillator in dimensionless coordinates.
double huang_rhys_factor(double r);

struct FitResult {
    double lambda_e = 0.0;   // fitted electronic gap, meV
    double zpl = 0.0;        // ZPL reproduced at the fitted gap, meV
    int evaluations = 0;     // number of full diagonalizations spent
};

// Bisection on the monotone map Lambda_e -> ZPL. `params` supplies everything
// except Lambda_e; tolerance is 0.1 meV on the ZPL (0.05 meV bracket).
FitResult fit_electronic_gap(double target_zpl, const ModelParams& params);

} // namespace nvshelf

#pragma once

#include <Eigen/Dense>
#include <vector>

#include "core/spectral.hpp"
#include "core/vibronic.hpp"

// Emission/absorption lineshapes. The spectral coordinate is the phonon
// energy released relative to the ZPL: x = 0 at the ZPL, x > 0 further into
// the sideband (for PL that is E(ZPL) - E(photon)).

namespace nvshelf {

struct SpectrumGrid {
    double x_min = -20.0;
    double step = 0.1;
    std::vector<double> intensity;

    int size() const { return static_cast<int>(intensity.size()); }
    double x_at(int i) const { return x_min + i * step; }
    // Location of the maximum within [lo, hi].
    double argmax_in(double lo, double hi) const;
};

struct GridSettings {
    double x_min = -20.0;
    double x_max = 400.0;
    double step = 0.1;
};

// Per-band Gaussian widths (standard deviations, meV) with configurable band
// edges on the x axis.
struct SmearingSettings {
    double zpl_width = 2.0;
    double band1_width = 5.0;
    double band2_width = 10.0;
    double band1_edge = 2.0;   // x > band1_edge: first band
    double band2_edge = 30.0;  // x > band2_edge: second band
    double width_at(double x) const;
};

// 3x3 electronic transition-dipole block: 2*d_perp*sigma_z for "x"
// polarization, 2*d_perp*sigma_x for "y".
Eigen::Matrix3d dipole_operator(Mode polarization, double d_perp);

struct EmissionLine {
    double x = 0.0;         // meV above the ZPL (phonon energy left behind)
    double strength = 0.0;  // |<A1~|d|state>|^2, ZPL normalized to 1
    int final_state = 0;
    Irrep final_label = Irrep::E;
};

// x-polarized emission lines from the upper A1 vibronic ground state to every
// state below it, strengths normalized to the ZPL.
std::vector<EmissionLine> pl_lines(const VibronicEigensystem& eig, Mode polarization = Mode::X);

// Gaussian-broadened PL lineshape from pl_lines.
SpectrumGrid pl_spectrum(const VibronicEigensystem& eig, const SmearingSettings& smear,
                         const GridSettings& grid);

struct HuangRhysSettings {
    double S = 0.845;              // Huang-Rhys factor
    double hbar_omega_eff = 91.8;  // effective phonon quantum, meV
    double smear = 1.5;            // Gaussian width (sigma), meV
    bool broad_density = false;    // replace discrete lines by a broad one-phonon density
    double density_shape = 7.0;    // gamma shape of the broad density
    double density_step = 0.25;    // internal convolution grid, meV
};

// Poisson phonon progression exp(-S) S^n / n! at n * hbar_omega_eff; either
// discrete Gaussian-smeared lines or the n-fold autoconvolution of a broad
// one-phonon density.
SpectrumGrid hr_absorption(const HuangRhysSettings& hr, const GridSettings& grid);

// Poisson weights up to the cutoff (weight < cutoff dropped).
std::vector<double> poisson_weights(double S, double cutoff = 1e-8);

} // namespace nvshelf

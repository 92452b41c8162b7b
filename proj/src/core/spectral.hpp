#pragma once

#include <vector>

// Normalized one-phonon spectral densities on a uniform energy grid and their
// n-fold autoconvolutions. Densities live on x_i = i*step, x >= 0; the
// rectangle rule is used throughout so convolution preserves mass exactly.

namespace nvshelf {

struct SpectralFunction {
    double step = 0.25;          // meV
    std::vector<double> values;  // density (1/meV) at x_i = i*step

    int size() const { return static_cast<int>(values.size()); }
    double x_max() const { return values.empty() ? 0.0 : step * (size() - 1); }
    // Rectangle-rule mass, step * sum(values).
    double mass() const;
    // Linear interpolation; 0 outside the tabulated support.
    double operator()(double x) const;
    void scale_mass_to(double target);
};

// Unit point mass at the grid origin, the n = 0 convolution power.
SpectralFunction delta_density(double step);

// Gaussian centered at `center` with the given FWHM, truncated at 0 and
// renormalized to unit mass.
SpectralFunction gaussian_density(double center, double fwhm, double step);

// Gamma density with the given mean and shape k > 1 (mode = mean*(k-1)/k);
// unit mass.
SpectralFunction gamma_density(double mean, double shape, double step);

// Convolution on the shared grid; output support is the sum of the inputs'.
SpectralFunction convolve(const SpectralFunction& a, const SpectralFunction& b);

// S^(0) = delta at origin, S^(n) = S^(n-1) * S.
SpectralFunction autoconvolve(const SpectralFunction& s, int n);

// All powers S^(0..n_max), computed once.
struct ConvolutionLadder {
    std::vector<SpectralFunction> powers;

    static ConvolutionLadder build(const SpectralFunction& s, int n_max);
    int n_max() const { return static_cast<int>(powers.size()) - 1; }
    const SpectralFunction& power(int n) const { return powers.at(n); }
};

} // namespace nvshelf

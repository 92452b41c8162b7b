#include "core/spectral.hpp"

#include <cmath>
#include <stdexcept>

#include "core/constants.hpp"

namespace nvshelf {

double SpectralFunction::mass() const {
    double sum = 0.0;
    for (double v : values) sum += v;
    return step * sum;
}

double SpectralFunction::operator()(double x) const {
    if (x < 0.0 || values.empty()) return 0.0;
    const double t = x / step;
    const int i = static_cast<int>(t);
    if (i >= size() - 1) return i == size() - 1 ? values.back() : 0.0;
    const double frac = t - i;
    return values[i] * (1.0 - frac) + values[i + 1] * frac;
}

void SpectralFunction::scale_mass_to(double target) {
    const double m = mass();
    if (m <= 0.0) throw std::domain_error("SpectralFunction: cannot normalize zero mass");
    const double f = target / m;
    for (double& v : values) v *= f;
}

SpectralFunction delta_density(double step) {
    SpectralFunction s;
    s.step = step;
    s.values.assign(1, 1.0 / step);
    return s;
}

SpectralFunction gaussian_density(double center, double fwhm, double step) {
    if (fwhm <= 0.0 || step <= 0.0 || center < 0.0)
        throw std::domain_error("gaussian_density: invalid parameters");
    const double sigma = fwhm / (2.0 * std::sqrt(2.0 * std::log(2.0)));
    SpectralFunction s;
    s.step = step;
    const int n = static_cast<int>(std::ceil((center + 8.0 * sigma) / step)) + 1;
    s.values.resize(n);
    const double norm = 1.0 / (sigma * std::sqrt(2.0 * constants::pi));
    for (int i = 0; i < n; ++i) {
        const double z = (i * step - center) / sigma;
        s.values[i] = norm * std::exp(-0.5 * z * z);
    }
    s.scale_mass_to(1.0);
    return s;
}

SpectralFunction gamma_density(double mean, double shape, double step) {
    if (mean <= 0.0 || shape <= 1.0 || step <= 0.0)
        throw std::domain_error("gamma_density: require mean > 0, shape > 1");
    const double theta = mean / shape;
    SpectralFunction s;
    s.step = step;
    const double sigma = std::sqrt(shape) * theta;
    const int n = static_cast<int>(std::ceil((mean + 14.0 * sigma) / step)) + 1;
    s.values.resize(n);
    const double log_norm = -std::lgamma(shape) - shape * std::log(theta);
    for (int i = 0; i < n; ++i) {
        const double x = i * step;
        s.values[i] = x <= 0.0 ? 0.0
                               : std::exp(log_norm + (shape - 1.0) * std::log(x) - x / theta);
    }
    s.scale_mass_to(1.0);
    return s;
}

SpectralFunction convolve(const SpectralFunction& a, const SpectralFunction& b) {
    if (a.step != b.step) throw std::invalid_argument("convolve: mismatched grid steps");
    SpectralFunction out;
    out.step = a.step;
    if (a.values.empty() || b.values.empty()) return out;
    const int la = a.size(), lb = b.size();
    out.values.assign(la + lb - 1, 0.0);
    for (int i = 0; i < la; ++i) {
        const double ai = a.values[i];
        if (ai == 0.0) continue;
        for (int j = 0; j < lb; ++j) out.values[i + j] += ai * b.values[j];
    }
    for (double& v : out.values) v *= out.step;
    return out;
}

SpectralFunction autoconvolve(const SpectralFunction& s, int n) {
    if (n < 0) throw std::domain_error("autoconvolve: n must be >= 0");
    SpectralFunction acc = delta_density(s.step);
    for (int k = 0; k < n; ++k) acc = convolve(acc, s);
    return acc;
}

ConvolutionLadder ConvolutionLadder::build(const SpectralFunction& s, int n_max) {
    if (n_max < 0) throw std::domain_error("ConvolutionLadder: n_max must be >= 0");
    ConvolutionLadder ladder;
    ladder.powers.reserve(n_max + 1);
    ladder.powers.push_back(delta_density(s.step));
    for (int n = 1; n <= n_max; ++n) ladder.powers.push_back(convolve(ladder.powers.back(), s));
    return ladder;
}

} // namespace nvshelf

#include "core/spectra.hpp"

#include <cmath>
#include <stdexcept>

#include "core/constants.hpp"

namespace nvshelf {

double SpectrumGrid::argmax_in(double lo, double hi) const {
    double best_x = lo, best = -1.0;
    for (int i = 0; i < size(); ++i) {
        const double x = x_at(i);
        if (x < lo || x > hi) continue;
        if (intensity[i] > best) {
            best = intensity[i];
            best_x = x;
        }
    }
    if (best < 0.0) throw std::invalid_argument("argmax_in: window outside the grid");
    return best_x;
}

double SmearingSettings::width_at(double x) const {
    if (x <= band1_edge) return zpl_width;
    if (x <= band2_edge) return band1_width;
    return band2_width;
}

Eigen::Matrix3d dipole_operator(Mode polarization, double d_perp) {
    Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
    if (polarization == Mode::X) {
        m(0, 0) = 2.0 * d_perp;
        m(2, 2) = -2.0 * d_perp;
    } else {
        const double v = 2.0 * d_perp / std::sqrt(2.0);
        m(0, 1) = m(1, 0) = m(1, 2) = m(2, 1) = v;
    }
    return m;
}

std::vector<EmissionLine> pl_lines(const VibronicEigensystem& eig, Mode polarization) {
    const int nb = eig.basis.size();
    const Eigen::Matrix3d dip = dipole_operator(polarization, eig.params.d_perp);

    const int emitter = eig.ground_a1_index;
    const auto& v_em = eig.eigenvectors.col(emitter);

    // Contract <emitter| d (x) 1_ph |k> without forming the product-space matrix.
    Eigen::VectorXd dip_em(3 * nb);
    for (int e = 0; e < 3; ++e)
        for (int b = 0; b < nb; ++b) {
            double acc = 0.0;
            for (int f = 0; f < 3; ++f) acc += dip(e, f) * v_em(f * nb + b);
            dip_em(e * nb + b) = acc;
        }

    std::vector<EmissionLine> lines;
    double zpl_strength = 0.0;
    for (int k = 0; k < eig.dim(); ++k) {
        if (eig.eigenvalues(k) >= eig.eigenvalues(emitter)) continue;
        const double amp = dip_em.dot(eig.eigenvectors.col(k));
        EmissionLine line;
        line.x = eig.level(k);
        line.strength = amp * amp;
        line.final_state = k;
        line.final_label = eig.labels[k];
        if (line.x < 1e-6) zpl_strength += line.strength;
        lines.push_back(line);
    }
    if (zpl_strength <= 0.0) throw std::runtime_error("pl_lines: vanishing ZPL strength");
    for (auto& line : lines) line.strength /= zpl_strength;
    return lines;
}

namespace {

void add_gaussian(SpectrumGrid& grid, double center, double weight, double sigma) {
    if (weight == 0.0) return;
    const double norm = weight / (sigma * std::sqrt(2.0 * constants::pi));
    for (int i = 0; i < grid.size(); ++i) {
        const double z = (grid.x_at(i) - center) / sigma;
        if (std::abs(z) > 10.0) continue;
        grid.intensity[i] += norm * std::exp(-0.5 * z * z);
    }
}

SpectrumGrid make_grid(const GridSettings& settings) {
    if (settings.step <= 0.0 || settings.x_max <= settings.x_min)
        throw std::invalid_argument("SpectrumGrid: invalid grid settings");
    SpectrumGrid grid;
    grid.x_min = settings.x_min;
    grid.step = settings.step;
    grid.intensity.assign(
        static_cast<int>(std::round((settings.x_max - settings.x_min) / settings.step)) + 1, 0.0);
    return grid;
}

} // namespace

SpectrumGrid pl_spectrum(const VibronicEigensystem& eig, const SmearingSettings& smear,
                         const GridSettings& settings) {
    SpectrumGrid grid = make_grid(settings);
    for (const auto& line : pl_lines(eig))
        add_gaussian(grid, line.x, line.strength, smear.width_at(line.x));
    return grid;
}

std::vector<double> poisson_weights(double S, double cutoff) {
    if (S < 0.0) throw std::domain_error("poisson_weights: S must be >= 0");
    std::vector<double> w;
    double term = std::exp(-S);
    int n = 0;
    while (term >= cutoff || n <= 1) {
        w.push_back(term);
        ++n;
        term *= S / n;
        if (n > 200) break;
    }
    return w;
}

SpectrumGrid hr_absorption(const HuangRhysSettings& hr, const GridSettings& settings) {
    if (hr.S < 0.0) throw std::domain_error("hr_absorption: S must be >= 0");
    SpectrumGrid grid = make_grid(settings);
    const std::vector<double> weights = poisson_weights(hr.S);

    if (!hr.broad_density) {
        for (std::size_t n = 0; n < weights.size(); ++n)
            add_gaussian(grid, double(n) * hr.hbar_omega_eff, weights[n], hr.smear);
        return grid;
    }

    const SpectralFunction one =
        gamma_density(hr.hbar_omega_eff, hr.density_shape, hr.density_step);
    const ConvolutionLadder ladder =
        ConvolutionLadder::build(one, static_cast<int>(weights.size()) - 1);
    add_gaussian(grid, 0.0, weights[0], hr.smear);  // ZPL keeps its discrete width
    for (int i = 0; i < grid.size(); ++i) {
        const double x = grid.x_at(i);
        for (std::size_t n = 1; n < weights.size(); ++n)
            grid.intensity[i] += weights[n] * ladder.power(static_cast<int>(n))(x);
    }
    return grid;
}

} // namespace nvshelf

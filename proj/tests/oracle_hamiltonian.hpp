#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "core/params.hpp"

// Test-only brute-force assembly of the coupled Hamiltonian: explicit loops
// over |electronic> (x) |n_x n_y> with hand-written matrix elements. Shares no
// construction code with the library path; used as the small-basis oracle.

namespace nvshelf::testing {

inline Eigen::MatrixXd brute_force_hamiltonian(const ModelParams& p, int n_max) {
    struct State {
        int e, nx, ny;
    };
    std::vector<State> states;
    for (int e = 0; e < 3; ++e)
        for (int n = 0; n <= n_max; ++n)
            for (int nx = n; nx >= 0; --nx) states.push_back({e, nx, n - nx});

    const double sz[3][3] = {{1, 0, 0}, {0, 0, 0}, {0, 0, -1}};
    const double r = 1.0 / std::sqrt(2.0);
    const double sx[3][3] = {{0, r, 0}, {r, 0, r}, {0, r, 0}};
    const double tz[3][3] = {{0.5, 0, -0.5}, {0, -1, 0}, {-0.5, 0, 0.5}};
    const double tx[3][3] = {{0, r, 0}, {r, 0, -r}, {0, -r, 0}};
    const double he[3][3] = {{1, 0, 1}, {0, 0, 0}, {1, 0, 1}};

    const int dim = static_cast<int>(states.size());
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    const double pjt = p.C2 * 2.0 * p.F;
    const double djt = (1.0 - p.C2) * p.F;
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            const State a = states[i], b = states[j];
            double v = 0.0;
            if (a.nx == b.nx && a.ny == b.ny) {
                v += p.Lambda_e / 2.0 * he[a.e][b.e];
                if (a.e == b.e) v += p.hbar_omega_E * (a.nx + a.ny + 1);
            }
            double xme = 0.0;
            if (a.ny == b.ny) {
                if (a.nx == b.nx + 1) xme = std::sqrt((b.nx + 1) / 2.0);
                if (a.nx == b.nx - 1) xme = std::sqrt(b.nx / 2.0);
            }
            double yme = 0.0;
            if (a.nx == b.nx) {
                if (a.ny == b.ny + 1) yme = std::sqrt((b.ny + 1) / 2.0);
                if (a.ny == b.ny - 1) yme = std::sqrt(b.ny / 2.0);
            }
            v += pjt * (sz[a.e][b.e] * xme - sx[a.e][b.e] * yme);
            v += djt * (tz[a.e][b.e] * xme + tx[a.e][b.e] * yme);
            h(i, j) += v;
        }
    }
    return h;
}

} // namespace nvshelf::testing

#pragma once

#include <Eigen/Dense>
#include <vector>

#include "core/fock.hpp"
#include "core/params.hpp"

// Assembly and exact diagonalization of the coupled pseudo/dynamic
// Jahn-Teller Hamiltonian over the 3-electronic x two-mode-phonon space,
// symmetry labeling, and extraction of the vibronic expansion coefficients.

namespace nvshelf {

enum class Irrep { A1, A2, E };

const char* irrep_name(Irrep r);

// H = (Lambda_e/2) P_e  +  hbar_omega (n_x + n_y + 1)
//   + C^2 2F (sigma_z X - sigma_x Y)  +  (1-C^2) F (tau_z X + tau_x Y)
// in the (|xx>,|xy>,|yy>) x |n_x n_y> product basis; real symmetric.
Eigen::MatrixXd build_hamiltonian(const ModelParams& params, const BosonBasis& basis);

struct VibronicEigensystem {
    BosonBasis basis;
    SymmetryOps sym;
    ModelParams params;

    Eigen::VectorXd eigenvalues;   // meV, ascending
    Eigen::MatrixXd eigenvectors;  // orthonormal columns
    std::vector<Irrep> labels;
    std::vector<int> partner;      // E states: column of the degenerate partner; else -1

    int ground_index = 0;     // lowest state (an E doublet for any F > 0)
    int ground_a1_index = 0;  // upper-manifold A1 vibronic ground (ZPL emitter)

    int dim() const { return static_cast<int>(eigenvalues.size()); }
    // Energy above the vibronic ground state, meV.
    double level(int k) const { return eigenvalues(k) - eigenvalues(ground_index); }
};

// Full-spectrum diagonalization with symmetry labels attached. Degenerate E
// pairs are resolved into sigma_v eigenvectors (+1 partner first).
VibronicEigensystem diagonalize(const Eigen::MatrixXd& h, const BosonBasis& basis,
                                const ModelParams& params);

VibronicEigensystem solve_model(const ModelParams& params);

// Squared expansion weights of one eigenstate, resolved by electronic channel
// (A1 vs E) and phonon-shell irrep, grouped by phonon number n = 0..n_max.
// For an E-symmetry eigenstate: c = e_elec_a1_ph, d = a1_elec, f = e_elec_e_ph,
// g = e_elec_a2_ph.  For an A1 eigenstate: c' = a1_elec, d' = e_elec_e_ph.
struct ShellWeights {
    std::vector<double> a1_elec_a1_ph;
    std::vector<double> a1_elec_e_ph;
    std::vector<double> a1_elec_a2_ph;
    std::vector<double> e_elec_a1_ph;
    std::vector<double> e_elec_e_ph;
    std::vector<double> e_elec_a2_ph;

    // Total weight in the A1 / E electronic channels per shell.
    std::vector<double> a1_elec() const;
    std::vector<double> e_elec() const;
    double total() const;  // should be 1 for a normalized eigenstate
};

struct CoefficientEntry {
    int state = 0;
    Irrep label = Irrep::A1;
    double energy_rel = 0.0;  // meV above the vibronic ground state
    ShellWeights weights;
};

struct CoefficientTable {
    std::vector<CoefficientEntry> entries;  // lowest `count` eigenstates
    const CoefficientEntry& for_state(int state) const;
};

ShellWeights extract_shell_weights(const VibronicEigensystem& eig, int state);
CoefficientTable extract_coefficients(const VibronicEigensystem& eig, int count = 25);

// Energy of the upper-manifold A1 vibronic ground relative to the lower
// vibronic ground doublet.
double zpl_energy(const VibronicEigensystem& eig);

// Mean spacing of the first three vibronic levels of the upper manifold
// (eigenvalues clustered by gaps; degenerate sublevels share a cluster).
double effective_a1_spacing(const VibronicEigensystem& eig);

// Lowering of the vibronic ground level relative to the uncoupled
// zero-point energy hbar_omega.
double pjt_relaxation_energy(const VibronicEigensystem& eig);

// First-order perturbative estimate of the d1 admixture coefficient,
// chi/(Lambda_e + hbar_omega) with chi = F_tilde/sqrt(2).
double perturbative_pjt(double f_tilde, double lambda_e, double hbar_omega_E);

} // namespace nvshelf

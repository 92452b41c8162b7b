#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

// Truncated two-mode boson basis for the E vibration, plus the C3v symmetry
// machinery acting on the 3-electronic x phonon product space.

namespace nvshelf {

enum class Mode { X, Y };

// Occupation states |n_x n_y> with n_x + n_y <= n_max, enumerated shell by
// shell (total quanta ascending) and n_x descending inside a shell:
// (0,0); (1,0),(0,1); (2,0),(1,1),(0,2); ...
struct BosonBasis {
    int n_max = 0;
    std::vector<std::pair<int, int>> states;

    static BosonBasis build(int n_max);

    int size() const { return static_cast<int>(states.size()); }
    int shell(int index) const {
        return states[index].first + states[index].second;
    }
    // Row index of |n_x n_y>, or -1 outside the truncation.
    int index_of(int nx, int ny) const;
};

// Creation/annihilation with standard harmonic-oscillator matrix elements.
// Creation out of the truncated space maps to zero.
Eigen::MatrixXd ladder(const BosonBasis& basis, Mode mode, bool create);

// Dimensionless coordinate (a^dag + a)/sqrt(2); symmetric.
Eigen::MatrixXd position_op(const BosonBasis& basis, Mode mode);

// n_x + n_y, diagonal.
Eigen::MatrixXd number_op(const BosonBasis& basis);

// Unitary (real orthogonal) representations of C3v. The electronic triple
// (|xx>,|xy>,|yy>) transforms as the symmetric square of E, the phonon pair
// (x,y) as E itself. Product-space matrices use index e*basis.size()+b.
struct SymmetryOps {
    // Full product space (dimension 3*|basis|).
    Eigen::MatrixXd c3;
    Eigen::MatrixXd sigma_v;

    // Phonon-space blocks.
    Eigen::MatrixXd phonon_c3;
    Eigen::MatrixXd phonon_sigma_v;

    // Phonon-space irrep projectors (commute with the shell structure).
    Eigen::MatrixXd phonon_proj_a1;
    Eigen::MatrixXd phonon_proj_a2;
    Eigen::MatrixXd phonon_proj_e;

    // Electronic 3x3 blocks.
    Eigen::Matrix3d elec_c3;
    Eigen::Matrix3d elec_sigma_v;
};

SymmetryOps build_symmetry_ops(const BosonBasis& basis);

// Electronic basis rows in the (|xx>,|xy>,|yy>) ordering.
Eigen::Vector3d elec_a1();   // (|xx>+|yy>)/sqrt(2)
Eigen::Vector3d elec_e_x();  // (|xx>-|yy>)/sqrt(2)
Eigen::Vector3d elec_e_y();  // |xy>

} // namespace nvshelf

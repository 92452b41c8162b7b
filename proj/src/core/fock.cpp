#include "core/fock.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "core/constants.hpp"

namespace nvshelf {

BosonBasis BosonBasis::build(int n_max) {
    if (n_max < 0) throw std::invalid_argument("BosonBasis: n_max must be >= 0");
    BosonBasis basis;
    basis.n_max = n_max;
    basis.states.reserve(static_cast<std::size_t>((n_max + 1) * (n_max + 2) / 2));
    for (int n = 0; n <= n_max; ++n)
        for (int nx = n; nx >= 0; --nx)
            basis.states.emplace_back(nx, n - nx);
    return basis;
}

int BosonBasis::index_of(int nx, int ny) const {
    if (nx < 0 || ny < 0 || nx + ny > n_max) return -1;
    const int n = nx + ny;
    // Shell n starts at n(n+1)/2; inside it n_x runs from n down to 0.
    return n * (n + 1) / 2 + (n - nx);
}

Eigen::MatrixXd ladder(const BosonBasis& basis, Mode mode, bool create) {
    const int nb = basis.size();
    Eigen::MatrixXd op = Eigen::MatrixXd::Zero(nb, nb);
    for (int j = 0; j < nb; ++j) {
        auto [nx, ny] = basis.states[j];
        int tx = nx, ty = ny;
        if (mode == Mode::X)
            tx += create ? 1 : -1;
        else
            ty += create ? 1 : -1;
        const int i = basis.index_of(tx, ty);
        if (i < 0) continue;  // out of truncation (or annihilating the vacuum)
        const int q = mode == Mode::X ? nx : ny;
        op(i, j) = create ? std::sqrt(double(q + 1)) : std::sqrt(double(q));
    }
    return op;
}

Eigen::MatrixXd position_op(const BosonBasis& basis, Mode mode) {
    return (ladder(basis, mode, true) + ladder(basis, mode, false)) / std::sqrt(2.0);
}

Eigen::MatrixXd number_op(const BosonBasis& basis) {
    const int nb = basis.size();
    Eigen::MatrixXd op = Eigen::MatrixXd::Zero(nb, nb);
    for (int j = 0; j < nb; ++j) op(j, j) = basis.shell(j);
    return op;
}

Eigen::Vector3d elec_a1() { return Eigen::Vector3d(1.0, 0.0, 1.0) / std::sqrt(2.0); }
Eigen::Vector3d elec_e_x() { return Eigen::Vector3d(1.0, 0.0, -1.0) / std::sqrt(2.0); }
Eigen::Vector3d elec_e_y() { return Eigen::Vector3d(0.0, 1.0, 0.0); }

namespace {

// Rotation of the two-particle symmetric products (|xx>,|xy>,|yy>) induced by
// e_x -> c e_x + s e_y, e_y -> -s e_x + c e_y.
Eigen::Matrix3d elec_rotation(double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    Eigen::Matrix3d m;
    m << c * c, -std::sqrt(2.0) * c * s, s * s,
        std::sqrt(2.0) * c * s, c * c - s * s, -std::sqrt(2.0) * c * s,
        s * s, std::sqrt(2.0) * c * s, c * c;
    return m;
}

// Rotation on the phonon Fock space: exp(theta * K) with the angular momentum
// generator K = a_y^dag a_x - a_x^dag a_y (real antisymmetric, shell-diagonal,
// integer spectrum of iK), giving an exactly unitary matrix per shell. The
// direction is fixed so that U X U^T = cos(theta) X + sin(theta) Y, matching
// the electronic rotation convention.
Eigen::MatrixXd phonon_rotation(const BosonBasis& basis, double theta) {
    using Cplx = std::complex<double>;
    const int nb = basis.size();
    const Eigen::MatrixXd k = ladder(basis, Mode::Y, true) * ladder(basis, Mode::X, false) -
                              ladder(basis, Mode::X, true) * ladder(basis, Mode::Y, false);
    const Eigen::MatrixXcd ik = Cplx(0.0, 1.0) * k;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(ik);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("phonon_rotation: generator diagonalization failed");
    Eigen::VectorXcd phases(nb);
    for (int i = 0; i < nb; ++i) {
        // exp(theta K) = exp(-i theta (iK)); eigenvalues of iK are integers.
        const double ell = std::round(es.eigenvalues()(i));
        phases(i) = std::exp(Cplx(0.0, -theta * ell));
    }
    const Eigen::MatrixXcd u =
        es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
    return u.real();
}

Eigen::MatrixXd kron3(const Eigen::Matrix3d& a, const Eigen::MatrixXd& b) {
    const int nb = static_cast<int>(b.rows());
    Eigen::MatrixXd out(3 * nb, 3 * nb);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) out.block(i * nb, j * nb, nb, nb) = a(i, j) * b;
    return out;
}

} // namespace

SymmetryOps build_symmetry_ops(const BosonBasis& basis) {
    const int nb = basis.size();
    const double theta = 2.0 * constants::pi / 3.0;

    SymmetryOps ops;
    ops.elec_c3 = elec_rotation(theta);
    ops.elec_sigma_v = Eigen::Vector3d(1.0, -1.0, 1.0).asDiagonal();

    ops.phonon_c3 = phonon_rotation(basis, theta);
    ops.phonon_sigma_v = Eigen::MatrixXd::Zero(nb, nb);
    for (int j = 0; j < nb; ++j)
        ops.phonon_sigma_v(j, j) = basis.states[j].second % 2 == 0 ? 1.0 : -1.0;

    ops.c3 = kron3(ops.elec_c3, ops.phonon_c3);
    ops.sigma_v = kron3(ops.elec_sigma_v, ops.phonon_sigma_v);

    // Group averages over {E, C3, C3^2, sigma, C3 sigma, C3^2 sigma}.
    const Eigen::MatrixXd& r = ops.phonon_c3;
    const Eigen::MatrixXd& s = ops.phonon_sigma_v;
    const Eigen::MatrixXd r2 = r * r;
    const Eigen::MatrixXd rotations = Eigen::MatrixXd::Identity(nb, nb) + r + r2;
    const Eigen::MatrixXd reflections = s + r * s + r2 * s;
    ops.phonon_proj_a1 = (rotations + reflections) / 6.0;
    ops.phonon_proj_a2 = (rotations - reflections) / 6.0;
    ops.phonon_proj_e =
        Eigen::MatrixXd::Identity(nb, nb) - ops.phonon_proj_a1 - ops.phonon_proj_a2;
    return ops;
}

} // namespace nvshelf

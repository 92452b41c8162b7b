#include "core/vibronic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nvshelf {

const char* irrep_name(Irrep r) {
    switch (r) {
        case Irrep::A1: return "A1";
        case Irrep::A2: return "A2";
        case Irrep::E: return "E";
    }
    return "?";
}

namespace {

constexpr double kDegeneracyTol = 1e-6;  // meV, E-doublet pairing window

Eigen::Matrix3d sigma_z_op() {
    Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
    m(0, 0) = 1.0;
    m(2, 2) = -1.0;
    return m;
}

Eigen::Matrix3d sigma_x_op() {
    Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
    const double r = 1.0 / std::sqrt(2.0);
    m(0, 1) = m(1, 0) = m(1, 2) = m(2, 1) = r;
    return m;
}

// In-doublet angular momentum of the correlated |1E> pair, written over
// (|xx>,|xy>,|yy>): tau_z = |E_x><E_x| - |E_y><E_y|, tau_x = |E_x><E_y| + h.c.
Eigen::Matrix3d tau_z_op() {
    Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
    m(0, 0) = m(2, 2) = 0.5;
    m(0, 2) = m(2, 0) = -0.5;
    m(1, 1) = -1.0;
    return m;
}

Eigen::Matrix3d tau_x_op() {
    Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
    const double r = 1.0 / std::sqrt(2.0);
    m(0, 1) = m(1, 0) = r;
    m(1, 2) = m(2, 1) = -r;
    return m;
}

Eigen::Matrix3d electronic_gap_op() {
    Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
    m(0, 0) = m(0, 2) = m(2, 0) = m(2, 2) = 1.0;
    return m;
}

Eigen::MatrixXd kron3(const Eigen::Matrix3d& a, const Eigen::MatrixXd& b) {
    const int nb = static_cast<int>(b.rows());
    Eigen::MatrixXd out(3 * nb, 3 * nb);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) out.block(i * nb, j * nb, nb, nb) = a(i, j) * b;
    return out;
}

void fix_sign(Eigen::Ref<Eigen::VectorXd> v) {
    for (int i = 0; i < v.size(); ++i) {
        if (std::abs(v(i)) > 1e-8) {
            if (v(i) < 0.0) v = -v;
            return;
        }
    }
}

} // namespace

Eigen::MatrixXd build_hamiltonian(const ModelParams& params, const BosonBasis& basis) {
    params.validate();
    if (basis.n_max > 40)
        throw std::invalid_argument("build_hamiltonian: n_max > 40 would overflow the dense solver budget");

    const int nb = basis.size();
    const Eigen::MatrixXd x = position_op(basis, Mode::X);
    const Eigen::MatrixXd y = position_op(basis, Mode::Y);
    const Eigen::MatrixXd number = number_op(basis);

    Eigen::MatrixXd h = kron3(electronic_gap_op(), Eigen::MatrixXd::Identity(nb, nb)) *
                        (params.Lambda_e / 2.0);
    h += params.hbar_omega_E *
         (kron3(Eigen::Matrix3d::Identity(), number) +
          Eigen::MatrixXd::Identity(3 * nb, 3 * nb));
    const double pjt = params.C2 * 2.0 * params.F;
    h += pjt * (kron3(sigma_z_op(), x) - kron3(sigma_x_op(), y));
    const double djt = (1.0 - params.C2) * params.F;
    h += djt * (kron3(tau_z_op(), x) + kron3(tau_x_op(), y));

    return (h + h.transpose()) / 2.0;
}

namespace {

// Precomputed group sums shared by all clusters of one diagonalization.
struct GroupSums {
    Eigen::MatrixXd rot;   // E + C3 + C3^2
    Eigen::MatrixXd refl;  // sigma_v + C3 sigma_v + C3^2 sigma_v
};

GroupSums make_group_sums(const SymmetryOps& sym) {
    const Eigen::MatrixXd& c3 = sym.c3;
    const Eigen::MatrixXd c3sq = c3 * c3;
    GroupSums g;
    g.rot = Eigen::MatrixXd::Identity(c3.rows(), c3.cols()) + c3 + c3sq;
    g.refl = sym.sigma_v + c3 * sym.sigma_v + c3sq * sym.sigma_v;
    return g;
}

// Splits one (near-)degenerate eigenvalue cluster into irrep-adapted columns.
// Returns labels in the order the rotated columns are written back.
void resolve_cluster(Eigen::Ref<Eigen::MatrixXd> cols, const SymmetryOps& sym,
                     const GroupSums& sums, std::vector<Irrep>& labels_out,
                     std::vector<int>& partner_out, int first_index) {
    const int m = static_cast<int>(cols.cols());

    const Eigen::MatrixXd& c3 = sym.c3;
    const Eigen::MatrixXd& sv = sym.sigma_v;
    const Eigen::MatrixXd& rot = sums.rot;
    const Eigen::MatrixXd& refl = sums.refl;

    // Group averages restricted to the cluster subspace.
    const Eigen::MatrixXd rot_cols = rot * cols;
    const Eigen::MatrixXd refl_cols = refl * cols;
    const Eigen::MatrixXd pa1 = cols.transpose() * (rot_cols + refl_cols) / 6.0;
    const Eigen::MatrixXd pa2 = cols.transpose() * (rot_cols - refl_cols) / 6.0;

    auto extract = [&](const Eigen::MatrixXd& proj, std::vector<Eigen::VectorXd>& vecs) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(proj);
        for (int i = 0; i < m; ++i) {
            const double w = es.eigenvalues()(i);
            if (w > 0.5) {
                if (w < 1.0 - 1e-6)
                    throw std::runtime_error("symmetry labeling: fractional projector weight");
                vecs.push_back(cols * es.eigenvectors().col(i));
            } else if (w > 1e-6) {
                throw std::runtime_error("symmetry labeling: fractional projector weight");
            }
        }
    };

    std::vector<Eigen::VectorXd> a1_vecs, a2_vecs;
    extract(pa1, a1_vecs);
    extract(pa2, a2_vecs);

    const int n_e = m - static_cast<int>(a1_vecs.size() + a2_vecs.size());
    if (n_e % 2 != 0)
        throw std::runtime_error("symmetry labeling: odd E-subspace dimension");

    // Remainder of the cluster carries the E pairs. Take sigma_v = +1 vectors
    // and generate each partner from the C3 image (deterministic pairing).
    std::vector<Eigen::VectorXd> e_vecs;
    if (n_e > 0) {
        Eigen::MatrixXd pe_sub =
            Eigen::MatrixXd::Identity(m, m) - cols.transpose() * rot_cols / 3.0;
        // sigma_v restricted to the E part of the cluster
        Eigen::MatrixXd sv_sub = cols.transpose() * sv * cols;
        // project sigma_v onto the E subspace before taking eigenvectors
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> pes(pe_sub);
        Eigen::MatrixXd e_basis(m, n_e);
        int k = 0;
        for (int i = 0; i < m; ++i)
            if (pes.eigenvalues()(i) > 0.5) e_basis.col(k++) = pes.eigenvectors().col(i);
        if (k != n_e) throw std::runtime_error("symmetry labeling: E-subspace rank mismatch");

        Eigen::MatrixXd sv_e = e_basis.transpose() * sv_sub * e_basis;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ses(sv_e);
        for (int i = 0; i < n_e; ++i) {
            if (ses.eigenvalues()(i) < 0.0) continue;  // keep +1 vectors only
            Eigen::VectorXd plus = cols * (e_basis * ses.eigenvectors().col(i));
            plus.normalize();
            Eigen::VectorXd minus = c3 * plus;
            minus -= plus.dot(minus) * plus;
            const double norm = minus.norm();
            if (norm < 1e-8)
                throw std::runtime_error("symmetry labeling: degenerate partner generation failed");
            minus /= norm;
            e_vecs.push_back(std::move(plus));
            e_vecs.push_back(std::move(minus));
        }
        if (static_cast<int>(e_vecs.size()) != n_e)
            throw std::runtime_error("symmetry labeling: unpaired E states");
    }

    int col = 0;
    for (auto& v : a1_vecs) {
        fix_sign(v);
        cols.col(col++) = v;
        labels_out.push_back(Irrep::A1);
        partner_out.push_back(-1);
    }
    for (auto& v : a2_vecs) {
        fix_sign(v);
        cols.col(col++) = v;
        labels_out.push_back(Irrep::A2);
        partner_out.push_back(-1);
    }
    for (std::size_t i = 0; i < e_vecs.size(); i += 2) {
        fix_sign(e_vecs[i]);
        cols.col(col) = e_vecs[i];
        cols.col(col + 1) = e_vecs[i + 1];
        labels_out.push_back(Irrep::E);
        labels_out.push_back(Irrep::E);
        partner_out.push_back(first_index + col + 1);
        partner_out.push_back(first_index + col);
        col += 2;
    }
}

int locate_upper_a1(const VibronicEigensystem& eig) {
    // The ZPL emitter: the A1 eigenstate above the vibronic ground level with
    // the largest x-polarized dipole strength to the ground doublet.
    const int nb = eig.basis.size();
    const Eigen::MatrixXd dip = kron3(sigma_z_op(), Eigen::MatrixXd::Identity(nb, nb));

    std::vector<int> ground_members{eig.ground_index};
    if (eig.partner[eig.ground_index] >= 0)
        ground_members.push_back(eig.partner[eig.ground_index]);

    int best = -1;
    double best_strength = -1.0;
    for (int k = 0; k < eig.dim(); ++k) {
        if (eig.labels[k] != Irrep::A1) continue;
        if (eig.eigenvalues(k) <= eig.eigenvalues(eig.ground_index) + kDegeneracyTol) continue;
        double strength = 0.0;
        for (int p : ground_members) {
            const double amp = eig.eigenvectors.col(p).dot(dip * eig.eigenvectors.col(k));
            strength += amp * amp;
        }
        if (strength > best_strength) {
            best_strength = strength;
            best = k;
        }
    }
    if (best < 0) throw std::runtime_error("no A1 vibronic state found above the ground level");
    return best;
}

} // namespace

VibronicEigensystem diagonalize(const Eigen::MatrixXd& h, const BosonBasis& basis,
                                const ModelParams& params) {
    if (h.rows() != h.cols() || h.rows() != 3 * basis.size())
        throw std::invalid_argument("diagonalize: matrix does not match the product space");
    if (!h.isApprox(h.transpose(), 1e-12))
        throw std::invalid_argument("diagonalize: matrix is not symmetric");

    VibronicEigensystem eig;
    eig.basis = basis;
    eig.sym = build_symmetry_ops(basis);
    eig.params = params;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("diagonalize: eigensolver failed to converge");
    eig.eigenvalues = es.eigenvalues();
    eig.eigenvectors = es.eigenvectors();

    const int dim = eig.dim();
    eig.labels.reserve(dim);
    eig.partner.reserve(dim);
    const GroupSums sums = make_group_sums(eig.sym);
    int start = 0;
    while (start < dim) {
        int end = start + 1;
        while (end < dim && eig.eigenvalues(end) - eig.eigenvalues(end - 1) <= kDegeneracyTol)
            ++end;
        resolve_cluster(eig.eigenvectors.middleCols(start, end - start), eig.sym, sums,
                        eig.labels, eig.partner, start);
        start = end;
    }

    eig.ground_index = 0;
    eig.ground_a1_index = locate_upper_a1(eig);
    return eig;
}

VibronicEigensystem solve_model(const ModelParams& params) {
    const BosonBasis basis = BosonBasis::build(params.n_max);
    return diagonalize(build_hamiltonian(params, basis), basis, params);
}

std::vector<double> ShellWeights::a1_elec() const {
    std::vector<double> out(a1_elec_a1_ph.size());
    for (std::size_t n = 0; n < out.size(); ++n)
        out[n] = a1_elec_a1_ph[n] + a1_elec_e_ph[n] + a1_elec_a2_ph[n];
    return out;
}

std::vector<double> ShellWeights::e_elec() const {
    std::vector<double> out(e_elec_a1_ph.size());
    for (std::size_t n = 0; n < out.size(); ++n)
        out[n] = e_elec_a1_ph[n] + e_elec_e_ph[n] + e_elec_a2_ph[n];
    return out;
}

double ShellWeights::total() const {
    double t = 0.0;
    for (std::size_t n = 0; n < a1_elec_a1_ph.size(); ++n)
        t += a1_elec_a1_ph[n] + a1_elec_e_ph[n] + a1_elec_a2_ph[n] + e_elec_a1_ph[n] +
             e_elec_e_ph[n] + e_elec_a2_ph[n];
    return t;
}

ShellWeights extract_shell_weights(const VibronicEigensystem& eig, int state) {
    const int nb = eig.basis.size();
    const int shells = eig.basis.n_max + 1;

    ShellWeights w;
    for (auto* field : {&w.a1_elec_a1_ph, &w.a1_elec_e_ph, &w.a1_elec_a2_ph, &w.e_elec_a1_ph,
                        &w.e_elec_e_ph, &w.e_elec_a2_ph})
        field->assign(shells, 0.0);

    // Electronic channel amplitudes as phonon-space vectors.
    Eigen::VectorXd v_a1(nb), v_ex(nb), v_ey(nb);
    const auto& psi = eig.eigenvectors.col(state);
    const Eigen::Vector3d a1 = elec_a1(), ex = elec_e_x(), ey = elec_e_y();
    for (int b = 0; b < nb; ++b) {
        v_a1(b) = a1(0) * psi(b) + a1(1) * psi(nb + b) + a1(2) * psi(2 * nb + b);
        v_ex(b) = ex(0) * psi(b) + ex(1) * psi(nb + b) + ex(2) * psi(2 * nb + b);
        v_ey(b) = ey(0) * psi(b) + ey(1) * psi(nb + b) + ey(2) * psi(2 * nb + b);
    }

    auto accumulate = [&](const Eigen::MatrixXd& proj, const Eigen::VectorXd& v,
                          std::vector<double>& out) {
        const Eigen::VectorXd u = proj * v;
        for (int b = 0; b < nb; ++b) out[eig.basis.shell(b)] += u(b) * u(b);
    };

    accumulate(eig.sym.phonon_proj_a1, v_a1, w.a1_elec_a1_ph);
    accumulate(eig.sym.phonon_proj_e, v_a1, w.a1_elec_e_ph);
    accumulate(eig.sym.phonon_proj_a2, v_a1, w.a1_elec_a2_ph);
    accumulate(eig.sym.phonon_proj_a1, v_ex, w.e_elec_a1_ph);
    accumulate(eig.sym.phonon_proj_e, v_ex, w.e_elec_e_ph);
    accumulate(eig.sym.phonon_proj_a2, v_ex, w.e_elec_a2_ph);
    accumulate(eig.sym.phonon_proj_a1, v_ey, w.e_elec_a1_ph);
    accumulate(eig.sym.phonon_proj_e, v_ey, w.e_elec_e_ph);
    accumulate(eig.sym.phonon_proj_a2, v_ey, w.e_elec_a2_ph);
    return w;
}

const CoefficientEntry& CoefficientTable::for_state(int state) const {
    for (const auto& e : entries)
        if (e.state == state) return e;
    throw std::out_of_range("CoefficientTable: state not extracted");
}

CoefficientTable extract_coefficients(const VibronicEigensystem& eig, int count) {
    CoefficientTable table;
    const int n = std::min(count, eig.dim());
    table.entries.reserve(n);
    for (int k = 0; k < n; ++k) {
        CoefficientEntry entry;
        entry.state = k;
        entry.label = eig.labels[k];
        entry.energy_rel = eig.level(k);
        entry.weights = extract_shell_weights(eig, k);
        const double total = entry.weights.total();
        if (std::abs(total - 1.0) > 1e-8)
            throw std::runtime_error("extract_coefficients: weights do not close to 1");
        table.entries.push_back(std::move(entry));
    }
    return table;
}

double zpl_energy(const VibronicEigensystem& eig) {
    return eig.eigenvalues(eig.ground_a1_index) - eig.eigenvalues(eig.ground_index);
}

double effective_a1_spacing(const VibronicEigensystem& eig) {
    const double base = eig.eigenvalues(eig.ground_a1_index);
    const double gap_threshold = eig.params.hbar_omega_E / 2.0;

    std::vector<double> upper;
    for (int k = 0; k < eig.dim(); ++k)
        if (eig.eigenvalues(k) >= base - kDegeneracyTol) upper.push_back(eig.eigenvalues(k));
    std::sort(upper.begin(), upper.end());

    std::vector<double> cluster_means;
    double sum = upper.front();
    int n = 1;
    for (std::size_t i = 1; i < upper.size(); ++i) {
        if (upper[i] - upper[i - 1] > gap_threshold) {
            cluster_means.push_back(sum / n);
            sum = 0.0;
            n = 0;
        }
        sum += upper[i];
        ++n;
    }
    cluster_means.push_back(sum / n);
    if (cluster_means.size() < 3)
        throw std::runtime_error("effective_a1_spacing: fewer than three upper-manifold levels");
    return (cluster_means[2] - cluster_means[0]) / 2.0;
}

double pjt_relaxation_energy(const VibronicEigensystem& eig) {
    return eig.params.hbar_omega_E - eig.eigenvalues(eig.ground_index);
}

double perturbative_pjt(double f_tilde, double lambda_e, double hbar_omega_E) {
    return (f_tilde / std::sqrt(2.0)) / (lambda_e + hbar_omega_E);
}

} // namespace nvshelf

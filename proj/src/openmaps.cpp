#include "worklab/openmaps.hpp"

#include <cmath>
#include <string>

namespace worklab {

KrausChannel KrausChannel::from_operators(std::vector<Mat> ops, double tol) {
    if (ops.empty()) throw CompletenessViolation("channel has no Kraus operators");
    const int dim = static_cast<int>(ops.front().rows());
    Mat sum = Mat::Zero(dim, dim);
    for (const Mat& g : ops) {
        if (g.rows() != dim || g.cols() != dim)
            throw DimensionMismatch("Kraus operators have inconsistent dimensions");
        sum += g.adjoint() * g;
    }
    const double defect = (sum - Mat::Identity(dim, dim)).norm();
    if (defect >= tol)
        throw CompletenessViolation("sum Gamma^dag Gamma deviates from identity by " +
                                    std::to_string(defect));
    return KrausChannel{std::move(ops), defect};
}

void DensityMatrix::validate() const {
    const int d = dim();
    if ((entries - entries.adjoint()).norm() > 1e-10)
        throw DimensionMismatch("density matrix is not Hermitian");
    if (std::abs(entries.trace().real() - 1.0) > 1e-10 || std::abs(entries.trace().imag()) > 1e-10)
        throw DimensionMismatch("density matrix trace is not 1");
    Eigen::SelfAdjointEigenSolver<Mat> es(entries);
    if (es.eigenvalues().minCoeff() < -1e-10)
        throw DimensionMismatch("density matrix has a negative eigenvalue");
    (void)d;
}

DensityMatrix DensityMatrix::thermal(const ThermalEnsemble& ens, int dim) {
    if (ens.n_cut >= dim)
        throw DimensionMismatch("thermal ensemble n_cut exceeds truncation dimension");
    Mat rho = Mat::Zero(dim, dim);
    for (int n = 0; n <= ens.n_cut; ++n) rho(n, n) = ens.weights[n];
    return DensityMatrix{rho};
}

DensityMatrix DensityMatrix::pure_level(int n, int dim) {
    if (n < 0 || n >= dim) throw DimensionMismatch("pure_level: index outside dimension");
    Mat rho = Mat::Zero(dim, dim);
    rho(n, n) = 1.0;
    return DensityMatrix{rho};
}

TruncatedOperator oscillator_hamiltonian(int dim) {
    Mat h = Mat::Zero(dim, dim);
    for (int n = 0; n < dim; ++n) h(n, n) = n + 0.5;
    return TruncatedOperator{h};
}

Mat truncated_displacement(double q0, int dim) {
    // X = (a + a^dag)/sqrt(2), tridiagonal; exp through its spectral decomposition
    Eigen::MatrixXd x = Eigen::MatrixXd::Zero(dim, dim);
    for (int n = 0; n + 1 < dim; ++n) {
        const double v = std::sqrt((n + 1) / 2.0);
        x(n, n + 1) = v;
        x(n + 1, n) = v;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(x);
    Eigen::VectorXcd phases(dim);
    for (int k = 0; k < dim; ++k)
        phases(k) = std::polar(1.0, -q0 * es.eigenvalues()(k));
    return es.eigenvectors().cast<cxd>() * phases.asDiagonal() *
           es.eigenvectors().transpose().cast<cxd>();
}

int truncation_margin(double q0) { return static_cast<int>(std::ceil(4.0 * q0 * q0 + 8.0)); }

DensityMatrix apply_channel(const KrausChannel& phi, const DensityMatrix& rho) {
    const int d = rho.dim();
    Mat out = Mat::Zero(d, d);
    for (const Mat& g : phi.operators) {
        if (g.rows() != d) throw DimensionMismatch("apply_channel: dimension mismatch");
        out += g * rho.entries * g.adjoint();
    }
    return DensityMatrix{out};
}

KrausChannel kraus_from_environment(const std::vector<Mat>& joint_blocks,
                                    const Eigen::VectorXcd& env_state, const Mat& env_basis,
                                    double tol) {
    const int e = static_cast<int>(env_state.size());
    if (static_cast<int>(joint_blocks.size()) != e * e)
        throw DimensionMismatch("joint unitary needs env_dim^2 system blocks");
    if (env_basis.rows() != e || env_basis.cols() != e)
        throw DimensionMismatch("environment basis dimension mismatch");
    const int d = static_cast<int>(joint_blocks.front().rows());

    std::vector<Mat> ops;
    for (int m = 0; m < e; ++m) {
        // Gamma_m = <zeta_m| U |xi> = sum_jk conj(basis(j,m)) xi_k U_jk
        Mat g = Mat::Zero(d, d);
        for (int j = 0; j < e; ++j)
            for (int k = 0; k < e; ++k)
                g += std::conj(env_basis(j, m)) * env_state(k) *
                     joint_blocks[static_cast<size_t>(j) * e + k];
        if (g.norm() > 1e-14) ops.push_back(std::move(g)); // drop identically-zero operators
    }
    return KrausChannel::from_operators(std::move(ops), tol);
}

KrausChannel polarization_dephasing(const Mat& u) {
    const int d = static_cast<int>(u.rows());
    const Mat id = Mat::Identity(d, d);
    std::vector<Mat> blocks = {u, Mat::Zero(d, d), Mat::Zero(d, d), id}; // U (x) |H><H| + 1 (x) |V><V|
    Eigen::VectorXcd xi(2);
    xi << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    return kraus_from_environment(blocks, xi, Mat::Identity(2, 2));
}

double joint_prob_open(int m, int n, const KrausChannel& phi, const DensityMatrix& rho0,
                       const std::vector<Mat>& final_projectors) {
    const int d = rho0.dim();
    if (m < 0 || m >= static_cast<int>(final_projectors.size()) || n < 0 || n >= d)
        throw DimensionMismatch("joint_prob_open: outcome index out of range");
    const Mat& pf = final_projectors[m];
    if ((pf * pf - pf).norm() > 1e-10)
        throw DimensionMismatch("joint_prob_open: final projector is not idempotent");

    Mat projected = Mat::Zero(d, d);
    projected(n, n) = rho0.entries(n, n); // Pi_n rho Pi_n in the eigenbasis
    Mat evolved = Mat::Zero(d, d);
    for (const Mat& g : phi.operators) evolved += g * projected * g.adjoint();
    const cxd p = (pf * evolved).trace();
    double val = p.real();
    if (val < 0.0 && val > -1e-12) val = 0.0;
    return val;
}

cxd open_charfn(const KrausChannel& phi, const DensityMatrix& rho0, cxd s,
                const TruncatedOperator& h_initial, const TruncatedOperator& h_final) {
    const int d = rho0.dim();
    if (h_initial.dim() != d || h_final.dim() != d)
        throw DimensionMismatch("open_charfn: Hamiltonian dimension mismatch");
    const cxd minus_i_s = cxd{0.0, -1.0} * s;

    // M_I(rho0) V_I is diagonal: Pi projectors in the eigenbasis pick out diag(rho)
    Mat seed = Mat::Zero(d, d);
    for (int n = 0; n < d; ++n)
        seed(n, n) = rho0.entries(n, n) * std::exp(minus_i_s * h_initial.entries(n, n));

    Mat evolved = Mat::Zero(d, d);
    for (const Mat& g : phi.operators) evolved += g * seed * g.adjoint();

    // V_F^dag continued analytically in s: e^{+i s h}, not the entrywise conjugate
    // (they differ once s leaves the real axis, e.g. at the fluctuation point s = i beta)
    cxd acc{0.0, 0.0};
    for (int m = 0; m < d; ++m)
        acc += std::exp(cxd{0.0, 1.0} * s * h_final.entries(m, m)) * evolved(m, m);
    return acc;
}

double gamma_value(const KrausChannel& phi, const DensityMatrix& rho0, double beta_hw,
                   const TruncatedOperator& h_initial, const TruncatedOperator& h_final) {
    if (!(beta_hw > 0.0)) throw DegenerateTemperature("gamma_value: beta_hw must be positive");
    const int d = rho0.dim();
    if (beta_hw * d > 700.0)
        throw TruncationFailure("gamma_value: beta * dim too large for raw evaluation");
    const cxd g = open_charfn(phi, rho0, cxd{0.0, beta_hw}, h_initial, h_final);
    if (std::abs(g.imag()) > 1e-10 * std::max(1.0, std::abs(g.real())))
        throw NonRealGamma("gamma value has imaginary residue " + std::to_string(g.imag()));
    return g.real();
}

Eigen::Matrix2cd ancilla_state(const std::vector<Mat>& joint_blocks, const Mat& v,
                               const Mat& v_prime, const DensityMatrix& rho_system,
                               const Eigen::VectorXcd& env_state) {
    const int e = static_cast<int>(env_state.size());
    const int d = rho_system.dim();
    if (static_cast<int>(joint_blocks.size()) != e * e)
        throw DimensionMismatch("ancilla_state: joint unitary needs env_dim^2 blocks");
    if (v.rows() != d || v_prime.rows() != d)
        throw DimensionMismatch("ancilla_state: free-evolution dimension mismatch");

    const int de = d * e;
    Mat u = Mat::Zero(de, de);
    for (int j = 0; j < e; ++j)
        for (int k = 0; k < e; ++k)
            u.block(j * d, k * d, d, d) = joint_blocks[static_cast<size_t>(j) * e + k];

    Mat big_v = Mat::Zero(de, de), big_vp = Mat::Zero(de, de);
    for (int j = 0; j < e; ++j) {
        big_v.block(j * d, j * d, d, d) = v;
        big_vp.block(j * d, j * d, d, d) = v_prime;
    }

    Mat rho_env = env_state * env_state.adjoint();
    Mat rho_se = Mat::Zero(de, de);
    for (int j = 0; j < e; ++j)
        for (int k = 0; k < e; ++k)
            rho_se.block(j * d, k * d, d, d) = rho_env(j, k) * rho_system.entries;

    const cxd tr = ((big_vp * u).adjoint() * u * big_v * rho_se).trace();

    // rho_A = (1/2)[1 + Re{tr} sigma_z + Im{tr} sigma_y]
    Eigen::Matrix2cd rho_a;
    rho_a(0, 0) = 0.5 * (1.0 + tr.real());
    rho_a(1, 1) = 0.5 * (1.0 - tr.real());
    rho_a(0, 1) = cxd{0.0, -0.5 * tr.imag()};
    rho_a(1, 0) = cxd{0.0, 0.5 * tr.imag()};
    return rho_a;
}

} // namespace worklab

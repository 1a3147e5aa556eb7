#ifndef WORKLAB_OPENMAPS_HPP
#define WORKLAB_OPENMAPS_HPP

#include <Eigen/Dense>
#include <vector>

#include "worklab/thermo.hpp"

namespace worklab {

using Mat = Eigen::MatrixXcd;
using cxd = std::complex<double>;

// Operator on the truncated eigenbasis of the initial Hamiltonian.
struct TruncatedOperator {
    Mat entries;
    int dim() const { return static_cast<int>(entries.rows()); }
};

// CPTP map in operator-sum form, Phi(rho) = sum Gamma rho Gamma^dag.
struct KrausChannel {
    std::vector<Mat> operators;
    double completeness_defect = 0.0;

    // Validates sum Gamma^dag Gamma = 1 within tol; throws CompletenessViolation.
    static KrausChannel from_operators(std::vector<Mat> ops, double tol = 1e-8);
};

struct DensityMatrix {
    Mat entries;
    int dim() const { return static_cast<int>(entries.rows()); }

    // Hermiticity within 1e-10, trace 1 +- 1e-10, eigenvalues >= -1e-10.
    void validate() const;

    static DensityMatrix thermal(const ThermalEnsemble& ens, int dim);
    static DensityMatrix pure_level(int n, int dim);
};

// diag(n + 1/2)
TruncatedOperator oscillator_hamiltonian(int dim);

// Exactly unitary truncation of e^{-i q0 X}: exponentiated through the
// eigendecomposition of the tridiagonal position matrix, so Kraus completeness
// holds to machine precision; agrees with the infinite-dimensional amplitudes
// for indices below dim minus the truncation margin.
Mat truncated_displacement(double q0, int dim);

// margin rule for truncation-sensitive assertions
int truncation_margin(double q0);

DensityMatrix apply_channel(const KrausChannel& phi, const DensityMatrix& rho);

// Gamma_m = <zeta_m| U |xi>: joint unitary given as env_dim x env_dim blocks of
// system operators (row-major), environment prepared in env_state, traced in the
// orthonormal basis given by the columns of env_basis.
KrausChannel kraus_from_environment(const std::vector<Mat>& joint_blocks,
                                    const Eigen::VectorXcd& env_state,
                                    const Mat& env_basis,
                                    double tol = 1e-8);

// Phase-modulation-of-one-polarization channel: U acts on |H>, identity on |V>,
// environment in the diagonal state (|H>+|V>)/sqrt(2), traced in {H, V}.
KrausChannel polarization_dephasing(const Mat& u);

// p_mn = Tr{ Pi^F_m Phi[ Pi^I_n rho0 Pi^I_n ] }, clamped at -1e-12.
double joint_prob_open(int m, int n, const KrausChannel& phi, const DensityMatrix& rho0,
                       const std::vector<Mat>& final_projectors);

// G(s) = Tr{ V_F^dag Phi[ M_I(rho0) V_I ] } with V = e^{-i s H} (diagonal H).
// s may be complex; s = i beta gives the fluctuation value.
cxd open_charfn(const KrausChannel& phi, const DensityMatrix& rho0, cxd s,
                const TruncatedOperator& h_initial, const TruncatedOperator& h_final);

// gamma = Tr{ V_F^dag Phi[ V_I M_I(rho0) ] } at s = i beta, evaluated in the
// factored form (weights absorb e^{beta H_I}). Throws NonRealGamma if the
// imaginary residue exceeds 1e-10; refuses beta*dim > 700.
double gamma_value(const KrausChannel& phi, const DensityMatrix& rho0, double beta_hw,
                   const TruncatedOperator& h_initial, const TruncatedOperator& h_final);

// Reduced 2x2 state of the ancilla (interferometer path label):
// rho_A = (1/2)[1 + Re{Tr O} sigma_z + Im{Tr O} sigma_y], O = (V'U)^dag U V rho_SE
// with rho_SE = rho_system (x) |env><env| and V, V' acting on the system only.
Eigen::Matrix2cd ancilla_state(const std::vector<Mat>& joint_blocks, const Mat& v,
                               const Mat& v_prime, const DensityMatrix& rho_system,
                               const Eigen::VectorXcd& env_state);

} // namespace worklab

#endif

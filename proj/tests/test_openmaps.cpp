#include <doctest.h>

#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "worklab/channel_spec.hpp"
#include "worklab/csv.hpp"
#include "worklab/transition.hpp"
#include "worklab/workstats.hpp"

using namespace worklab;

namespace {

KrausChannel identity_channel(int dim) {
    return KrausChannel::from_operators({Mat::Identity(dim, dim)});
}

std::vector<Mat> level_projectors(int dim) {
    std::vector<Mat> p(dim);
    for (int m = 0; m < dim; ++m) {
        p[m] = Mat::Zero(dim, dim);
        p[m](m, m) = 1.0;
    }
    return p;
}

} // namespace

TEST_CASE("Kraus completeness is enforced at construction") {
    const Mat id = Mat::Identity(4, 4);
    CHECK_NOTHROW(KrausChannel::from_operators({id / std::sqrt(2.0), id / std::sqrt(2.0)}));
    CHECK_THROWS_AS(KrausChannel::from_operators({id / 2.0}), CompletenessViolation);
    CHECK_THROWS_AS(KrausChannel::from_operators({}), CompletenessViolation);
    CHECK_THROWS_AS(KrausChannel::from_operators({id, Mat::Identity(3, 3)}), DimensionMismatch);
}

TEST_CASE("density matrix constructors and validation") {
    const ThermalEnsemble ens = thermal_weights(1.0, 1e-10);
    const DensityMatrix rho = DensityMatrix::thermal(ens, 48);
    CHECK_NOTHROW(rho.validate());
    CHECK(std::abs(rho.entries.trace().real() - 1.0) < 1e-12);

    const DensityMatrix pure = DensityMatrix::pure_level(3, 8);
    CHECK_NOTHROW(pure.validate());
    CHECK(pure.entries(3, 3) == cxd{1.0, 0.0});
    CHECK_THROWS_AS(DensityMatrix::pure_level(8, 8), DimensionMismatch);
    CHECK_THROWS_AS(DensityMatrix::thermal(ens, ens.n_cut), DimensionMismatch);

    DensityMatrix bad = pure;
    bad.entries(0, 0) = 0.4; // trace no longer 1
    CHECK_THROWS_AS(bad.validate(), DimensionMismatch);
}

TEST_CASE("channels act by the operator sum") {
    const int dim = 24;
    const DensityMatrix rho = DensityMatrix::thermal(thermal_weights(1.0, 1e-8), dim);

    SUBCASE("identity channel is a no-op") {
        const DensityMatrix out = apply_channel(identity_channel(dim), rho);
        CHECK((out.entries - rho.entries).norm() < 1e-14);
    }
    SUBCASE("single unitary conjugates") {
        const Mat u = truncated_displacement(0.8, dim);
        const KrausChannel phi = KrausChannel::from_operators({u});
        const DensityMatrix out = apply_channel(phi, rho);
        CHECK((out.entries - u * rho.entries * u.adjoint()).norm() < 1e-12);
        CHECK(std::abs(out.entries.trace().real() - 1.0) < 1e-9);
    }
    SUBCASE("dephasing mixes the unitary branch with the identity") {
        const Mat u = truncated_displacement(0.8, dim);
        const KrausChannel phi = polarization_dephasing(u);
        const DensityMatrix out = apply_channel(phi, rho);
        const Mat expected = 0.5 * u * rho.entries * u.adjoint() + 0.5 * rho.entries;
        CHECK((out.entries - expected).norm() < 1e-12);
    }
}

TEST_CASE("truncated displacement is exactly unitary and matches the amplitudes") {
    const double q0 = 1.0;
    const int dim = 64;
    const Mat d = truncated_displacement(q0, dim);
    CHECK((d.adjoint() * d - Mat::Identity(dim, dim)).norm() < 1e-12);

    const int safe = dim - truncation_margin(q0);
    const TransitionMatrix t = build_matrix(q0, safe, 1e-12);
    for (int m = 0; m < safe; ++m)
        for (int n = 0; n < safe; ++n) {
            // boundary leakage decays away from the cut: 1e-8 inside the margin,
            // machine-level one margin further in
            const double tol = (std::max(m, n) < dim - 2 * truncation_margin(q0)) ? 1e-12 : 1e-8;
            CHECK(std::abs(d(m, n) - t(m, n)) < tol);
        }
}

TEST_CASE("environment tracing produces the expected Kraus operators") {
    const int dim = 16;
    const Mat u = truncated_displacement(0.5, dim);
    const Mat zero = Mat::Zero(dim, dim);
    const Mat id = Mat::Identity(dim, dim);
    Eigen::VectorXcd diag(2);
    diag << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);

    SUBCASE("uncoupled joint unitary collapses to a single operator") {
        const std::vector<Mat> blocks = {u, zero, zero, u}; // U (x) identity
        const KrausChannel phi = kraus_from_environment(blocks, diag, Mat::Identity(2, 2));
        CHECK(phi.operators.size() == 2); // both branches carry U/sqrt(2)
        const DensityMatrix rho = DensityMatrix::pure_level(2, dim);
        const DensityMatrix out = apply_channel(phi, rho);
        CHECK((out.entries - u * rho.entries * u.adjoint()).norm() < 1e-12);
    }
    SUBCASE("polarization example gives {U/sqrt2, 1/sqrt2}") {
        const KrausChannel phi = polarization_dephasing(u);
        REQUIRE(phi.operators.size() == 2);
        CHECK((phi.operators[0] - u / std::sqrt(2.0)).norm() < 1e-14);
        CHECK((phi.operators[1] - id / std::sqrt(2.0)).norm() < 1e-14);
    }
    SUBCASE("the decomposition is basis-dependent, the channel is not") {
        const std::vector<Mat> blocks = {u, zero, zero, id};
        Mat diag_basis(2, 2);
        diag_basis << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0),
            -1.0 / std::sqrt(2.0);
        const KrausChannel in_hv = kraus_from_environment(blocks, diag, Mat::Identity(2, 2));
        const KrausChannel in_diag = kraus_from_environment(blocks, diag, diag_basis);
        CHECK((in_hv.operators[0] - in_diag.operators[0]).norm() > 0.1);
        const DensityMatrix rho = DensityMatrix::thermal(thermal_weights(1.5, 1e-8), dim);
        const DensityMatrix a = apply_channel(in_hv, rho);
        const DensityMatrix b = apply_channel(in_diag, rho);
        CHECK((a.entries - b.entries).norm() < 1e-10);
    }
    SUBCASE("inconsistent joint blocks are rejected") {
        CHECK_THROWS_AS(kraus_from_environment({u, zero, zero}, diag, Mat::Identity(2, 2)),
                        DimensionMismatch);
        CHECK_THROWS_AS(kraus_from_environment({u, zero, zero, 0.5 * id}, diag, Mat::Identity(2, 2)),
                        CompletenessViolation);
    }
}

TEST_CASE("joint probabilities of the two-measurement protocol") {
    const int dim = 64;
    const ThermalEnsemble ens = thermal_weights(1.0, 1e-10);
    const DensityMatrix rho = DensityMatrix::thermal(ens, dim);
    const auto projectors = level_projectors(dim);

    SUBCASE("identity channel is diagonal") {
        const KrausChannel phi = identity_channel(dim);
        for (int n = 0; n <= 5; ++n) {
            CHECK(joint_prob_open(n, n, phi, rho, projectors) ==
                  doctest::Approx(ens.weights[n]).epsilon(1e-12));
            CHECK(joint_prob_open(n + 1, n, phi, rho, projectors) == 0.0);
        }
    }
    SUBCASE("unitary kick reproduces p_n |c_mn|^2") {
        const double q0 = 1.0;
        const KrausChannel phi = KrausChannel::from_operators({truncated_displacement(q0, dim)});
        const int safe = dim - truncation_margin(q0);
        const TransitionMatrix t = build_matrix(q0, ens.n_cut, 1e-12);
        for (int n = 0; n <= std::min(ens.n_cut, 8); ++n)
            for (int m = 0; m < safe; ++m)
                CHECK(std::abs(joint_prob_open(m, n, phi, rho, projectors) -
                               ens.weights[n] * std::norm(t(m, n))) < 1e-8);
        double total = 0.0;
        for (int n = 0; n <= ens.n_cut; ++n)
            for (int m = 0; m < dim; ++m) total += joint_prob_open(m, n, phi, rho, projectors);
        CHECK(std::abs(total - 1.0) < 1e-8);
    }
    SUBCASE("non-idempotent projector is rejected") {
        auto bad = projectors;
        bad[0](0, 0) = 0.5;
        const KrausChannel phi = identity_channel(dim);
        CHECK_THROWS_AS(joint_prob_open(0, 0, phi, rho, bad), DimensionMismatch);
    }
}

TEST_CASE("open characteristic function") {
    const int dim = 64;
    const ThermalEnsemble ens = thermal_weights(1.0, 1e-10);
    const DensityMatrix rho = DensityMatrix::thermal(ens, dim);
    const TruncatedOperator h = oscillator_hamiltonian(dim);

    SUBCASE("normalized at s = 0") {
        CHECK(std::abs(open_charfn(identity_channel(dim), rho, cxd{0.0, 0.0}, h, h) - 1.0) < 1e-12);
    }
    SUBCASE("single-Kraus unitary matches the closed-dynamics formula") {
        const double q0 = 1.0;
        const KrausChannel phi = KrausChannel::from_operators({truncated_displacement(q0, dim)});
        const TransitionMatrix t = build_matrix(q0, ens.n_cut, 1e-12);
        for (double s : {0.3, 1.6, 4.1})
            CHECK(std::abs(open_charfn(phi, rho, cxd{s, 0.0}, h, h) - charfn_direct(ens, t, s)) <
                  1e-8);
    }
    SUBCASE("dephasing channel agrees with the brute-force outcome sum") {
        const double q0 = 1.0;
        const KrausChannel phi = polarization_dephasing(truncated_displacement(q0, dim));
        const auto projectors = level_projectors(dim);
        for (double s : {0.5, 2.4}) {
            cxd brute{0.0, 0.0};
            for (int n = 0; n <= ens.n_cut; ++n)
                for (int m = 0; m < dim; ++m)
                    brute += joint_prob_open(m, n, phi, rho, projectors) *
                             std::polar(1.0, s * (m - n));
            CHECK(std::abs(open_charfn(phi, rho, cxd{s, 0.0}, h, h) - brute) < 1e-10);
        }
    }
}

TEST_CASE("fluctuation value gamma") {
    const int dim = 64;
    const double beta = 1.0;
    const ThermalEnsemble ens = thermal_weights(beta, 1e-12);
    const DensityMatrix rho = DensityMatrix::thermal(ens, dim);
    const TruncatedOperator h = oscillator_hamiltonian(dim);

    SUBCASE("identity channel") {
        CHECK(gamma_value(identity_channel(dim), rho, beta, h, h) ==
              doctest::Approx(1.0).epsilon(1e-10));
    }
    SUBCASE("unitary channel with equal spectra") {
        const KrausChannel phi = KrausChannel::from_operators({truncated_displacement(1.0, dim)});
        CHECK(std::abs(gamma_value(phi, rho, beta, h, h) - 1.0) < 1e-8);
    }
    SUBCASE("dephasing channel matches <e^{-beta u}> computed outcome by outcome") {
        const KrausChannel phi = polarization_dephasing(truncated_displacement(1.0, dim));
        const auto projectors = level_projectors(dim);
        double brute = 0.0;
        for (int n = 0; n <= ens.n_cut; ++n)
            for (int m = 0; m < dim; ++m)
                brute += joint_prob_open(m, n, phi, rho, projectors) * std::exp(-beta * (m - n));
        CHECK(std::abs(brute - gamma_value(phi, rho, beta, h, h)) < 1e-9);
    }
    SUBCASE("guards") {
        CHECK_THROWS_AS(gamma_value(identity_channel(dim), rho, 0.0, h, h), DegenerateTemperature);
        CHECK_THROWS_AS(gamma_value(identity_channel(dim), rho, 20.0, h, h), TruncationFailure);
    }
}

TEST_CASE("ancilla reduced state mirrors the interferometer readout") {
    const int dim = 48;
    const Mat id = Mat::Identity(dim, dim);
    const Mat zero = Mat::Zero(dim, dim);
    Eigen::VectorXcd env(2);
    env << 1.0, 0.0;

    SUBCASE("identity everything pins the ancilla to |0><0|") {
        const DensityMatrix rho = DensityMatrix::pure_level(0, dim);
        const Eigen::Matrix2cd a = ancilla_state({id, zero, zero, id}, id, id, rho, env);
        CHECK(std::abs(a(0, 0) - 1.0) < 1e-12);
        CHECK(std::abs(a(1, 1)) < 1e-12);
        CHECK(std::abs(a.trace().real() - 1.0) < 1e-12);
    }
    SUBCASE("sigma_z / sigma_y expectations reproduce the per-mode G_n(s)") {
        const double q0 = 1.0, s = 1.3;
        const Mat d = truncated_displacement(q0, dim);
        const TruncatedOperator h = oscillator_hamiltonian(dim);
        Mat v = Mat::Zero(dim, dim);
        for (int k = 0; k < dim; ++k) v(k, k) = std::polar(1.0, -s * (k + 0.5));

        const TransitionMatrix t = build_matrix(q0, 20, 1e-12);
        for (int n : {0, 2, 5}) {
            const DensityMatrix rho = DensityMatrix::pure_level(n, dim);
            // second spectrum equals the first, so V' = V
            const Eigen::Matrix2cd a = ancilla_state({d, zero, zero, d}, v, v, rho, env);
            // <sigma_z> = Re Tr O, <sigma_y> = Im Tr O
            const double sz = (a(0, 0) - a(1, 1)).real();
            const double sy = (cxd{0.0, 1.0} * (a(0, 1) - a(1, 0))).real();
            cxd g{0.0, 0.0};
            for (int m = 0; m <= t.m_max; ++m)
                g += std::norm(t(m, n)) * std::polar(1.0, s * (m - n));
            CHECK(std::abs(cxd{sz, sy} - g) < 1e-10);
        }
    }
    SUBCASE("result is a valid qubit state") {
        const DensityMatrix rho = DensityMatrix::thermal(thermal_weights(0.9, 1e-8), dim);
        const Mat d = truncated_displacement(0.7, dim);
        Mat v = Mat::Zero(dim, dim);
        for (int k = 0; k < dim; ++k) v(k, k) = std::polar(1.0, -0.4 * (k + 0.5));
        const Eigen::Matrix2cd a =
            ancilla_state({d, zero, zero, d}, v, d.adjoint() * v * d, rho, env);
        CHECK(std::abs(a.trace().real() - 1.0) < 1e-10);
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(a);
        CHECK(es.eigenvalues().minCoeff() > -1e-10);
        CHECK(es.eigenvalues().maxCoeff() < 1.0 + 1e-10);
    }
}

TEST_CASE("channel spec parsing") {
    SUBCASE("identity plus displacement") {
        std::istringstream in(
            "# test channel\n"
            "dim = 24\n"
            "op = identity, 0.5\n"
            "op = displacement(0.8), 0.5\n");
        const KrausChannel phi = parse_channel_spec(in, "");
        REQUIRE(phi.operators.size() == 2);
        CHECK((phi.operators[0] - Mat::Identity(24, 24) / std::sqrt(2.0)).norm() < 1e-14);
        CHECK((phi.operators[1] - truncated_displacement(0.8, 24) / std::sqrt(2.0)).norm() < 1e-14);
    }
    SUBCASE("weights must sum to one") {
        std::istringstream in("dim = 8\nop = identity, 0.7\n");
        CHECK_THROWS_AS(parse_channel_spec(in, ""), CompletenessViolation);
    }
    SUBCASE("malformed input") {
        {
            std::istringstream in("op = identity, 1.0\n");
            CHECK_THROWS_AS(parse_channel_spec(in, ""), ConfigError); // missing dim
        }
        {
            std::istringstream in("dim = 8\nop = squeeze(1.0), 1.0\n");
            CHECK_THROWS_AS(parse_channel_spec(in, ""), ConfigError); // unknown op
        }
        {
            std::istringstream in("dim = 8\nop = identity\n");
            CHECK_THROWS_AS(parse_channel_spec(in, ""), ConfigError); // missing weight
        }
        {
            std::istringstream in("dim = 8\nop = displacement(x), 1.0\n");
            CHECK_THROWS_AS(parse_channel_spec(in, ""), ConfigError); // bad argument
        }
    }
    SUBCASE("phase-mask operator loaded from CSV") {
        // a constant phase mask projects to an exactly unitary operator
        const GridSpec g = GridSpec::for_modes(15);
        SampledField mask{g, std::vector<cxd>(g.n_points, std::polar(1.0, 0.6))};
        const std::string dir = "/tmp/worklab_test_channel";
        std::filesystem::create_directories(dir);
        {
            std::ofstream out(dir + "/mask.csv");
            write_csv(mask, out);
        }
        {
            std::ofstream out(dir + "/chan.spec");
            out << "dim = 16\nop = phase_mask(mask.csv), 1.0\n";
        }
        const KrausChannel phi = load_channel_spec(dir + "/chan.spec");
        REQUIRE(phi.operators.size() == 1);
        CHECK((phi.operators[0] - std::polar(1.0, 0.6) * Mat::Identity(16, 16)).norm() < 1e-8);
    }
}

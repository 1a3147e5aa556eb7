// worklab — batch front-end for the interferometric work-statistics laboratory.
//
// Commands: charfn, workdist, interf, frft-verify, open-charfn, jarzynski,
// units, verify. Exit codes: 0 ok, 2 config error, 3 numerical-gate failure.

#include <CLI11.hpp>

#include <cmath>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "worklab/channel_spec.hpp"
#include "worklab/csv.hpp"
#include "worklab/interferometer.hpp"
#include "worklab/openmaps.hpp"
#include "worklab/optics.hpp"
#include "worklab/transition.hpp"
#include "worklab/workstats.hpp"

namespace fs = std::filesystem;
using namespace worklab;

namespace {

enum class RunMode { Analytic, Interferometric, Open };

struct Scenario {
    double q0 = 1.0;
    double beta_hw = 0.1;
    double tail_tol = 1e-8;
    int s_samples = 0; // 0 = alias-free default
    RunMode mode = RunMode::Analytic;
    std::string channel;
    std::string out_dir = ".";
};

void validate(const Scenario& sc) {
    if (sc.q0 < 0.0 || sc.q0 > 10.0) throw ConfigError("q0 must lie in [0, 10]");
    if (!(sc.beta_hw > 0.0)) throw ConfigError("beta-hw must be positive");
    if (sc.s_samples != 0 && sc.s_samples < 3) throw ConfigError("s-samples must be >= 3");
    if (!(sc.tail_tol > 0.0 && sc.tail_tol < 1.0)) throw ConfigError("tail-tol must lie in (0, 1)");
}

void add_scenario_flags(CLI::App* cmd, Scenario& sc) {
    cmd->add_option("--q0", sc.q0, "kick strength (dimensionless)");
    cmd->add_option("--beta-hw", sc.beta_hw, "inverse temperature beta*hbar*omega");
    cmd->add_option("--tail-tol", sc.tail_tol, "thermal tail mass kept below this");
    cmd->add_option("--s-samples", sc.s_samples, "number of s samples on [0, 2pi) (0 = auto)");
    cmd->add_option("--out-dir", sc.out_dir, "output directory for CSV files");
    std::map<std::string, RunMode> modes{{"analytic", RunMode::Analytic},
                                         {"interferometric", RunMode::Interferometric},
                                         {"open", RunMode::Open}};
    cmd->add_option("--mode", sc.mode, "evaluation route")
        ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case));
    cmd->add_option("--channel", sc.channel, "channel spec file (required for open mode)");
    cmd->set_config("--config", "", "flat key = value scenario file");
}

std::ofstream open_out(const Scenario& sc, const std::string& name) {
    fs::create_directories(sc.out_dir);
    const fs::path p = fs::path(sc.out_dir) / name;
    std::ofstream out(p);
    if (!out) throw ConfigError("cannot open output file " + p.string());
    return out;
}

// margin so the detected arm power of every thermally occupied mode is complete
int interferometer_basis(double q0, int n_cut) {
    const double spread = 8.0 * std::sqrt(0.5 * q0 * q0 * (2.0 * n_cut + 1.0)) + 2.0 * q0 * q0;
    return n_cut + 20 + static_cast<int>(std::ceil(spread));
}

std::vector<double> uniform_s_grid(int m) {
    std::vector<double> s(m);
    for (int k = 0; k < m; ++k) s[k] = 2.0 * M_PI * k / m;
    return s;
}

struct Result {
    CharFnTrace trace;
    WorkDist dist;
};

Result run_analytic(const Scenario& sc) {
    const ThermalEnsemble ens = thermal_weights(sc.beta_hw, sc.tail_tol);
    const TransitionMatrix t = build_matrix(sc.q0, ens.n_cut);
    CharFnTrace trace = charfn_trace(ens, t, sc.s_samples);
    WorkDist dist = workdist_direct(ens, t);
    return {std::move(trace), std::move(dist)};
}

Result run_interferometric(const Scenario& sc, IntensityTrace* save_re, IntensityTrace* save_im) {
    const ThermalEnsemble ens = thermal_weights(sc.beta_hw, sc.tail_tol);
    const int n_basis = interferometer_basis(sc.q0, ens.n_cut);
    InterferometerConfig cfg;
    cfg.grid = GridSpec::for_modes(n_basis);
    cfg.n_basis = n_basis;
    cfg.process_matrix = build_matrix(sc.q0, n_basis);
    cfg.final_basis = FinalBasis::DisplacedBy;
    cfg.q0 = sc.q0;
    const TwoPathInterferometer interf(std::move(cfg));

    const int m = sc.s_samples > 0 ? sc.s_samples : 2 * (n_basis + ens.n_cut) + 1;
    const std::vector<double> s = uniform_s_grid(m);
    IntensityTrace re = interf.thermal_trace(ens, s, 0.0);
    IntensityTrace im = interf.thermal_trace(ens, s, 0.5 * M_PI);
    CharFnTrace trace = reconstruct_charfn(re, im);
    WorkDist dist = workdist_from_trace(trace, -ens.n_cut, n_basis);
    if (save_re) *save_re = std::move(re);
    if (save_im) *save_im = std::move(im);
    return {std::move(trace), std::move(dist)};
}

Result run_open(const Scenario& sc) {
    if (sc.channel.empty()) throw ConfigError("open mode requires --channel");
    const KrausChannel phi = load_channel_spec(sc.channel);
    const int dim = static_cast<int>(phi.operators.front().rows());
    const ThermalEnsemble ens = thermal_weights(sc.beta_hw, sc.tail_tol);
    if (ens.n_cut >= dim)
        throw TruncationFailure("channel dimension " + std::to_string(dim) +
                                " does not hold the thermal state (n_cut " +
                                std::to_string(ens.n_cut) + ")");
    const DensityMatrix rho0 = DensityMatrix::thermal(ens, dim);
    const TruncatedOperator h = oscillator_hamiltonian(dim);

    const int m = sc.s_samples > 0 ? sc.s_samples : 2 * dim + 1;
    CharFnTrace trace;
    trace.s_samples = uniform_s_grid(m);
    trace.values.resize(m);
    for (int k = 0; k < m; ++k)
        trace.values[k] = open_charfn(phi, rho0, cxd{trace.s_samples[k], 0.0}, h, h);
    WorkDist dist = workdist_from_trace(trace);
    return {std::move(trace), std::move(dist)};
}

Result run_scenario(const Scenario& sc, IntensityTrace* re = nullptr, IntensityTrace* im = nullptr) {
    switch (sc.mode) {
        case RunMode::Analytic: return run_analytic(sc);
        case RunMode::Interferometric: return run_interferometric(sc, re, im);
        case RunMode::Open: return run_open(sc);
    }
    throw ConfigError("unknown mode");
}

// drop exactly-zero support tails (q0 = 0 collapses to the single row zeta = 0)
WorkDist trimmed(const WorkDist& dist) {
    int lo = 0, hi = static_cast<int>(dist.probs.size()) - 1;
    while (lo < hi && dist.probs[lo] == 0.0) ++lo;
    while (hi > lo && dist.probs[hi] == 0.0) --hi;
    return WorkDist{dist.d_min + lo,
                    std::vector<double>(dist.probs.begin() + lo, dist.probs.begin() + hi + 1)};
}

int cmd_charfn(const Scenario& sc) {
    validate(sc);
    IntensityTrace re, im;
    const bool interf = sc.mode == RunMode::Interferometric;
    const Result r = run_scenario(sc, &re, &im);
    { auto out = open_out(sc, "charfn.csv"); write_csv(r.trace, out); }
    { auto out = open_out(sc, "workdist.csv"); write_csv(trimmed(r.dist), out); }
    if (interf) {
        { auto out = open_out(sc, "intensity_theta0.csv"); write_csv(re, out); }
        { auto out = open_out(sc, "intensity_theta90.csv"); write_csv(im, out); }
    }
    std::cout << "wrote charfn.csv and workdist.csv to " << sc.out_dir << "\n";
    return 0;
}

int cmd_workdist(const Scenario& sc) {
    validate(sc);
    const Result r = run_scenario(sc);
    { auto out = open_out(sc, "workdist.csv"); write_csv(trimmed(r.dist), out); }
    std::cout << "wrote workdist.csv to " << sc.out_dir << "  (mean work " << format_g17(r.dist.mean())
              << ")\n";
    return 0;
}

int cmd_interf(Scenario sc) {
    sc.mode = RunMode::Interferometric;
    return cmd_charfn(sc);
}

int cmd_open_charfn(Scenario sc) {
    sc.mode = RunMode::Open;
    return cmd_charfn(sc);
}

int cmd_jarzynski(const Scenario& sc) {
    validate(sc);
    const Result r = run_scenario(sc);
    const double lhs = jarzynski_lhs(r.dist, sc.beta_hw);
    const double mean = r.dist.mean();
    std::cout << "mean_work = " << format_g17(mean) << "  (expected " << format_g17(0.5 * sc.q0 * sc.q0)
              << ")\n";
    std::cout << "jarzynski_sum = " << format_g17(lhs) << "  (expected 1, Delta F = 0)\n";
    if (std::abs(lhs - 1.0) > 2e-6)
        throw TruncationFailure("Jarzynski sum deviates from 1 by " + std::to_string(lhs - 1.0) +
                                "; lower --tail-tol");
    return 0;
}

int cmd_frft_verify(const Scenario& sc) {
    validate(sc);
    const GridSpec grid = GridSpec::make(4096, 24.0);
    const ModeBasis basis(12, grid);
    const double alphas[] = {M_PI / 6.0, M_PI / 4.0, M_PI / 2.0, 3.0 * M_PI / 4.0};
    double worst = 0.0;
    std::cout << "alpha,n,l2_error\n";
    for (double alpha : alphas) {
        const double f = 1.0 / std::sin(alpha); // unit-scale convention f sin(alpha) = 1
        for (int n = 0; n <= 10; ++n) {
            const SampledField in = basis.mode_field(n);
            const SampledField opt = frft_optical(in, FrftOrder{alpha}, f);
            const SampledField spec = frft_spectral(in, FrftOrder{alpha}, basis);
            cxd phase = overlap(spec, opt);
            phase /= std::abs(phase);
            double err2 = 0.0;
            for (int j = 0; j < grid.n_points; ++j)
                err2 += std::norm(opt.values[j] - phase * spec.values[j]);
            const double err = std::sqrt(err2 * grid.dx());
            worst = std::max(worst, err);
            std::cout << format_g17(alpha) << ',' << n << ',' << format_g17(err) << '\n';
        }
    }
    std::cout << "z at alpha=pi/2 with f=1: " << format_g17(frft_distance(1.0, M_PI / 2.0))
              << " (expected 1)\n";
    std::cout << "worst L2 error: " << format_g17(worst) << "\n";
    if (worst > 1e-4)
        throw WrapAroundError("lens-chain FRFT deviates from the spectral route by " +
                              std::to_string(worst));
    return 0;
}

int cmd_units(double lambda_nm, double f_mm, double alpha) {
    if (!(lambda_nm > 0.0) || !(f_mm > 0.0)) throw ConfigError("lambda and f must be positive");
    if (!(alpha > 0.0 && alpha < 2.0 * M_PI)) throw ConfigError("alpha must lie in (0, 2pi)");
    const double k = 2.0 * M_PI / (lambda_nm * 1e-9); // rad/m
    const double s = std::sin(0.5 * alpha);
    const double z_mm = 2.0 * f_mm * s * s;
    std::cout << "k = " << format_g17(k) << " rad/m\n";
    std::cout << "z_alpha = " << format_g17(z_mm) << " mm\n";
    if (std::sin(alpha) > 0.0) {
        const double scale_m = std::sqrt(f_mm * 1e-3 * std::sin(alpha) / k);
        std::cout << "coordinate scale = " << format_g17(scale_m * 1e6)
                  << " um per dimensionless unit\n";
    } else {
        std::cout << "coordinate scale = n/a (sin(alpha) <= 0)\n";
    }
    return 0;
}

// ---------------------------------------------------------------------------
// verify suites

struct Verifier {
    int failures = 0;

    void check(const std::string& name, bool ok, const std::string& detail) {
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << name << "  (" << detail << ")\n";
        if (!ok) ++failures;
    }
    void check_tol(const std::string& name, double err, double tol) {
        check(name, std::abs(err) <= tol,
              "err " + format_g17(std::abs(err)) + ", tol " + format_g17(tol));
    }
};

void verify_parameter_set(Verifier& v, const Scenario& base, double q0, double beta_hw,
                          const std::string& tag) {
    const ThermalEnsemble ens = thermal_weights(beta_hw, base.tail_tol);
    const TransitionMatrix t = build_matrix(q0, ens.n_cut);

    double worst_deficit = 0.0;
    for (int n = 0; n <= ens.n_cut; ++n)
        worst_deficit = std::max(worst_deficit, std::abs(t.column_deficit(n)));
    v.check_tol("unitarity " + tag, worst_deficit, 1e-8);

    const CharFnTrace trace = charfn_trace(ens, t);
    v.check_tol("charfn normalization " + tag, std::abs(trace.values[0] - cxd{1.0, 0.0}), 1e-10);
    v.check_tol("charfn hermitian symmetry " + tag, trace.hermitian_defect(), 1e-10);

    const WorkDist direct = workdist_direct(ens, t);
    v.check_tol("workdist total " + tag, direct.total() - 1.0, 1e-9);
    double min_p = 0.0;
    for (double p : direct.probs) min_p = std::min(min_p, p);
    v.check("workdist nonnegative " + tag, min_p >= 0.0, "min prob " + format_g17(min_p));

    const WorkDist dual = workdist_from_trace(trace, direct.d_min, direct.d_max());
    double worst_dual = 0.0;
    for (int d = direct.d_min; d <= direct.d_max(); ++d)
        worst_dual = std::max(worst_dual, std::abs(dual.prob(d) - direct.prob(d)));
    v.check_tol("fourier duality " + tag, worst_dual, 1e-9);

    // fluctuation relations need the tail below the Jarzynski weight growth
    const ThermalEnsemble deep = thermal_weights(beta_hw, 1e-20);
    const WorkDist jd = workdist_direct(deep, build_matrix(q0, deep.n_cut));
    v.check_tol("mean work " + tag, jd.mean() - 0.5 * q0 * q0, 1e-6);
    v.check_tol("jarzynski sum " + tag, jarzynski_lhs(jd, beta_hw) - 1.0, 2e-6);

    // CSV artifacts (determinism gate compares these byte-for-byte across runs)
    Scenario sc = base;
    sc.q0 = q0;
    sc.beta_hw = beta_hw;
    { auto out = open_out(sc, "charfn_" + tag + ".csv"); write_csv(trace, out); }
    { auto out = open_out(sc, "workdist_" + tag + ".csv"); write_csv(direct, out); }
}

void verify_coeff_oracle(Verifier& v, int order_cap) {
    const GridSpec grid = GridSpec::for_modes(order_cap);
    double worst = 0.0;
    for (double q0 : {0.5, 1.0, 3.0})
        for (int m = 0; m <= order_cap; ++m)
            for (int n = 0; n <= order_cap; ++n)
                worst = std::max(worst,
                                 std::abs(coeff_closed(m, n, q0) - coeff_quadrature(m, n, q0, grid)));
    v.check_tol("closed-form vs quadrature (m,n <= " + std::to_string(order_cap) + ")", worst, 1e-8);
}

void verify_frft(Verifier& v) {
    const GridSpec grid = GridSpec::make(4096, 24.0);
    const ModeBasis basis(12, grid);
    double worst_spec = 0.0, worst_opt = 0.0;
    for (double alpha : {M_PI / 6.0, M_PI / 4.0, M_PI / 2.0, 3.0 * M_PI / 4.0}) {
        const double f = 1.0 / std::sin(alpha);
        for (int n = 0; n <= 10; ++n) {
            const SampledField in = basis.mode_field(n);
            const SampledField spec = frft_spectral(in, FrftOrder{alpha}, basis);
            const cxd expected = std::polar(1.0, -alpha * (n + 0.5));
            double err2 = 0.0;
            for (int j = 0; j < grid.n_points; ++j)
                err2 += std::norm(spec.values[j] - expected * in.values[j]);
            worst_spec = std::max(worst_spec, std::sqrt(err2 * grid.dx()));

            const SampledField opt = frft_optical(in, FrftOrder{alpha}, f);
            cxd phase = overlap(spec, opt);
            phase /= std::abs(phase);
            err2 = 0.0;
            for (int j = 0; j < grid.n_points; ++j)
                err2 += std::norm(opt.values[j] - phase * spec.values[j]);
            worst_opt = std::max(worst_opt, std::sqrt(err2 * grid.dx()));
        }
    }
    v.check_tol("spectral FRFT eigenphase", worst_spec, 1e-9);
    v.check_tol("optical FRFT vs spectral", worst_opt, 1e-4);
    v.check_tol("z at pi/2 equals f", frft_distance(1.0, M_PI / 2.0) - 1.0, 1e-15);
}

void verify_split_step(Verifier& v) {
    const GridSpec grid = GridSpec::make(1024, 8.0);
    std::vector<double> pot(grid.n_points);
    for (int j = 0; j < grid.n_points; ++j) pot[j] = 0.5 * grid.x(j) * grid.x(j);
    const double t = 0.2;
    const ModeBasis basis(5, grid);
    double worst_phase = 0.0, worst_fid = 1.0;
    for (int n = 0; n <= 5; ++n) {
        const SampledField in = basis.mode_field(n);
        const SampledField out = split_step_evolve(in, IndexChannel{pot, grid, t, 256});
        const cxd ov = overlap(in, out);
        worst_fid = std::min(worst_fid, std::abs(ov));
        const double phase_err = std::abs(std::arg(ov) + t * (n + 0.5));
        worst_phase = std::max(worst_phase, phase_err);
    }
    v.check("split-step fidelity", worst_fid > 0.999, "min fidelity " + format_g17(worst_fid));
    v.check_tol("split-step eigenphase", worst_phase, 1e-3);

    // Richardson: halving the step must cut the phase error fourfold
    const SampledField in = basis.mode_field(2);
    auto phase_err = [&](int steps) {
        const SampledField out = split_step_evolve(in, IndexChannel{pot, grid, t, steps});
        return std::abs(std::arg(overlap(in, out)) + t * 2.5);
    };
    const double ratio = phase_err(128) / phase_err(256);
    v.check("split-step second order", std::abs(ratio - 4.0) < 0.5, "ratio " + format_g17(ratio));
}

void verify_interferometer(Verifier& v, const Scenario& base, double q0, double beta_hw,
                           const std::string& tag) {
    Scenario sc = base;
    sc.q0 = q0;
    sc.beta_hw = beta_hw;
    sc.mode = RunMode::Interferometric;
    IntensityTrace re, im;
    const Result r = run_interferometric(sc, &re, &im);

    const ThermalEnsemble ens = thermal_weights(beta_hw, sc.tail_tol);
    const TransitionMatrix t = build_matrix(q0, ens.n_cut);
    double worst_g = 0.0;
    for (size_t k = 0; k < r.trace.s_samples.size(); ++k)
        worst_g = std::max(worst_g, std::abs(r.trace.values[k] -
                                             charfn_direct(ens, t, r.trace.s_samples[k])));
    v.check_tol("interferometer charfn " + tag, worst_g, 1e-6);

    const WorkDist direct = workdist_direct(ens, t);
    double worst_p = 0.0;
    for (int d = direct.d_min; d <= direct.d_max(); ++d)
        worst_p = std::max(worst_p, std::abs(r.dist.prob(d) - direct.prob(d)));
    v.check_tol("interferometer workdist " + tag, worst_p, 1e-6);

    { auto out = open_out(sc, "intensity_theta0_" + tag + ".csv"); write_csv(re, out); }
    { auto out = open_out(sc, "intensity_theta90_" + tag + ".csv"); write_csv(im, out); }
}

void verify_open(Verifier& v) {
    const double q0 = 1.0, beta_hw = 1.0;
    const ThermalEnsemble ens = thermal_weights(beta_hw, 1e-10);
    const int dim = 64;
    const int margin = truncation_margin(q0);
    const DensityMatrix rho0 = DensityMatrix::thermal(ens, dim);
    const TruncatedOperator h = oscillator_hamiltonian(dim);
    const Mat d_op = truncated_displacement(q0, dim);
    const KrausChannel unitary = KrausChannel::from_operators({d_op});

    // closed/open oracle equivalence
    const TransitionMatrix t = build_matrix(q0, ens.n_cut);
    double worst = 0.0;
    for (double s : uniform_s_grid(33))
        worst = std::max(worst, std::abs(open_charfn(unitary, rho0, cxd{s, 0.0}, h, h) -
                                         charfn_direct(ens, t, s)));
    v.check_tol("open vs closed charfn", worst, 1e-8);
    (void)margin;

    // polarization dephasing: brute-force <e^{-beta u}> against gamma_value
    const KrausChannel deph = polarization_dephasing(d_op);
    std::vector<Mat> projectors(dim);
    for (int m = 0; m < dim; ++m) {
        projectors[m] = Mat::Zero(dim, dim);
        projectors[m](m, m) = 1.0;
    }
    double brute = 0.0;
    for (int n = 0; n <= ens.n_cut; ++n)
        for (int m = 0; m < dim; ++m)
            brute += joint_prob_open(m, n, deph, rho0, projectors) *
                     std::exp(-beta_hw * (m - n));
    const double gamma = gamma_value(deph, rho0, beta_hw, h, h);
    v.check_tol("dephasing fluctuation identity", brute - gamma, 1e-9);

    // Kraus-basis invariance: {H, V} vs {+-45 degrees}
    const Mat id = Mat::Identity(dim, dim);
    std::vector<Mat> blocks = {d_op, Mat::Zero(dim, dim), Mat::Zero(dim, dim), id};
    Eigen::VectorXcd xi(2);
    xi << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    Mat diag45(2, 2);
    diag45 << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
    const KrausChannel deph45 = kraus_from_environment(blocks, xi, diag45);
    const DensityMatrix a = apply_channel(deph, rho0);
    const DensityMatrix b = apply_channel(deph45, rho0);
    v.check_tol("Kraus-basis invariance", (a.entries - b.entries).norm(), 1e-10);
}

int cmd_verify(const Scenario& base, const std::string& suite) {
    validate(base);
    Verifier v;
    if (suite == "fast") {
        verify_coeff_oracle(v, 12);
        verify_parameter_set(v, base, 1.0, 0.1, "q1_b01");
    } else if (suite == "full") {
        verify_coeff_oracle(v, 20);
        verify_parameter_set(v, base, 1.0, 0.1, "q1_b01");
        verify_parameter_set(v, base, 3.0, 1.0, "q3_b1");
        verify_frft(v);
        verify_split_step(v);
        verify_interferometer(v, base, 3.0, 1.0, "q3_b1");
        verify_open(v);
    } else if (suite == "stress") {
        const ThermalEnsemble ens = thermal_weights(0.1, 1e-6);
        v.check("stress n_cut", ens.n_cut == 138, "n_cut " + std::to_string(ens.n_cut));
        verify_parameter_set(v, base, 1.0, 0.1, "stress_q1_b01");
        const GridSpec grid = GridSpec::for_modes(160);
        const TransitionMatrix t = build_matrix(1.0, 160);
        const cxd oracle = coeff_quadrature(150, 150, 1.0, grid);
        v.check_tol("recurrence at n = 150", std::abs(t(150, 150) - oracle), 1e-8);
    } else {
        throw ConfigError("unknown suite '" + suite + "' (fast, full, stress)");
    }
    std::cout << (v.failures == 0 ? "all checks passed\n"
                                  : std::to_string(v.failures) + " check(s) failed\n");
    if (v.failures > 0) throw TruncationFailure(std::to_string(v.failures) + " verify check(s) failed");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"worklab: photonic work-statistics laboratory"};
    app.require_subcommand(1);

    Scenario sc;
    std::string suite = "fast";
    double lambda_nm = 633.0, f_mm = 100.0, alpha = M_PI / 2.0;

    auto* c_charfn = app.add_subcommand("charfn", "characteristic function G(s) and P(zeta)");
    add_scenario_flags(c_charfn, sc);
    auto* c_workdist = app.add_subcommand("workdist", "work distribution P(zeta)");
    add_scenario_flags(c_workdist, sc);
    auto* c_interf = app.add_subcommand("interf", "full interferometric pipeline");
    add_scenario_flags(c_interf, sc);
    auto* c_open = app.add_subcommand("open-charfn", "open-dynamics G(s) from a channel spec");
    add_scenario_flags(c_open, sc);
    auto* c_jarz = app.add_subcommand("jarzynski", "fluctuation-relation report");
    add_scenario_flags(c_jarz, sc);
    auto* c_frft = app.add_subcommand("frft-verify", "lens-chain vs spectral FRFT check");
    add_scenario_flags(c_frft, sc);

    auto* c_units = app.add_subcommand("units", "physical units for a lens-chain stage");
    c_units->add_option("--lambda-nm", lambda_nm, "wavelength in nm");
    c_units->add_option("--f-mm", f_mm, "focal length in mm");
    c_units->add_option("--alpha", alpha, "FRFT order in rad, (0, 2pi)");

    auto* c_verify = app.add_subcommand("verify", "run an acceptance suite");
    add_scenario_flags(c_verify, sc);
    c_verify->add_option("--suite", suite, "fast | full | stress");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (c_charfn->parsed()) return cmd_charfn(sc);
        if (c_workdist->parsed()) return cmd_workdist(sc);
        if (c_interf->parsed()) return cmd_interf(sc);
        if (c_open->parsed()) return cmd_open_charfn(sc);
        if (c_jarz->parsed()) return cmd_jarzynski(sc);
        if (c_frft->parsed()) return cmd_frft_verify(sc);
        if (c_units->parsed()) return cmd_units(lambda_nm, f_mm, alpha);
        if (c_verify->parsed()) return cmd_verify(sc, suite);
    } catch (const ConfigError& e) {
        std::cerr << "error kind=config what=\"" << e.what() << "\"\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error kind=numerical what=\"" << e.what() << "\"\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error kind=internal what=\"" << e.what() << "\"\n";
        return 3;
    }
    return 0;
}

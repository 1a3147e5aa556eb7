#include "worklab/interferometer.hpp"

#include <cmath>
#include <ostream>
#include <string>

#include "worklab/csv.hpp"
#include "worklab/parallel.hpp"

namespace worklab {

struct TwoPathInterferometer::Impl {
    InterferometerConfig cfg;
    ModeBasis basis;
    std::vector<cxd> proc;       // (B x B) process amplitudes in the initial basis
    std::vector<double> proc_w;  // |proc|^2, same layout
    int b = 0;                   // basis size n_basis + 1

    explicit Impl(InterferometerConfig c)
        : cfg(std::move(c)), basis(cfg.n_basis, cfg.grid), b(cfg.n_basis + 1) {
        if (cfg.process_mask && cfg.process_matrix)
            throw DimensionMismatch("configure either a phase mask or a transition matrix");
        if (!cfg.process_mask && !cfg.process_matrix)
            throw DimensionMismatch("no process configured");
        if (cfg.process_mask && cfg.final_basis != FinalBasis::SameAsInitial)
            throw DimensionMismatch(
                "grid masks have no declared final Hamiltonian; final basis must be SameAsInitial");

        proc.assign(static_cast<size_t>(b) * b, cxd{0.0, 0.0});
        if (cfg.process_mask) {
            TransitionMatrix t = process_from_grid(*cfg.process_mask, cfg.n_basis, cfg.grid);
            for (int m = 0; m < b; ++m)
                for (int n = 0; n < b; ++n) proc[static_cast<size_t>(m) * b + n] = t(m, n);
        } else {
            const TransitionMatrix& t = *cfg.process_matrix;
            for (int m = 0; m < b && m <= t.m_max; ++m)
                for (int n = 0; n < b && n <= t.n_max; ++n)
                    proc[static_cast<size_t>(m) * b + n] = t(m, n);
        }
        proc_w.resize(proc.size());
        for (size_t i = 0; i < proc.size(); ++i) proc_w[i] = std::norm(proc[i]);
    }

    // Both arms share the process column a = proc[:, n]; in coefficient space
    //   upper = e^{-i s (n+1/2)} a,   lower = e^{-i s (m+1/2)} a_m,
    // and the cross term is conj(G_n(s)) = sum_m |a_m|^2 e^{-i s (m-n)}.
    std::pair<double, double> run(int n, double s, double theta) const {
        double arm_power = 0.0;
        cxd cross{0.0, 0.0};
        for (int m = 0; m < b; ++m) {
            const double w = proc_w[static_cast<size_t>(m) * b + n];
            arm_power += w;
            cross += w * std::polar(1.0, -s * (m - n));
        }
        const double interference = 0.5 * (std::polar(1.0, theta) * cross).real();
        const double bias = 0.5 * arm_power;
        return {bias + interference, bias - interference};
    }

    SampledField displace(const SampledField& f, double q0) const {
        SampledField out = f;
        for (int j = 0; j < f.grid.n_points; ++j)
            out.values[j] *= std::polar(1.0, -q0 * f.grid.x(j));
        return out;
    }

    SampledField process_field(const SampledField& f) const {
        if (cfg.process_mask) return apply_phase_mask(f, *cfg.process_mask);
        auto a = basis.project(f);
        std::vector<cxd> out(b, cxd{0.0, 0.0});
        for (int m = 0; m < b; ++m)
            for (int k = 0; k < b; ++k) out[m] += proc[static_cast<size_t>(m) * b + k] * a[k];
        SampledField g = basis.synthesize(out);
        if (cfg.final_basis == FinalBasis::DisplacedBy) g = displace(g, -cfg.q0); // D^dag
        return g;
    }

    SampledField free_final(const SampledField& f, double s) const {
        if (cfg.final_basis == FinalBasis::SameAsInitial)
            return frft_spectral(f, FrftOrder{s}, basis);
        // V' = D^dag V D: displaced-basis free evolution
        SampledField g = displace(f, cfg.q0);
        g = frft_spectral(g, FrftOrder{s}, basis);
        return displace(g, -cfg.q0);
    }

    std::pair<double, double> run_grid(int n, double s, double theta) const {
        const SampledField input = basis.mode_field(n);
        const SampledField upper = process_field(frft_spectral(input, FrftOrder{s}, basis));
        const SampledField lower = free_final(process_field(input), s);
        const cxd rot = std::polar(1.0, theta);
        SampledField port0{input.grid, std::vector<cxd>(input.grid.n_points)};
        SampledField port1 = port0;
        for (int j = 0; j < input.grid.n_points; ++j) {
            port0.values[j] = 0.5 * (upper.values[j] + rot * lower.values[j]);
            port1.values[j] = 0.5 * (upper.values[j] - rot * lower.values[j]);
        }
        return {port0.power(), port1.power()};
    }
};

TwoPathInterferometer::TwoPathInterferometer(InterferometerConfig cfg)
    : impl_(std::make_unique<Impl>(std::move(cfg))) {}

TwoPathInterferometer::~TwoPathInterferometer() = default;

int TwoPathInterferometer::n_basis() const { return impl_->cfg.n_basis; }

std::pair<double, double> TwoPathInterferometer::run_mode(int n, double s, double theta) const {
    if (n < 0 || n > impl_->cfg.n_basis)
        throw DimensionMismatch("run_mode: mode index outside the configured basis");
    return impl_->run(n, s, theta);
}

std::pair<double, double> TwoPathInterferometer::run_mode_grid(int n, double s,
                                                               double theta) const {
    if (n < 0 || n > impl_->cfg.n_basis)
        throw DimensionMismatch("run_mode_grid: mode index outside the configured basis");
    return impl_->run_grid(n, s, theta);
}

IntensityTrace TwoPathInterferometer::thermal_trace(const ThermalEnsemble& ens,
                                                    std::span<const double> s_grid,
                                                    double theta) const {
    if (ens.n_cut > impl_->cfg.n_basis)
        throw DimensionMismatch("thermal_trace: ensemble n_cut exceeds the basis");

    const int n_modes = ens.n_cut + 1;
    const int n_s = static_cast<int>(s_grid.size());
    std::vector<double> mode_out0(static_cast<size_t>(n_modes) * n_s);
    std::vector<double> mode_out1(static_cast<size_t>(n_modes) * n_s);
    parallel_for(n_modes, [&](int n) {
        for (int k = 0; k < n_s; ++k) {
            const auto [o0, o1] = impl_->run(n, s_grid[k], theta);
            mode_out0[static_cast<size_t>(n) * n_s + k] = o0;
            mode_out1[static_cast<size_t>(n) * n_s + k] = o1;
        }
    });

    IntensityTrace trace;
    trace.theta = theta;
    trace.s_samples.assign(s_grid.begin(), s_grid.end());
    trace.out0.assign(n_s, 0.0);
    trace.out1.assign(n_s, 0.0);
    double offset = 0.0;
    for (int n = 0; n < n_modes; ++n) { // fixed ascending reduction order
        const double pn = ens.weights[n];
        for (int k = 0; k < n_s; ++k) {
            trace.out0[k] += pn * mode_out0[static_cast<size_t>(n) * n_s + k];
            trace.out1[k] += pn * mode_out1[static_cast<size_t>(n) * n_s + k];
        }
        double arm_power = 0.0;
        for (int m = 0; m < impl_->b; ++m)
            arm_power += impl_->proc_w[static_cast<size_t>(m) * impl_->b + n];
        offset += pn * 0.5 * arm_power; // 2 A_n: both single-arm detected powers
    }
    trace.offset = offset;
    return trace;
}

CharFnTrace reconstruct_charfn(const IntensityTrace& re_trace, const IntensityTrace& im_trace) {
    if (re_trace.s_samples != im_trace.s_samples)
        throw GridMismatch("reconstruct_charfn: traces sampled on different s grids");
    if (re_trace.s_samples.empty() || re_trace.s_samples.front() != 0.0)
        throw NormalizationFailure("reconstruct_charfn: traces must include s = 0");

    const double norm = re_trace.out0.front() - re_trace.offset;
    if (std::abs(norm / re_trace.offset - 1.0) > 1e-6)
        throw NormalizationFailure("reconstruct_charfn: G(0) deviates from 1 by " +
                                   std::to_string(std::abs(norm / re_trace.offset - 1.0)));

    CharFnTrace trace;
    trace.s_samples = re_trace.s_samples;
    trace.values.resize(trace.s_samples.size());
    for (size_t k = 0; k < trace.values.size(); ++k)
        trace.values[k] = cxd{re_trace.out0[k] - re_trace.offset,
                              im_trace.out0[k] - im_trace.offset} /
                          norm;
    return trace;
}

void write_csv(const IntensityTrace& trace, std::ostream& os) {
    os << "s,out0,out1,offset\n";
    for (size_t k = 0; k < trace.s_samples.size(); ++k)
        os << format_g17(trace.s_samples[k]) << ',' << format_g17(trace.out0[k]) << ','
           << format_g17(trace.out1[k]) << ',' << format_g17(trace.offset) << '\n';
}

} // namespace worklab

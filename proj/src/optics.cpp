#include "worklab/optics.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <string>

namespace worklab {

namespace {

std::mutex planner_mutex; // FFTW planner is not thread-safe

void fft_inplace(std::vector<cxd>& v, int sign) {
    const int n = static_cast<int>(v.size());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(planner_mutex);
        plan = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(v.data()),
                                reinterpret_cast<fftw_complex*>(v.data()), sign, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(planner_mutex);
        fftw_destroy_plan(plan);
    }
    if (sign == FFTW_BACKWARD)
        for (cxd& x : v) x /= static_cast<double>(n);
}

// spatial frequency of FFT bin j on an n-point grid with spacing dx
double k_of_bin(int j, int n, double dx) {
    const int jj = (j <= n / 2 - 1) ? j : j - n;
    return 2.0 * M_PI * jj / (n * dx);
}

} // namespace

double frft_distance(double f, double alpha) {
    const double s = std::sin(0.5 * alpha);
    return 2.0 * f * s * s;
}

SampledField fresnel_propagate(const SampledField& field, double z) {
    SampledField out = field;
    if (z == 0.0) return out;
    fft_inplace(out.values, FFTW_FORWARD);
    const int n = field.grid.n_points;
    const double dx = field.grid.dx();
    for (int j = 0; j < n; ++j) {
        const double k = k_of_bin(j, n, dx);
        out.values[j] *= std::polar(1.0, -0.5 * z * k * k);
    }
    fft_inplace(out.values, FFTW_BACKWARD);
    return out;
}

SampledField thin_lens(const SampledField& field, double f) {
    if (f == 0.0 || !std::isfinite(f)) {
        if (std::isinf(f)) return field; // f -> infinity limit: identity
        throw ZeroFocalLength("thin_lens: focal length must be nonzero");
    }
    SampledField out = field;
    for (int j = 0; j < field.grid.n_points; ++j) {
        const double x = field.grid.x(j);
        out.values[j] *= std::polar(1.0, -x * x / (2.0 * f));
    }
    return out;
}

SampledField apply_phase_mask(const SampledField& field, const SampledField& mask) {
    if (mask.grid != field.grid) throw GridMismatch("phase mask grid differs from field grid");
    SampledField out = field;
    for (int j = 0; j < field.grid.n_points; ++j) {
        if (std::abs(std::abs(mask.values[j]) - 1.0) > 1e-9)
            throw NonUnitaryMask("phase mask has non-unit modulus sample");
        out.values[j] *= mask.values[j];
    }
    return out;
}

double guard_band_energy_fraction(const SampledField& field) {
    const int n = field.grid.n_points;
    const int band = n / 10;
    double outer = 0.0;
    double total = 0.0;
    for (int j = 0; j < n; ++j) {
        const double e = std::norm(field.values[j]);
        total += e;
        if (j < band / 2 || j >= n - band / 2) outer += e;
    }
    return total > 0.0 ? outer / total : 0.0;
}

namespace {

void check_guard(const SampledField& f, const char* where) {
    const double leak = guard_band_energy_fraction(f);
    if (leak > 1e-6)
        throw WrapAroundError(std::string("guard-band energy ") + std::to_string(leak) + " after " +
                              where);
}

} // namespace

SampledField frft_optical(const SampledField& field, FrftOrder order, double f) {
    if (!(order.alpha > 0.0 && order.alpha < 2.0 * M_PI))
        throw DimensionMismatch("frft_optical: alpha must lie in (0, 2pi)");
    const double z = frft_distance(f, order.alpha);
    check_guard(field, "input");
    SampledField out = fresnel_propagate(field, z);
    check_guard(out, "first propagation");
    out = thin_lens(out, f);
    out = fresnel_propagate(out, z);
    check_guard(out, "second propagation");
    return out;
}

SampledField frft_spectral(const SampledField& field, FrftOrder order, const ModeBasis& basis) {
    auto coeffs = basis.project(field);
    const double residual = basis.residual_norm(field, coeffs);
    const double nrm = field.norm();
    if (nrm > 0.0 && residual > 1e-6 * nrm)
        throw BasisDeficit("frft_spectral: projection residual " + std::to_string(residual / nrm) +
                           " of the field norm");
    for (int n = 0; n < static_cast<int>(coeffs.size()); ++n)
        coeffs[n] *= std::polar(1.0, -order.alpha * (n + 0.5));
    return basis.synthesize(coeffs);
}

SampledField frft_spectral(const SampledField& field, FrftOrder order, int n_basis) {
    return frft_spectral(field, order, ModeBasis(n_basis, field.grid));
}

SampledField split_step_evolve(const SampledField& field, const IndexChannel& channel) {
    if (channel.grid != field.grid) throw GridMismatch("index channel grid differs");
    if (channel.steps < 1) throw StepTooCoarse("split_step_evolve: steps must be >= 1");
    const double dz = channel.length / channel.steps;
    double v_max = 0.0;
    for (double v : channel.potential) v_max = std::max(v_max, std::abs(v));
    if (v_max * dz >= 0.1)
        throw StepTooCoarse("split_step_evolve: per-step phase excursion " +
                            std::to_string(v_max * dz) + " rad (needs < 0.1)");

    const int n = field.grid.n_points;
    const double dx = field.grid.dx();
    std::vector<cxd> half_pot(n), kin(n);
    for (int j = 0; j < n; ++j) half_pot[j] = std::polar(1.0, -0.5 * dz * channel.potential[j]);
    for (int j = 0; j < n; ++j) {
        const double k = k_of_bin(j, n, dx);
        kin[j] = std::polar(1.0, -0.5 * dz * k * k);
    }

    SampledField out = field;
    for (int step = 0; step < channel.steps; ++step) {
        for (int j = 0; j < n; ++j) out.values[j] *= half_pot[j];
        fft_inplace(out.values, FFTW_FORWARD);
        for (int j = 0; j < n; ++j) out.values[j] *= kin[j];
        fft_inplace(out.values, FFTW_BACKWARD);
        for (int j = 0; j < n; ++j) out.values[j] *= half_pot[j];
    }
    return out;
}

SampledField apply_element(const OpticalElement& element, const SampledField& field) {
    return std::visit(
        [&](const auto& e) -> SampledField {
            using T = std::decay_t<decltype(e)>;
            if constexpr (std::is_same_v<T, FreeSpace>) return fresnel_propagate(field, e.z);
            else if constexpr (std::is_same_v<T, ThinLens>) return thin_lens(field, e.f);
            else if constexpr (std::is_same_v<T, PhaseMask>) return apply_phase_mask(field, e.profile);
            else return split_step_evolve(field, e);
        },
        element);
}

} // namespace worklab

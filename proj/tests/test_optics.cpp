#include <doctest.h>

#include <cmath>
#include <complex>

#include "worklab/optics.hpp"

using namespace worklab;

namespace {

double l2_distance(const SampledField& a, const SampledField& b) {
    double acc = 0.0;
    for (size_t j = 0; j < a.values.size(); ++j) acc += std::norm(a.values[j] - b.values[j]);
    return std::sqrt(acc * a.grid.dx());
}

// L2 distance after removing the best-fit global phase
double l2_mod_phase(const SampledField& a, const SampledField& b) {
    cxd phase = overlap(a, b);
    phase /= std::abs(phase);
    SampledField rotated = a;
    for (cxd& v : rotated.values) v *= phase;
    return l2_distance(rotated, b);
}

double centroid(const SampledField& f) {
    double num = 0.0, den = 0.0;
    for (int j = 0; j < f.grid.n_points; ++j) {
        const double e = std::norm(f.values[j]);
        num += f.grid.x(j) * e;
        den += e;
    }
    return num / den;
}

} // namespace

TEST_CASE("free propagation: identity at z = 0, unitary, reversible") {
    const GridSpec g = GridSpec::make(1024, 12.0);
    const SampledField f = hg_mode(0, g);
    CHECK(l2_distance(fresnel_propagate(f, 0.0), f) == 0.0);

    const SampledField far = fresnel_propagate(f, 0.8);
    CHECK(std::abs(far.power() - 1.0) < 1e-10);
    CHECK(l2_distance(fresnel_propagate(far, -0.8), f) < 1e-10);
}

TEST_CASE("tilted beam drifts by q0 z") {
    const GridSpec g = GridSpec::make(2048, 16.0);
    const double q0 = 1.5, z = 2.0;
    SampledField f = hg_mode(0, g);
    for (int j = 0; j < g.n_points; ++j) f.values[j] *= std::polar(1.0, q0 * g.x(j));
    const SampledField out = fresnel_propagate(f, z);
    CHECK(centroid(out) == doctest::Approx(q0 * z).epsilon(1e-6));
}

TEST_CASE("thin lens: flag values and phase cancellation") {
    const GridSpec g = GridSpec::make(1024, 12.0);
    const SampledField f = hg_mode(2, g);
    CHECK(l2_distance(thin_lens(f, INFINITY), f) == 0.0);
    CHECK(l2_distance(thin_lens(thin_lens(f, 0.7), -0.7), f) < 1e-12);
    CHECK_THROWS_AS(thin_lens(f, 0.0), ZeroFocalLength);
}

TEST_CASE("lens plus focal-distance flight Fourier-transforms the Gaussian") {
    // 2f-system analytics: the focal-plane intensity of the unit-waist Gaussian
    // has second moment f^2 * <x^2>_input
    const GridSpec g = GridSpec::make(4096, 24.0);
    const SampledField f0 = hg_mode(0, g);
    const double f = 1.7;
    const SampledField out = fresnel_propagate(thin_lens(f0, f), f);
    double m2 = 0.0;
    for (int j = 0; j < g.n_points; ++j) m2 += g.x(j) * g.x(j) * std::norm(out.values[j]);
    m2 *= g.dx();
    CHECK(m2 == doctest::Approx(0.5 * f * f).epsilon(1e-6));
}

TEST_CASE("phase masks must be unit modulus") {
    const GridSpec g = GridSpec::make(1024, 12.0);
    const SampledField f = hg_mode(0, g);
    SampledField good{g, std::vector<cxd>(g.n_points)};
    for (int j = 0; j < g.n_points; ++j) good.values[j] = std::polar(1.0, 0.2 * g.x(j));
    CHECK(std::abs(apply_phase_mask(f, good).power() - 1.0) < 1e-10);

    SampledField bad = good;
    bad.values[10] = cxd{0.3, 0.0};
    CHECK_THROWS_AS(apply_phase_mask(f, bad), NonUnitaryMask);

    const SampledField other = hg_mode(0, GridSpec::make(512, 12.0));
    CHECK_THROWS_AS(apply_phase_mask(f, SampledField{other.grid, other.values}), GridMismatch);
}

TEST_CASE("spectral fractional transform obeys the eigenphase law") {
    const GridSpec g = GridSpec::for_modes(12);
    const ModeBasis basis(12, g);

    SUBCASE("alpha = 0 is the identity") {
        const SampledField f = basis.mode_field(4);
        CHECK(l2_distance(frft_spectral(f, FrftOrder{0.0}, basis), f) < 1e-12);
    }
    SUBCASE("alpha = 2pi flips the sign of every mode") {
        const SampledField f = basis.mode_field(3);
        SampledField minus = f;
        for (cxd& v : minus.values) v = -v;
        CHECK(l2_distance(frft_spectral(f, FrftOrder{2.0 * M_PI}, basis), minus) < 1e-9);
    }
    SUBCASE("phi_3 at alpha = pi/2 picks up e^{-i pi 3.5/2}") {
        const SampledField f = basis.mode_field(3);
        SampledField expected = f;
        const cxd phase = std::polar(1.0, -M_PI / 2.0 * 3.5);
        for (cxd& v : expected.values) v *= phase;
        CHECK(l2_distance(frft_spectral(f, FrftOrder{M_PI / 2.0}, basis), expected) < 1e-12);
    }
}

TEST_CASE("spectral transforms compose additively") {
    const GridSpec g = GridSpec::for_modes(10);
    const ModeBasis basis(10, g);
    std::vector<cxd> coeffs(11, cxd{0.0, 0.0});
    coeffs[0] = 0.5;
    coeffs[2] = cxd{0.0, 0.7};
    coeffs[7] = -0.3;
    const SampledField f = basis.synthesize(coeffs);
    const double a1 = 0.9, a2 = 1.7;
    const SampledField two_step =
        frft_spectral(frft_spectral(f, FrftOrder{a1}, basis), FrftOrder{a2}, basis);
    const SampledField one_step = frft_spectral(f, FrftOrder{a1 + a2}, basis);
    CHECK(l2_mod_phase(two_step, one_step) < 1e-9);
}

TEST_CASE("quarter-cycle transform equals the continuous Fourier transform") {
    const GridSpec g = GridSpec::make(512, 12.0);
    const ModeBasis basis(6, g);
    std::vector<cxd> coeffs(7, cxd{0.0, 0.0});
    coeffs[1] = 0.8;
    coeffs[4] = cxd{0.0, 0.6};
    const SampledField f = basis.synthesize(coeffs);
    const SampledField frft = frft_spectral(f, FrftOrder{M_PI / 2.0}, basis);

    // direct quadrature of (1/sqrt(2pi)) int f(x) e^{-ikx} dx at k = grid points
    SampledField ft{g, std::vector<cxd>(g.n_points, cxd{0.0, 0.0})};
    for (int j = 0; j < g.n_points; ++j) {
        cxd acc{0.0, 0.0};
        for (int l = 0; l < g.n_points; ++l)
            acc += f.values[l] * std::polar(1.0, -g.x(j) * g.x(l));
        ft.values[j] = acc * g.dx() / std::sqrt(2.0 * M_PI);
    }
    CHECK(l2_mod_phase(frft, ft) < 1e-6);
}

TEST_CASE("basis deficit is flagged") {
    const GridSpec g = GridSpec::for_modes(8);
    const SampledField f = hg_mode(8, g);
    CHECK_THROWS_AS(frft_spectral(f, FrftOrder{1.0}, 2), BasisDeficit);
}

TEST_CASE("lens-chain transform matches the spectral route") {
    const GridSpec g = GridSpec::make(4096, 24.0);
    const ModeBasis basis(10, g);
    for (double alpha : {M_PI / 6.0, M_PI / 4.0, M_PI / 2.0, 3.0 * M_PI / 4.0}) {
        const double f = 1.0 / std::sin(alpha); // scale convention: phi_0 -> phi_0
        for (int n : {0, 3, 10}) {
            const SampledField in = basis.mode_field(n);
            const SampledField opt = frft_optical(in, FrftOrder{alpha}, f);
            const SampledField spec = frft_spectral(in, FrftOrder{alpha}, basis);
            CHECK(l2_mod_phase(opt, spec) < 1e-4);
        }
    }
    CHECK(frft_distance(1.0, M_PI / 2.0) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("small orders approach the identity") {
    const GridSpec g = GridSpec::make(2048, 16.0);
    const SampledField f = hg_mode(1, g);
    const double alpha = 1e-3;
    const SampledField out = frft_optical(f, FrftOrder{alpha}, 1.0 / std::sin(alpha));
    CHECK(l2_mod_phase(out, f) < 1e-3);
}

TEST_CASE("wrap-around is an error, not silent aliasing") {
    const GridSpec g = GridSpec::make(512, 8.0);
    SampledField flat{g, std::vector<cxd>(g.n_points, cxd{1.0, 0.0})};
    CHECK(guard_band_energy_fraction(flat) > 1e-6);
    CHECK_THROWS_AS(frft_optical(flat, FrftOrder{M_PI / 2.0}, 1.0), WrapAroundError);
}

TEST_CASE("split-step: zero channel reduces to free propagation") {
    const GridSpec g = GridSpec::make(1024, 8.0);
    const SampledField f = hg_mode(1, g);
    const IndexChannel zero{std::vector<double>(g.n_points, 0.0), g, 0.5, 16};
    CHECK(l2_distance(split_step_evolve(f, zero), fresnel_propagate(f, 0.5)) < 1e-12);
}

TEST_CASE("split-step: harmonic channel holds its stationary states") {
    const GridSpec g = GridSpec::make(1024, 8.0);
    std::vector<double> pot(g.n_points);
    for (int j = 0; j < g.n_points; ++j) pot[j] = 0.5 * g.x(j) * g.x(j);
    const double t = 0.2;
    const ModeBasis basis(5, g);
    for (int n = 0; n <= 5; ++n) {
        const SampledField in = basis.mode_field(n);
        const SampledField out = split_step_evolve(in, IndexChannel{pot, g, t, 256});
        CHECK(std::abs(out.power() - 1.0) < 1e-9);
        const cxd ov = overlap(in, out);
        CHECK(std::abs(ov) > 0.999);
        CHECK(std::abs(std::arg(ov) + t * (n + 0.5)) < 1e-3);
    }
}

TEST_CASE("split-step converges at second order") {
    const GridSpec g = GridSpec::make(1024, 8.0);
    std::vector<double> pot(g.n_points);
    for (int j = 0; j < g.n_points; ++j) pot[j] = 0.5 * g.x(j) * g.x(j);
    const double t = 0.2;
    const SampledField in = hg_mode(2, g);
    auto phase_err = [&](int steps) {
        const SampledField out = split_step_evolve(in, IndexChannel{pot, g, t, steps});
        return std::abs(std::arg(overlap(in, out)) + t * 2.5);
    };
    const double ratio = phase_err(128) / phase_err(256);
    CHECK(ratio == doctest::Approx(4.0).epsilon(0.125));
}

TEST_CASE("coarse steps are rejected") {
    const GridSpec g = GridSpec::make(1024, 8.0);
    std::vector<double> pot(g.n_points, 10.0);
    const SampledField f = hg_mode(0, g);
    CHECK_THROWS_AS(split_step_evolve(f, IndexChannel{pot, g, 1.0, 4}), StepTooCoarse);
    CHECK_THROWS_AS(split_step_evolve(f, IndexChannel{pot, g, 1.0, 0}), StepTooCoarse);
}

TEST_CASE("element variant dispatch") {
    const GridSpec g = GridSpec::make(1024, 12.0);
    const SampledField f = hg_mode(0, g);
    CHECK(l2_distance(apply_element(FreeSpace{0.3}, f), fresnel_propagate(f, 0.3)) == 0.0);
    CHECK(l2_distance(apply_element(ThinLens{2.0}, f), thin_lens(f, 2.0)) == 0.0);
}

#ifndef WORKLAB_OPTICS_HPP
#define WORKLAB_OPTICS_HPP

#include <variant>
#include <vector>

#include "worklab/hermite.hpp"

namespace worklab {

// Dimensionless paraxial convention: k = 1, grid coordinate = oscillator x.

struct FreeSpace { double z = 0.0; };
struct ThinLens { double f = 0.0; };            // phase e^{-i x^2 / (2f)}
struct PhaseMask { SampledField profile; };     // unit-modulus samples
struct IndexChannel {                           // potential V(x) = Delta n / n0
    std::vector<double> potential;              // sampled on `grid`
    GridSpec grid;
    double length = 0.0;
    int steps = 1;
};
using OpticalElement = std::variant<FreeSpace, ThinLens, PhaseMask, IndexChannel>;

struct FrftOrder {
    double alpha = 0.0; // in [0, 2pi]
};

// lens-chain distance z_alpha = 2 f sin^2(alpha/2)
double frft_distance(double f, double alpha);

// Spectral transfer function e^{-i z k_x^2 / 2} of the free paraxial equation.
// Negative z back-propagates.
SampledField fresnel_propagate(const SampledField& field, double z);

// Pointwise e^{-i x^2/(2f)}. Throws ZeroFocalLength.
SampledField thin_lens(const SampledField& field, double f);

// Pointwise multiplication by a unit-modulus mask. Throws NonUnitaryMask.
SampledField apply_phase_mask(const SampledField& field, const SampledField& mask);

// Energy fraction in the outer 10% of the grid (wrap-around monitor).
double guard_band_energy_fraction(const SampledField& field);

// FreeSpace(z_alpha) -> ThinLens(f) -> FreeSpace(z_alpha). Matches the spectral
// FRFT up to a global phase when f sin(alpha) = 1 (unit-scale convention: phi_0
// maps to phi_0). Throws WrapAroundError if guard-band energy exceeds 1e-6.
SampledField frft_optical(const SampledField& field, FrftOrder order, double f);

// Exact eigenmode route: project on phi_0..phi_{n_basis}, multiply coefficient n
// by e^{-i alpha (n + 1/2)}, resynthesize. Throws BasisDeficit if the projection
// residual exceeds 1e-6 of the field norm.
SampledField frft_spectral(const SampledField& field, FrftOrder order, int n_basis);
SampledField frft_spectral(const SampledField& field, FrftOrder order, const ModeBasis& basis);

// Symmetric (Strang) split-step integration of the paraxial equation with the
// channel potential. Throws StepTooCoarse unless max|V| dz < 0.1 rad.
SampledField split_step_evolve(const SampledField& field, const IndexChannel& channel);

SampledField apply_element(const OpticalElement& element, const SampledField& field);

} // namespace worklab

#endif

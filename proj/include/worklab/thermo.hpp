#ifndef WORKLAB_THERMO_HPP
#define WORKLAB_THERMO_HPP

#include <vector>

#include "worklab/errors.hpp"

namespace worklab {

enum class SpectrumKind { HarmonicOscillator };

// Energy levels in units of hbar*omega.
struct Spectrum {
    SpectrumKind kind = SpectrumKind::HarmonicOscillator;
    double level(int n) const { return n + 0.5; }
};

// Gibbs state of the oscillator at dimensionless inverse temperature beta_hw,
// truncated at n_cut by a tail-mass criterion and renormalized to sum to 1.
struct ThermalEnsemble {
    double beta_hw = 0.0;
    std::vector<double> weights; // p_0 .. p_{n_cut}, sum exactly renormalized to 1
    int n_cut = 0;
    double log_partition = 0.0; // ln Z of the untruncated geometric series
    double renorm = 1.0;        // factor applied to the kept weights
};

// n_cut is the smallest integer with residual tail mass e^{-beta_hw (n_cut+1)} < tail_tol.
// Throws DegenerateTemperature for beta_hw <= 0.
ThermalEnsemble thermal_weights(double beta_hw, double tail_tol = 1e-8);

// -(1/beta) ln(Z_F/Z_I); exactly 0 for identical spectra (the displacement quench).
double free_energy_delta(const Spectrum& initial, const Spectrum& final_, double beta_hw);

} // namespace worklab

#endif

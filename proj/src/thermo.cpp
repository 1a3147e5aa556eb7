#include "worklab/thermo.hpp"

#include <cmath>

namespace worklab {

ThermalEnsemble thermal_weights(double beta_hw, double tail_tol) {
    if (!(beta_hw > 0.0))
        throw DegenerateTemperature("beta_hw must be positive (oscillator Gibbs state)");
    if (!(tail_tol > 0.0 && tail_tol < 1.0))
        throw DegenerateTemperature("tail_tol must lie in (0, 1)");

    // p_n = (1 - e^{-b}) e^{-b n}; residual tail past n_cut is e^{-b (n_cut+1)}
    int n_cut = 0;
    while (std::exp(-beta_hw * (n_cut + 1)) >= tail_tol) ++n_cut;

    ThermalEnsemble ens;
    ens.beta_hw = beta_hw;
    ens.n_cut = n_cut;
    ens.log_partition = -0.5 * beta_hw - std::log1p(-std::exp(-beta_hw));

    ens.weights.resize(n_cut + 1);
    const double ratio = std::exp(-beta_hw);
    double w = 1.0 - ratio;
    double sum = 0.0;
    for (int n = 0; n <= n_cut; ++n) {
        ens.weights[n] = w;
        sum += w;
        w *= ratio;
    }
    ens.renorm = 1.0 / sum;
    for (double& p : ens.weights) p *= ens.renorm;
    // absorb the division rounding so the ascending-order sum is exactly 1
    for (int pass = 0; pass < 4; ++pass) {
        double check = 0.0;
        for (double p : ens.weights) check += p;
        if (check == 1.0) break;
        ens.weights[0] += 1.0 - check;
    }
    return ens;
}

double free_energy_delta(const Spectrum& initial, const Spectrum& final_, double beta_hw) {
    // Only the oscillator spectrum is supported; identical spectra give 0 exactly.
    if (initial.kind == final_.kind) return 0.0;
    const double log_z_i = -0.5 * beta_hw - std::log1p(-std::exp(-beta_hw));
    const double log_z_f = log_z_i;
    return -(log_z_f - log_z_i) / beta_hw;
}

} // namespace worklab

#ifndef WORKLAB_GRID_HPP
#define WORKLAB_GRID_HPP

#include <complex>
#include <vector>

#include "worklab/errors.hpp"

namespace worklab {

using cxd = std::complex<double>;

// Uniform symmetric 1-D grid in dimensionless oscillator units (gamma = m*omega/hbar = 1).
// Samples sit at half-integer offsets, x_j = -half_width + (j + 1/2)*dx, so the grid
// never places a sample exactly at x = 0 and parity is exact on the sample set.
struct GridSpec {
    int n_points = 0;
    double half_width = 0.0;

    double dx() const { return 2.0 * half_width / n_points; }
    double x(int j) const { return -half_width + (j + 0.5) * dx(); }

    bool operator==(const GridSpec&) const = default;

    static GridSpec make(int n_points, double half_width);

    // Default policy: resolves every mode up to n_max with quadrature error below 1e-9.
    static GridSpec for_modes(int n_max);
};

// Complex transverse amplitude Psi(x) sampled on a GridSpec.
struct SampledField {
    GridSpec grid;
    std::vector<cxd> values;

    // integral |v|^2 dx (total detected power for a bulk detector)
    double power() const;
    double norm() const;
};

// Midpoint-rule inner product, conj(f).g dx. Throws GridMismatch if grids differ.
cxd overlap(const SampledField& f, const SampledField& g);

} // namespace worklab

#endif

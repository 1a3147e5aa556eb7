#ifndef WORKLAB_HERMITE_HPP
#define WORKLAB_HERMITE_HPP

#include <span>
#include <vector>

#include "worklab/grid.hpp"

namespace worklab {

// Physicists' Hermite polynomial H_n(x) by the three-term recurrence
// H_{k+1} = 2x H_k - 2k H_{k-1}. Overflows around n ~ 170 for large |x|;
// mode synthesis below never goes through this unnormalized form.
double hermite_eval(int n, double x);

// Checks the turning-point and sampling preconditions for mode n on the grid.
// safety factor 1.5 over the classical turning point sqrt(2n+1).
void require_grid_for_mode(int n, const GridSpec& grid);

// Normalized harmonic-oscillator eigenfunction phi_n sampled on the grid,
// synthesized by the normalized recurrence
//   phi_{k+1} = sqrt(2/(k+1)) x phi_k - sqrt(k/(k+1)) phi_{k-1},
// which stays bounded for arbitrary order (no factorials are ever formed).
// Throws GridTooSmall if the grid cannot hold or resolve the mode.
SampledField hg_mode(int n, const GridSpec& grid);

// All modes 0..n_max on one grid, plus projection/synthesis helpers.
// Rows are real; computed once, immutable afterwards.
class ModeBasis {
  public:
    ModeBasis(int n_max, const GridSpec& grid);

    int n_max() const { return n_max_; }
    const GridSpec& grid() const { return grid_; }
    std::span<const double> mode(int n) const;
    SampledField mode_field(int n) const;

    // coefficients a_n = <phi_n|f> for n = 0..n_max
    std::vector<cxd> project(const SampledField& f) const;
    SampledField synthesize(std::span<const cxd> coeffs) const;

    // L2 norm of the component of f orthogonal to the spanned basis
    double residual_norm(const SampledField& f, std::span<const cxd> coeffs) const;

  private:
    int n_max_;
    GridSpec grid_;
    std::vector<double> rows_; // (n_max+1) x n_points, row-major
};

} // namespace worklab

#endif

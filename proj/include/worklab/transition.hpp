#ifndef WORKLAB_TRANSITION_HPP
#define WORKLAB_TRANSITION_HPP

#include <iosfwd>
#include <vector>

#include "worklab/grid.hpp"

namespace worklab {

enum class Provenance { ClosedForm, Quadrature, GridProcess };

// Transition amplitudes c_{m,n} of a process, m = 0..m_max (rows), n = 0..n_max.
struct TransitionMatrix {
    double q0 = 0.0;
    int m_max = 0;
    int n_max = 0;
    std::vector<cxd> entries; // row-major (m_max+1) x (n_max+1)
    Provenance provenance = Provenance::ClosedForm;

    cxd operator()(int m, int n) const { return entries[static_cast<size_t>(m) * (n_max + 1) + n]; }
    cxd& at(int m, int n) { return entries[static_cast<size_t>(m) * (n_max + 1) + n]; }

    // 1 - sum_m |c_{m,n}|^2
    double column_deficit(int n) const;
};

// Momentum-kick amplitude c_{m,n} = <m| e^{-i q0 X} |n> by the closed-form sum
//   e^{-q0^2/4}/sqrt(2^{m+n} n! m!) sum_r r! 2^r C(m,r) C(n,r) (-i q0)^{m+n-2r},
// with all magnitudes in log space and the powers of (-i q0) combined before
// exponentiation (q0 = 0 returns delta_{m,n} exactly). Accurate for m, n up to
// a few tens; build_matrix uses a stable equivalent for large orders.
cxd coeff_closed(int m, int n, double q0);

// Independent oracle: midpoint-rule value of  int phi_m phi_n e^{-i q0 x} dx.
// Requires the grid to resolve both modes and the kick oscillation (dx |q0| < pi/4).
cxd coeff_quadrature(int m, int n, double q0, const GridSpec& grid);

// Full matrix for the displacement quench, evaluated by a normalized
// associated-Laguerre recurrence along diagonals m - n = const (stable to
// n of a few hundred, unlike the alternating closed-form sum). m_max is grown
// adaptively until every column deficit is below unitarity_tol.
// Throws TruncationFailure if the hard cap 4 n_max + 20 (1 + q0^2) is reached first.
TransitionMatrix build_matrix(double q0, int n_max, double unitarity_tol = 1e-10);

// Generic pure-phase-mask process: c_{m,n} = <phi_m| mask phi_n> on the grid.
// Throws NonUnitaryMask unless |mask_j| = 1 +- 1e-9 everywhere.
TransitionMatrix process_from_grid(const SampledField& mask, int n_max, const GridSpec& grid);

// CSV with header m,n,re,im
void write_csv(const TransitionMatrix& t, std::ostream& os);

} // namespace worklab

#endif

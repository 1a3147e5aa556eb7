#ifndef WORKLAB_WORKSTATS_HPP
#define WORKLAB_WORKSTATS_HPP

#include <iosfwd>
#include <vector>

#include "worklab/thermo.hpp"
#include "worklab/transition.hpp"

namespace worklab {

// Sampled characteristic function G(s) on s in [0, 2pi).
struct CharFnTrace {
    std::vector<double> s_samples;
    std::vector<cxd> values;

    // max_k |G(2pi - s_k) - conj(G(s_k))| on the periodic grid
    double hermitian_defect() const;
};

// Discrete work distribution on integer support zeta = m - n (units of hbar*omega).
struct WorkDist {
    int d_min = 0;
    std::vector<double> probs; // P(d_min), P(d_min+1), ...

    int d_max() const { return d_min + static_cast<int>(probs.size()) - 1; }
    double prob(int d) const;
    double total() const;
    double mean() const;
};

// G(s) = sum_n p_n sum_m |c_{m,n}|^2 e^{i s (m-n)}  (equal integer-gap spectra).
// Throws DimensionMismatch if the matrix does not cover the ensemble.
cxd charfn_direct(const ThermalEnsemble& ens, const TransitionMatrix& t, double s);

// Uniform trace over [0, 2pi). n_samples = 0 selects the alias-free default
// M = 2 (m_max + n_max) + 1.
CharFnTrace charfn_trace(const ThermalEnsemble& ens, const TransitionMatrix& t,
                         int n_samples = 0);

// P(d) = sum_{m-n=d} p_n |c_{m,n}|^2
WorkDist workdist_direct(const ThermalEnsemble& ens, const TransitionMatrix& t);

// Inverse DFT of the trace onto the declared support [d_min, d_max].
// Throws AliasingError if the trace is not a uniform [0, 2pi) grid or has too
// few samples for the support, NonRealDistribution if any imaginary residue
// exceeds 1e-9.
WorkDist workdist_from_trace(const CharFnTrace& trace, int d_min, int d_max);

// Convenience overload: symmetric support inferred from the sample count.
WorkDist workdist_from_trace(const CharFnTrace& trace);

// sum_d P(d) e^{-beta_hw d}; equals 1 for the displacement quench (Delta F = 0).
double jarzynski_lhs(const WorkDist& dist, double beta_hw);

void write_csv(const CharFnTrace& trace, std::ostream& os);   // s,re_G,im_G
void write_csv(const WorkDist& dist, std::ostream& os);       // zeta,prob

} // namespace worklab

#endif

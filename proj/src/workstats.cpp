#include "worklab/workstats.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "worklab/csv.hpp"

namespace worklab {

double CharFnTrace::hermitian_defect() const {
    const size_t m = s_samples.size();
    double worst = 0.0;
    for (size_t k = 1; k < m; ++k) {
        // s_{M-k} = 2pi - s_k on the uniform periodic grid
        worst = std::max(worst, std::abs(values[m - k] - std::conj(values[k])));
    }
    return worst;
}

double WorkDist::prob(int d) const {
    if (d < d_min || d > d_max()) return 0.0;
    return probs[d - d_min];
}

double WorkDist::total() const {
    double acc = 0.0;
    for (double p : probs) acc += p;
    return acc;
}

double WorkDist::mean() const {
    double acc = 0.0;
    for (size_t i = 0; i < probs.size(); ++i) acc += (d_min + static_cast<int>(i)) * probs[i];
    return acc;
}

namespace {

void check_coverage(const ThermalEnsemble& ens, const TransitionMatrix& t) {
    if (t.n_max < ens.n_cut)
        throw DimensionMismatch("transition matrix covers n <= " + std::to_string(t.n_max) +
                                " but ensemble needs n_cut = " + std::to_string(ens.n_cut));
}

} // namespace

cxd charfn_direct(const ThermalEnsemble& ens, const TransitionMatrix& t, double s) {
    check_coverage(ens, t);
    cxd acc{0.0, 0.0};
    for (int n = 0; n <= ens.n_cut; ++n) {
        const double pn = ens.weights[n];
        for (int m = 0; m <= t.m_max; ++m)
            acc += pn * std::norm(t(m, n)) * std::polar(1.0, s * (m - n));
    }
    return acc;
}

CharFnTrace charfn_trace(const ThermalEnsemble& ens, const TransitionMatrix& t, int n_samples) {
    check_coverage(ens, t);
    if (n_samples <= 0) n_samples = 2 * (t.m_max + ens.n_cut) + 1;
    CharFnTrace trace;
    trace.s_samples.resize(n_samples);
    trace.values.resize(n_samples);
    for (int k = 0; k < n_samples; ++k) {
        const double s = 2.0 * M_PI * k / n_samples;
        trace.s_samples[k] = s;
        trace.values[k] = charfn_direct(ens, t, s);
    }
    return trace;
}

WorkDist workdist_direct(const ThermalEnsemble& ens, const TransitionMatrix& t) {
    check_coverage(ens, t);
    WorkDist dist;
    dist.d_min = -ens.n_cut;
    dist.probs.assign(static_cast<size_t>(ens.n_cut + t.m_max + 1), 0.0);
    for (int n = 0; n <= ens.n_cut; ++n) {
        const double pn = ens.weights[n];
        for (int m = 0; m <= t.m_max; ++m) dist.probs[m - n + ens.n_cut] += pn * std::norm(t(m, n));
    }
    return dist;
}

WorkDist workdist_from_trace(const CharFnTrace& trace, int d_min, int d_max) {
    const int m = static_cast<int>(trace.s_samples.size());
    if (m < d_max - d_min + 1)
        throw AliasingError("trace has " + std::to_string(m) + " samples, support needs " +
                            std::to_string(d_max - d_min + 1));
    for (int k = 0; k < m; ++k)
        if (std::abs(trace.s_samples[k] - 2.0 * M_PI * k / m) > 1e-12)
            throw AliasingError("trace s grid is not uniform over [0, 2pi)");

    WorkDist dist;
    dist.d_min = d_min;
    dist.probs.resize(static_cast<size_t>(d_max - d_min + 1));
    for (int d = d_min; d <= d_max; ++d) {
        cxd acc{0.0, 0.0};
        for (int k = 0; k < m; ++k)
            acc += trace.values[k] * std::polar(1.0, -trace.s_samples[k] * d);
        acc /= static_cast<double>(m);
        if (std::abs(acc.imag()) > 1e-9)
            throw NonRealDistribution("P(" + std::to_string(d) + ") imaginary residue " +
                                      std::to_string(acc.imag()));
        double p = acc.real();
        if (p < 0.0 && p > -1e-12) p = 0.0; // numerical floor
        dist.probs[d - d_min] = p;
    }
    return dist;
}

WorkDist workdist_from_trace(const CharFnTrace& trace) {
    const int m = static_cast<int>(trace.s_samples.size());
    return workdist_from_trace(trace, -(m - 1) / 2, m / 2);
}

double jarzynski_lhs(const WorkDist& dist, double beta_hw) {
    double acc = 0.0;
    for (size_t i = 0; i < dist.probs.size(); ++i)
        acc += dist.probs[i] * std::exp(-beta_hw * (dist.d_min + static_cast<int>(i)));
    return acc;
}

void write_csv(const CharFnTrace& trace, std::ostream& os) {
    os << "s,re_G,im_G\n";
    for (size_t k = 0; k < trace.s_samples.size(); ++k)
        os << format_g17(trace.s_samples[k]) << ',' << format_g17(trace.values[k].real()) << ','
           << format_g17(trace.values[k].imag()) << '\n';
}

void write_csv(const WorkDist& dist, std::ostream& os) {
    os << "zeta,prob\n";
    for (size_t i = 0; i < dist.probs.size(); ++i)
        os << (dist.d_min + static_cast<int>(i)) << ',' << format_g17(dist.probs[i]) << '\n';
}

} // namespace worklab

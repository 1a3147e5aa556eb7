#ifndef WORKLAB_INTERFEROMETER_HPP
#define WORKLAB_INTERFEROMETER_HPP

#include <iosfwd>
#include <memory>
#include <optional>
#include <span>

#include "worklab/optics.hpp"
#include "worklab/workstats.hpp"

namespace worklab {

enum class FinalBasis { SameAsInitial, DisplacedBy };

// Two-path interferometer: 50:50 splitters, free evolution V(s) in one arm
// before the process and the final-basis free evolution V'(s) after it in the
// other, PZT phase theta between the arms, bulk detectors at both outputs.
struct InterferometerConfig {
    GridSpec grid;
    int n_basis = 0;                             // modes 0..n_basis kept
    std::optional<SampledField> process_mask;    // pure phase mask, or
    std::optional<TransitionMatrix> process_matrix; // amplitudes into the final basis
    FinalBasis final_basis = FinalBasis::SameAsInitial;
    double q0 = 0.0;                             // displacement of the final basis
};

struct IntensityTrace {
    std::vector<double> s_samples;
    std::vector<double> out0; // "+" superposition port (convention)
    std::vector<double> out1;
    double offset = 0.0;      // 2A: sum of both single-arm detected powers
    double theta = 0.0;
};

class TwoPathInterferometer {
  public:
    explicit TwoPathInterferometer(InterferometerConfig cfg);
    ~TwoPathInterferometer();

    // Detected powers at both ports for input mode n, FRFT order s, PZT phase theta.
    std::pair<double, double> run_mode(int n, double s, double theta) const;

    // Same pipeline carried out on the sampled field through the optics module
    // (projection route); used to cross-check the coefficient-space fast path.
    std::pair<double, double> run_mode_grid(int n, double s, double theta) const;

    // Boltzmann-weighted incoherent sum of per-mode runs. Mode runs are
    // independent; the weighted reduction uses a fixed ascending-n order.
    IntensityTrace thermal_trace(const ThermalEnsemble& ens,
                                 std::span<const double> s_grid, double theta) const;

    int n_basis() const;

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// Combines a theta = 0 and a theta = pi/2 trace into G(s): subtract the 2A
// offset from out0, divide by the interference normalization so that G(0) = 1.
// Throws GridMismatch if the traces disagree on s samples, NormalizationFailure
// if the self-calibrated G(0) deviates from 1 by more than 1e-6.
CharFnTrace reconstruct_charfn(const IntensityTrace& re_trace, const IntensityTrace& im_trace);

void write_csv(const IntensityTrace& trace, std::ostream& os); // s,out0,out1,offset

} // namespace worklab

#endif

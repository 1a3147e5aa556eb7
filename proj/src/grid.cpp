#include "worklab/grid.hpp"

#include <algorithm>
#include <cmath>

namespace worklab {

GridSpec GridSpec::make(int n_points, double half_width) {
    if (n_points < 64 || n_points % 2 != 0)
        throw GridTooSmall("n_points must be even and >= 64");
    if (!(half_width > 0.0))
        throw GridTooSmall("half_width must be positive");
    return GridSpec{n_points, half_width};
}

GridSpec GridSpec::for_modes(int n_max) {
    const double turning = std::sqrt(2.0 * n_max + 1.0);
    const double half_width = std::max(12.0, 1.5 * turning);
    const double dx_needed = M_PI / (2.0 * turning);
    int n_points = 2048;
    while (2.0 * half_width / n_points > dx_needed) n_points *= 2;
    return GridSpec{n_points, half_width};
}

double SampledField::power() const {
    double acc = 0.0;
    for (const cxd& v : values) acc += std::norm(v);
    return acc * grid.dx();
}

double SampledField::norm() const { return std::sqrt(power()); }

cxd overlap(const SampledField& f, const SampledField& g) {
    if (f.grid != g.grid || f.values.size() != g.values.size())
        throw GridMismatch("overlap: fields live on different grids");
    cxd acc{0.0, 0.0};
    for (size_t j = 0; j < f.values.size(); ++j) acc += std::conj(f.values[j]) * g.values[j];
    return acc * f.grid.dx();
}

} // namespace worklab

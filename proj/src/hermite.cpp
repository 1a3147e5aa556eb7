#include "worklab/hermite.hpp"

#include <cmath>
#include <string>

namespace worklab {

double hermite_eval(int n, double x) {
    if (n == 0) return 1.0;
    double prev = 1.0;
    double cur = 2.0 * x;
    for (int k = 1; k < n; ++k) {
        const double next = 2.0 * x * cur - 2.0 * k * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

void require_grid_for_mode(int n, const GridSpec& grid) {
    const double turning = std::sqrt(2.0 * n + 1.0);
    if (grid.half_width < 1.5 * turning)
        throw GridTooSmall("grid half_width " + std::to_string(grid.half_width) +
                           " below 1.5x turning point for mode " + std::to_string(n));
    if (grid.dx() > M_PI / (2.0 * turning))
        throw GridTooSmall("grid dx " + std::to_string(grid.dx()) +
                           " too coarse for mode " + std::to_string(n));
}

namespace {

// rows[k][j] = phi_k(x_j), normalized recurrence; bounded for any order
void fill_modes(int n_max, const GridSpec& grid, std::vector<double>& rows) {
    const int np = grid.n_points;
    rows.assign(static_cast<size_t>(n_max + 1) * np, 0.0);
    const double c0 = std::pow(M_PI, -0.25);
    for (int j = 0; j < np; ++j) {
        const double x = grid.x(j);
        rows[j] = c0 * std::exp(-0.5 * x * x);
    }
    if (n_max >= 1)
        for (int j = 0; j < np; ++j)
            rows[static_cast<size_t>(np) + j] = std::sqrt(2.0) * grid.x(j) * rows[j];
    for (int k = 1; k < n_max; ++k) {
        const double a = std::sqrt(2.0 / (k + 1.0));
        const double b = std::sqrt(k / (k + 1.0));
        const double* pk = &rows[static_cast<size_t>(k) * np];
        const double* pk1 = &rows[static_cast<size_t>(k - 1) * np];
        double* pn = &rows[static_cast<size_t>(k + 1) * np];
        for (int j = 0; j < np; ++j) pn[j] = a * grid.x(j) * pk[j] - b * pk1[j];
    }
}

} // namespace

SampledField hg_mode(int n, const GridSpec& grid) {
    require_grid_for_mode(n, grid);
    std::vector<double> rows;
    fill_modes(n, grid, rows);
    SampledField f{grid, std::vector<cxd>(grid.n_points)};
    const double* row = &rows[static_cast<size_t>(n) * grid.n_points];
    for (int j = 0; j < grid.n_points; ++j) f.values[j] = row[j];
    return f;
}

ModeBasis::ModeBasis(int n_max, const GridSpec& grid) : n_max_(n_max), grid_(grid) {
    require_grid_for_mode(n_max, grid);
    fill_modes(n_max, grid, rows_);
}

std::span<const double> ModeBasis::mode(int n) const {
    return {&rows_[static_cast<size_t>(n) * grid_.n_points],
            static_cast<size_t>(grid_.n_points)};
}

SampledField ModeBasis::mode_field(int n) const {
    SampledField f{grid_, std::vector<cxd>(grid_.n_points)};
    auto row = mode(n);
    for (int j = 0; j < grid_.n_points; ++j) f.values[j] = row[j];
    return f;
}

std::vector<cxd> ModeBasis::project(const SampledField& f) const {
    if (f.grid != grid_) throw GridMismatch("project: field grid differs from basis grid");
    std::vector<cxd> coeffs(n_max_ + 1);
    const double dx = grid_.dx();
    for (int n = 0; n <= n_max_; ++n) {
        auto row = mode(n);
        cxd acc{0.0, 0.0};
        for (int j = 0; j < grid_.n_points; ++j) acc += row[j] * f.values[j];
        coeffs[n] = acc * dx;
    }
    return coeffs;
}

SampledField ModeBasis::synthesize(std::span<const cxd> coeffs) const {
    SampledField f{grid_, std::vector<cxd>(grid_.n_points, cxd{0.0, 0.0})};
    for (int n = 0; n <= n_max_ && n < static_cast<int>(coeffs.size()); ++n) {
        auto row = mode(n);
        const cxd a = coeffs[n];
        for (int j = 0; j < grid_.n_points; ++j) f.values[j] += a * row[j];
    }
    return f;
}

double ModeBasis::residual_norm(const SampledField& f, std::span<const cxd> coeffs) const {
    double coeff_power = 0.0;
    for (const cxd& a : coeffs) coeff_power += std::norm(a);
    const double res2 = f.power() - coeff_power;
    return std::sqrt(std::max(res2, 0.0));
}

} // namespace worklab

#include "worklab/transition.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "worklab/csv.hpp"
#include "worklab/hermite.hpp"

namespace worklab {

double TransitionMatrix::column_deficit(int n) const {
    double sum = 0.0;
    for (int m = 0; m <= m_max; ++m) sum += std::norm((*this)(m, n));
    return 1.0 - sum;
}

namespace {

// i^k for k mod 4; (-i q0)^p = sign-handled power of i times |q0|^p
cxd unit_phase_pow(int p, double q0_sign) {
    // (-i sgn)^p
    int k = ((q0_sign < 0 ? 1 : 3) * p) % 4; // -i = i^3, +i = i^1
    static const cxd table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return table[k];
}

} // namespace

cxd coeff_closed(int m, int n, double q0) {
    if (q0 == 0.0) return (m == n) ? cxd{1.0, 0.0} : cxd{0.0, 0.0};
    const double log_q = std::log(std::abs(q0));
    const double log_pref =
        -0.25 * q0 * q0 - 0.5 * ((m + n) * std::log(2.0) + std::lgamma(n + 1.0) + std::lgamma(m + 1.0));
    cxd acc{0.0, 0.0};
    const int r_max = std::min(m, n);
    for (int r = 0; r <= r_max; ++r) {
        // log of r! 2^r C(m,r) C(n,r) |q0|^{m+n-2r}
        const double log_term = std::lgamma(r + 1.0) + r * std::log(2.0) +
                                std::lgamma(m + 1.0) - std::lgamma(r + 1.0) - std::lgamma(m - r + 1.0) +
                                std::lgamma(n + 1.0) - std::lgamma(r + 1.0) - std::lgamma(n - r + 1.0) +
                                (m + n - 2 * r) * log_q;
        acc += std::exp(log_pref + log_term) * unit_phase_pow(m + n - 2 * r, q0);
    }
    return acc;
}

cxd coeff_quadrature(int m, int n, double q0, const GridSpec& grid) {
    require_grid_for_mode(std::max(m, n), grid);
    if (grid.dx() * std::abs(q0) >= M_PI / 4.0)
        throw GridTooSmall("grid does not resolve the kick oscillation e^{-i q0 x}");
    ModeBasis basis(std::max(m, n), grid);
    auto pm = basis.mode(m);
    auto pn = basis.mode(n);
    cxd acc{0.0, 0.0};
    for (int j = 0; j < grid.n_points; ++j) {
        const double x = grid.x(j);
        acc += pm[j] * pn[j] * std::polar(1.0, -q0 * x);
    }
    return acc * grid.dx();
}

namespace {

// Fills rows 0..m_max of the displacement matrix along diagonals m = n + a using
// the normalized associated-Laguerre recurrence
//   c_{k+1} = [(2k+1+a-x) c_k - sqrt(k(k+a)) c_{k-1}] / sqrt((k+1)(k+1+a)),
// x = q0^2/2, seeded at c_{a,0} = e^{-x/2} (-i q0/sqrt(2))^a / sqrt(a!).
// Entries stay O(1), so no scaling is needed at any order. The lower triangle
// is mirrored (the closed-form integrand is symmetric in m, n).
void fill_displacement(TransitionMatrix& t) {
    const double q0 = t.q0;
    const double x = 0.5 * q0 * q0;
    const double log_a0 = std::log(std::abs(q0) / std::sqrt(2.0));
    for (int a = 0; a <= t.m_max; ++a) {
        const double mag = std::exp(-0.5 * x + a * log_a0 - 0.5 * std::lgamma(a + 1.0));
        cxd cur = mag * unit_phase_pow(a, q0);
        cxd prev{0.0, 0.0};
        if (a <= t.m_max) t.at(a, 0) = cur;
        for (int k = 0;; ++k) {
            const cxd next = ((2.0 * k + 1.0 + a - x) * cur - std::sqrt(double(k) * (k + a)) * prev) /
                             std::sqrt((k + 1.0) * (k + 1.0 + a));
            prev = cur;
            cur = next;
            const int n = k + 1;
            if (a + n > t.m_max || n > t.n_max) break;
            t.at(a + n, n) = cur;
        }
    }
    for (int m = 0; m <= std::min(t.m_max, t.n_max); ++m)
        for (int n = m + 1; n <= t.n_max; ++n)
            if (n <= t.m_max) t.at(m, n) = t(n, m);
}

} // namespace

TransitionMatrix build_matrix(double q0, int n_max, double unitarity_tol) {
    if (n_max < 0) throw DimensionMismatch("build_matrix: n_max must be >= 0");
    if (q0 == 0.0) {
        TransitionMatrix t{0.0, n_max, n_max,
                           std::vector<cxd>(static_cast<size_t>(n_max + 1) * (n_max + 1)),
                           Provenance::ClosedForm};
        for (int k = 0; k <= n_max; ++k) t.at(k, k) = cxd{1.0, 0.0};
        return t;
    }

    const int hard_cap = 4 * n_max + static_cast<int>(20.0 * (1.0 + q0 * q0));
    // initial guess: n_max plus a few Poisson/diffusion widths of the kick
    int m_max = n_max + 10 +
                static_cast<int>(std::ceil(6.0 * std::sqrt(0.5 * q0 * q0 * (2.0 * n_max + 1.0)) + q0 * q0));
    m_max = std::min(m_max, hard_cap);

    for (;;) {
        TransitionMatrix t{q0, m_max, n_max,
                           std::vector<cxd>(static_cast<size_t>(m_max + 1) * (n_max + 1)),
                           Provenance::ClosedForm};
        fill_displacement(t);
        double worst = 0.0;
        for (int n = 0; n <= n_max; ++n) worst = std::max(worst, std::abs(t.column_deficit(n)));
        if (worst < unitarity_tol) return t;
        if (m_max >= hard_cap)
            throw TruncationFailure("build_matrix: column deficit " + std::to_string(worst) +
                                    " above tolerance at hard cap m_max = " + std::to_string(hard_cap));
        m_max = std::min(hard_cap, m_max + std::max(16, m_max / 4));
    }
}

TransitionMatrix process_from_grid(const SampledField& mask, int n_max, const GridSpec& grid) {
    if (mask.grid != grid) throw GridMismatch("process_from_grid: mask grid differs");
    for (const cxd& v : mask.values)
        if (std::abs(std::abs(v) - 1.0) > 1e-9)
            throw NonUnitaryMask("process_from_grid: mask is not pure phase");

    ModeBasis basis(n_max, grid);
    TransitionMatrix t{0.0, n_max, n_max,
                       std::vector<cxd>(static_cast<size_t>(n_max + 1) * (n_max + 1)),
                       Provenance::GridProcess};
    const double dx = grid.dx();
    std::vector<cxd> masked(grid.n_points);
    for (int n = 0; n <= n_max; ++n) {
        auto pn = basis.mode(n);
        for (int j = 0; j < grid.n_points; ++j) masked[j] = mask.values[j] * pn[j];
        for (int m = 0; m <= n_max; ++m) {
            auto pm = basis.mode(m);
            cxd acc{0.0, 0.0};
            for (int j = 0; j < grid.n_points; ++j) acc += pm[j] * masked[j];
            t.at(m, n) = acc * dx;
        }
    }
    return t;
}

void write_csv(const TransitionMatrix& t, std::ostream& os) {
    os << "m,n,re,im\n";
    for (int m = 0; m <= t.m_max; ++m)
        for (int n = 0; n <= t.n_max; ++n) {
            const cxd c = t(m, n);
            os << m << ',' << n << ',' << format_g17(c.real()) << ',' << format_g17(c.imag())
               << '\n';
        }
}

} // namespace worklab

#include "simplex.hpp"

#include <cmath>
#include <cstddef>
#include <limits>

namespace divsmooth::detail {

double phase_one_infeasibility(std::vector<std::vector<double>> a, std::vector<double> b)
{
    constexpr double kPivotTol = 1e-12;
    const std::size_t m = a.size();
    if (m == 0) return 0.0;
    const std::size_t n = a[0].size();
    const std::size_t cols = n + m;

    std::vector<std::vector<double>> t(m, std::vector<double>(cols + 1, 0.0));
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double sign = b[i] < 0.0 ? -1.0 : 1.0;
        for (std::size_t j = 0; j < n; ++j) t[i][j] = sign * a[i][j];
        t[i][n + i] = 1.0;
        t[i][cols] = sign * b[i];
        basis[i] = n + i;
    }

    // Reduced-cost row of the phase-one objective (sum of artificials).
    std::vector<double> z(cols + 1, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j <= cols; ++j)
            if (j < n || j == cols) z[j] += t[i][j];

    for (std::size_t iter = 0; iter < 10000; ++iter) {
        std::size_t enter = cols;
        for (std::size_t j = 0; j < cols; ++j) {
            if (z[j] > 1e-11) {
                enter = j;
                break;
            }
        }
        if (enter == cols) break;

        std::size_t leave = m;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < m; ++i) {
            if (t[i][enter] > kPivotTol) {
                const double ratio = t[i][cols] / t[i][enter];
                if (ratio < best - 1e-15 || (std::abs(ratio - best) <= 1e-15 && leave < m && basis[i] < basis[leave])) {
                    best = ratio;
                    leave = i;
                }
            }
        }
        if (leave == m) break;  // unbounded direction; cannot occur for phase one

        const double piv = t[leave][enter];
        for (double& v : t[leave]) v /= piv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == leave) continue;
            const double f = t[i][enter];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j <= cols; ++j) t[i][j] -= f * t[leave][j];
        }
        const double f = z[enter];
        for (std::size_t j = 0; j <= cols; ++j) z[j] -= f * t[leave][j];
        basis[leave] = enter;
    }
    return z[cols];
}

}  // namespace divsmooth::detail

#pragma once

#include <vector>

namespace divsmooth::detail {

/// Phase-one simplex for {A x = b, x >= 0} with Bland's rule.
/// Returns the minimal total artificial mass; the system is feasible iff this is ~0.
double phase_one_infeasibility(std::vector<std::vector<double>> a, std::vector<double> b);

}  // namespace divsmooth::detail

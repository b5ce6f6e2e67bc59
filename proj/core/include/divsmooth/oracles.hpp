#pragma once

#include <cstddef>

#include "divsmooth/divergences.hpp"
#include "divsmooth/prob.hpp"
#include "divsmooth/random.hpp"

namespace divsmooth {

struct OracleOptions {
    std::size_t grid_resolution = 200;
    std::size_t iterations = 200;
    double initial_step = 1.0 / 50.0;
    std::size_t halve_every = 20;
};

struct OracleResult {
    double value;
    ProbVec argmin;
};

/// Brute-force minimum of div(., q) over the eps-ball around p: simplex grid
/// search followed by pairwise mass-transfer descent. Dimensions <= 4.
OracleResult smooth_oracle(const DivergenceFn& div, const ProbVec& p, const ProbVec& q, double eps,
                           const OracleOptions& opts = {});

/// Hypothesis-testing divergence by enumeration of all LP vertices. Dimensions <= 12.
double dh_oracle(const ProbVec& p, const ProbVec& q, double eps);

/// Random member of the eps-ball around center; about half the draws lie on the sphere.
ProbVec sample_tv_ball(const ProbVec& center, double eps, Rng& rng);

}  // namespace divsmooth

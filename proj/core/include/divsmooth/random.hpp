#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "divsmooth/prob.hpp"

namespace divsmooth {

/// Deterministic generator. All variates are derived from raw mt19937_64 output
/// so sequences do not depend on the standard library's distribution code.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    /// Independent stream for instance i of a run seeded with seed.
    static Rng for_instance(std::uint64_t seed, std::uint64_t i);

    std::uint64_t next_u64() { return eng_(); }
    double uniform();                       // [0, 1)
    double uniform(double lo, double hi);   // [lo, hi)
    double uniform_open();                  // (0, 1)
    std::size_t index(std::size_t n);       // [0, n)
    double normal();
    double gamma(double shape);

    std::vector<double> dirichlet(std::size_t d, double concentration);
    ProbVec dirichlet_vec(std::size_t d, double concentration);

private:
    std::mt19937_64 eng_;
};

/// Concentrations cycled through by random instance generators.
inline constexpr double kDirichletCycle[3] = {0.3, 1.0, 3.0};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace divsmooth

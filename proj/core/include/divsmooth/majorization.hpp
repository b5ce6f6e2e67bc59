#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "divsmooth/prob.hpp"

namespace divsmooth {

class Rng;

/// Column-stochastic rows x cols matrix, stored row-major.
class StochasticMatrix {
public:
    /// Validates entries in [0,1] and unit column sums within 1e-9.
    StochasticMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries);

    /// Columns drawn from a symmetric Dirichlet.
    static StochasticMatrix random(std::size_t rows, std::size_t cols, Rng& rng, double concentration = 1.0);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    double operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

    ProbVec apply(const ProbVec& p) const;

private:
    std::size_t rows_, cols_;
    std::vector<double> e_;
};

/// q = (k_1/k, ..., k_d/k) with positive integer numerators summing to k.
struct RationalRef {
    std::vector<std::uint64_t> num;
    std::uint64_t den = 0;

    void check() const;
    ProbVec to_prob() const;
};

/// True iff ky_fan(p, k) >= ky_fan(q, k) - 1e-12 for every k; shorter vector is zero-padded.
bool majorizes(const ProbVec& p, const ProbVec& q);
bool majorizes(std::span<const double> p, std::span<const double> q, double slack = kOrderSlack);

/// Sum of max(p_x - t q_x, 0).
double hinge(std::span<const double> p, std::span<const double> q, double t);
double hinge(const ProbVec& p, const ProbVec& q, double t);

inline constexpr double kRelmajSlack = 1e-10;

/// (p1,q1) relatively majorizes (p2,q2), decided by hinge-curve dominance at all breakpoints.
bool relatively_majorizes(const ProbVec& p1, const ProbVec& q1, const ProbVec& p2, const ProbVec& q2,
                          double slack = kRelmajSlack);

/// Feasibility of E p1 = p2, E q1 = q2 over column-stochastic E, solved by phase-one simplex.
/// Limited to dimensions <= 8.
bool relmaj_lp_oracle(const ProbVec& p1, const ProbVec& q1, const ProbVec& p2, const ProbVec& q2,
                      double tol = 1e-8);

/// Block expansion: k_x copies of p_x / k_x, so (p, q) and (t, u_k) are equivalent.
ProbVec rational_reduce(const ProbVec& p, const RationalRef& qref);

/// Rational approximation with denominator <= max_den from per-coordinate continued fractions,
/// numerators then adjusted to sum to the common denominator. Requires full support.
RationalRef rational_approx(const ProbVec& q, std::uint64_t max_den = 1000000);

}  // namespace divsmooth

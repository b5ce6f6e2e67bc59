#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "divsmooth/ext_real.hpp"

namespace divsmooth {

inline constexpr double kTolNorm = 1e-9;
inline constexpr double kOrderSlack = 1e-12;

/// Validated probability vector: entries >= 0, summing to 1.
class ProbVec {
public:
    /// Clamps entries in [-tol, 0) to zero and rescales to unit sum.
    static ProbVec validate(std::span<const double> raw, double tol = kTolNorm);
    static ProbVec uniform(std::size_t d);
    static ProbVec e1(std::size_t d);

    std::size_t dim() const noexcept { return x_.size(); }
    double operator[](std::size_t i) const { return x_[i]; }
    const std::vector<double>& entries() const noexcept { return x_; }
    std::span<const double> span() const noexcept { return x_; }

    friend bool operator==(const ProbVec&, const ProbVec&) = default;

private:
    explicit ProbVec(std::vector<double> x) : x_(std::move(x)) {}
    std::vector<double> x_;
};

/// Non-negative vector with total mass at most 1.
class SubProbVec {
public:
    static SubProbVec validate(std::span<const double> raw, double tol = kTolNorm);

    std::size_t dim() const noexcept { return x_.size(); }
    double operator[](std::size_t i) const { return x_[i]; }
    const std::vector<double>& entries() const noexcept { return x_; }
    std::span<const double> span() const noexcept { return x_; }
    double mass() const noexcept;

private:
    explicit SubProbVec(std::vector<double> x) : x_(std::move(x)) {}
    std::vector<double> x_;
};

/// Pair (p, q) with indices sorted by likelihood ratio p_x / q_x.
struct PairOrdering {
    ProbVec p;
    ProbVec q;
    std::vector<std::size_t> perm;  // perm[i] = original index at rank i
    std::vector<double> ratios;     // ratios[x] for original index x, may be +inf
};

/// Sorted copy and the permutation mapping sorted positions to original indices.
std::pair<ProbVec, std::vector<std::size_t>> sort_desc(const ProbVec& p);

bool is_sorted_desc(std::span<const double> x);

/// Sum of the k largest entries, 1 <= k <= dim.
double ky_fan(const ProbVec& p, std::size_t k);

/// Prefix sums of the sorted entries; element k-1 is the Ky-Fan norm of order k.
std::vector<double> ky_fan_all(std::span<const double> x);

double tv_distance(const ProbVec& p, const ProbVec& q);
double tv_distance(std::span<const double> p, std::span<const double> q);

/// (sum of positive parts, sum of negative parts).
std::pair<double, double> plus_minus_mass(std::span<const double> x);

/// Elementwise difference a - b.
std::vector<double> difference(std::span<const double> a, std::span<const double> b);

PairOrdering ratio_order(const ProbVec& p, const ProbVec& q);

}  // namespace divsmooth

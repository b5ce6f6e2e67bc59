#pragma once

// Test-side reference implementations. They are written directly from the
// textbook definitions and share no code with the library.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <vector>

#include "divsmooth/divsmooth.hpp"

namespace testing_ref {

using divsmooth::ProbVec;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline ProbVec pv(std::vector<double> x) { return ProbVec::validate(x); }

template <class Fn>
bool throws_code(Fn&& fn, divsmooth::Errc code)
{
    try {
        fn();
    } catch (const divsmooth::Error& e) {
        return e.code() == code;
    }
    return false;
}

/// Sorted-descending copy.
inline std::vector<double> sorted_desc(std::vector<double> x)
{
    std::sort(x.begin(), x.end(), std::greater<>());
    return x;
}

/// Sum of the k largest entries by explicit sorting.
inline double naive_ky_fan(const std::vector<double>& x, std::size_t k)
{
    const auto s = sorted_desc(x);
    long double acc = 0.0L;
    for (std::size_t i = 0; i < k && i < s.size(); ++i) acc += s[i];
    return static_cast<double>(acc);
}

inline bool naive_majorizes(const std::vector<double>& p, const std::vector<double>& q, double slack = 1e-12)
{
    const std::size_t n = std::max(p.size(), q.size());
    for (std::size_t k = 1; k <= n; ++k)
        if (naive_ky_fan(p, k) < naive_ky_fan(q, k) - slack) return false;
    return true;
}

inline double naive_tv(const std::vector<double>& p, const std::vector<double>& q)
{
    long double s = 0.0L;
    for (std::size_t i = 0; i < p.size(); ++i) s += std::fabs(static_cast<long double>(p[i]) - q[i]);
    return static_cast<double>(s / 2.0L);
}

/// Renyi divergence in bits straight from the definition, in long double.
inline double naive_renyi(const std::vector<double>& p, const std::vector<double>& q, double a)
{
    const std::size_t d = p.size();
    bool outside = false;
    for (std::size_t i = 0; i < d; ++i) outside = outside || (p[i] > 0 && q[i] == 0);
    if (a == kInf) {
        if (outside) return kInf;
        long double best = 0.0L;
        for (std::size_t i = 0; i < d; ++i)
            if (p[i] > 0) best = std::max(best, static_cast<long double>(p[i]) / q[i]);
        return static_cast<double>(std::log2(best));
    }
    if (a == 0.0) {
        long double s = 0.0L;
        for (std::size_t i = 0; i < d; ++i)
            if (p[i] > 0) s += q[i];
        return s > 0 ? static_cast<double>(-std::log2(s)) : kInf;
    }
    if (a == 1.0) {
        if (outside) return kInf;
        long double s = 0.0L;
        for (std::size_t i = 0; i < d; ++i)
            if (p[i] > 0) s += p[i] * std::log2(static_cast<long double>(p[i]) / q[i]);
        return static_cast<double>(s);
    }
    if (a > 1.0 && outside) return kInf;
    long double s = 0.0L;
    for (std::size_t i = 0; i < d; ++i)
        if (p[i] > 0 && q[i] > 0) s += std::pow(static_cast<long double>(p[i]), a) * std::pow(static_cast<long double>(q[i]), 1.0L - a);
    if (s <= 0) return kInf;
    return static_cast<double>(std::log2(s) / (a - 1.0L));
}

inline double naive_entropy(const std::vector<double>& p, double a)
{
    return std::log2(static_cast<double>(p.size())) -
           naive_renyi(p, std::vector<double>(p.size(), 1.0 / static_cast<double>(p.size())), a);
}

/// max_m (P_m - eps) / Q_m and min_l (tail P + eps) / tail Q over the ratio order,
/// q assumed to have full support.
inline std::pair<double, double> naive_dmax(const std::vector<double>& p, const std::vector<double>& q, double eps)
{
    std::vector<std::size_t> idx(p.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) { return p[i] / q[i] > p[j] / q[j]; });
    double a = -kInf, b = kInf, P = 0, Q = 0;
    for (std::size_t i : idx) {
        P += p[i];
        Q += q[i];
        a = std::max(a, (P - eps) / Q);
    }
    P = Q = 0;
    for (auto it = idx.rbegin(); it != idx.rend(); ++it) {
        P += p[*it];
        Q += q[*it];
        b = std::min(b, (P + eps) / Q);
    }
    return {a, b};
}

inline ProbVec apply_matrix(const divsmooth::StochasticMatrix& E, const ProbVec& p)
{
    std::vector<double> out(E.rows(), 0.0);
    for (std::size_t i = 0; i < E.rows(); ++i)
        for (std::size_t j = 0; j < E.cols(); ++j) out[i] += E(i, j) * p[j];
    return ProbVec::validate(out, 1e-9);
}

}  // namespace testing_ref

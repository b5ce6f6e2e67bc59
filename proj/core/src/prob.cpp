#include "divsmooth/prob.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "divsmooth/error.hpp"

namespace divsmooth {

namespace {

void check_finite(std::span<const double> raw)
{
    for (double v : raw)
        if (!std::isfinite(v)) throw Error(Errc::NonFinite, "vector entry is not finite");
}

std::vector<double> clamp_negatives(std::span<const double> raw, double tol)
{
    std::vector<double> x(raw.begin(), raw.end());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] < -tol)
            throw Error(Errc::NegativeEntry, "entry " + std::to_string(i) + " is negative: " + std::to_string(x[i]));
        if (x[i] < 0.0) x[i] = 0.0;
    }
    return x;
}

void check_same_dim(std::size_t a, std::size_t b)
{
    if (a != b)
        throw Error(Errc::DimensionMismatch, "dimension mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
}

}  // namespace

ProbVec ProbVec::validate(std::span<const double> raw, double tol)
{
    if (raw.empty()) throw Error(Errc::EmptyVector, "probability vector is empty");
    check_finite(raw);
    std::vector<double> x = clamp_negatives(raw, tol);
    const double s = std::accumulate(x.begin(), x.end(), 0.0);
    if (std::abs(s - 1.0) > tol)
        throw Error(Errc::NotNormalized, "entries sum to " + std::to_string(s) + ", not 1");
    if (s != 1.0)
        for (double& v : x) v /= s;
    return ProbVec(std::move(x));
}

ProbVec ProbVec::uniform(std::size_t d)
{
    if (d == 0) throw Error(Errc::EmptyVector, "dimension must be positive");
    return ProbVec(std::vector<double>(d, 1.0 / static_cast<double>(d)));
}

ProbVec ProbVec::e1(std::size_t d)
{
    if (d == 0) throw Error(Errc::EmptyVector, "dimension must be positive");
    std::vector<double> x(d, 0.0);
    x[0] = 1.0;
    return ProbVec(std::move(x));
}

SubProbVec SubProbVec::validate(std::span<const double> raw, double tol)
{
    if (raw.empty()) throw Error(Errc::EmptyVector, "vector is empty");
    check_finite(raw);
    std::vector<double> x = clamp_negatives(raw, tol);
    const double s = std::accumulate(x.begin(), x.end(), 0.0);
    if (s > 1.0 + tol) throw Error(Errc::NotNormalized, "mass " + std::to_string(s) + " exceeds 1");
    return SubProbVec(std::move(x));
}

double SubProbVec::mass() const noexcept { return std::accumulate(x_.begin(), x_.end(), 0.0); }

std::pair<ProbVec, std::vector<std::size_t>> sort_desc(const ProbVec& p)
{
    std::vector<std::size_t> perm(p.dim());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::stable_sort(perm.begin(), perm.end(), [&](std::size_t i, std::size_t j) { return p[i] > p[j]; });
    std::vector<double> sorted(p.dim());
    for (std::size_t i = 0; i < perm.size(); ++i) sorted[i] = p[perm[i]];
    return {ProbVec::validate(sorted), std::move(perm)};
}

bool is_sorted_desc(std::span<const double> x)
{
    for (std::size_t i = 1; i < x.size(); ++i)
        if (x[i] > x[i - 1]) return false;
    return true;
}

std::vector<double> ky_fan_all(std::span<const double> x)
{
    std::vector<double> s(x.begin(), x.end());
    std::sort(s.begin(), s.end(), std::greater<>());
    double acc = 0.0;
    for (double& v : s) {
        acc += v;
        v = acc;
    }
    return s;
}

double ky_fan(const ProbVec& p, std::size_t k)
{
    if (k < 1 || k > p.dim())
        throw Error(Errc::IndexOutOfRange, "Ky-Fan order " + std::to_string(k) + " outside [1, " + std::to_string(p.dim()) + "]");
    std::vector<double> s = p.entries();
    std::partial_sort(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(k), s.end(), std::greater<>());
    return std::accumulate(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(k), 0.0);
}

double tv_distance(std::span<const double> p, std::span<const double> q)
{
    check_same_dim(p.size(), q.size());
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
    return 0.5 * s;
}

double tv_distance(const ProbVec& p, const ProbVec& q) { return tv_distance(p.span(), q.span()); }

std::pair<double, double> plus_minus_mass(std::span<const double> x)
{
    double pos = 0.0, neg = 0.0;
    for (double v : x) {
        if (v > 0.0) pos += v;
        else neg -= v;
    }
    return {pos, neg};
}

std::vector<double> difference(std::span<const double> a, std::span<const double> b)
{
    check_same_dim(a.size(), b.size());
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

PairOrdering ratio_order(const ProbVec& p, const ProbVec& q)
{
    check_same_dim(p.dim(), q.dim());
    const std::size_t d = p.dim();
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> r(d);
    // 0 = infinite ratio, 1 = finite with q > 0, 2 = inert (p = q = 0).
    std::vector<int> cls(d);
    for (std::size_t x = 0; x < d; ++x) {
        if (q[x] > 0.0) {
            r[x] = p[x] / q[x];
            cls[x] = 1;
        } else if (p[x] > 0.0) {
            r[x] = inf;
            cls[x] = 0;
        } else {
            r[x] = 0.0;
            cls[x] = 2;
        }
    }
    std::vector<std::size_t> perm(d);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::stable_sort(perm.begin(), perm.end(), [&](std::size_t i, std::size_t j) {
        if (cls[i] != cls[j]) return cls[i] < cls[j];
        return cls[i] == 1 && r[i] > r[j];
    });
    return PairOrdering{p, q, std::move(perm), std::move(r)};
}

}  // namespace divsmooth

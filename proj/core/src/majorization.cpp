#include "divsmooth/majorization.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "divsmooth/error.hpp"
#include "divsmooth/random.hpp"
#include "simplex.hpp"

namespace divsmooth {

StochasticMatrix::StochasticMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), e_(std::move(entries))
{
    if (rows == 0 || cols == 0 || e_.size() != rows * cols)
        throw Error(Errc::DimensionMismatch, "stochastic matrix: entry count does not match dimensions");
    for (double v : e_)
        if (!(v >= 0.0 && v <= 1.0)) throw Error(Errc::InvalidArgument, "stochastic matrix: entry outside [0,1]");
    for (std::size_t j = 0; j < cols; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < rows; ++i) s += e_[i * cols + j];
        if (std::abs(s - 1.0) > 1e-9)
            throw Error(Errc::NotNormalized, "stochastic matrix: column " + std::to_string(j) + " does not sum to 1");
    }
}

StochasticMatrix StochasticMatrix::random(std::size_t rows, std::size_t cols, Rng& rng, double concentration)
{
    std::vector<double> e(rows * cols);
    for (std::size_t j = 0; j < cols; ++j) {
        const std::vector<double> col = rng.dirichlet(rows, concentration);
        for (std::size_t i = 0; i < rows; ++i) e[i * cols + j] = col[i];
    }
    return StochasticMatrix(rows, cols, std::move(e));
}

ProbVec StochasticMatrix::apply(const ProbVec& p) const
{
    if (p.dim() != cols_) throw Error(Errc::DimensionMismatch, "stochastic matrix: input dimension mismatch");
    std::vector<double> out(rows_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out[i] += e_[i * cols_ + j] * p[j];
    return ProbVec::validate(out);
}

void RationalRef::check() const
{
    if (num.empty()) throw Error(Errc::EmptyVector, "rational reference has no numerators");
    std::uint64_t s = 0;
    for (auto k : num) {
        if (k == 0) throw Error(Errc::InvalidArgument, "rational reference numerators must be positive");
        s += k;
    }
    if (s != den) throw Error(Errc::NotNormalized, "rational reference numerators do not sum to the denominator");
}

ProbVec RationalRef::to_prob() const
{
    check();
    std::vector<double> x(num.size());
    for (std::size_t i = 0; i < num.size(); ++i) x[i] = static_cast<double>(num[i]) / static_cast<double>(den);
    return ProbVec::validate(x);
}

bool majorizes(std::span<const double> p, std::span<const double> q, double slack)
{
    std::vector<double> kp = ky_fan_all(p);
    std::vector<double> kq = ky_fan_all(q);
    const std::size_t d = std::max(kp.size(), kq.size());
    kp.resize(d, kp.empty() ? 0.0 : kp.back());
    kq.resize(d, kq.empty() ? 0.0 : kq.back());
    for (std::size_t k = 0; k < d; ++k)
        if (kp[k] < kq[k] - slack) return false;
    return true;
}

bool majorizes(const ProbVec& p, const ProbVec& q) { return majorizes(p.span(), q.span()); }

double hinge(std::span<const double> p, std::span<const double> q, double t)
{
    if (p.size() != q.size()) throw Error(Errc::DimensionMismatch, "hinge: dimension mismatch");
    double s = 0.0;
    for (std::size_t x = 0; x < p.size(); ++x) s += std::max(p[x] - t * q[x], 0.0);
    return s;
}

double hinge(const ProbVec& p, const ProbVec& q, double t) { return hinge(p.span(), q.span(), t); }

namespace {

double infinite_ratio_mass(const ProbVec& p, const ProbVec& q)
{
    double s = 0.0;
    for (std::size_t x = 0; x < p.dim(); ++x)
        if (q[x] == 0.0) s += p[x];
    return s;
}

void append_finite_ratios(const ProbVec& p, const ProbVec& q, std::vector<double>& out)
{
    for (std::size_t x = 0; x < p.dim(); ++x)
        if (q[x] > 0.0) out.push_back(p[x] / q[x]);
}

}  // namespace

bool relatively_majorizes(const ProbVec& p1, const ProbVec& q1, const ProbVec& p2, const ProbVec& q2, double slack)
{
    if (p1.dim() != q1.dim() || p2.dim() != q2.dim())
        throw Error(Errc::DimensionMismatch, "relatively_majorizes: dimension mismatch within a pair");
    if (infinite_ratio_mass(p1, q1) < infinite_ratio_mass(p2, q2) - slack) return false;
    std::vector<double> ts{0.0};
    append_finite_ratios(p1, q1, ts);
    append_finite_ratios(p2, q2, ts);
    for (double t : ts)
        if (hinge(p1, q1, t) < hinge(p2, q2, t) - slack) return false;
    return true;
}

bool relmaj_lp_oracle(const ProbVec& p1, const ProbVec& q1, const ProbVec& p2, const ProbVec& q2, double tol)
{
    if (p1.dim() != q1.dim() || p2.dim() != q2.dim())
        throw Error(Errc::DimensionMismatch, "relmaj_lp_oracle: dimension mismatch within a pair");
    const std::size_t d = p1.dim(), dp = p2.dim();
    if (d > 8 || dp > 8) throw Error(Errc::OracleScaleExceeded, "relmaj_lp_oracle: dimensions must be <= 8");

    // Variable E(i,j) at column i*d + j.
    const std::size_t n = dp * d;
    std::vector<std::vector<double>> a;
    std::vector<double> b;
    for (std::size_t j = 0; j < d; ++j) {
        std::vector<double> row(n, 0.0);
        for (std::size_t i = 0; i < dp; ++i) row[i * d + j] = 1.0;
        a.push_back(std::move(row));
        b.push_back(1.0);
    }
    for (std::size_t i = 0; i < dp; ++i) {
        std::vector<double> rp(n, 0.0), rq(n, 0.0);
        for (std::size_t j = 0; j < d; ++j) {
            rp[i * d + j] = p1[j];
            rq[i * d + j] = q1[j];
        }
        a.push_back(std::move(rp));
        b.push_back(p2[i]);
        a.push_back(std::move(rq));
        b.push_back(q2[i]);
    }
    return detail::phase_one_infeasibility(std::move(a), std::move(b)) <= tol;
}

ProbVec rational_reduce(const ProbVec& p, const RationalRef& qref)
{
    qref.check();
    if (qref.num.size() != p.dim()) throw Error(Errc::DimensionMismatch, "rational_reduce: numerator count mismatch");
    std::vector<double> t;
    t.reserve(qref.den);
    for (std::size_t x = 0; x < p.dim(); ++x) {
        const double v = p[x] / static_cast<double>(qref.num[x]);
        t.insert(t.end(), qref.num[x], v);
    }
    return ProbVec::validate(t);
}

namespace {

/// Best continued-fraction convergent of v in [0,1] with denominator <= max_den.
std::pair<std::uint64_t, std::uint64_t> convergent(double v, std::uint64_t max_den)
{
    std::uint64_t h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    double x = v;
    for (int it = 0; it < 64; ++it) {
        const double fl = std::floor(x);
        const auto an = static_cast<std::uint64_t>(fl);
        const std::uint64_t k2 = an * k1 + k0;
        if (k2 > max_den) break;
        const std::uint64_t h2 = an * h1 + h0;
        h0 = h1; h1 = h2; k0 = k1; k1 = k2;
        const double frac = x - fl;
        if (frac < 1e-15) break;
        x = 1.0 / frac;
    }
    if (k1 == 0) return {0, 1};
    return {h1, k1};
}

}  // namespace

RationalRef rational_approx(const ProbVec& q, std::uint64_t max_den)
{
    const std::size_t d = q.dim();
    if (max_den < d) throw Error(Errc::InvalidArgument, "rational_approx: max denominator smaller than dimension");
    for (std::size_t x = 0; x < d; ++x)
        if (q[x] <= 0.0) throw Error(Errc::InvalidArgument, "rational_approx: reference must have full support");

    std::uint64_t k = 1;
    for (std::size_t x = 0; x < d; ++x) {
        const std::uint64_t den = convergent(q[x], max_den).second;
        const std::uint64_t l = std::lcm(k, den);
        if (l > max_den) {
            k = max_den;
            break;
        }
        k = l;
    }
    if (k < d) k = d;

    // Largest-remainder rounding of q * k with every numerator at least 1.
    std::vector<std::uint64_t> num(d);
    std::vector<double> rem(d);
    std::uint64_t total = 0;
    for (std::size_t x = 0; x < d; ++x) {
        const double target = q[x] * static_cast<double>(k);
        num[x] = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::floor(target)));
        rem[x] = target - static_cast<double>(num[x]);
        total += num[x];
    }
    std::vector<std::size_t> order(d);
    std::iota(order.begin(), order.end(), std::size_t{0});
    while (total != k) {
        if (total < k) {
            std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return rem[i] > rem[j]; });
            const std::size_t x = order.front();
            ++num[x];
            rem[x] -= 1.0;
            ++total;
        } else {
            std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return rem[i] < rem[j]; });
            std::size_t pick = d;
            for (std::size_t x : order)
                if (num[x] > 1) {
                    pick = x;
                    break;
                }
            if (pick == d) throw Error(Errc::Infeasible, "rational_approx: cannot balance numerators");
            --num[pick];
            rem[pick] += 1.0;
            --total;
        }
    }
    return RationalRef{std::move(num), k};
}

}  // namespace divsmooth

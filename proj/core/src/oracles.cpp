#include "divsmooth/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "divsmooth/error.hpp"
#include "divsmooth/smoothing.hpp"

namespace divsmooth {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kBallSlack = 1e-12;

struct Candidate {
    double value = kInf;
    double tie = kInf;  // strictly convex tie-breaker that flattens ratios toward q
    std::vector<double> x;
};

double tie_break(const std::vector<double>& x, const ProbVec& q)
{
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += q[i] > 0.0 ? x[i] * x[i] / q[i] : 1e6 * x[i];
    return s;
}

bool better(double v, double t, const Candidate& c)
{
    if (v < c.value) return true;
    return v == c.value && t < c.tie;
}

class Evaluator {
public:
    Evaluator(const DivergenceFn& div, const ProbVec& q) : div_(div), q_(q) {}

    double operator()(const std::vector<double>& x) const
    {
        return div_(ProbVec::validate(x, 1e-9), q_).value();
    }

private:
    const DivergenceFn& div_;
    const ProbVec& q_;
};

/// Largest delta in [0, cap] keeping |A - delta| + |B + delta| <= R, given the value at 0 satisfies it.
double feasible_transfer(double A, double B, double R, double cap)
{
    constexpr double kTol = 1e-14;
    auto g = [&](double t) { return std::abs(A - t) + std::abs(B + t); };
    if (g(cap) <= R + kTol) return cap;
    std::vector<double> pts{0.0, cap};
    if (A > 0.0 && A < cap) pts.push_back(A);
    if (-B > 0.0 && -B < cap) pts.push_back(-B);
    std::sort(pts.begin(), pts.end());
    double reach = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double s = pts[i], e = pts[i + 1];
        const double gs = g(s), ge = g(e);
        if (gs > R + kTol) break;
        if (ge <= R + kTol) {
            reach = e;
            continue;
        }
        reach = s + std::max(0.0, R - gs) / (ge - gs) * (e - s);
        break;
    }
    return reach;
}

void enumerate_grid(std::size_t d, std::size_t n, std::vector<std::size_t>& c, std::size_t pos, std::size_t left,
                    const std::function<void(const std::vector<std::size_t>&)>& visit)
{
    if (pos + 1 == d) {
        c[pos] = left;
        visit(c);
        return;
    }
    for (std::size_t v = 0; v <= left; ++v) {
        c[pos] = v;
        enumerate_grid(d, n, c, pos + 1, left - v, visit);
    }
}

}  // namespace

OracleResult smooth_oracle(const DivergenceFn& div, const ProbVec& p, const ProbVec& q, double eps,
                           const OracleOptions& opts)
{
    const std::size_t d = p.dim();
    if (q.dim() != d) throw Error(Errc::DimensionMismatch, "smooth_oracle: dimension mismatch");
    if (d > 4) throw Error(Errc::OracleScaleExceeded, "smooth_oracle: grid phase limited to dimension 4");
    require_eps(eps, "smooth_oracle");

    const Evaluator f(div, q);
    const double limit = eps + kBallSlack;
    Candidate best;
    auto offer = [&](const std::vector<double>& x) {
        if (tv_distance(x, p.span()) > limit) return;
        const double v = f(x);
        const double t = tie_break(x, q);
        if (better(v, t, best)) best = Candidate{v, t, x};
    };

    offer(p.entries());
    offer(q.entries());
    const std::size_t n = opts.grid_resolution;
    std::vector<std::size_t> c(d);
    std::vector<double> x(d);
    enumerate_grid(d, n, c, 0, n, [&](const std::vector<std::size_t>& cc) {
        double tv = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            x[i] = static_cast<double>(cc[i]) / static_cast<double>(n);
            tv += std::abs(x[i] - p[i]);
        }
        if (0.5 * tv <= limit) offer(x);
    });

    std::vector<double> cur = best.x;
    for (std::size_t it = 0; it < opts.iterations; ++it) {
        const double step = opts.initial_step * std::ldexp(1.0, -static_cast<int>(it / opts.halve_every));
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                if (i == j) continue;
                const double cap = std::min(step, cur[i]);
                if (cap <= 0.0) continue;
                const double tv2 = 2.0 * tv_distance(cur, p.span());
                const double A = cur[i] - p[i], B = cur[j] - p[j];
                const double R = 2.0 * eps - (tv2 - std::abs(A) - std::abs(B));
                const double dmax = feasible_transfer(A, B, R, cap);
                if (dmax <= 0.0) continue;
                double amounts[2] = {dmax, -1.0};
                if (q[i] + q[j] > 0.0) {
                    const double even = (cur[i] * q[j] - cur[j] * q[i]) / (q[i] + q[j]);
                    if (even > 0.0 && even < dmax) amounts[1] = even;
                }
                for (double delta : amounts) {
                    if (delta <= 0.0) continue;
                    std::vector<double> y = cur;
                    y[i] -= delta;
                    y[j] += delta;
                    if (y[i] < 0.0) y[i] = 0.0;
                    offer(y);
                }
                cur = best.x;
            }
        }
    }
    return OracleResult{best.value, ProbVec::validate(best.x, 1e-9)};
}

double dh_oracle(const ProbVec& p, const ProbVec& q, double eps)
{
    const std::size_t d = p.dim();
    if (q.dim() != d) throw Error(Errc::DimensionMismatch, "dh_oracle: dimension mismatch");
    if (d > 12) throw Error(Errc::OracleScaleExceeded, "dh_oracle: dimension must be <= 12");
    if (!(eps >= 0.0 && eps < 1.0)) throw Error(Errc::InvalidArgument, "dh_oracle: eps must lie in [0,1)");
    const double target = 1.0 - eps;
    const std::size_t subsets = std::size_t{1} << d;
    std::vector<double> ps(subsets, 0.0), qs(subsets, 0.0);
    for (std::size_t s = 1; s < subsets; ++s) {
        const std::size_t low = static_cast<std::size_t>(__builtin_ctzll(s));
        ps[s] = ps[s & (s - 1)] + p[low];
        qs[s] = qs[s & (s - 1)] + q[low];
    }
    double best = kInf;
    for (std::size_t s = 0; s < subsets; ++s) {
        if (ps[s] >= target) best = std::min(best, qs[s]);  // integral vertex
        for (std::size_t j = 0; j < d; ++j) {
            if ((s >> j) & 1U || p[j] <= 0.0) continue;
            const double t = (target - ps[s]) / p[j];
            if (t >= 0.0 && t <= 1.0) best = std::min(best, qs[s] + t * q[j]);
        }
    }
    return best > 0.0 ? -std::log2(best) : kInf;
}

ProbVec sample_tv_ball(const ProbVec& center, double eps, Rng& rng)
{
    const std::size_t d = center.dim();
    const std::vector<double> y = rng.dirichlet(d, 1.0);
    const double dist = tv_distance(y, center.span());
    double t = dist > eps ? eps / dist : 1.0;
    if (rng.uniform() < 0.5) t *= rng.uniform();
    std::vector<double> x(d);
    for (std::size_t i = 0; i < d; ++i) x[i] = std::max(0.0, center[i] + t * (y[i] - center[i]));
    return ProbVec::validate(x, 1e-9);
}

}  // namespace divsmooth

#include "divsmooth/families.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "divsmooth/error.hpp"
#include "divsmooth/majorization.hpp"
#include "divsmooth/random.hpp"
#include "divsmooth/smoothing.hpp"

namespace divsmooth {

namespace {

constexpr double kSlack = 1e-12;

void check_eps_open(double eps, const char* op)
{
    if (!(eps > 0.0 && eps < 1.0)) throw Error(Errc::InvalidArgument, std::string(op) + ": eps must lie in (0,1)");
}

void check_dim(std::size_t d, std::size_t min_d, const char* op)
{
    if (d < min_d) throw Error(Errc::InvalidArgument, std::string(op) + ": dimension too small");
}

ProbVec exact(std::vector<double> x) { return ProbVec::validate(x, 1e-9); }

bool same_clip(const Flattest& x, const Flattest& y)
{
    if (x.params.k != y.params.k || x.params.m != y.params.m) return false;
    return std::abs(x.params.a - y.params.a) <= 1e-12 && std::abs(x.params.b - y.params.b) <= 1e-12;
}

}  // namespace

ProbVec family_thm3(std::size_t d, double eps)
{
    check_dim(d, 2, "family_thm3");
    check_eps_open(eps, "family_thm3");
    std::vector<double> x(d, eps / static_cast<double>(d - 1));
    x[0] = 1.0 - eps;
    std::stable_sort(x.begin(), x.end(), std::greater<>());
    return exact(std::move(x));
}

ProbVec family_thm4(std::size_t d, double eps, double alpha)
{
    check_dim(d, 2, "family_thm4");
    check_eps_open(eps, "family_thm4");
    if (!(alpha > eps && alpha < 1.0)) throw Error(Errc::InvalidArgument, "family_thm4: alpha must lie in (eps,1)");
    const double m = static_cast<double>(d - 1);
    const double top = 1.0 - eps / alpha, rest = eps / (m * alpha);
    if (top < rest) throw Error(Errc::NotSortedForThisD, "family_thm4: vector is not sorted at this dimension");
    std::vector<double> x(d, rest);
    x[0] = top;
    return exact(std::move(x));
}

ProbVec family_three_block(std::size_t d, double eps, std::size_t k, std::size_t m, double a, double b, double c)
{
    check_eps_open(eps, "family_three_block");
    const bool shape_ok = k >= 1 && k <= m && m <= d - 1 && d >= 2;
    if (!shape_ok) throw Error(Errc::ConstraintViolated, "family_three_block: need 1 <= k <= m <= d-1");
    const double kd = static_cast<double>(k), ell = static_cast<double>(d - m);
    const double total = kd * a + static_cast<double>(m - k) * c + ell * b;
    const bool ok = eps / ell <= b + kSlack && b < c && c < a && a <= (1.0 - eps) / kd + kSlack &&
                    std::abs(total - 1.0) <= kSlack;
    if (!ok) throw Error(Errc::ConstraintViolated, "family_three_block: block constraints violated");
    std::vector<double> x(d);
    for (std::size_t i = 0; i < d; ++i) {
        if (i < k)
            x[i] = a + eps / kd;
        else if (i < m)
            x[i] = c;
        else
            x[i] = std::max(0.0, b - eps / ell);
    }
    return exact(std::move(x));
}

double three_block_objective(double p, double q, double u, double v, double eps, RenyiOrder alpha, RenyiOrder beta)
{
    const bool in_domain = v > 0.0 && v <= u + kSlack && u <= 1.0 + kSlack && p > 0.0 && p <= 1.0 - eps + kSlack &&
                           q >= eps - kSlack && p + q <= 1.0 + kSlack;
    if (!in_domain) throw Error(Errc::DomainViolated, "three_block_objective: point outside the domain");
    if (alpha.is_inf() || alpha.is_one() || beta.is_one())
        throw Error(Errc::UnsupportedOrder, "three_block_objective: alpha must be finite and alpha, beta != 1");
    const double a = alpha.value();
    const double r = std::max(0.0, 1.0 - p - q);
    const double qe = std::max(0.0, q - eps);
    double first = 0.0;
    if (!beta.is_inf()) {
        const double b = beta.value();
        first = std::log2(p + r * std::pow(u, b - 1.0) + q * std::pow(v, b - 1.0)) / (b - 1.0);
    }
    const double inner = std::pow(p, 1.0 - a) * std::pow(p + eps, a) + r * std::pow(u, a - 1.0) +
                         std::pow(q, 1.0 - a) * std::pow(qe, a) * std::pow(v, a - 1.0);
    return first - std::log2(inner) / (a - 1.0);
}

ProbVec family_steepest_uniform(std::size_t d, double eps)
{
    check_dim(d, 2, "family_steepest_uniform");
    check_eps_open(eps, "family_steepest_uniform");
    const double dd = static_cast<double>(d);
    if (1.0 / dd + eps >= 1.0) return ProbVec::e1(d);
    auto ell = static_cast<std::size_t>(std::floor(dd * (1.0 - eps) + kSlack));
    ell = std::clamp<std::size_t>(ell, 1, d - 1);
    std::vector<double> x(d, 0.0);
    x[0] = 1.0 / dd + eps;
    for (std::size_t i = 1; i < ell; ++i) x[i] = 1.0 / dd;
    x[ell] = std::max(0.0, 1.0 - eps - static_cast<double>(ell) / dd);
    return exact(std::move(x));
}

ProbVec family_unbounded(std::size_t d, RenyiOrder alpha, RenyiOrder beta)
{
    if (!(beta.value() < alpha.value())) throw Error(Errc::OutOfRegime, "family_unbounded: requires beta < alpha");
    check_dim(d, 3, "family_unbounded");
    const double inv_a = alpha.is_inf() ? 0.0 : 1.0 / alpha.value();
    const double dd = static_cast<double>(d);
    std::vector<double> x(d);
    if (beta.value() < 1.0) {
        const double lo = std::max(1.0, inv_a);
        const double s = beta.is_zero() ? lo + 1.0 : 0.5 * (lo + 1.0 / beta.value());
        const double e = std::pow(dd - 1.0, 1.0 - s);
        std::fill(x.begin(), x.end(), e / (dd - 1.0));
        x[0] = 1.0 - e;
    } else {
        const double t = 0.5 * (inv_a + 1.0 / beta.value());
        const double delta = std::pow(dd, -(1.0 - t));
        std::fill(x.begin(), x.end(), (1.0 - delta) / (dd - 1.0));
        x[0] = delta;
    }
    return exact(std::move(x));
}

ProbVec representative_min(const ProbVec& p, double eps)
{
    require_sorted(p, "representative_min");
    const Flattest fp = flattest(p, eps);
    if (fp.degenerate) throw Error(Errc::InsideBall, "representative_min: the eps-ball contains the uniform vector");
    const auto [a, b, k, m] = fp.params;
    const std::size_t d = p.dim();
    std::vector<double> x(d);
    for (std::size_t i = 0; i < d; ++i) {
        if (i < k)
            x[i] = a + eps / static_cast<double>(k);
        else if (i < m)
            x[i] = p[i];
        else
            x[i] = std::max(0.0, b - eps / static_cast<double>(d - m));
    }
    ProbVec q = exact(std::move(x));
    if (!same_clip(flattest(q, eps), fp) || !majorizes(p, q))
        throw Error(Errc::ConstraintViolated, "representative_min: postcondition failed");
    return q;
}

ProbVec representative_max(const ProbVec& p, double eps)
{
    require_sorted(p, "representative_max");
    const Flattest fp = flattest(p, eps);
    if (fp.degenerate) throw Error(Errc::InsideBall, "representative_max: the eps-ball contains the uniform vector");
    const auto [a, b, k, m] = fp.params;
    const std::size_t d = p.dim();
    const double u = std::max(0.0, static_cast<double>(d - m) * b - eps);
    auto j = static_cast<std::size_t>(std::floor(u / b + kSlack));
    j = std::min(j, d - m);
    const double s = std::max(0.0, u - static_cast<double>(j) * b);
    std::vector<double> x(d, 0.0);
    x[0] = a + eps;
    for (std::size_t i = 1; i < k; ++i) x[i] = a;
    for (std::size_t i = k; i < m; ++i) x[i] = p[i];
    for (std::size_t i = m; i < m + j; ++i) x[i] = b;
    if (m + j < d) x[m + j] = s;
    ProbVec r = exact(std::move(x));
    if (!same_clip(flattest(r, eps), fp) || !majorizes(r, p))
        throw Error(Errc::ConstraintViolated, "representative_max: postcondition failed");
    return r;
}

bool app_e_feasible(std::size_t d, double eps, double t, double s, std::size_t ell)
{
    if (!(eps > 0.0 && eps < 1.0) || !(t > 0.0 && t <= 1.0) || !(s > 0.0 && s <= 1.0)) return false;
    if (ell < 1 || ell + 1 > d) return false;
    const double lt = static_cast<double>(ell) + t;
    if (!(lt < static_cast<double>(d))) return false;
    const double lo = eps / (static_cast<double>(d) - lt);
    double hi = (1.0 - eps) / lt;
    if (t < 1.0) hi = std::min(hi, eps / (1.0 - t));
    return lo <= s + kSlack && s <= hi + kSlack;
}

ProbVec family_app_e(std::size_t d, double eps, double t, double s, std::size_t ell)
{
    if (!app_e_feasible(d, eps, t, s, ell))
        throw Error(Errc::Infeasible, "family_app_e: the constraint set is empty for these parameters");
    const auto n = static_cast<std::size_t>(std::floor(t + eps / s + kSlack));
    std::vector<double> x(d, 0.0);
    x[0] = 1.0 - eps - s * (static_cast<double>(ell) - 1.0 + t);
    const std::size_t mids = n + ell - 1;
    if (mids + 1 > d) throw Error(Errc::Infeasible, "family_app_e: maximal element does not fit the dimension");
    for (std::size_t i = 1; i <= mids; ++i) x[i] = s;
    const double last = eps + (t - static_cast<double>(n)) * s;
    if (mids + 1 < d)
        x[mids + 1] = std::max(0.0, last);
    else if (last > 1e-9)
        throw Error(Errc::Infeasible, "family_app_e: maximal element does not fit the dimension");
    return exact(std::move(x));
}

double edge_phi(double t, double A, double B, double C, double D, double alpha, double beta)
{
    return std::log2(A + B * std::pow(t, beta - 1.0)) / (beta - 1.0) -
           std::log2(C + D * std::pow(t, alpha - 1.0)) / (alpha - 1.0);
}

bool edge_lemma_scan(double A, double B, double C, double D, double alpha, double beta, std::size_t grid_n)
{
    if (grid_n == 0) return true;
    const double n = static_cast<double>(grid_n);
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i <= grid_n; ++i)
        best = std::max(best, edge_phi(static_cast<double>(i) / n, A, B, C, D, alpha, beta));
    const double ends = std::max(edge_phi(1.0 / n, A, B, C, D, alpha, beta), edge_phi(1.0, A, B, C, D, alpha, beta));
    return best <= ends + 1e-9;
}

bool scan_h_decreasing(double alpha, double eps, std::size_t grid_n)
{
    auto h = [&](double p) { return std::pow(p, 1.0 - alpha) * std::pow(p + eps, alpha) - p; };
    const double top = 1.0 - eps;
    double prev = h(top / static_cast<double>(grid_n));
    for (std::size_t i = 2; i <= grid_n; ++i) {
        const double cur = h(top * static_cast<double>(i) / static_cast<double>(grid_n));
        if (!(cur < prev + kSlack)) return false;
        prev = cur;
    }
    return true;
}

bool scan_g_increasing(double alpha, double eps, std::size_t grid_n)
{
    auto g = [&](double q) { return std::pow(q, 1.0 - alpha) * std::pow(q - eps, alpha) - q; };
    const double span = 1.0 - eps;
    double prev = g(eps + span / static_cast<double>(grid_n));
    for (std::size_t i = 2; i <= grid_n; ++i) {
        const double cur = g(eps + span * static_cast<double>(i) / static_cast<double>(grid_n));
        if (!(cur > prev - kSlack)) return false;
        prev = cur;
    }
    return true;
}

bool monotonicity_scans(std::uint64_t seed, std::size_t grid_n)
{
    Rng rng(seed);
    bool ok = true;
    for (int i = 0; i < 100; ++i) {
        const double alpha = 1.0 + 4.0 * rng.uniform_open();
        const double eps = rng.uniform_open();
        ok = scan_h_decreasing(alpha, eps, grid_n) && ok;
    }
    for (int i = 0; i < 100; ++i) {
        const double alpha = rng.uniform_open();
        const double eps = rng.uniform_open();
        ok = scan_g_increasing(alpha, eps, grid_n) && ok;
    }
    return ok;
}

ThreeBlockSearch three_block_search(double eps, RenyiOrder alpha, RenyiOrder beta, double sign, std::size_t grid)
{
    check_eps_open(eps, "three_block_search");
    if (grid < 2) throw Error(Errc::InvalidArgument, "three_block_search: grid must be at least 2");
    constexpr double kFloor = 1e-12;
    const std::array<double, 4> lo{kFloor, 0.0, kFloor, kFloor};
    const std::array<double, 4> hi{1.0 - eps, 1.0, 1.0, 1.0};
    // coordinates: p, s (share of the free mass given to q), u, w = v/u
    auto objective = [&](const std::array<double, 4>& x) {
        const double p = x[0];
        const double q = eps + (1.0 - eps - p) * x[1];
        const double v = x[2] * x[3];
        const double f = sign * three_block_objective(p, q, x[2], v, eps, alpha, beta);
        return std::isnan(f) ? -std::numeric_limits<double>::infinity() : f;
    };

    const double g = static_cast<double>(grid);
    std::array<double, 4> best{};
    double best_val = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i <= grid; ++i) {
        for (std::size_t j = 0; j < grid; ++j) {
            for (std::size_t k = 1; k <= grid; ++k) {
                for (std::size_t l = 1; l <= grid; ++l) {
                    const std::array<double, 4> x{(1.0 - eps) * static_cast<double>(i) / g,
                                                  static_cast<double>(j) / (g - 1.0), static_cast<double>(k) / g,
                                                  static_cast<double>(l) / g};
                    const double f = objective(x);
                    if (f > best_val) {
                        best_val = f;
                        best = x;
                    }
                }
            }
        }
    }

    double step = 1.0 / g;
    while (step >= 1e-12) {
        bool improved = false;
        for (std::size_t c = 0; c < 4; ++c) {
            for (double dir : {-1.0, 1.0}) {
                std::array<double, 4> y = best;
                y[c] = std::clamp(y[c] + dir * step * (hi[c] - lo[c]), lo[c], hi[c]);
                const double f = objective(y);
                if (f > best_val) {
                    best_val = f;
                    best = y;
                    improved = true;
                }
            }
        }
        if (!improved) step *= 0.5;
    }
    const double p = best[0];
    const double q = eps + (1.0 - eps - p) * best[1];
    return ThreeBlockSearch{best_val, p, q, best[2], best[2] * best[3]};
}

}  // namespace divsmooth

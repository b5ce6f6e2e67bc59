#include "divsmooth/divergences.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "divsmooth/error.hpp"
#include "divsmooth/smoothing.hpp"

namespace divsmooth {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

RenyiOrder::RenyiOrder(double alpha) : a_(alpha)
{
    if (!(alpha >= 0.0)) throw Error(Errc::InvalidArgument, "Renyi order must be non-negative");
}

RenyiOrder RenyiOrder::infinity() { return RenyiOrder(kInf); }

RenyiOrder RenyiOrder::parse(const std::string& text)
{
    if (text == "inf" || text == "+inf" || text == "infinity") return infinity();
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &pos);
    } catch (const std::exception&) {
        throw Error(Errc::InvalidArgument, "cannot parse Renyi order '" + text + "'");
    }
    if (pos != text.size()) throw Error(Errc::InvalidArgument, "cannot parse Renyi order '" + text + "'");
    return RenyiOrder(v);
}

bool RenyiOrder::is_inf() const noexcept { return a_ == kInf; }

std::string RenyiOrder::to_string() const { return ExtReal(a_).to_string(); }

ExtReal renyi_raw(std::span<const double> p, std::span<const double> q, RenyiOrder order)
{
    if (p.size() != q.size()) throw Error(Errc::DimensionMismatch, "renyi: dimension mismatch");
    const std::size_t d = p.size();
    bool outside = false;  // p has mass where q vanishes
    for (std::size_t x = 0; x < d; ++x)
        if (p[x] > 0.0 && q[x] <= 0.0) outside = true;

    if (order.is_inf()) {
        if (outside) return ExtReal::pos_inf();
        double mx = 0.0;
        for (std::size_t x = 0; x < d; ++x)
            if (p[x] > 0.0) mx = std::max(mx, p[x] / q[x]);
        return ExtReal(std::log2(mx));
    }
    if (order.is_zero()) {
        double s = 0.0;
        for (std::size_t x = 0; x < d; ++x)
            if (p[x] > 0.0) s += q[x];
        return s > 0.0 ? ExtReal(-std::log2(s)) : ExtReal::pos_inf();
    }
    if (order.is_one()) {
        if (outside) return ExtReal::pos_inf();
        double s = 0.0;
        for (std::size_t x = 0; x < d; ++x)
            if (p[x] > 0.0) s += p[x] * std::log2(p[x] / q[x]);
        return ExtReal(s);
    }

    const double a = order.value();
    if (a > 1.0 && outside) return ExtReal::pos_inf();
    // log of sum p^a q^(1-a), accumulated in log space.
    std::vector<double> terms;
    terms.reserve(d);
    for (std::size_t x = 0; x < d; ++x)
        if (p[x] > 0.0 && q[x] > 0.0) terms.push_back(a * std::log(p[x]) + (1.0 - a) * std::log(q[x]));
    if (terms.empty()) return ExtReal::pos_inf();  // disjoint supports with a < 1
    const double mx = *std::max_element(terms.begin(), terms.end());
    double s = 0.0;
    for (double t : terms) s += std::exp(t - mx);
    const double log_sum = (mx + std::log(s)) / std::log(2.0);
    return ExtReal(log_sum / (a - 1.0));
}

ExtReal renyi(const ProbVec& p, const ProbVec& q, RenyiOrder order) { return renyi_raw(p.span(), q.span(), order); }

ExtReal renyi(const SubProbVec& r, const ProbVec& q, RenyiOrder order) { return renyi_raw(r.span(), q.span(), order); }

double renyi_entropy(const ProbVec& p, RenyiOrder order)
{
    const ProbVec u = ProbVec::uniform(p.dim());
    return std::log2(static_cast<double>(p.dim())) - renyi(p, u, order).value();
}

DivergenceFn renyi_fn(RenyiOrder order)
{
    return [order](const ProbVec& p, const ProbVec& q) { return renyi(p, q, order); };
}

ExtReal hypothesis_testing(const ProbVec& p, const ProbVec& q, double eps)
{
    if (p.dim() != q.dim()) throw Error(Errc::DimensionMismatch, "hypothesis_testing: dimension mismatch");
    if (!(eps >= 0.0 && eps < 1.0)) throw Error(Errc::InvalidArgument, "hypothesis_testing: eps must lie in [0,1)");
    const PairOrdering pair = ratio_order(p, q);
    const double target = 1.0 - eps;
    double a_l = 0.0, b_l = 0.0, weight = -1.0;
    for (std::size_t x : pair.perm) {
        if (p[x] <= 0.0) continue;
        if (a_l + p[x] >= target) {
            const double t = std::clamp((target - a_l) / p[x], 0.0, 1.0);
            weight = b_l + t * q[x];
            break;
        }
        a_l += p[x];
        b_l += q[x];
    }
    if (weight < 0.0) weight = b_l;  // rounding left the cumulative mass just below 1 - eps
    return weight > 0.0 ? ExtReal(-std::log2(weight)) : ExtReal::pos_inf();
}

ExtReal smoothed(const DivergenceFn& div, const ProbVec& p, const ProbVec& q, double eps)
{
    return div(relative_flattest(p, q, eps), q);
}

ExtReal smoothed_renyi(const ProbVec& p, const ProbVec& q, double eps, RenyiOrder order)
{
    return smoothed(renyi_fn(order), p, q, eps);
}

namespace {

struct SubObjective {
    ProbVec sorted;
    ProbVec u;
    double eps;
    RenyiOrder order;

    double operator()(double gamma) const
    {
        return renyi(clip_gamma(sorted, eps, gamma).vec, u, order).value();
    }
};

SubObjective make_sub_objective(const ProbVec& p, double eps, RenyiOrder order)
{
    if (order.is_one()) throw Error(Errc::UnsupportedOrder, "subnormalized smoothing is not defined at order 1");
    require_eps(eps, "smoothed_renyi_sub");
    return SubObjective{sort_desc(p).first, ProbVec::uniform(p.dim()), eps, order};
}

}  // namespace

ExtReal smoothed_renyi_sub_generic(const ProbVec& p, double eps, RenyiOrder order, double tol)
{
    const SubObjective f = make_sub_objective(p, eps, order);
    double lo = 1.0 - eps, hi = 1.0;
    const double f_lo = f(lo), f_hi = f(hi);
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
    double f1 = f(x1), f2 = f(x2);
    while (hi - lo > tol) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2);
        }
    }
    return ExtReal(std::min({f_lo, f_hi, f1, f2}));
}

ExtReal smoothed_renyi_sub(const ProbVec& p, double eps, RenyiOrder order)
{
    const SubObjective f = make_sub_objective(p, eps, order);
    if (order.value() > 1.0) return ExtReal(f(1.0 - eps));
    if (gamma_min(p, eps) < 1.0) return ExtReal(0.0);
    return smoothed_renyi_sub_generic(p, eps, order);
}

}  // namespace divsmooth

#include "divsmooth/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "divsmooth/error.hpp"

namespace divsmooth {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_eps_open(double eps)
{
    if (!(eps > 0.0 && eps < 1.0)) throw Error(Errc::InvalidArgument, "eps must lie strictly inside (0,1)");
}

bool regime_low(double a, double b) { return 0.0 < a && a < b && b < 1.0; }
bool regime_high(double a, double b) { return 1.0 < a && a < b; }

}  // namespace

void BoundQuery::check() const { check_eps_open(eps); }

const char* branch_name(Branch b) noexcept
{
    switch (b) {
    case Branch::AlphaLtBetaLt1: return "alpha_lt_beta_lt_1";
    case Branch::BetaGtAlphaGt1: return "beta_gt_alpha_gt_1";
    case Branch::AlphaGeBeta: return "alpha_ge_beta";
    case Branch::BetaGtAlphaGt1EpsLeTheta: return "beta_gt_alpha_gt_1_eps_le_theta";
    case Branch::BetaGtAlphaGt1EpsGtTheta: return "beta_gt_alpha_gt_1_eps_gt_theta";
    case Branch::BetaGt1GtAlpha: return "beta_gt_1_gt_alpha";
    case Branch::AlphaGt1: return "alpha_gt_1";
    case Branch::AlphaLeEps: return "alpha_le_eps";
    case Branch::EpsLtAlphaLt1: return "eps_lt_alpha_lt_1";
    case Branch::AlphaLt1: return "alpha_lt_1";
    case Branch::Otherwise: return "otherwise";
    }
    return "unknown";
}

double theta(RenyiOrder alpha, RenyiOrder beta)
{
    const double a = alpha.value(), b = beta.value();
    if (regime_low(a, b)) return (b - a) / (b * (1.0 - a));
    if (regime_high(a, b)) {
        if (beta.is_inf()) return 1.0 / a;
        return (b - a) / (a * (b - 1.0));
    }
    throw Error(Errc::OutOfRegime, "theta: requires 0 < alpha < beta < 1 or beta > alpha > 1");
}

double binary_entropy(double t)
{
    if (!(t >= 0.0 && t <= 1.0)) throw Error(Errc::InvalidArgument, "binary_entropy: argument outside [0,1]");
    auto term = [](double x) { return x > 0.0 ? -x * std::log2(x) : 0.0; };
    return term(t) + term(1.0 - t);
}

std::optional<double> mu_tilde(double eps, RenyiOrder alpha, RenyiOrder beta)
{
    const double a = alpha.value(), b = beta.value();
    if (regime_low(a, b)) {
        const double th = theta(alpha, beta);
        return b / (1.0 - b) * (th * std::log2(1.0 / eps) - binary_entropy(th));
    }
    if (regime_high(a, b)) {
        const double th = theta(alpha, beta);
        return a / (a - 1.0) * (th * std::log2(1.0 / eps) - binary_entropy(th));
    }
    return std::nullopt;
}

BoundValue mu(const BoundQuery& q)
{
    q.check();
    const double a = q.alpha.value(), b = q.beta.value();
    if (regime_low(a, b)) return {ExtReal(std::max(0.0, *mu_tilde(q.eps, q.alpha, q.beta))), Branch::AlphaLtBetaLt1};
    if (regime_high(a, b)) return {ExtReal(std::max(0.0, *mu_tilde(q.eps, q.alpha, q.beta))), Branch::BetaGtAlphaGt1};
    if (a >= b) return {ExtReal(0.0), Branch::AlphaGeBeta};
    return {ExtReal::pos_inf(), Branch::Otherwise};
}

BoundValue nu(const BoundQuery& q)
{
    q.check();
    const double a = q.alpha.value();
    if (q.beta.value() > 1.0 && a < 1.0) {
        const double pre = (q.beta.is_inf() ? 0.0 : 1.0 / (q.beta.value() - 1.0)) + 1.0 / (1.0 - a);
        return {ExtReal(pre * std::log2(1.0 / (1.0 - q.eps))), Branch::BetaGt1GtAlpha};
    }
    return {ExtReal::pos_inf(), Branch::Otherwise};
}

BoundValue mu_H(double eps, RenyiOrder alpha)
{
    check_eps_open(eps);
    if (alpha.value() > 1.0) {
        const double pre = alpha.is_inf() ? 1.0 : alpha.value() / (alpha.value() - 1.0);
        return {ExtReal(pre * std::log2(1.0 / (1.0 - eps))), Branch::AlphaGt1};
    }
    return {ExtReal::pos_inf(), Branch::Otherwise};
}

BoundValue nu_H(double eps, RenyiOrder alpha)
{
    check_eps_open(eps);
    const double a = alpha.value();
    if (a <= eps) return {ExtReal(-std::log2(1.0 / (1.0 - eps))), Branch::AlphaLeEps};
    if (a < 1.0)
        return {ExtReal(a / (1.0 - a) * std::log2(a / eps) - std::log2(1.0 / (1.0 - a))), Branch::EpsLtAlphaLt1};
    return {ExtReal::pos_inf(), Branch::Otherwise};
}

BoundValue mu_sub(const BoundQuery& q)
{
    q.check();
    const double a = q.alpha.value(), b = q.beta.value();
    if (regime_low(a, b)) return {mu(q).value, Branch::AlphaLtBetaLt1};
    if (regime_high(a, b)) {
        const double th = theta(q.alpha, q.beta);
        if (q.eps <= th) return {ExtReal(*mu_tilde(q.eps, q.alpha, q.beta)), Branch::BetaGtAlphaGt1EpsLeTheta};
        const double pre = q.beta.is_inf() ? 1.0 : b / (b - 1.0);
        return {ExtReal(pre * std::log2(1.0 - q.eps)), Branch::BetaGtAlphaGt1EpsGtTheta};
    }
    throw Error(Errc::OutOfRegime, "mu_sub: requires beta > alpha > 1 or 0 < alpha < beta < 1");
}

BoundValue kappa(double eps, RenyiOrder alpha)
{
    check_eps_open(eps);
    if (alpha.value() < 1.0) return {ExtReal(1.0 / (1.0 - alpha.value()) * std::log2(1.0 / (1.0 - eps))), Branch::AlphaLt1};
    return {ExtReal::pos_inf(), Branch::Otherwise};
}

double mu_beta_inf_identity(double eps, double alpha)
{
    const double v = 1.0 / (alpha - 1.0) * std::log2(1.0 / eps) - alpha * std::log2(alpha) / (alpha - 1.0) -
                     std::log2(1.0 / (alpha - 1.0));
    return std::max(0.0, v);
}

double mu_sub_beta_inf_identity(double eps, double alpha)
{
    if (eps < 1.0 / alpha)
        return 1.0 / (alpha - 1.0) * std::log2(1.0 / eps) - alpha * std::log2(alpha) / (alpha - 1.0) -
               std::log2(1.0 / (alpha - 1.0));
    return std::log2(1.0 - eps);
}

double mu_sub_beta2_identity(double eps, double alpha)
{
    if (eps <= (2.0 - alpha) / alpha)
        return (2.0 - alpha) / (alpha - 1.0) * std::log2((2.0 - alpha) / (alpha * eps)) +
               2.0 * std::log2(2.0 * (alpha - 1.0) / alpha);
    return 2.0 * std::log2(1.0 - eps);
}

BoundValue bound_by_name(const std::string& name, const BoundQuery& q)
{
    if (name == "mu") return mu(q);
    if (name == "nu") return nu(q);
    if (name == "mu_H") return mu_H(q.eps, q.alpha);
    if (name == "nu_H") return nu_H(q.eps, q.alpha);
    if (name == "mu_sub") return mu_sub(q);
    if (name == "kappa") return kappa(q.eps, q.alpha);
    throw Error(Errc::InvalidArgument, "unknown bound '" + name + "'");
}

}  // namespace divsmooth

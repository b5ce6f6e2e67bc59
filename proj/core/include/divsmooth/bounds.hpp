#pragma once

#include <optional>
#include <string>

#include "divsmooth/divergences.hpp"
#include "divsmooth/ext_real.hpp"

namespace divsmooth {

/// eps in (0,1); beta is ignored by the single-order bounds.
struct BoundQuery {
    double eps;
    RenyiOrder alpha;
    RenyiOrder beta = RenyiOrder(0.0);

    void check() const;
};

enum class Branch {
    AlphaLtBetaLt1,        // 0 < alpha < beta < 1
    BetaGtAlphaGt1,        // beta > alpha > 1
    AlphaGeBeta,           // alpha >= beta
    BetaGtAlphaGt1EpsLeTheta,
    BetaGtAlphaGt1EpsGtTheta,
    BetaGt1GtAlpha,        // beta > 1 > alpha
    AlphaGt1,
    AlphaLeEps,            // alpha in [0, eps]
    EpsLtAlphaLt1,         // alpha in (eps, 1)
    AlphaLt1,
    Otherwise,
};

const char* branch_name(Branch b) noexcept;

struct BoundValue {
    ExtReal value;
    Branch branch;
};

/// (beta-alpha)/(beta(1-alpha)) for 0<alpha<beta<1; (beta-alpha)/(alpha(beta-1)) for beta>alpha>1.
double theta(RenyiOrder alpha, RenyiOrder beta);

double binary_entropy(double t);

BoundValue mu(const BoundQuery& q);
BoundValue nu(const BoundQuery& q);
BoundValue mu_H(double eps, RenyiOrder alpha);
BoundValue nu_H(double eps, RenyiOrder alpha);
BoundValue mu_sub(const BoundQuery& q);
BoundValue kappa(double eps, RenyiOrder alpha);

/// Unclamped correction term; nullopt outside the two finite regimes.
std::optional<double> mu_tilde(double eps, RenyiOrder alpha, RenyiOrder beta);

/// Closed forms of documented special cases, alpha > 1.
double mu_beta_inf_identity(double eps, double alpha);     // mu at beta = inf
double mu_sub_beta_inf_identity(double eps, double alpha);  // mu_sub at beta = inf
double mu_sub_beta2_identity(double eps, double alpha);     // mu_sub at beta = 2, 1 < alpha <= 2

/// Bound selected by name: mu, nu, mu_H, nu_H, mu_sub, kappa.
BoundValue bound_by_name(const std::string& name, const BoundQuery& q);

}  // namespace divsmooth

#pragma once

#include <cstddef>
#include <cstdint>

#include "divsmooth/divergences.hpp"
#include "divsmooth/prob.hpp"

namespace divsmooth {

/// (1 - eps, eps/(d-1), ..., eps/(d-1)), sorted.
ProbVec family_thm3(std::size_t d, double eps);

/// (1 - eps/alpha, eps/(m alpha) x m) with m = d - 1; alpha in (eps, 1).
ProbVec family_thm4(std::size_t d, double eps, double alpha);

/// Top block of k entries a + eps/k, middle c, bottom d - m entries b - eps/(d-m).
ProbVec family_three_block(std::size_t d, double eps, std::size_t k, std::size_t m, double a, double b, double c);

/// f_{p,q}(u, v) on 0 < v <= u <= 1, 0 < p <= 1 - eps, q >= eps, p + q <= 1.
/// alpha must be finite and != 1; beta != 1, and beta = inf takes the limit of the first term.
double three_block_objective(double p, double q, double u, double v, double eps, RenyiOrder alpha, RenyiOrder beta);

/// Steepest eps-approximation of the uniform vector.
ProbVec family_steepest_uniform(std::size_t d, double eps);

/// Vector whose entropy gap H_beta - H_alpha diverges with d; beta < alpha.
ProbVec family_unbounded(std::size_t d, RenyiOrder alpha, RenyiOrder beta);

/// Majorization-minimal representative sharing the eps-clipped vector of a sorted p.
ProbVec representative_min(const ProbVec& p, double eps);

/// Majorization-maximal representative sharing the eps-clipped vector of a sorted p.
ProbVec representative_max(const ProbVec& p, double eps);

/// Maximal element of {p sorted : ||p||_(ell) = 1 - eps - s t, p_(ell+1) = s}.
ProbVec family_app_e(std::size_t d, double eps, double t, double s, std::size_t ell);

/// Whether the set above is non-empty.
bool app_e_feasible(std::size_t d, double eps, double t, double s, std::size_t ell);

/// phi(t) = log(A + B t^(beta-1))/(beta-1) - log(C + D t^(alpha-1))/(alpha-1).
double edge_phi(double t, double A, double B, double C, double D, double alpha, double beta);

/// True iff the grid maximum of phi on (0,1] is within 1e-9 of its larger endpoint value.
bool edge_lemma_scan(double A, double B, double C, double D, double alpha, double beta, std::size_t grid_n);

/// h(p) = p^(1-alpha)(p+eps)^alpha - p strictly decreasing on (0, 1-eps], alpha > 1.
bool scan_h_decreasing(double alpha, double eps, std::size_t grid_n);

/// g(q) = q^(1-alpha)(q-eps)^alpha - q strictly increasing on (eps, 1], alpha in (0,1).
bool scan_g_increasing(double alpha, double eps, std::size_t grid_n);

/// 100 seeded instances of each scan.
bool monotonicity_scans(std::uint64_t seed = 7, std::size_t grid_n = 10000);

struct ThreeBlockSearch {
    double value;
    double p, q, u, v;
};

/// Maximizes sign * three_block_objective over its domain: 50^4 grid then pattern-search refinement.
ThreeBlockSearch three_block_search(double eps, RenyiOrder alpha, RenyiOrder beta, double sign, std::size_t grid = 50);

}  // namespace divsmooth

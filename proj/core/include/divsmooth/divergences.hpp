#pragma once

#include <functional>
#include <span>
#include <string>

#include "divsmooth/ext_real.hpp"
#include "divsmooth/prob.hpp"

namespace divsmooth {

/// Renyi order alpha in [0, +inf].
class RenyiOrder {
public:
    RenyiOrder(double alpha);  // throws InvalidArgument on negative or NaN
    static RenyiOrder infinity();
    static RenyiOrder parse(const std::string& text);  // accepts "inf"

    double value() const noexcept { return a_; }
    bool is_zero() const noexcept { return a_ == 0.0; }
    bool is_one() const noexcept { return a_ == 1.0; }
    bool is_inf() const noexcept;
    std::string to_string() const;

private:
    double a_;
};

/// Abstract classical divergence D(p || q).
using DivergenceFn = std::function<ExtReal(const ProbVec&, const ProbVec&)>;

/// Renyi divergence in bits on raw non-negative vectors (subnormalized inputs allowed).
ExtReal renyi_raw(std::span<const double> p, std::span<const double> q, RenyiOrder order);

ExtReal renyi(const ProbVec& p, const ProbVec& q, RenyiOrder order);
ExtReal renyi(const SubProbVec& r, const ProbVec& q, RenyiOrder order);

/// log2 d - D(p || u).
double renyi_entropy(const ProbVec& p, RenyiOrder order);

DivergenceFn renyi_fn(RenyiOrder order);

/// -log2 of the minimal q-weight of a test accepting p with probability at least 1 - eps.
ExtReal hypothesis_testing(const ProbVec& p, const ProbVec& q, double eps);

/// div(relative_flattest(p, q, eps), q).
ExtReal smoothed(const DivergenceFn& div, const ProbVec& p, const ProbVec& q, double eps);

ExtReal smoothed_renyi(const ProbVec& p, const ProbVec& q, double eps, RenyiOrder order);

/// Subnormalized smoothing with uniform reference; order 1 is rejected.
ExtReal smoothed_renyi_sub(const ProbVec& p, double eps, RenyiOrder order);

/// Golden-section minimization of the same objective over gamma in [1 - eps, 1], no fast paths.
ExtReal smoothed_renyi_sub_generic(const ProbVec& p, double eps, RenyiOrder order, double tol = 1e-10);

}  // namespace divsmooth

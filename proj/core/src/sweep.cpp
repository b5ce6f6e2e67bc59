#include "divsmooth/sweep.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <ostream>
#include <thread>

#include "divsmooth/bounds.hpp"
#include "divsmooth/divergences.hpp"
#include "divsmooth/error.hpp"
#include "divsmooth/families.hpp"
#include "divsmooth/random.hpp"

namespace divsmooth {

namespace {

void require(bool ok, const char* msg)
{
    if (!ok) throw Error(Errc::InvalidArgument, std::string("sweep config: ") + msg);
}

template <class T>
const T& pick(const std::vector<T>& grid, Rng& rng)
{
    return grid[rng.index(grid.size())];
}

void add_record(std::vector<SweepRecord>& out, std::size_t i, const char* theorem, std::size_t d, double eps,
                double alpha, double beta, ExtReal lhs, ExtReal rhs)
{
    if (!rhs.is_finite()) return;
    const double margin = lhs.value() - rhs.value();
    out.push_back(SweepRecord{i, theorem, d, eps, alpha, beta, lhs, rhs, margin});
}

ExtReal difference_or_skip(ExtReal x, ExtReal y, bool& ok)
{
    try {
        ok = true;
        return x - y;
    } catch (const Error&) {
        ok = false;
        return ExtReal(0.0);
    }
}

std::vector<SweepRecord> check_instance(const SweepConfig& cfg, std::size_t i)
{
    Rng rng = Rng::for_instance(cfg.seed, i);
    const std::size_t d = pick(cfg.dims, rng);
    const double eps = pick(cfg.eps_grid, rng);
    const RenyiOrder alpha(pick(cfg.alpha_grid, rng));
    const RenyiOrder beta(pick(cfg.beta_grid, rng));
    const ProbVec p = rng.dirichlet_vec(d, kDirichletCycle[i % 3]);
    const ProbVec q = rng.dirichlet_vec(d, kDirichletCycle[(i + 1) % 3]);
    const ProbVec u = ProbVec::uniform(d);
    const double a = alpha.value(), b = beta.value();
    const BoundQuery query{eps, alpha, beta};

    std::vector<SweepRecord> out;
    bool ok = false;
    const ExtReal d_alpha_u = renyi(p, u, alpha);

    const BoundValue m = mu(query);
    if (m.value.is_finite()) {
        const ExtReal lhs = difference_or_skip(smoothed_renyi(p, u, eps, beta), d_alpha_u, ok);
        if (ok) add_record(out, i, "thm1", d, eps, a, b, lhs, m.value);
    }
    const BoundValue n = nu(query);
    if (n.value.is_finite()) {
        const ExtReal lhs = difference_or_skip(d_alpha_u, smoothed_renyi(p, u, eps, beta), ok);
        if (ok) add_record(out, i, "thm2", d, eps, a, b, lhs, n.value);
    }
    if (a > 1.0) {
        const ExtReal lhs = difference_or_skip(hypothesis_testing(p, q, eps), renyi(p, q, alpha), ok);
        if (ok) add_record(out, i, "thm3", d, eps, a, b, lhs, mu_H(eps, alpha).value);
    }
    if (a < 1.0) {
        const ExtReal lhs = difference_or_skip(renyi(p, q, alpha), hypothesis_testing(p, q, eps), ok);
        if (ok) add_record(out, i, "thm4", d, eps, a, b, lhs, nu_H(eps, alpha).value);
    }
    const bool sub_regime = (0.0 < a && a < b && b < 1.0) || (1.0 < a && a < b);
    if (sub_regime) {
        const ExtReal lhs = difference_or_skip(smoothed_renyi_sub(p, eps, beta), d_alpha_u, ok);
        if (ok) add_record(out, i, "thm5", d, eps, a, b, lhs, mu_sub(query).value);
    }
    return out;
}

GapRecord make_gap(const char* bound, std::size_t d, double eps, double alpha, ExtReal family, BoundValue bv)
{
    const double fv = family.value(), bval = bv.value.value();
    return GapRecord{bound, d, eps, alpha, fv, bval, bval - fv};
}

}  // namespace

void SweepConfig::check() const
{
    for (std::size_t d : dims) require(d >= 2, "dims must be >= 2");
    for (std::size_t d : family_dims) require(d >= 2, "family_dims must be >= 2");
    for (double e : eps_grid) require(e > 0.0 && e < 1.0, "eps_grid entries must lie in (0,1)");
    for (double a : alpha_grid) require(a >= 0.0, "alpha_grid entries must be >= 0");
    for (double b : beta_grid) require(b >= 0.0, "beta_grid entries must be >= 0");
    require(oracle_tol > 0.0, "oracle_tol must be positive");
    require(slack >= 0.0, "slack must be non-negative");
}

std::size_t resolve_threads(std::size_t requested)
{
    if (requested > 0) return requested;
    if (const char* env = std::getenv("DIVSMOOTH_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& fn)
{
    threads = std::max<std::size_t>(1, std::min(threads, n));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::exception_ptr first;
    std::mutex mu;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < n; i += threads) fn(i);
            } catch (...) {
                std::lock_guard lock(mu);
                if (!first) first = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first) std::rethrow_exception(first);
}

GapRecord gap_thm3(std::size_t d, double eps, double alpha)
{
    const RenyiOrder order(alpha);
    const ProbVec p = family_thm3(d, eps);
    const ProbVec u = ProbVec::uniform(d);
    return make_gap("mu_H", d, eps, alpha, hypothesis_testing(p, u, eps) - renyi(p, u, order), mu_H(eps, order));
}

GapRecord gap_thm4(std::size_t d, double eps, double alpha)
{
    const RenyiOrder order(alpha);
    const ProbVec p = family_thm4(d, eps, alpha);
    const ProbVec u = ProbVec::uniform(d);
    return make_gap("nu_H", d, eps, alpha, renyi(p, u, order) - hypothesis_testing(p, u, eps), nu_H(eps, order));
}

GapRecord gap_kappa(std::size_t d, double eps, double alpha)
{
    const RenyiOrder order(alpha);
    const ProbVec p = family_steepest_uniform(d, eps);
    return make_gap("kappa", d, eps, alpha, renyi(p, ProbVec::uniform(d), order), kappa(eps, order));
}

SweepReport sweep_bounds(const SweepConfig& cfg)
{
    cfg.check();
    SweepReport report;
    const bool grids = !cfg.dims.empty() && !cfg.eps_grid.empty() && !cfg.alpha_grid.empty() && !cfg.beta_grid.empty();
    const std::size_t n = grids ? cfg.instances : 0;
    std::vector<std::vector<SweepRecord>> per(n);
    parallel_for(n, resolve_threads(cfg.threads), [&](std::size_t i) { per[i] = check_instance(cfg, i); });
    for (auto& recs : per) {
        for (auto& r : recs) {
            report.max_violation = std::max(report.max_violation, r.margin);
            report.records.push_back(std::move(r));
        }
    }
    for (std::size_t d : cfg.family_dims) {
        report.achievability_gaps.push_back(gap_thm3(d));
        try {
            report.achievability_gaps.push_back(gap_thm4(d));
        } catch (const Error& e) {
            if (e.code() != Errc::NotSortedForThisD) throw;
        }
        report.achievability_gaps.push_back(gap_kappa(d));
    }
    return report;
}

std::string format_csv_number(double v)
{
    if (v == std::numeric_limits<double>::infinity()) return "INF";
    if (v == -std::numeric_limits<double>::infinity()) return "-INF";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void write_report_csv(const SweepReport& report, std::ostream& out)
{
    out << "instance,theorem,d,eps,alpha,beta,lhs,rhs,margin\n";
    for (const auto& r : report.records) {
        out << r.instance << ',' << r.theorem << ',' << r.d << ',' << format_csv_number(r.eps) << ','
            << format_csv_number(r.alpha) << ',' << format_csv_number(r.beta) << ','
            << format_csv_number(r.lhs.value()) << ',' << format_csv_number(r.rhs.value()) << ','
            << format_csv_number(r.margin) << '\n';
    }
}

void write_gaps_csv(const SweepReport& report, std::ostream& out)
{
    out << "bound,d,eps,alpha,family_value,bound_value,gap\n";
    for (const auto& g : report.achievability_gaps) {
        out << g.bound << ',' << g.d << ',' << format_csv_number(g.eps) << ',' << format_csv_number(g.alpha) << ','
            << format_csv_number(g.family_value) << ',' << format_csv_number(g.bound_value) << ','
            << format_csv_number(g.gap) << '\n';
    }
}

}  // namespace divsmooth

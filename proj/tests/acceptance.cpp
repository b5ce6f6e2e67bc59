// Acceptance runner: `acceptance --criterion N` evaluates one criterion, no flag runs all ten.
// Each criterion prints a single "PASS"/"FAIL" line with its measured quantity and elapsed time.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "support.hpp"

using namespace divsmooth;
using namespace testing_ref;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char* pattern, double x)
{
    char buf[128];
    std::snprintf(buf, sizeof buf, pattern, x);
    return buf;
}

Outcome clipped_smoothing()
{
    const double eps_set[] = {0.05, 0.1, 0.3, 0.6};
    const double order_set[] = {0.5, 1.0, 2.0, kInf};
    double worst = 0.0;
    for (std::uint64_t i = 0; i < 1000; ++i) {
        Rng rng = Rng::for_instance(1001, i);
        const std::size_t d = 2 + rng.index(3);
        const ProbVec p = rng.dirichlet_vec(d, kDirichletCycle[i % 3]);
        const ProbVec q = rng.dirichlet_vec(d, kDirichletCycle[(i + 1) % 3]);
        const double eps = eps_set[i % 4];
        const RenyiOrder order(order_set[(i / 4) % 4]);
        const ExtReal closed = smoothed_renyi(p, q, eps, order);
        const double oracle = smooth_oracle(renyi_fn(order), p, q, eps).value;
        const double dev = closed.value() == oracle ? 0.0 : std::abs(closed.value() - oracle);
        worst = std::max(worst, std::isnan(dev) ? kInf : dev);
    }
    return {worst <= 1e-4, fmt("max |closed - oracle| = %.3g (gate 1e-4)", worst)};
}

Outcome relative_minimality()
{
    std::size_t total = 0, held = 0;
    for (std::uint64_t i = 0; i < 1000; ++i) {
        Rng rng = Rng::for_instance(1002, i);
        const std::size_t d = 2 + rng.index(5);
        const ProbVec p = rng.dirichlet_vec(d, kDirichletCycle[i % 3]);
        const ProbVec q = rng.dirichlet_vec(d, kDirichletCycle[(i + 1) % 3]);
        const double eps = rng.uniform();
        const ProbVec star = relative_flattest(p, q, eps);
        for (int j = 0; j < 100; ++j) {
            const ProbVec r = sample_tv_ball(p, eps, rng);
            held += relatively_majorizes(r, q, star, q);
            ++total;
        }
    }
    return {held == total, std::to_string(held) + "/" + std::to_string(total) + " ball samples relatively majorize the clip"};
}

Outcome dh_closed_form()
{
    double worst = 0.0;
    for (std::uint64_t i = 0; i < 1000; ++i) {
        Rng rng = Rng::for_instance(1003, i);
        const std::size_t d = 2 + rng.index(9);
        const ProbVec p = rng.dirichlet_vec(d, kDirichletCycle[i % 3]);
        const ProbVec q = rng.dirichlet_vec(d, kDirichletCycle[(i + 1) % 3]);
        const double eps = 0.99 * rng.uniform();
        const double closed = hypothesis_testing(p, q, eps).value();
        const double oracle = dh_oracle(p, q, eps);
        const double dev = closed == oracle ? 0.0 : std::abs(closed - oracle);
        worst = std::max(worst, std::isnan(dev) ? kInf : dev);
    }
    return {worst <= 1e-10, fmt("max |closed - oracle| = %.3g (gate 1e-10)", worst)};
}

Outcome bound_validity()
{
    SweepConfig cfg;
    cfg.family_dims.clear();
    const SweepReport r = sweep_bounds(cfg);
    return {r.max_violation <= 1e-9,
            fmt("max_violation = %.3g over ", r.max_violation) + std::to_string(r.records.size()) + " records"};
}

Outcome gap_outcome(const GapRecord& g)
{
    return {std::abs(g.gap) <= 1e-3, g.bound + " = " + fmt("%.9f", g.bound_value) + ", family value = " +
                                         fmt("%.9f", g.family_value) + ", gap = " + fmt("%.3g (gate 1e-3)", g.gap)};
}

Outcome thm3_tightness() { return gap_outcome(gap_thm3(1000000, 0.5, 2.0)); }

Outcome thm4_tightness()
{
    Outcome o = gap_outcome(gap_thm4(100000, 0.25, 0.5));
    const ProbVec u = ProbVec::uniform(7);
    const double eps = 0.25;
    const double lhs = renyi(u, u, 0.5).value() - hypothesis_testing(u, u, eps).value();
    const double dev = std::abs(lhs + std::log2(1.0 / (1.0 - eps)));
    o.pass = o.pass && dev <= 1e-12;
    o.detail += fmt("; identity at p=u deviates by %.3g", dev);
    return o;
}

Outcome kappa_tightness() { return gap_outcome(gap_kappa(100000, 0.5, 0.5)); }

Outcome mu_nu_search()
{
    const ThreeBlockSearch m = three_block_search(0.125, 2.0, RenyiOrder::infinity(), 1.0);
    const ThreeBlockSearch n = three_block_search(0.5, 0.5, 2.0, -1.0);
    const double mu_target = mu(BoundQuery{0.125, 2.0, RenyiOrder::infinity()}).value.value();
    const double nu_target = nu(BoundQuery{0.5, 0.5, 2.0}).value.value();
    const double dm = std::abs(m.value - mu_target), dn = std::abs(n.value - nu_target);
    return {dm <= 5e-3 && dn <= 5e-3,
            fmt("mu search %.6f", m.value) + fmt(" vs %.6f", mu_target) + fmt(", nu search %.6f", n.value) +
                fmt(" vs %.6f (gate 5e-3)", nu_target)};
}

Outcome identities()
{
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
        for (int j = 0; j < 10; ++j) {
            const double e = 0.02 + 0.96 * i / 9.0;
            const double a = 1.05 + 2.9 * j / 9.0, a2 = 1.02 + 0.96 * j / 9.0;
            const double wild = std::max(0.0, 1 / (a - 1) * std::log2(1 / e) - a * std::log2(a) / (a - 1) -
                                                  std::log2(1 / (a - 1)));
            const double mueps = e < 1 / a ? 1 / (a - 1) * std::log2(1 / e) - a * std::log2(a) / (a - 1) -
                                                 std::log2(1 / (a - 1))
                                           : std::log2(1 - e);
            const double th = (2 - a2) / a2;
            const double sub2 = e <= th ? (2 - a2) / (a2 - 1) * std::log2((2 - a2) / (a2 * e)) +
                                              2 * std::log2(2 * (a2 - 1) / a2)
                                        : 2 * std::log2(1 - e);
            worst = std::max(worst, std::abs(mu(BoundQuery{e, a, RenyiOrder::infinity()}).value.value() - wild));
            worst = std::max(worst, std::abs(mu_sub(BoundQuery{e, a, RenyiOrder::infinity()}).value.value() - mueps));
            worst = std::max(worst, std::abs(mu_sub(BoundQuery{e, a2, 2.0}).value.value() - sub2));
        }
    }
    return {worst <= 1e-12, fmt("max deviation %.3g over 300 evaluations (gate 1e-12)", worst)};
}

Outcome appendix_suites()
{
    std::string failed;
    bool ok_ab = true;
    for (std::uint64_t i = 0; i < 1000; ++i) {
        Rng rng = Rng::for_instance(1010, i);
        const std::size_t d = 2 + rng.index(9);
        const ProbVec p = ProbVec::validate(sorted_desc(rng.dirichlet(d, kDirichletCycle[i % 3])));
        const double eps = 0.05 + 0.85 * rng.uniform() * naive_tv(p.entries(), ProbVec::uniform(d).entries());
        if (flattest(p, eps).degenerate) continue;
        try {
            const ProbVec lo = representative_min(p, eps), hi = representative_max(p, eps);
            ok_ab = ok_ab && naive_majorizes(p.entries(), lo.entries()) && naive_majorizes(hi.entries(), p.entries());
        } catch (const Error&) {
            ok_ab = false;
        }
    }
    if (!ok_ab) failed += " representatives";

    if (!monotonicity_scans()) failed += " monotonicity";

    bool ok_d = true;
    for (auto [beta, alpha] : {std::pair{0.5, 0.8}, std::pair{2.0, 3.0}}) {
        double prev = -kInf;
        for (std::size_t d : {100, 1000, 10000}) {
            const ProbVec p = family_unbounded(d, alpha, beta);
            const double gap = naive_entropy(p.entries(), beta) - naive_entropy(p.entries(), alpha);
            ok_d = ok_d && gap > prev;
            prev = gap;
        }
    }
    if (!ok_d) failed += " unbounded";

    bool ok_e = true;
    Rng rng(1011);
    int built = 0;
    while (built < 100) {
        const std::size_t d = 4 + rng.index(10), ell = 1 + rng.index(d - 2);
        const double eps = 0.05 + 0.6 * rng.uniform(), t = rng.uniform_open();
        const double lo = eps / (static_cast<double>(d - ell) - t);
        const double hi = std::min((1.0 - eps) / (static_cast<double>(ell) + t), eps / (1.0 - t));
        if (!(lo < hi)) continue;
        const double s = lo + (hi - lo) * rng.uniform();
        const ProbVec q = family_app_e(d, eps, t, s, ell);
        ok_e = ok_e && std::abs(naive_ky_fan(q.entries(), ell) - (1 - eps - s * t)) <= 1e-12 &&
               std::abs(q[ell] - s) <= 1e-12;
        // random members: top ell entries >= s, entry ell equal to s, tail entries <= s
        const double top = 1.0 - eps - s * t, tail = eps - (1.0 - t) * s;
        const std::size_t tail_n = d - ell - 1;
        for (int j = 0; j < 100; ++j) {
            std::vector<double> x;
            for (double w : rng.dirichlet(ell, 1.0)) x.push_back(s + (top - static_cast<double>(ell) * s) * w);
            x = sorted_desc(x);
            x.push_back(s);
            if (tail_n > 0) {
                const auto r = rng.dirichlet(tail_n, 1.0);
                bool fits = true;
                for (double w : r) fits = fits && tail * w <= s;
                if (!fits) continue;
                for (double w : sorted_desc(r)) x.push_back(tail * w);
            } else if (std::abs(tail) > 1e-12) {
                continue;
            }
            ok_e = ok_e && naive_majorizes(q.entries(), x, 1e-10);
        }
        ++built;
    }
    if (!ok_e) failed += " app_e";

    bool ok_edge = edge_lemma_scan(1, 1, 1, 1, 1.5, 3.0, 10000);
    Rng erng(1012);
    for (auto [alpha, beta] : {std::pair{1.5, 3.0}, std::pair{0.3, 0.7}}) {
        for (int i = 0; i < 1000; ++i) {
            const double A = erng.uniform_open(), B = erng.uniform_open(), C = erng.uniform_open(),
                         D = erng.uniform_open();
            ok_edge = edge_lemma_scan(A, B, C, D, alpha, beta, 10000) && ok_edge;
        }
    }
    if (!ok_edge) failed += " edge";

    return {failed.empty(), failed.empty() ? "representatives, monotonicity, unbounded, app_e and edge suites pass"
                                           : "failing suites:" + failed};
}

const std::vector<std::pair<std::string, std::function<Outcome()>>>& criteria()
{
    static const std::vector<std::pair<std::string, std::function<Outcome()>>> list{
        {"clipped smoothing vs oracle", clipped_smoothing},
        {"relative minimality", relative_minimality},
        {"D_H closed form vs subset oracle", dh_closed_form},
        {"bound validity sweep", bound_validity},
        {"mu_H achievability", thm3_tightness},
        {"nu_H achievability", thm4_tightness},
        {"kappa achievability", kappa_tightness},
        {"mu and nu three-block search", mu_nu_search},
        {"special-case identities", identities},
        {"appendix suites", appendix_suites},
    };
    return list;
}

bool run_one(std::size_t n)
{
    const auto& [name, fn] = criteria().at(n - 1);
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = fn();
    } catch (const std::exception& e) {
        o = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %zu [%s]: %s - %s (%.2f s)\n", n, name.c_str(), o.pass ? "PASS" : "FAIL", o.detail.c_str(),
                secs);
    std::fflush(stdout);
    return o.pass;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"divsmooth acceptance criteria"};
    std::size_t criterion = 0;
    app.add_option("--criterion", criterion, "criterion number (1-10); all when omitted")->check(CLI::Range(1, 10));
    CLI11_PARSE(app, argc, argv);
    bool ok = true;
    if (criterion > 0) {
        ok = run_one(criterion);
    } else {
        for (std::size_t n = 1; n <= criteria().size(); ++n) ok = run_one(n) && ok;
    }
    return ok ? 0 : 1;
}

#include <doctest.h>

#include "support.hpp"

using namespace divsmooth;
using namespace testing_ref;

TEST_CASE("RenyiOrder parsing")
{
    CHECK(RenyiOrder::parse("inf").is_inf());
    CHECK(RenyiOrder::parse("2").value() == 2.0);
    CHECK(RenyiOrder::parse("0.5").value() == 0.5);
    CHECK(throws_code([] { RenyiOrder::parse("abc"); }, Errc::InvalidArgument));
    CHECK(throws_code([] { RenyiOrder(-1.0); }, Errc::InvalidArgument));
}

TEST_CASE("renyi examples")
{
    CHECK(renyi(pv({1, 0}), pv({0.5, 0.5}), RenyiOrder::infinity()).value() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(renyi(pv({0.75, 0.25}), pv({0.5, 0.5}), 2.0).value() ==
          doctest::Approx(std::log2(1.25)).epsilon(1e-14));
    const ProbVec p = pv({0.2, 0.5, 0.3});
    for (double a : {0.0, 0.3, 0.5, 1.0, 2.0, 5.0, kInf}) CHECK(std::abs(renyi(p, p, a).value()) <= 1e-14);
    CHECK(renyi(pv({0.5, 0.5}), pv({1, 0}), 2.0).is_pos_inf());
    CHECK(renyi(pv({0.5, 0.5}), pv({1, 0}), 1.0).is_pos_inf());
    CHECK(renyi(pv({0.5, 0.5}), pv({1, 0}), 0.0).value() == doctest::Approx(0.0));
    CHECK(renyi(pv({1, 0}), pv({0, 1}), 0.5).is_pos_inf());
    CHECK(throws_code([&] { renyi(p, pv({0.5, 0.5}), 2.0); }, Errc::DimensionMismatch));
}

TEST_CASE("renyi_entropy examples")
{
    for (double a : {0.0, 0.5, 1.0, 2.0, kInf})
        CHECK(renyi_entropy(ProbVec::uniform(5), a) == doctest::Approx(std::log2(5.0)).epsilon(1e-14));
    CHECK(renyi_entropy(pv({0.5, 0.5, 0.0, 0.0}), 0.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(renyi_entropy(pv({0.75, 0.25}), 1.0) == doctest::Approx(0.811278124459).epsilon(1e-11));
}

TEST_CASE("hypothesis_testing examples")
{
    const ProbVec u = ProbVec::uniform(3);
    CHECK(hypothesis_testing(pv({0.6, 0.3, 0.1}), u, 0.2).value() ==
          doctest::Approx(std::log2(9.0 / 5.0)).epsilon(1e-13));
    CHECK(std::abs(hypothesis_testing(pv({0.6, 0.3, 0.1}), u, 0.0).value()) <= 1e-14);
    for (double e : {0.1, 0.3, 0.7})
        CHECK(hypothesis_testing(u, u, e).value() == doctest::Approx(std::log2(1.0 / (1.0 - e))).epsilon(1e-13));
    CHECK(hypothesis_testing(pv({0.5, 0.5}), pv({1, 0}), 0.4).is_finite());
    CHECK(hypothesis_testing(pv({0.5, 0.5}), pv({1, 0}), 0.6).is_pos_inf());
    CHECK(throws_code([&] { hypothesis_testing(u, u, 1.0); }, Errc::InvalidArgument));
}

TEST_CASE("smoothed examples")
{
    const ProbVec p = pv({0.6, 0.3, 0.1});
    const ProbVec u = ProbVec::uniform(3);
    const DivergenceFn d2 = renyi_fn(2.0);
    CHECK(smoothed(d2, p, u, 0.0).value() == doctest::Approx(renyi(p, u, 2.0).value()).epsilon(1e-14));
    CHECK(smoothed(d2, p, u, 0.4).value() == doctest::Approx(0.0));
    CHECK(smoothed_renyi(p, u, 0.1, 2.0).value() == doctest::Approx(std::log2(1.14)).epsilon(1e-13));
    CHECK(std::abs(smoothed_renyi(p, p, 0.3, 0.5).value()) <= 1e-14);

    const ProbVec a = pv({0.7, 0.2, 0.1});
    const ProbVec q = pv({0.2, 0.3, 0.5});
    const double a_cut = dmax_cutoffs(ratio_order(a, q), 0.1).a.value();
    CHECK(smoothed_renyi(a, q, 0.1, RenyiOrder::infinity()).value() ==
          doctest::Approx(std::log2(a_cut)).epsilon(1e-13));
}

TEST_CASE("smoothed_renyi_sub examples")
{
    const ProbVec u = ProbVec::uniform(4);
    CHECK(smoothed_renyi_sub(u, 0.5, 2.0).value() == doctest::Approx(-2.0).epsilon(1e-12));
    const ProbVec p = pv({0.6, 0.3, 0.1});
    CHECK(gamma_min(p, 0.3) < 1.0);
    CHECK(smoothed_renyi_sub(p, 0.3, 0.5).value() == 0.0);
    for (double a : {0.5, 2.0, 3.0})
        CHECK(smoothed_renyi_sub(p, 0.0, a).value() ==
              doctest::Approx(renyi(p, ProbVec::uniform(3), a).value()).epsilon(1e-12));
    CHECK(throws_code([&] { smoothed_renyi_sub(p, 0.1, 1.0); }, Errc::UnsupportedOrder));
}

TEST_CASE("smooth_oracle examples")
{
    const ProbVec p = pv({0.6, 0.3, 0.1});
    const ProbVec u = ProbVec::uniform(3);
    const DivergenceFn d2 = renyi_fn(2.0);
    CHECK(std::abs(smooth_oracle(d2, p, u, 0.1).value - std::log2(1.14)) <= 1e-6);
    const OracleResult zero = smooth_oracle(d2, p, u, 0.0);
    CHECK(zero.value == doctest::Approx(renyi(p, u, 2.0).value()));
    for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(zero.argmin[i] - p[i]) <= 1e-15);
    const OracleResult all = smooth_oracle(d2, p, u, 0.5);
    CHECK(std::abs(all.value) <= 1e-12);
    CHECK(naive_tv(all.argmin.entries(), u.entries()) <= 1e-6);
    CHECK(throws_code([&] { smooth_oracle(d2, ProbVec::uniform(5), ProbVec::uniform(5), 0.1); },
                      Errc::OracleScaleExceeded));
}

TEST_CASE("dh_oracle examples")
{
    const ProbVec u = ProbVec::uniform(3);
    CHECK(std::abs(dh_oracle(pv({0.6, 0.3, 0.1}), u, 0.2) - std::log2(9.0 / 5.0)) <= 1e-12);
    CHECK(std::abs(dh_oracle(pv({0.6, 0.3, 0.1}), u, 0.0)) <= 1e-12);
}

TEST_CASE("property: renyi matches the definition and is monotone in the order")
{
    Rng rng(31);
    const double orders[] = {0.0, 0.3, 0.5, 1.0, 2.0, 5.0, kInf};
    for (int it = 0; it < 2000; ++it) {
        const std::size_t d = 1 + rng.index(8);
        const ProbVec p = rng.dirichlet_vec(d, kDirichletCycle[it % 3]);
        const ProbVec q = rng.dirichlet_vec(d, kDirichletCycle[(it + 1) % 3]);
        double prev = -kInf;
        for (double a : orders) {
            const double v = renyi(p, q, a).value();
            const double ref = naive_renyi(p.entries(), q.entries(), a);
            if (std::isfinite(ref)) CHECK(std::abs(v - ref) <= 1e-9 * std::max(1.0, std::abs(ref)));
            else CHECK(v == ref);
            CHECK(v + 1e-10 >= prev);
            prev = v;
        }
    }
}

TEST_CASE("property: data processing inequality")
{
    Rng rng(32);
    const double orders[] = {0.0, 0.5, 1.0, 2.0, kInf};
    for (int it = 0; it < 1000; ++it) {
        const std::size_t d = 1 + rng.index(6), d2 = 1 + rng.index(6);
        const ProbVec p = rng.dirichlet_vec(d, kDirichletCycle[it % 3]);
        const ProbVec q = rng.dirichlet_vec(d, kDirichletCycle[(it + 1) % 3]);
        const StochasticMatrix E = StochasticMatrix::random(d2, d, rng);
        const ProbVec ep = apply_matrix(E, p), eq = apply_matrix(E, q);
        for (double a : orders) CHECK(renyi(ep, eq, a).value() <= renyi(p, q, a).value() + 1e-9);
        const double eps = 0.9 * rng.uniform();
        CHECK(hypothesis_testing(ep, eq, eps).value() <= hypothesis_testing(p, q, eps).value() + 1e-9);
        CHECK(smoothed_renyi(ep, eq, eps, 2.0).value() <= smoothed_renyi(p, q, eps, 2.0).value() + 1e-9);
    }
}

TEST_CASE("property: smoothing lowers the divergence and is monotone in eps")
{
    Rng rng(33);
    for (int it = 0; it < 1000; ++it) {
        const std::size_t d = 2 + rng.index(6);
        const ProbVec p = rng.dirichlet_vec(d, kDirichletCycle[it % 3]);
        const ProbVec q = rng.dirichlet_vec(d, kDirichletCycle[(it + 1) % 3]);
        const double e1 = 0.5 * rng.uniform(), e2 = e1 + 0.4 * rng.uniform();
        for (double a : {0.5, 1.0, 2.0, kInf}) {
            const double s0 = renyi(p, q, a).value();
            const double s1 = smoothed_renyi(p, q, e1, a).value();
            const double s2 = smoothed_renyi(p, q, e2, a).value();
            CHECK(s1 <= s0 + 1e-10);
            CHECK(s2 <= s1 + 1e-10);
            CHECK(s2 >= -1e-12);
        }
    }
}

TEST_CASE("property: smoothed value is below every sampled ball member")
{
    Rng rng(34);
    for (int it = 0; it < 300; ++it) {
        const std::size_t d = 2 + rng.index(5);
        const ProbVec p = rng.dirichlet_vec(d, kDirichletCycle[it % 3]);
        const ProbVec q = rng.dirichlet_vec(d, kDirichletCycle[(it + 1) % 3]);
        const double eps = rng.uniform();
        for (double a : {0.5, 1.0, 2.0}) {
            const double s = smoothed_renyi(p, q, eps, a).value();
            for (int j = 0; j < 10; ++j) {
                const ProbVec r = sample_tv_ball(p, eps, rng);
                CHECK(s <= naive_renyi(r.entries(), q.entries(), a) + 1e-10);
            }
        }
    }
}

TEST_CASE("property: subnormalized smoothing never exceeds normalized smoothing")
{
    Rng rng(35);
    for (int it = 0; it < 500; ++it) {
        const std::size_t d = 2 + rng.index(7);
        const ProbVec p = ProbVec::validate(sorted_desc(rng.dirichlet(d, kDirichletCycle[it % 3])));
        const ProbVec u = ProbVec::uniform(d);
        const double eps = 0.01 + 0.9 * rng.uniform();
        for (double a : {0.3, 0.7, 1.5, 2.0, 4.0, kInf}) {
            const double sub = smoothed_renyi_sub(p, eps, a).value();
            CHECK(sub <= smoothed_renyi(p, u, eps, a).value() + 1e-10);
            if (std::isfinite(a)) {
                const double gen = smoothed_renyi_sub_generic(p, eps, a).value();
                CHECK(std::abs(gen - sub) <= 1e-7);
            }
        }
    }
}

TEST_CASE("property: information spectrum links hypothesis testing and max divergence")
{
    Rng rng(36);
    for (int it = 0; it < 1000; ++it) {
        const std::size_t d = 2 + rng.index(7);
        const ProbVec p = rng.dirichlet_vec(d, kDirichletCycle[it % 3]);
        const ProbVec q = rng.dirichlet_vec(d, kDirichletCycle[(it + 1) % 3]);
        const double eps = 0.9 * rng.uniform();
        const double dh = hypothesis_testing(p, q, eps).value();
        CHECK(dh >= -1e-12);
        CHECK(dh <= renyi(p, q, kInf).value() + std::log2(1.0 / (1.0 - eps)) + 1e-10);
        const double h = eps > 0 ? -eps * std::log2(eps) - (1 - eps) * std::log2(1 - eps) : 0.0;
        CHECK(dh <= (naive_renyi(p.entries(), q.entries(), 1.0) + h) / (1.0 - eps) + 1e-10);
    }
}

TEST_CASE("property: closed forms agree with the oracles on a few instances")
{
    Rng rng(37);
    for (int it = 0; it < 20; ++it) {
        const std::size_t d = 2 + rng.index(3);
        const ProbVec p = rng.dirichlet_vec(d, kDirichletCycle[it % 3]);
        const ProbVec q = rng.dirichlet_vec(d, kDirichletCycle[(it + 1) % 3]);
        const double eps = 0.05 + 0.5 * rng.uniform();
        for (double a : {0.5, 2.0}) {
            const double closed = smoothed_renyi(p, q, eps, a).value();
            const double oracle = smooth_oracle(renyi_fn(a), p, q, eps).value;
            CHECK(std::abs(closed - oracle) <= 1e-6);
        }
        CHECK(std::abs(hypothesis_testing(p, q, eps).value() - dh_oracle(p, q, eps)) <= 1e-10);
    }
}

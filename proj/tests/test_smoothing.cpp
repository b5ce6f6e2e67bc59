#include <doctest.h>

#include "support.hpp"

using namespace divsmooth;
using namespace testing_ref;

namespace {

ProbVec sorted_dirichlet(Rng& rng, std::size_t d, double c)
{
    return ProbVec::validate(sorted_desc(rng.dirichlet(d, c)));
}

void check_close(const std::vector<double>& got, const std::vector<double>& want, double tol = 1e-12)
{
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i) CHECK(std::abs(got[i] - want[i]) <= tol);
}

}  // namespace

TEST_CASE("flattest examples")
{
    const ProbVec p = pv({0.6, 0.3, 0.1});
    const Flattest f = flattest(p, 0.1);
    check_close(f.vec.entries(), {0.5, 0.3, 0.2});
    CHECK(f.params.a == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(f.params.b == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(f.params.k == 1);
    CHECK(f.params.m == 2);
    CHECK_FALSE(f.degenerate);

    check_close(flattest(p, 0.0).vec.entries(), p.entries());
    const Flattest g = flattest(p, 0.4);
    CHECK(g.degenerate);
    check_close(g.vec.entries(), ProbVec::uniform(3).entries());
    CHECK(g.params.k == 0);
    CHECK(g.params.m == 0);

    CHECK(throws_code([] { flattest(pv({0.1, 0.9}), 0.1); }, Errc::NotSorted));
    CHECK(throws_code([&] { flattest(p, 1.5); }, Errc::InvalidArgument));
}

TEST_CASE("steepest examples")
{
    const ProbVec p = pv({0.6, 0.3, 0.1});
    check_close(steepest(p, 0.1).entries(), {0.7, 0.3, 0.0});
    check_close(steepest(p, 0.0).entries(), p.entries());
    check_close(steepest(p, 0.4).entries(), {1.0, 0.0, 0.0});
}

TEST_CASE("dmax_cutoffs examples")
{
    const PairOrdering o = ratio_order(pv({0.7, 0.2, 0.1}), pv({0.2, 0.3, 0.5}));
    const DmaxCutoffs c = dmax_cutoffs(o, 0.1);
    CHECK(c.a.value() == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(c.b.value() == doctest::Approx(0.4).epsilon(1e-12));

    const ProbVec p = pv({0.2, 0.3, 0.5});
    const DmaxCutoffs same = dmax_cutoffs(ratio_order(p, p), 0.0);
    CHECK(same.a.value() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(same.b.value() == doctest::Approx(1.0).epsilon(1e-12));

    const DmaxCutoffs zero = dmax_cutoffs(o, 0.0);
    CHECK(zero.a.value() == doctest::Approx(3.5).epsilon(1e-12));
    CHECK(zero.b.value() == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("relative_flattest examples")
{
    const ProbVec p = pv({0.7, 0.2, 0.1});
    const ProbVec q = pv({0.2, 0.3, 0.5});
    check_close(relative_flattest(p, q, 0.1).entries(), {0.6, 0.2, 0.2});

    const ProbVec s = pv({0.6, 0.3, 0.1});
    for (double e : {0.0, 0.05, 0.1, 0.2, 0.25})
        check_close(relative_flattest(s, ProbVec::uniform(3), e).entries(), flattest(s, e).vec.entries());

    const RelativeClip r = relative_clip(p, q, 0.6);
    CHECK(r.degenerate);
    CHECK(r.vec == q);
    CHECK(throws_code([&] { relative_clip(p, pv({0.5, 0.5}), 0.1); }, Errc::DimensionMismatch));
}

TEST_CASE("gamma_min examples")
{
    CHECK(gamma_min(ProbVec::uniform(4), 0.3) == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(gamma_min(ProbVec::e1(2), 0.25) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(gamma_min(pv({0.6, 0.3, 0.1}), 1.0) == 0.0);
}

TEST_CASE("clip_gamma examples")
{
    const ProbVec p = pv({0.6, 0.3, 0.1});
    const GammaClip g = clip_gamma(p, 0.1, 0.95);
    check_close(g.vec.entries(), {0.5, 0.3, 0.15});
    CHECK(g.params.a == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(g.params.b_gamma == doctest::Approx(0.15).epsilon(1e-12));
    CHECK(g.vec.mass() == doctest::Approx(0.95).epsilon(1e-12));

    check_close(clip_gamma(p, 0.1, 1.0).vec.entries(), flattest(p, 0.1).vec.entries());

    CHECK(gamma_min(p, 0.1) == 1.0);
    const double gm = gamma_min(p, 0.3);
    CHECK(gm == doctest::Approx(0.9).epsilon(1e-12));
    const GammaClip at_min = clip_gamma(p, 0.3, gm);
    CHECK(at_min.flat);
    for (double x : at_min.vec.entries()) CHECK(std::abs(x - gm / 3.0) <= 1e-12);

    CHECK(throws_code([&] { clip_gamma(p, 0.1, 0.8); }, Errc::GammaOutOfRange));
}

TEST_CASE("property: flattest is in the ball and majorized by sampled ball members")
{
    Rng rng(21);
    for (int it = 0; it < 1000; ++it) {
        const std::size_t d = 2 + rng.index(7);
        const ProbVec p = sorted_dirichlet(rng, d, kDirichletCycle[it % 3]);
        const double eps = rng.uniform();
        const Flattest f = flattest(p, eps);
        const ProbVec s = steepest(p, eps);
        CHECK(naive_tv(f.vec.entries(), p.entries()) <= eps + 1e-12);
        CHECK(naive_tv(s.entries(), p.entries()) <= eps + 1e-12);
        for (int j = 0; j < 20; ++j) {
            const ProbVec r = sample_tv_ball(p, eps, rng);
            CHECK(naive_majorizes(r.entries(), f.vec.entries(), 1e-10));
            CHECK(naive_majorizes(s.entries(), r.entries(), 1e-10));
        }
        if (!f.degenerate) {
            const ClipParams& c = f.params;
            CHECK(c.b <= c.a + 1e-12);
            CHECK(c.k <= c.m);
            for (std::size_t i = 0; i < d; ++i)
                CHECK(std::abs(f.vec[i] - std::max(c.b, std::min(c.a, p[i]))) <= 1e-12);
        }
    }
}

TEST_CASE("property: dmax cutoffs match a direct ratio scan")
{
    Rng rng(22);
    for (int it = 0; it < 1000; ++it) {
        const std::size_t d = 2 + rng.index(7);
        const ProbVec p = rng.dirichlet_vec(d, kDirichletCycle[it % 3]);
        const ProbVec q = rng.dirichlet_vec(d, kDirichletCycle[(it + 2) % 3]);
        const double eps = 0.9 * rng.uniform() * tv_distance(p, q);
        bool full = true;
        for (double x : q.entries()) full = full && x > 0;
        if (!full) continue;
        const auto [a, b] = naive_dmax(p.entries(), q.entries(), eps);
        const DmaxCutoffs c = dmax_cutoffs(ratio_order(p, q), eps);
        CHECK(std::abs(c.a.value() - a) <= 1e-9 * std::max(1.0, a));
        CHECK(std::abs(c.b.value() - b) <= 1e-9 * std::max(1.0, b));
    }
}

TEST_CASE("property: relative_flattest is in the ball and relatively minimal")
{
    Rng rng(23);
    for (int it = 0; it < 300; ++it) {
        const std::size_t d = 2 + rng.index(5);
        const ProbVec p = rng.dirichlet_vec(d, kDirichletCycle[it % 3]);
        const ProbVec q = rng.dirichlet_vec(d, kDirichletCycle[(it + 1) % 3]);
        const double eps = rng.uniform();
        const ProbVec star = relative_flattest(p, q, eps);
        CHECK(naive_tv(star.entries(), p.entries()) <= eps + 1e-10);
        for (int j = 0; j < 20; ++j) {
            const ProbVec r = sample_tv_ball(p, eps, rng);
            CHECK(relatively_majorizes(r, q, star, q));
        }
    }
}

TEST_CASE("property: clip_gamma mass and ball membership")
{
    Rng rng(24);
    for (int it = 0; it < 1000; ++it) {
        const std::size_t d = 2 + rng.index(7);
        const ProbVec p = sorted_dirichlet(rng, d, kDirichletCycle[it % 3]);
        const double eps = 0.01 + 0.9 * rng.uniform();
        const double gm = gamma_min(p, eps);
        CHECK(gm >= 1.0 - eps - 1e-12);
        CHECK(gm <= 1.0 + 1e-12);
        const double gamma = gm + (1.0 - gm) * rng.uniform();
        const GammaClip g = clip_gamma(p, eps, gamma);
        CHECK(std::abs(g.vec.mass() - gamma) <= 1e-12);
        double plus = 0.0;
        for (std::size_t i = 0; i < d; ++i) plus += std::max(0.0, p[i] - g.vec[i]);
        CHECK(plus <= eps + 1e-10);
    }
}

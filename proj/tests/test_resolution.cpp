#include <doctest.h>

#include "test_helpers.hpp"

#include <gmmp/resolution.hpp>

using namespace gmmp;

TEST_CASE("free module resolves to itself") {
    auto r = th::ring_xy();
    auto res = minimal_resolution(ModuleSpec::cyclic(r, {}), 3);
    CHECK(res.length() == 0);
    CHECK(res.complete);
    REQUIRE(res.modules.size() == 1);
    CHECK(res.module(0) == FreeModule({0}));
    auto b = betti(res);
    CHECK(b.ranks() == std::vector<std::size_t>{1});
    CHECK(b.steps[0].at(0) == 1);
}

TEST_CASE("zero module is rejected") {
    auto r = th::ring_xy();
    CHECK_THROWS_AS(minimal_resolution(ModuleSpec::cyclic(r, {th::P(r, "1")}), 3),
                    ValidationError);
}

TEST_CASE("hypersurface k[x,y]/(xy)") {
    auto r = th::ring_xy();
    auto res = minimal_resolution(ModuleSpec::cyclic(r, {th::P(r, "x*y")}), 3);
    res.verify();
    CHECK(res.complete);
    CHECK(res.length() == 1);
    CHECK(res.module(1) == FreeModule({2}));
    auto b = betti(res);
    CHECK(b.ranks() == std::vector<std::size_t>{1, 1});
    CHECK(b.steps[1].at(2) == 1);
}

TEST_CASE("redundant generators are pruned") {
    auto r = th::ring_xy();
    // x*y is redundant inside (x); degree-stable order keeps x first
    auto res = minimal_resolution(ModuleSpec::cyclic(r, {th::P(r, "x"), th::P(r, "x*y")}), 3);
    CHECK(res.module(1).rank() == 1);
    CHECK(res.module(1).twist(0) == 1);
}

TEST_CASE("minimalize_presentation prunes unit entries") {
    auto r = th::ring_xy();
    SUBCASE("already minimal is untouched") {
        GradedMatrix p(r, FreeModule({0}), FreeModule({2}));
        p.set_entry(0, 0, th::P(r, "x*y"));
        auto q = minimalize_presentation(p);
        CHECK(q == p);
    }
    SUBCASE("coker of a unit is the zero module") {
        GradedMatrix p(r, FreeModule({0}), FreeModule({0}));
        p.set_entry(0, 0, th::P(r, "1"));
        auto q = minimalize_presentation(p);
        CHECK(q.target().rank() == 0);
        CHECK_THROWS_AS(minimal_resolution(ModuleSpec::presented(p), 2), ValidationError);
    }
    SUBCASE("mixed presentation drops one generator") {
        // target R(0) + R(-1), relation e_2 = x e_1 folds into rank 1
        GradedMatrix p(r, FreeModule({0, 1}), FreeModule({1, 3}));
        p.set_entry(0, 0, th::P(r, "x"));
        p.set_entry(1, 0, th::P(r, "-1"));
        p.set_entry(0, 1, th::P(r, "x*y^2"));
        auto q = minimalize_presentation(p);
        CHECK(q.target().rank() == 1);
        auto res = minimal_resolution(ModuleSpec::presented(p), 2);
        res.verify();
        CHECK(res.module(0).rank() == 1);
    }
}

TEST_CASE("determinantal module: betti ranks (1,6,8,3) and computed twists") {
    auto res = th::mi_resolution();
    res.verify();
    CHECK(res.length() == 3);
    auto b = betti(res);
    CHECK(b.ranks() == std::vector<std::size_t>{1, 6, 8, 3});
    CHECK(res.module(1) == FreeModule({2, 2, 2, 4, 4, 4}));
    CHECK(res.module(2) == FreeModule({3, 3, 5, 5, 5, 5, 5, 5}));
    CHECK(res.module(3) == FreeModule({6, 6, 6}));
}

TEST_CASE("the two determinantal modules share a betti table") {
    auto r = th::ring_q4();
    std::vector<Polynomial> mj = {th::P(r, "x1^2 - x0*x2"),      th::P(r, "x0*x1 - x2*x3"),
                                  th::P(r, "x0^2 - x1*x3"),      th::P(r, "x2^4 - x1*x3^3"),
                                  th::P(r, "x1*x2^3 - x0*x3^3"), th::P(r, "x0*x2^3 - x3^4")};
    auto res_i = th::mi_resolution();
    auto res_j = minimal_resolution(ModuleSpec::cyclic(r, mj), 3);
    res_j.verify();
    CHECK(betti(res_i).ranks() == betti(res_j).ranks());
    CHECK(betti(res_i).str() == betti(res_j).str());
}

TEST_CASE("resolution is deterministic") {
    auto r1 = th::mi_resolution();
    auto r2 = th::mi_resolution();
    REQUIRE(r1.length() == r2.length());
    for (std::size_t i = 1; i <= r1.length(); ++i) CHECK(r1.diff(i) == r2.diff(i));
}

TEST_CASE("pinned reference differentials pass full verification") {
    auto res = th::mi_resolution();
    auto r = res.ring;
    std::map<int, GradedMatrix> pins;
    pins.emplace(2, th::reference_d2(r));
    pins.emplace(3, th::reference_d3(r));
    auto pinned = apply_fixture_differentials(res, pins);
    pinned.verify();
    CHECK(pinned.module(2) == FreeModule({3, 3, 5, 5, 5, 5, 5, 5}));
    CHECK(pinned.module(3) == FreeModule({6, 6, 6}));
}

TEST_CASE("truncated resolution over a quotient ring") {
    // R = k[x,y]/(xy), M = R/(x): infinite resolution, truncated at length 3
    auto s = th::ring_xy();
    auto r = make_quotient_ring(s, {th::P(s, "x*y")});
    auto res = minimal_resolution(ModuleSpec::cyclic(r, {th::P(r, "x")}), 3);
    res.verify();
    CHECK(!res.complete);
    CHECK(res.length() == 3);
    CHECK(betti(res).ranks() == std::vector<std::size_t>{1, 1, 1, 1});
}

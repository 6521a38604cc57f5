#include <doctest.h>

#include "test_helpers.hpp"

#include <random>

using namespace gmmp;

namespace {

struct Restricted {
    Resolution res;
    ExtBasis full;
    ExtBasis ext;
    RingPtr uring;
    DefiningSystemPins pins;
};

Restricted restricted_setup(bool with_pins) {
    auto pf = ProblemFile::load(th::data_path("mi_restricted.gmmp"));
    auto bp = build_problem(pf, std::nullopt);
    Restricted out{minimal_resolution(bp.spec, 3), ExtBasis(), ExtBasis(),
                   MasseyEngine::tangent_ring(3, "t"), DefiningSystemPins{}};
    auto ff = FixtureFile::load(pf.resolved_fixture_path());
    out.res = apply_fixture_differentials(out.res, build_fixture_diffs(ff, out.res));
    out.full = ExtBasis::compute(out.res);
    auto bf = build_fixture(ff, out.res, out.uring);
    out.full.inject_basis1(bf.basis);
    out.ext = out.full.restricted({22, 23, 24});
    if (with_pins) out.pins = bf.pins;
    return out;
}

Polynomial quad_part(const Polynomial& f) {
    Polynomial q = Polynomial::zero(f.ring());
    for (const auto& [m, c] : f.terms())
        if (m.degree() == 2) q.add_term(m, c);
    return q;
}

bool same_quadratic_span(const std::vector<Polynomial>& a, const std::vector<Polynomial>& b,
                         const RingPtr& u) {
    auto quadrics = monomials_of_degree(u->nvars(), 2, u->order());
    std::map<Monomial, std::size_t, MonomialDesc> idx{MonomialDesc{u->order()}};
    for (std::size_t i = 0; i < quadrics.size(); ++i) idx.emplace(quadrics[i], i);
    auto coords = [&](const Polynomial& f) {
        QVec v(quadrics.size());
        for (const auto& [m, c] : f.terms())
            if (m.degree() == 2) v[idx.at(m)] = c;
        return v;
    };
    SpanBuilder sa(quadrics.size()), sb(quadrics.size());
    for (const auto& f : a) sa.try_add(coords(quad_part(f)));
    for (const auto& f : b) sb.try_add(coords(quad_part(f)));
    if (sa.rank() != sb.rank()) return false;
    for (const auto& f : a)
        if (!sb.contains(coords(quad_part(f)))) return false;
    for (const auto& f : b)
        if (!sa.contains(coords(quad_part(f)))) return false;
    return true;
}

} // namespace

TEST_CASE("free module: hull is the base field") {
    auto r = th::ring_xy();
    auto res = minimal_resolution(ModuleSpec::cyclic(r, {}), 3);
    auto ext = ExtBasis::compute(res);
    MasseyEngine eng(ext, MasseyEngine::tangent_ring(0));
    CHECK(eng.cup_table().empty());
    auto ra = eng.compute_hull(4);
    CHECK(ra.tangent_dim == 0);
    CHECK(ra.relations.empty());
    CHECK(ra.stabilized);
    auto report = smoothness_report(ra);
    CHECK(report.find("vacuously smooth") != std::string::npos);
    // zero tangent space: the family is the unperturbed module
    auto vf = versal_family(res, ra);
    CHECK(vf.flatness_checked);
    CHECK(vf.comp1.empty());
    CHECK(vf.perturbed_generators.empty());
}

TEST_CASE("order-2 agreement: hull quadratic parts assemble from the cup table") {
    auto setup = restricted_setup(true);
    MasseyEngine eng(setup.ext, setup.uring);
    auto ra = eng.compute_hull(2, setup.pins);
    auto values = eng.cup_table();
    const auto u = setup.uring;
    REQUIRE(ra.relations.size() == 33);
    for (std::size_t j = 0; j < ra.relations.size(); ++j) {
        Polynomial fj2 = Polynomial::zero(u);
        for (const auto& v : values) fj2.add_term(v.index, v.cls[j]);
        CHECK(quad_part(ra.relations[j]) == fj2);
    }
}

TEST_CASE("hypersurface k[x,y]/(xy): smooth two-parameter family") {
    auto r = th::ring_xy();
    auto res = minimal_resolution(ModuleSpec::cyclic(r, {th::P(r, "x*y")}), 3);
    auto ext = ExtBasis::compute(res);
    auto uring = MasseyEngine::tangent_ring(2);
    MasseyEngine eng(ext, uring);

    auto values = eng.cup_table();
    auto census = MasseyEngine::census_of(values);
    CHECK(census.total == 3);
    CHECK(census.identically_zero == 3);

    auto ra = eng.compute_hull(6);
    CHECK(ra.tangent_dim == 2);
    CHECK(ra.obstruction_dim == 0);
    CHECK(ra.relations_all_zero());
    CHECK(ra.all_cups_identically_zero);
    CHECK(ra.stabilized);
    CHECK(ra.quotient.dim() == 1 + 2 + 3 + 4 + 5 + 6 + 7); // free tower to order 6
    auto report = smoothness_report(ra);
    CHECK(report.find("formally smooth") != std::string::npos);
    CHECK(report.find("cup products vanish identically") != std::string::npos);

    auto vf = versal_family(res, ra);
    CHECK(vf.flatness_checked);
    REQUIRE(vf.perturbed_generators.size() == 1);
    CHECK(vf.perturbed_generators[0] ==
          th::P(vf.combined_ring, "x*y + t1*x^2 + t2*y^2"));
}

TEST_CASE("restricted determinantal run with pinned choices") {
    auto setup = restricted_setup(true);
    MasseyEngine eng(setup.ext, setup.uring);
    auto ra = eng.compute_hull(5, setup.pins);
    auto u = setup.uring;

    // quadratic parts span exactly {t1^2, t1*t2, t2^2 - t1*t3}
    std::vector<Polynomial> expected = {th::P(u, "t1^2"), th::P(u, "t1*t2"),
                                        th::P(u, "t2^2 - t1*t3")};
    CHECK(same_quadratic_span(ra.nonzero_relations(), expected, u));

    // relations are purely quadratic: no corrections at orders 3..5
    for (const auto& f : ra.relations) CHECK(quad_part(f) == f);
    REQUIRE(ra.values_by_order.size() == 4);
    for (std::size_t k = 1; k < 4; ++k)
        for (const auto& v : ra.values_by_order[k]) CHECK(v.class_zero());

    // order-3 products sit on the pinned monomial basis and vanish in cohomology
    const auto& ord3 = ra.values_by_order[1];
    REQUIRE(ord3.size() == 3);
    CHECK(ord3[0].index == Monomial({0, 2, 1}));
    CHECK(ord3[1].index == Monomial({0, 1, 2}));
    CHECK(ord3[2].index == Monomial({0, 0, 3}));
    CHECK(!ord3[0].identically_zero()); // the (0,2,1) representative is a nonzero cochain
    CHECK(ord3[1].identically_zero());
    CHECK(ord3[2].identically_zero());

    CHECK(ra.stabilized);
    CHECK(ra.stabilized_at == 4);

    // order-2 census of the restricted table: 4 nonzero classes, 2 coboundaries
    CHECK(ra.census.total == 6);
    CHECK(ra.census.identically_zero == 0);
    CHECK(ra.census.cohomologically_zero == 2);
    CHECK(ra.census.nonzero == 4);

    // pinned choices are recorded as fixture entries
    std::size_t fixture_count = 0;
    for (const auto& e : ra.defining_system)
        if (e.choice == DefiningEntry::Choice::fixture) ++fixture_count;
    CHECK(fixture_count == 7); // e1,e2,e3 + (0,2,0),(0,1,1),(0,0,2),(0,2,1)

    // versal family matches the reference generators exactly
    auto vf = versal_family(setup.res, ra);
    CHECK(vf.flatness_checked);
    auto cr = vf.combined_ring;
    std::vector<std::string> expect = {
        "x1^2 - x0*x2 - x2*x3*t1 + x0*x3*t2 + x1*x3*t3",
        "x0*x1 - x2^2 - x1*x3*t1 + x0*x3*t3",
        "x0^2 - x1*x2 - x1*x3*t2",
        "x2^4 - x1*x3^3 + x1*x2^2*x3*t1 - x0*x2*x3^2*t2*t3 + x0*x3^3*t2^2*t3",
        "x1*x2^3 - x0*x3^3 + x1*x2^2*x3*t2 + x2^3*x3*t3",
        "x0*x2^3 - x2*x3^3 + x1*x2^2*x3*t3 - x0*x2*x3^2*t2^2 + x2^2*x3^2*t3^2"};
    REQUIRE(vf.perturbed_generators.size() == 6);
    for (std::size_t i = 0; i < 6; ++i)
        CHECK(vf.perturbed_generators[i] == th::P(cr, expect[i]));

    auto report = smoothness_report(ra);
    CHECK(report.find("Obstructed") != std::string::npos);
    CHECK(report.find("3 independent quadratic part(s)") != std::string::npos);
}

TEST_CASE("restricted run without pins: same quadratic span (choice independence)") {
    auto setup = restricted_setup(false);
    MasseyEngine eng(setup.ext, setup.uring);
    auto ra = eng.compute_hull(5);
    auto u = setup.uring;
    std::vector<Polynomial> expected = {th::P(u, "t1^2"), th::P(u, "t1*t2"),
                                        th::P(u, "t2^2 - t1*t3")};
    CHECK(same_quadratic_span(ra.nonzero_relations(), expected, u));
    // canonical choices need not be as sparse as the pinned ones, so no
    // stabilization claim here; flatness must hold regardless
    auto vf = versal_family(setup.res, ra);
    CHECK(vf.flatness_checked);
}

TEST_CASE("quadratic span is invariant under coboundary shifts of representatives") {
    auto pf = ProblemFile::load(th::data_path("mi_restricted.gmmp"));
    auto bp = build_problem(pf, std::nullopt);
    auto res = minimal_resolution(bp.spec, 3);
    auto ff = FixtureFile::load(pf.resolved_fixture_path());
    res = apply_fixture_differentials(res, build_fixture_diffs(ff, res));
    auto ext = ExtBasis::compute(res);
    auto uring = MasseyEngine::tangent_ring(3, "t");
    auto bf = build_fixture(ff, res, uring);

    // baseline
    ExtBasis base = ext;
    base.inject_basis1(bf.basis);
    MasseyEngine eng0(base.restricted({22, 23, 24}), uring);
    auto ra0 = eng0.compute_hull(2);

    // shift the kept representatives by coboundaries: classes are unchanged
    std::mt19937_64 rng(97);
    std::vector<GradedMatrix> cols = bf.basis;
    YonedaCochain zeta;
    zeta.level = 0;
    for (std::size_t n = 0; n <= res.length(); ++n) {
        HomSlice s(res.ring, res.module(n), res.module(n));
        QVec v(s.dim());
        for (auto& c : v)
            if (rng() % 3 == 0) c = Rational(static_cast<long>(rng() % 5) - 2);
        zeta.comps.emplace(n, s.matrix_of(v));
    }
    auto dz = yoneda_diff(res, zeta);
    cols[21] = cols[21] + dz.comp(1);
    cols[22] = cols[22] + dz.comp(1).scaled(Rational(-2));
    cols[23] = cols[23] + dz.comp(1).scaled(Rational(3));
    ExtBasis mixed = ext;
    mixed.inject_basis1(cols);
    MasseyEngine eng1(mixed.restricted({22, 23, 24}), uring);
    auto ra1 = eng1.compute_hull(2);

    CHECK(same_quadratic_span(ra0.nonzero_relations(), ra1.nonzero_relations(), uring));
}

TEST_CASE("restrict: identity and empty") {
    auto setup = restricted_setup(false);
    auto all = setup.full.restricted({1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12,
                                      13, 14, 15, 16, 17, 18, 19, 20, 21, 22, 23, 24});
    CHECK(all.dim1() == 24);
    std::vector<std::size_t> none;
    auto empty = setup.full.restricted(none);
    CHECK(empty.dim1() == 0);
    MasseyEngine eng(empty, MasseyEngine::tangent_ring(0));
    auto ra = eng.compute_hull(3);
    CHECK(ra.relations_all_zero());
    CHECK(ra.quotient.dim() == 1); // hull k
    CHECK_THROWS_AS(setup.full.restricted({25}), ValidationError);
    CHECK_THROWS_AS(setup.full.restricted({22, 22}), ValidationError);
}

TEST_CASE("hull dimension bookkeeping matches the selected bases") {
    auto setup = restricted_setup(true);
    MasseyEngine eng(setup.ext, setup.uring);
    auto ra = eng.compute_hull(4, setup.pins);
    // dim A_k = |bar basis| at every stage: 1 + 3 + 3 + 3 + 3
    CHECK(ra.quotient.dim() == 13);
    for (unsigned k = 2; k <= 4; ++k) CHECK(ra.quotient.bases()[k].size() == 3);
}

TEST_CASE("pinned defining-system entries are validated") {
    auto setup = restricted_setup(true);
    // corrupt one pinned choice: must be rejected with a diagnostic
    auto pins = setup.pins;
    auto it = pins.find(Monomial({0, 2, 0}));
    REQUIRE(it != pins.end());
    it->second.comps.at(1) =
        it->second.comp(1) + setup.ext.basis1()[0].comp(1); // no longer solves the equation
    MasseyEngine eng(setup.ext, setup.uring);
    CHECK_THROWS_AS(eng.compute_hull(3, pins), ValidationError);
}

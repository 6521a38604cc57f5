// Acceptance suite: one check block per shipped guarantee, each printing a
// PASS/FAIL line. All comparisons are exact (the arithmetic is exact).
#include <gmmp/massey.hpp>
#include <gmmp/pipeline.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

using namespace gmmp;

namespace {

int g_failures = 0;

void report(int number, const std::string& name, bool ok, const std::string& detail = "") {
    std::printf("%s: criterion %d: %s%s\n", ok ? "PASS" : "FAIL", number, name.c_str(),
                detail.empty() ? "" : ("  [" + detail + "]").c_str());
    if (!ok) ++g_failures;
}

void run_criterion(int number, const std::string& name, const std::function<bool(std::string&)>& fn) {
    std::string detail;
    bool ok = false;
    try {
        ok = fn(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    report(number, name, ok, detail);
}

std::string data(const std::string& name) {
    return std::string(GMMP_TEST_DATA_DIR) + "/" + name;
}

Polynomial parse(const RingPtr& r, const std::string& s) { return parse_poly(s, r); }

struct MiSetup {
    Resolution res;
    ExtBasis ext;        // injected full basis on the pinned frames
    RingPtr uring3;
    DefiningSystemPins pins;
};

MiSetup restricted_setup() {
    auto pf = ProblemFile::load(data("mi_restricted.gmmp"));
    auto bp = build_problem(pf, std::nullopt);
    MiSetup s{minimal_resolution(bp.spec, 3), ExtBasis(), MasseyEngine::tangent_ring(3, "t"),
              DefiningSystemPins{}};
    auto ff = FixtureFile::load(pf.resolved_fixture_path());
    s.res = apply_fixture_differentials(s.res, build_fixture_diffs(ff, s.res));
    s.ext = ExtBasis::compute(s.res);
    auto bf = build_fixture(ff, s.res, s.uring3);
    s.ext.inject_basis1(bf.basis);
    s.pins = bf.pins;
    return s;
}

QVec quad_coords(const Polynomial& f, const std::vector<Monomial>& quadrics,
                 const std::map<Monomial, std::size_t, MonomialDesc>& idx) {
    QVec v(quadrics.size());
    for (const auto& [m, c] : f.terms())
        if (m.degree() == 2) v[idx.at(m)] = c;
    return v;
}

} // namespace

int main() {
    // ---- criterion 1: minimal resolution of the first determinantal module
    run_criterion(1, "resolution of M_I: ranks (1,6,8,3), length 3, computed twists",
                  [&](std::string& detail) {
        auto pf = ProblemFile::load(data("mi.gmmp"));
        auto bp = build_problem(pf, std::nullopt);
        auto res = minimal_resolution(bp.spec, 3);
        res.verify(); // d∘d = 0, minimality, exactness (throws on failure)
        auto ranks = betti(res).ranks();
        std::ostringstream os;
        os << betti(res).str();
        detail = os.str();
        return res.length() == 3 && ranks == std::vector<std::size_t>{1, 6, 8, 3} &&
               res.module(1) == FreeModule({2, 2, 2, 4, 4, 4}) &&
               res.module(2) == FreeModule({3, 3, 5, 5, 5, 5, 5, 5}) &&
               res.module(3) == FreeModule({6, 6, 6});
    });

    // ---- criteria 2 and 3: tangent and obstruction dimensions
    run_criterion(2, "dim Ext^1 = 24 for M_I and 22 for M_J", [&](std::string& detail) {
        auto pi = ProblemFile::load(data("mi.gmmp"));
        auto pj = ProblemFile::load(data("mj.gmmp"));
        auto ri = minimal_resolution(build_problem(pi, std::nullopt).spec, 3);
        auto rj = minimal_resolution(build_problem(pj, std::nullopt).spec, 3);
        auto ei = ExtBasis::compute(ri);
        auto ej = ExtBasis::compute(rj);
        detail = "M_I: " + std::to_string(ei.dim1()) + ", M_J: " + std::to_string(ej.dim1());
        return ei.dim1() == 24 && ej.dim1() == 22;
    });

    run_criterion(3, "dim Ext^2 = 33 for M_I", [&](std::string& detail) {
        auto pf = ProblemFile::load(data("mi.gmmp"));
        auto res = minimal_resolution(build_problem(pf, std::nullopt).spec, 3);
        auto ext = ExtBasis::compute(res);
        detail = std::to_string(ext.dim2());
        return ext.dim2() == 33;
    });

    // ---- criterion 4: cup census with the injected reference basis
    run_criterion(4, "cup census 300 / 79 / 205 / 16 with the injected basis",
                  [&](std::string& detail) {
        auto pf = ProblemFile::load(data("mi.gmmp"));
        auto res = minimal_resolution(build_problem(pf, std::nullopt).spec, 3);
        auto ext = ExtBasis::compute(res);
        auto ff = FixtureFile::load(data("tangent24.fix"));
        auto uring = MasseyEngine::tangent_ring(24);
        ext.inject_basis1(build_fixture(ff, res, uring).basis);
        MasseyEngine eng(ext, uring);
        auto census = MasseyEngine::census_of(eng.cup_table());
        detail = std::to_string(census.total) + " / " + std::to_string(census.identically_zero) +
                 " / " + std::to_string(census.cohomologically_zero) + " / " +
                 std::to_string(census.nonzero);
        return census.total == 300 && census.identically_zero == 79 &&
               census.cohomologically_zero == 205 && census.nonzero == 16;
    });

    // ---- criterion 5: restricted hull to order 5
    run_criterion(5, "restricted hull: quadratic span, stabilization, vanishing order-3 classes",
                  [&](std::string& detail) {
        auto s = restricted_setup();
        MasseyEngine eng(s.ext.restricted({22, 23, 24}), s.uring3);
        auto ra = eng.compute_hull(5, s.pins);

        const auto quadrics = monomials_of_degree(3, 2, s.uring3->order());
        std::map<Monomial, std::size_t, MonomialDesc> idx{MonomialDesc{s.uring3->order()}};
        for (std::size_t i = 0; i < quadrics.size(); ++i) idx.emplace(quadrics[i], i);
        std::vector<Polynomial> expected = {parse(s.uring3, "t1^2"), parse(s.uring3, "t1*t2"),
                                            parse(s.uring3, "t2^2 - t1*t3")};
        SpanBuilder got(quadrics.size()), want(quadrics.size());
        bool span_eq = true;
        for (const auto& f : expected) want.try_add(quad_coords(f, quadrics, idx));
        for (const auto& f : ra.nonzero_relations()) {
            got.try_add(quad_coords(f, quadrics, idx));
            if (!want.contains(quad_coords(f, quadrics, idx))) span_eq = false;
        }
        span_eq = span_eq && got.rank() == 3;

        // relations purely quadratic: no corrections at orders 3, 4, 5
        bool no_corrections = true;
        for (const auto& f : ra.relations)
            for (const auto& [m, c] : f.terms())
                if (m.degree() != 2) no_corrections = false;

        // the order-3 products sit on (0,2,1), (0,1,2), (0,0,3) and vanish
        bool order3_ok = ra.values_by_order.size() >= 2 && ra.values_by_order[1].size() == 3;
        if (order3_ok) {
            const auto& v = ra.values_by_order[1];
            order3_ok = v[0].index == Monomial({0, 2, 1}) && v[1].index == Monomial({0, 1, 2}) &&
                        v[2].index == Monomial({0, 0, 3}) && v[0].class_zero() &&
                        v[1].class_zero() && v[2].class_zero();
        }
        detail = "stabilized at " + std::to_string(ra.stabilized_at);
        return span_eq && no_corrections && order3_ok && ra.stabilized;
    });

    // ---- criterion 6: versal family generators and flatness
    run_criterion(6, "versal family matches the reference generators; flatness holds",
                  [&](std::string& detail) {
        auto s = restricted_setup();
        MasseyEngine eng(s.ext.restricted({22, 23, 24}), s.uring3);
        auto ra = eng.compute_hull(5, s.pins);
        auto vf = versal_family(s.res, ra); // asserts d^S∘d^S ≡ 0 mod (f)+m^6 internally
        if (vf.perturbed_generators.size() != 6 || !vf.flatness_checked) return false;
        const auto cr = vf.combined_ring;
        const std::vector<std::string> expect = {
            "x1^2 - x0*x2 - x2*x3*t1 + x0*x3*t2 + x1*x3*t3",
            "x0*x1 - x2^2 - x1*x3*t1 + x0*x3*t3",
            "x0^2 - x1*x2 - x1*x3*t2",
            "x2^4 - x1*x3^3 + x1*x2^2*x3*t1 - x0*x2*x3^2*t2*t3 + x0*x3^3*t2^2*t3",
            "x1*x2^3 - x0*x3^3 + x1*x2^2*x3*t2 + x2^3*x3*t3",
            "x0*x2^3 - x2*x3^3 + x1*x2^2*x3*t3 - x0*x2*x3^2*t2^2 + x2^2*x3^2*t3^2"};
        for (std::size_t i = 0; i < 6; ++i) {
            if (!(vf.perturbed_generators[i] == parse(cr, expect[i]))) {
                detail = "generator " + std::to_string(i + 1) + " differs";
                return false;
            }
        }
        // flatness also holds for the unpinned (canonical) run
        auto ra2 = eng.compute_hull(5);
        auto vf2 = versal_family(s.res, ra2);
        return vf2.flatness_checked;
    });

    // ---- criterion 7: oracle suite
    run_criterion(7, "oracle suite (free module, hypersurface, random cochains, lex rerun)",
                  [&](std::string& detail) {
        // (a) free module: no tangent directions, hull = k
        auto rxy = PolyRing::free_ring({"x", "y"});
        auto free_res = minimal_resolution(ModuleSpec::cyclic(rxy, {}), 3);
        auto free_ext = ExtBasis::compute(free_res);
        MasseyEngine free_eng(free_ext, MasseyEngine::tangent_ring(0));
        auto free_ra = free_eng.compute_hull(4);
        if (!(free_ext.dim1() == 0 && free_ra.relations.empty() && free_ra.quotient.dim() == 1)) {
            detail = "(a) free module";
            return false;
        }

        // (b) hypersurface: d = 2, r = 0, smooth to order 6, versal check
        auto res = minimal_resolution(ModuleSpec::cyclic(rxy, {parse(rxy, "x*y")}), 3);
        auto ext = ExtBasis::compute(res);
        MasseyEngine eng(ext, MasseyEngine::tangent_ring(2));
        auto ra = eng.compute_hull(6);
        auto vf = versal_family(res, ra);
        if (!(ext.dim1() == 2 && ext.dim2() == 0 && ra.relations_all_zero() && ra.stabilized &&
              ra.all_cups_identically_zero && vf.flatness_checked &&
              vf.perturbed_generators.size() == 1 &&
              vf.perturbed_generators[0] == parse(vf.combined_ring, "x*y + t1*x^2 + t2*y^2"))) {
            detail = "(b) hypersurface";
            return false;
        }

        // (c) 100 randomized homogeneous cochains per fixture module
        auto pf = ProblemFile::load(data("mi.gmmp"));
        auto mi = minimal_resolution(build_problem(pf, std::nullopt).spec, 3);
        auto mi_ext = ExtBasis::compute(mi);
        std::mt19937_64 rng(2026);
        auto random_cochain = [&](const Resolution& r) {
            YonedaCochain a;
            a.level = 1;
            for (std::size_t n = 1; n <= r.length(); ++n) {
                HomSlice slice(r.ring, r.module(n - 1), r.module(n));
                QVec v(slice.dim());
                for (auto& c : v)
                    if (rng() % 5 == 0) c = Rational(static_cast<long>(rng() % 9) - 4);
                a.comps.emplace(n, slice.matrix_of(v));
            }
            return a;
        };
        for (int trial = 0; trial < 100; ++trial) {
            const Resolution& r = (trial % 2 == 0) ? mi : res;
            const ExtBasis& e = (trial % 2 == 0) ? mi_ext : ext;
            auto a = random_cochain(r);
            auto b = random_cochain(r);
            auto da = yoneda_diff(r, a);
            if (!yoneda_diff(r, da).is_identically_zero()) {
                detail = "(c) d∘d != 0";
                return false;
            }
            if (r.length() >= 3) {
                auto lhs = yoneda_diff(r, cup(a, b)).comp(3);
                auto rhs = cup(da, b).comp(3) - cup(a, yoneda_diff(r, b)).comp(3);
                if (!(lhs == rhs)) {
                    detail = "(c) Leibniz";
                    return false;
                }
            }
            if (r.length() >= 2) {
                // coboundaries have zero class and an exact witness
                if (!qvec_is_zero(e.class_of(da.comp(2)))) {
                    detail = "(c) class of coboundary";
                    return false;
                }
                auto eta = e.solve_coboundary(da.comp(2));
                if (!eta || !(yoneda_diff(r, *eta).comp(2) == da.comp(2))) {
                    detail = "(c) coboundary witness";
                    return false;
                }
            }
        }

        // (d) dimensions are monomial-order independent
        RunOptions lexopt;
        lexopt.command = "ext";
        lexopt.include_timing = false;
        lexopt.monomial_order = MonomialOrder::lex;
        auto mi_lex = run_pipeline(ProblemFile::load(data("mi.gmmp")), lexopt);
        auto mj_lex = run_pipeline(ProblemFile::load(data("mj.gmmp")), lexopt);
        auto xy_lex = run_pipeline(ProblemFile::load(data("xy.gmmp")), lexopt);
        if (!(mi_lex.report["ext1_dim"] == 24 && mi_lex.report["ext2_dim"] == 33 &&
              mj_lex.report["ext1_dim"] == 22 && xy_lex.report["ext1_dim"] == 2 &&
              xy_lex.report["ext2_dim"] == 0)) {
            detail = "(d) lex rerun";
            return false;
        }
        return true;
    });

    // ---- criterion 8: byte-identical reports
    run_criterion(8, "determinism: byte-identical JSON for every command on every fixture",
                  [&](std::string& detail) {
        struct Job {
            const char* file;
            const char* cmd;
            std::optional<unsigned> order;
        };
        const std::vector<Job> jobs = {
            {"mi.gmmp", "resolve", {}},          {"mi.gmmp", "ext", {}},
            {"mi.gmmp", "cup-table", {}},        {"mj.gmmp", "resolve", {}},
            {"mj.gmmp", "ext", {}},              {"xy.gmmp", "resolve", {}},
            {"xy.gmmp", "ext", {}},              {"xy.gmmp", "cup-table", {}},
            {"xy.gmmp", "hull", 6},              {"xy.gmmp", "versal", 6},
            {"mi_restricted.gmmp", "hull", {}},  {"mi_restricted.gmmp", "versal", {}},
        };
        for (const auto& job : jobs) {
            RunOptions opt;
            opt.command = job.cmd;
            opt.order = job.order;
            opt.include_timing = false;
            auto pf = ProblemFile::load(data(job.file));
            auto a = run_pipeline(pf, opt);
            auto b = run_pipeline(pf, opt);
            if (a.report.dump(2) != b.report.dump(2)) {
                detail = std::string(job.cmd) + " on " + job.file;
                return false;
            }
        }
        // the census fixture run as well
        RunOptions opt;
        opt.command = "cup-table";
        opt.include_timing = false;
        opt.fixture_override = data("tangent24.fix");
        auto pf = ProblemFile::load(data("mi.gmmp"));
        if (run_pipeline(pf, opt).report.dump(2) != run_pipeline(pf, opt).report.dump(2)) {
            detail = "cup-table with fixture";
            return false;
        }
#ifdef GMMP_CLI_PATH
        // and once through the installed binary, modulo the trailing timing line
        auto cli_json = [&](const std::string& out) {
            const std::string cmd = std::string(GMMP_CLI_PATH) + " versal " +
                                    data("mi_restricted.gmmp") + " --json " + out +
                                    " > /dev/null 2>&1";
            if (std::system(cmd.c_str()) != 0) return std::string();
            std::ifstream in(out);
            std::ostringstream buf;
            std::string line;
            while (std::getline(in, line)) {
                if (line.find("\"timing_ms\"") != std::string::npos) continue;
                buf << line << '\n';
            }
            return buf.str();
        };
        const std::string a = cli_json("/tmp/gmmp_det_a.json");
        const std::string b = cli_json("/tmp/gmmp_det_b.json");
        if (a.empty() || a != b) {
            detail = "binary-level JSON differs";
            return false;
        }
#endif
        return true;
    });

    if (g_failures == 0) {
        std::printf("acceptance: all criteria passed\n");
        return EXIT_SUCCESS;
    }
    std::printf("acceptance: %d criterion/criteria FAILED\n", g_failures);
    return EXIT_FAILURE;
}

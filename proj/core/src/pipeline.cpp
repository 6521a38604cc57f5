#include "gmmp/pipeline.hpp"

#include <chrono>
#include <sstream>

namespace gmmp {

namespace {

Json betti_json(const BettiTable& t) {
    Json out = Json::array();
    for (const auto& step : t.steps) {
        Json s = Json::array();
        for (const auto& [tw, k] : step) s.push_back(Json::array({tw, k}));
        out.push_back(std::move(s));
    }
    return out;
}

Json index_json(const MultiIndex& m) {
    Json a = Json::array();
    for (std::size_t i = 0; i < m.nvars(); ++i) a.push_back(m.exp(i));
    return a;
}

Json values_json(const std::vector<MasseyValue>& vals) {
    Json a = Json::array();
    for (const auto& v : vals) {
        Json e;
        e["index"] = index_json(v.index);
        e["identically_zero"] = v.identically_zero();
        e["class_zero"] = v.class_zero();
        a.push_back(std::move(e));
    }
    return a;
}

struct Stage {
    BuiltProblem bp;
    Resolution res;
    std::optional<ExtBasis> ext;       // full basis (possibly injected)
    std::optional<ExtBasis> working;   // after restriction
    RingPtr uring;
    std::vector<std::size_t> restrict_indices;
};

} // namespace

RunResult run_pipeline(const ProblemFile& pf, const RunOptions& opt) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::string& cmd = opt.command;
    check(cmd == "resolve" || cmd == "ext" || cmd == "cup-table" || cmd == "hull" ||
              cmd == "versal",
          "unknown command '" + cmd + "'");

    Stage st;
    st.bp = build_problem(pf, opt.monomial_order);
    st.res = minimal_resolution(st.bp.spec, opt.resolution_length);
    st.res.verify();

    Json report;
    report["command"] = cmd;
    {
        Json ring;
        ring["variables"] = st.bp.ring->var_names();
        ring["monomial_order"] = to_string(st.bp.ring->order());
        Json quot = Json::array();
        for (const auto& g : st.bp.ring->quotient_gb()) quot.push_back(g.str());
        ring["quotient_basis"] = std::move(quot);
        report["ring"] = std::move(ring);
    }
    {
        Json mod;
        mod["kind"] = st.bp.spec.kind == ModuleSpec::Kind::cyclic ? "cyclic" : "presented";
        if (st.bp.spec.kind == ModuleSpec::Kind::cyclic) {
            Json gens = Json::array();
            for (const auto& g : st.bp.spec.ideal_gens) gens.push_back(g.str());
            mod["generators"] = std::move(gens);
        }
        report["module"] = std::move(mod);
    }

    report["betti"] = betti_json(betti(st.res));
    report["resolution_length"] = st.res.length();
    report["resolution_complete"] = st.res.complete;
    {
        Json mods = Json::array();
        for (const auto& m : st.res.modules) mods.push_back(m.str());
        report["modules"] = std::move(mods);
    }

    std::ostringstream text;
    text << "module over " << (st.bp.ring->is_quotient() ? "quotient ring " : "ring ");
    text << "k[";
    for (std::size_t i = 0; i < st.bp.ring->nvars(); ++i)
        text << (i ? "," : "") << st.bp.ring->var_names()[i];
    text << "]\n";
    text << "resolution: ";
    for (std::size_t i = 0; i < st.res.modules.size(); ++i)
        text << (i ? " <- " : "") << st.res.module(i).str();
    text << (st.res.complete ? "  (complete)" : "  (truncated)") << "\n";
    text << "betti: " << betti(st.res).str() << "\n";

    auto finish = [&](Json& rep) {
        if (opt.include_timing) {
            const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                std::chrono::steady_clock::now() - t0)
                                .count();
            rep["timing_ms"] = static_cast<long long>(ms);
        }
        return RunResult{rep, text.str()};
    };

    if (cmd == "resolve") return finish(report);

    // fixture differentials must be applied before Ext machinery is built
    std::string fixture_path =
        opt.fixture_override ? *opt.fixture_override : pf.resolved_fixture_path();
    FixtureFile ff;
    const bool have_fixture = !fixture_path.empty();
    if (have_fixture) ff = FixtureFile::load(fixture_path);

    st.restrict_indices =
        opt.restrict_override ? *opt.restrict_override : pf.restrict_indices;

    std::optional<BuiltFixture> built;
    if (have_fixture) {
        // differentials first: they change the frames everything else lives in
        auto pinned = build_fixture_diffs(ff, st.res);
        if (!pinned.empty()) st.res = apply_fixture_differentials(st.res, pinned);
    }
    st.ext = ExtBasis::compute(st.res);
    if (have_fixture) {
        RingPtr pin_ring = MasseyEngine::tangent_ring(
            st.restrict_indices.empty() ? st.ext->dim1() : st.restrict_indices.size(),
            pf.tangent_stem);
        built = build_fixture(ff, st.res, pin_ring);
        if (!built->basis.empty()) st.ext->inject_basis1(built->basis);
    }

    report["ext1_dim"] = st.ext->dim1();
    report["ext2_dim"] = st.ext->dim2();
    text << "dim Ext^1 = " << st.ext->dim1() << ", dim Ext^2 = " << st.ext->dim2() << "\n";

    if (cmd == "ext") return finish(report);

    if (!st.restrict_indices.empty()) {
        st.working = st.ext->restricted(st.restrict_indices);
        Json r = Json::array();
        for (auto i : st.restrict_indices) r.push_back(i);
        report["restricted_to"] = std::move(r);
        text << "restricted to tangent directions:";
        for (auto i : st.restrict_indices) text << " " << i;
        text << "\n";
    } else {
        st.working = *st.ext;
    }
    st.uring = MasseyEngine::tangent_ring(st.working->dim1(), pf.tangent_stem);
    {
        Json tv = Json::array();
        for (const auto& v : st.uring->var_names()) tv.push_back(v);
        report["tangent_variables"] = std::move(tv);
    }

    MasseyEngine engine(*st.working, st.uring);

    if (cmd == "cup-table") {
        auto values = engine.cup_table(built ? built->pins : DefiningSystemPins{});
        auto census = MasseyEngine::census_of(values);
        Json cj;
        cj["total"] = census.total;
        cj["identically_zero"] = census.identically_zero;
        cj["cohomologically_zero"] = census.cohomologically_zero;
        cj["nonzero"] = census.nonzero;
        report["cup_census"] = std::move(cj);
        report["cup_values"] = values_json(values);
        text << "cup products: " << census.total << " total, " << census.identically_zero
             << " identically zero, " << census.cohomologically_zero
             << " cohomologically zero, " << census.nonzero << " nonzero\n";
        return finish(report);
    }

    const unsigned order = opt.order ? *opt.order : pf.target_order.value_or(3);
    RelationAlgebra ra =
        engine.compute_hull(order, built ? built->pins : DefiningSystemPins{});

    {
        Json cj;
        cj["total"] = ra.census.total;
        cj["identically_zero"] = ra.census.identically_zero;
        cj["cohomologically_zero"] = ra.census.cohomologically_zero;
        cj["nonzero"] = ra.census.nonzero;
        report["cup_census"] = std::move(cj);
    }
    {
        Json mj = Json::array();
        for (std::size_t k = 0; k < ra.values_by_order.size(); ++k) {
            Json e;
            e["order"] = k + 2;
            e["values"] = values_json(ra.values_by_order[k]);
            mj.push_back(std::move(e));
        }
        report["massey_values"] = std::move(mj);
    }
    {
        Json rels = Json::array();
        for (const auto& f : ra.nonzero_relations()) rels.push_back(f.str());
        report["relations"] = std::move(rels);
    }
    {
        Json ds = Json::array();
        for (const auto& e : ra.defining_system) {
            Json d;
            d["index"] = index_json(e.index);
            d["choice"] = to_string(e.choice);
            d["identically_zero"] = e.cochain.is_identically_zero();
            ds.push_back(std::move(d));
        }
        report["defining_system"] = std::move(ds);
    }
    report["stabilized"] = ra.stabilized;
    report["stabilized_at"] = ra.stabilized_at;
    report["order"] = ra.order;
    const std::string smooth = smoothness_report(ra);
    report["smoothness"] = smooth;

    text << "hull to order " << ra.order << ": ";
    const auto rels = ra.nonzero_relations();
    if (rels.empty()) {
        text << "no relations\n";
    } else {
        text << rels.size() << " nonzero relation(s):\n";
        for (const auto& f : rels) text << "  " << f.str() << "\n";
    }
    text << (ra.stabilized ? "stabilized at order " + std::to_string(ra.stabilized_at)
                           : std::string("not stabilized within the computed order"))
         << "\n";
    text << smooth;

    if (cmd == "hull") return finish(report);

    VersalFamily vf = versal_family(st.res, ra);
    {
        Json vj = Json::array();
        for (const auto& g : vf.perturbed_generators) vj.push_back(g.str());
        report["versal_ideal"] = std::move(vj);
        report["flatness_checked"] = vf.flatness_checked;
    }
    text << "versal family";
    if (!vf.perturbed_generators.empty()) {
        text << " generators:\n";
        for (const auto& g : vf.perturbed_generators) text << "  " << g.str() << "\n";
    } else {
        text << ": perturbed differentials computed (non-cyclic module)\n";
    }
    text << "flatness to order " << ra.order << ": verified\n";
    return finish(report);
}

} // namespace gmmp

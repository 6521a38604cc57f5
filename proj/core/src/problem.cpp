#include "gmmp/problem.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace gmmp {

namespace {

std::string strip(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::string drop_comment(const std::string& s) {
    auto pos = s.find('#');
    return pos == std::string::npos ? s : s.substr(0, pos);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> out;
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

std::vector<ProblemFile::Src> split_bar(const std::string& s, std::size_t line) {
    std::vector<ProblemFile::Src> out;
    std::string cur;
    for (char c : s) {
        if (c == '|') {
            out.push_back({strip(cur), line});
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back({strip(cur), line});
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    check(in.good(), "cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string dir_of(const std::string& path) {
    auto pos = path.find_last_of('/');
    return pos == std::string::npos ? std::string(".") : path.substr(0, pos);
}

} // namespace

ProblemFile ProblemFile::load(const std::string& path) {
    return parse(read_file(path), dir_of(path));
}

ProblemFile ProblemFile::parse(const std::string& text, const std::string& base_dir) {
    ProblemFile pf;
    pf.base_dir = base_dir;
    std::istringstream in(text);
    std::string raw;
    std::size_t lineno = 0;
    bool have_ring = false, have_order = false;
    while (std::getline(in, raw)) {
        ++lineno;
        const std::string line = strip(drop_comment(raw));
        if (line.empty()) continue;
        auto colon = line.find(':');
        check(colon != std::string::npos,
              "problem file line " + std::to_string(lineno) + ": expected 'key: value'");
        const std::string key = strip(line.substr(0, colon));
        const std::string value = strip(line.substr(colon + 1));
        if (key == "ring") {
            check(!have_ring, "duplicate 'ring' line " + std::to_string(lineno));
            pf.ring_vars = split_ws(value);
            check(!pf.ring_vars.empty(), "ring needs at least one variable");
            have_ring = true;
        } else if (key == "monomial-order") {
            check(!have_order, "duplicate 'monomial-order' line " + std::to_string(lineno));
            pf.order = monomial_order_from_string(value);
            have_order = true;
        } else if (key == "quotient") {
            pf.quotient_srcs.push_back({value, lineno});
        } else if (key == "generator") {
            pf.generator_srcs.push_back({value, lineno});
        } else if (key == "row-twists") {
            check(pf.row_twists.empty(), "duplicate 'row-twists' line " + std::to_string(lineno));
            for (const auto& t : split_ws(value)) pf.row_twists.push_back(std::stoi(t));
        } else if (key == "matrix-row") {
            pf.matrix_rows.push_back(split_bar(value, lineno));
        } else if (key == "target-order") {
            pf.target_order = static_cast<unsigned>(std::stoul(value));
        } else if (key == "restrict") {
            for (const auto& t : split_ws(value))
                pf.restrict_indices.push_back(std::stoul(t));
        } else if (key == "fixture-basis") {
            pf.fixture_path = value;
        } else if (key == "tangent-stem") {
            pf.tangent_stem = value;
        } else {
            throw ValidationError("problem file line " + std::to_string(lineno) +
                                  ": unknown key '" + key + "'");
        }
    }
    check(have_ring, "problem file is missing the 'ring' line");
    check(!(pf.generator_srcs.empty() && pf.matrix_rows.empty()),
          "problem file defines no module (need 'generator' or 'matrix-row' lines)");
    check(!(!pf.generator_srcs.empty() && pf.is_presented()),
          "problem file mixes cyclic and presented module blocks");
    if (!pf.matrix_rows.empty())
        check(pf.row_twists.size() == pf.matrix_rows.size(),
              "'row-twists' must list one twist per matrix row");
    return pf;
}

std::string ProblemFile::resolved_fixture_path() const {
    if (fixture_path.empty()) return {};
    if (!fixture_path.empty() && fixture_path.front() == '/') return fixture_path;
    return base_dir + "/" + fixture_path;
}

namespace {

Polynomial parse_src(const ProblemFile::Src& src, const RingPtr& ring) {
    return parse_poly_at(src.text, ring, src.line, 1);
}

// Column twists of a matrix given by entry strings, inferred from entry
// degrees against the known target twists.
GradedMatrix matrix_from_rows(const RingPtr& ring, const FreeModule& target,
                              const std::vector<std::vector<ProblemFile::Src>>& rows,
                              const std::string& what) {
    check(rows.size() == target.rank(),
          what + ": expected " + std::to_string(target.rank()) + " rows, got " +
              std::to_string(rows.size()));
    const std::size_t ncols = rows.empty() ? 0 : rows[0].size();
    for (const auto& r : rows)
        check(r.size() == ncols, what + ": ragged rows");
    std::vector<std::vector<Polynomial>> entries(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (const auto& s : rows[i]) entries[i].push_back(parse_src(s, ring));

    // zero columns are trivial relations: drop them (their twist cannot be
    // inferred and they change nothing)
    std::vector<std::size_t> kept_cols;
    std::vector<int> col_twists;
    for (std::size_t j = 0; j < ncols; ++j) {
        std::optional<int> tw;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (entries[i][j].is_zero()) continue;
            auto h = entries[i][j].homogeneous_degree();
            check(h.has_value(), what + ": entry (" + std::to_string(i + 1) + "," +
                                     std::to_string(j + 1) + ") is inhomogeneous");
            const int t = static_cast<int>(*h) + target.twist(i);
            check(!tw || *tw == t, what + ": column " + std::to_string(j + 1) +
                                       " has inconsistent entry degrees");
            tw = t;
        }
        if (!tw) continue;
        kept_cols.push_back(j);
        col_twists.push_back(*tw);
    }
    GradedMatrix m(ring, target, FreeModule(col_twists));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < kept_cols.size(); ++j)
            m.set_entry(i, j, entries[i][kept_cols[j]]);
    return m;
}

// Same but with known source twists (no inference), e.g. pinned alpha
// components whose shape the resolution dictates.
GradedMatrix matrix_from_rows_shaped(const RingPtr& ring, const FreeModule& target,
                                     const FreeModule& source,
                                     const std::vector<std::vector<ProblemFile::Src>>& rows,
                                     const std::string& what) {
    check(rows.size() == target.rank(),
          what + ": expected " + std::to_string(target.rank()) + " rows, got " +
              std::to_string(rows.size()));
    GradedMatrix m(ring, target, source);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        check(rows[i].size() == source.rank(),
              what + ": row " + std::to_string(i + 1) + " has " +
                  std::to_string(rows[i].size()) + " entries, expected " +
                  std::to_string(source.rank()));
        for (std::size_t j = 0; j < source.rank(); ++j) {
            Polynomial p = parse_src(rows[i][j], ring);
            try {
                m.set_entry(i, j, std::move(p));
            } catch (const ValidationError& e) {
                throw ValidationError(what + ": entry (" + std::to_string(i + 1) + "," +
                                      std::to_string(j + 1) + "): " + e.what());
            }
        }
    }
    return m;
}

} // namespace

BuiltProblem build_problem(const ProblemFile& pf, std::optional<MonomialOrder> order_override) {
    const MonomialOrder order = order_override.value_or(pf.order);
    RingPtr ring = PolyRing::free_ring(pf.ring_vars, order);
    if (!pf.quotient_srcs.empty()) {
        std::vector<Polynomial> qgens;
        for (const auto& s : pf.quotient_srcs) {
            Polynomial g = parse_src(s, ring);
            check(g.is_homogeneous(),
                  "quotient generator at line " + std::to_string(s.line) + " is inhomogeneous");
            qgens.push_back(std::move(g));
        }
        ring = make_quotient_ring(ring, qgens);
    }

    BuiltProblem bp;
    bp.ring = ring;
    if (!pf.is_presented()) {
        std::vector<Polynomial> gens;
        for (const auto& s : pf.generator_srcs) {
            Polynomial g = parse_src(s, ring);
            check(g.is_homogeneous(),
                  "module generator at line " + std::to_string(s.line) + " is inhomogeneous");
            gens.push_back(std::move(g));
        }
        bp.spec = ModuleSpec::cyclic(ring, std::move(gens));
    } else {
        bp.spec = ModuleSpec::presented(
            matrix_from_rows(ring, FreeModule(pf.row_twists), pf.matrix_rows, "presentation"));
    }
    return bp;
}

FixtureFile FixtureFile::load(const std::string& path) { return parse(read_file(path)); }

FixtureFile FixtureFile::parse(const std::string& text) {
    FixtureFile ff;
    std::istringstream in(text);
    std::string raw;
    std::size_t lineno = 0;
    Section* current = nullptr;
    while (std::getline(in, raw)) {
        ++lineno;
        const std::string line = strip(drop_comment(raw));
        if (line.empty()) continue;
        const auto toks = split_ws(line);
        if (toks[0] == "basis") {
            // optional source-module annotation, e.g. "basis Hom(L1, L0)"
            if (toks.size() > 1) {
                std::string annot;
                for (std::size_t t = 1; t < toks.size(); ++t) annot += toks[t];
                check(annot == "Hom(L1,L0)" || annot == "Hom(L1,R)",
                      "fixture line " + std::to_string(lineno) +
                          ": basis section must be a Hom(L1, L0) table");
            }
            ff.sections.push_back(Section{Section::Kind::basis, 0, {}, {}, lineno});
            current = &ff.sections.back();
        } else if (toks[0] == "differential") {
            check(toks.size() == 2, "fixture line " + std::to_string(lineno) +
                                        ": expected 'differential <i>'");
            Section s{Section::Kind::differential, std::stoi(toks[1]), {}, {}, lineno};
            ff.sections.push_back(std::move(s));
            current = &ff.sections.back();
        } else if (toks[0] == "alpha") {
            check(toks.size() == 3, "fixture line " + std::to_string(lineno) +
                                        ": expected 'alpha <n1,n2,..> <component>'");
            Section s{Section::Kind::alpha, std::stoi(toks[2]), {}, {}, lineno};
            std::string expstr = toks[1];
            std::replace(expstr.begin(), expstr.end(), ',', ' ');
            for (const auto& e : split_ws(expstr))
                s.alpha_index.push_back(static_cast<unsigned>(std::stoul(e)));
            ff.sections.push_back(std::move(s));
            current = &ff.sections.back();
        } else {
            auto colon = line.find(':');
            check(colon != std::string::npos && (strip(line.substr(0, colon)) == "vec" ||
                                                 strip(line.substr(0, colon)) == "row"),
                  "fixture line " + std::to_string(lineno) + ": expected a section header, "
                  "'vec: ...' or 'row: ...'");
            check(current != nullptr,
                  "fixture line " + std::to_string(lineno) + ": data before any section header");
            current->rows.push_back(split_bar(strip(line.substr(colon + 1)), lineno));
        }
    }
    return ff;
}

std::map<int, GradedMatrix> build_fixture_diffs(const FixtureFile& ff, const Resolution& res) {
    std::map<int, GradedMatrix> out;
    check(res.modules.size() >= 2, "fixture requires a module with relations (L1 present)");
    for (const auto& s : ff.sections) {
        if (s.kind != FixtureFile::Section::Kind::differential) continue;
        check(s.number == 2 || s.number == 3, "fixture can pin differentials 2 and 3 only");
        FreeModule target;
        if (s.number == 2) {
            target = res.module(1);
        } else {
            auto prev = out.find(2);
            target = prev != out.end()
                         ? prev->second.source()
                         : (res.modules.size() > 2 ? res.module(2) : FreeModule(std::vector<int>{}));
        }
        check(target.rank() > 0, "fixture pins differential " + std::to_string(s.number) +
                                     " but the module is missing");
        GradedMatrix d = matrix_from_rows(res.ring, target, s.rows,
                                          "fixture differential " + std::to_string(s.number));
        check(out.emplace(s.number, std::move(d)).second,
              "fixture pins differential " + std::to_string(s.number) + " twice");
    }
    return out;
}

BuiltFixture build_fixture(const FixtureFile& ff, const Resolution& res, const RingPtr& uring) {
    BuiltFixture bf;
    bf.pins = DefiningSystemPins{MonomialDesc{uring->order()}};
    const RingPtr& ring = res.ring;
    const FreeModule l0 = res.module(0);
    check(res.modules.size() >= 2, "fixture requires a module with relations (L1 present)");
    const FreeModule l1 = res.module(1);
    const FreeModule l2 = res.modules.size() > 2 ? res.module(2) : FreeModule(std::vector<int>{});

    std::map<MultiIndex, std::map<int, GradedMatrix>, MonomialDesc> alpha_parts{
        MonomialDesc{uring->order()}};

    for (const auto& s : ff.sections) {
        switch (s.kind) {
            case FixtureFile::Section::Kind::basis: {
                check(l0.rank() == 1, "fixture 'basis' section requires a cyclic module");
                for (const auto& vec : s.rows) {
                    std::vector<std::vector<ProblemFile::Src>> one_row{vec};
                    bf.basis.push_back(matrix_from_rows_shaped(
                        ring, l0, l1, one_row,
                        "fixture basis element " + std::to_string(bf.basis.size() + 1)));
                }
                break;
            }
            case FixtureFile::Section::Kind::differential: {
                check(s.number == 2 || s.number == 3,
                      "fixture can pin differentials 2 and 3 only");
                const FreeModule target = s.number == 2 ? l1 : l2;
                check(target.rank() > 0, "fixture pins differential " + std::to_string(s.number) +
                                             " but the module is missing");
                GradedMatrix d = matrix_from_rows(ring, target, s.rows,
                                                  "fixture differential " +
                                                      std::to_string(s.number));
                check(bf.differentials.emplace(s.number, std::move(d)).second,
                      "fixture pins differential " + std::to_string(s.number) + " twice");
                break;
            }
            case FixtureFile::Section::Kind::alpha: {
                check(s.alpha_index.size() == uring->nvars(),
                      "fixture alpha index arity does not match the tangent dimension");
                check(s.number == 1 || s.number == 2, "alpha component must be 1 or 2");
                MultiIndex idx{std::vector<unsigned>(s.alpha_index)};
                const FreeModule target = s.number == 1 ? l0 : l1;
                const FreeModule source = s.number == 1 ? l1 : l2;
                GradedMatrix a = matrix_from_rows_shaped(
                    ring, target, source, s.rows,
                    "fixture alpha " + monomial_str(idx, *uring) + " component " +
                        std::to_string(s.number));
                auto [it, fresh] = alpha_parts.try_emplace(idx);
                check(it->second.emplace(s.number, std::move(a)).second,
                      "fixture pins alpha " + monomial_str(idx, *uring) + " component " +
                          std::to_string(s.number) + " twice");
                break;
            }
        }
    }

    for (auto& [idx, parts] : alpha_parts) {
        check(parts.count(1) && parts.count(2),
              "fixture alpha " + monomial_str(idx, *uring) +
                  " needs both components 1 and 2");
        YonedaCochain c;
        c.level = 1;
        c.comps.emplace(1, parts.at(1));
        c.comps.emplace(2, parts.at(2));
        bf.pins.emplace(idx, std::move(c));
    }
    return bf;
}

Resolution apply_fixture_differentials(const Resolution& res,
                                       const std::map<int, GradedMatrix>& diffs) {
    if (diffs.empty()) return res;
    Resolution out = res;
    for (const auto& [i, d] : diffs) {
        check(i >= 2 && static_cast<std::size_t>(i) <= out.diffs.size(),
              "pinned differential index out of range");
        check(d.target() == out.diffs[i - 2].source(),
              "pinned differential " + std::to_string(i) + " does not match L_" +
                  std::to_string(i - 1));
        check(d.source().rank() == out.diffs[i - 1].source().rank(),
              "pinned differential " + std::to_string(i) + " changes the rank of L_" +
                  std::to_string(i));
        out.diffs[i - 1] = d;
        out.modules[i] = d.source();
    }
    try {
        out.verify();
    } catch (const InternalError& e) {
        throw ValidationError(std::string("fixture differentials rejected: ") + e.what());
    }
    return out;
}

} // namespace gmmp

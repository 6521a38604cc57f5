#include "gmmp/resolution.hpp"

#include <algorithm>
#include <sstream>

namespace gmmp {

ModuleSpec ModuleSpec::cyclic(RingPtr ring, std::vector<Polynomial> gens) {
    ModuleSpec s;
    s.kind = Kind::cyclic;
    s.ring = std::move(ring);
    for (const auto& g : gens) {
        check(g.ring()->same_as(*s.ring), "module generator over wrong ring");
        check(g.is_homogeneous(), "module generators must be homogeneous");
    }
    s.ideal_gens = std::move(gens);
    return s;
}

ModuleSpec ModuleSpec::presented(GradedMatrix p) {
    ModuleSpec s;
    s.kind = Kind::presented;
    s.ring = p.ring();
    s.presentation = std::move(p);
    return s;
}

std::vector<std::size_t> BettiTable::ranks() const {
    std::vector<std::size_t> r;
    for (const auto& step : steps) {
        std::size_t n = 0;
        for (const auto& [t, k] : step) n += static_cast<std::size_t>(k);
        r.push_back(n);
    }
    return r;
}

std::string BettiTable::str() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        if (i) os << " | ";
        bool first = true;
        for (const auto& [t, k] : steps[i]) {
            if (!first) os << " ";
            os << t << ":" << k;
            first = false;
        }
        if (first) os << "-";
    }
    return os.str();
}

namespace {

// Deterministic total comparison used for generator ordering: degree first,
// then leading position/monomial, then full entry comparison.
bool module_vec_before(const ModuleVec& a, const ModuleVec& b, const FreeModule& amb,
                       MonomialOrder order) {
    const long da = module_vec_degree(a, amb).value_or(0);
    const long db = module_vec_degree(b, amb).value_or(0);
    if (da != db) return da < db;
    for (std::size_t c = 0; c < a.size(); ++c) {
        const auto& ta = a[c].terms();
        const auto& tb = b[c].terms();
        auto ia = ta.begin();
        auto ib = tb.begin();
        for (; ia != ta.end() && ib != tb.end(); ++ia, ++ib) {
            if (ia->first != ib->first) return monomial_greater(ia->first, ib->first, order);
            if (ia->second != ib->second) return ib->second < ia->second;
        }
        if (ia != ta.end()) return true;
        if (ib != tb.end()) return false;
    }
    return false;
}

} // namespace

std::vector<ModuleVec> minimal_generators(const RingPtr& ring, const FreeModule& ambient,
                                          std::vector<ModuleVec> gens) {
    std::vector<ModuleVec> kept;
    for (auto& g : gens)
        if (!module_vec_is_zero(g)) kept.push_back(std::move(g));
    std::stable_sort(kept.begin(), kept.end(), [&](const ModuleVec& a, const ModuleVec& b) {
        return module_vec_degree(a, ambient).value_or(0) < module_vec_degree(b, ambient).value_or(0);
    });
    for (std::size_t i = kept.size(); i-- > 0;) {
        std::vector<ModuleVec> others;
        others.reserve(kept.size() - 1);
        for (std::size_t j = 0; j < kept.size(); ++j)
            if (j != i) others.push_back(kept[j]);
        if (others.empty()) continue;
        auto gb = GroebnerBasis::compute(ring, ambient, others);
        if (gb.contains(kept[i])) kept.erase(kept.begin() + i);
    }
    return kept;
}

GradedMatrix minimalize_presentation(const GradedMatrix& p) {
    const RingPtr ring = p.ring();
    const Monomial one = Monomial::one(ring->nvars());
    std::vector<int> row_twists = p.target().twists();
    std::vector<int> col_twists = p.source().twists();
    // dense working copy
    std::vector<std::vector<Polynomial>> m(row_twists.size(),
                                           std::vector<Polynomial>(col_twists.size(), Polynomial::zero(ring)));
    for (const auto& [ij, q] : p.entries()) m[ij.first][ij.second] = q;

    bool found = true;
    while (found) {
        found = false;
        for (std::size_t i = 0; i < row_twists.size() && !found; ++i) {
            for (std::size_t j = 0; j < col_twists.size() && !found; ++j) {
                const Rational c = m[i][j].coeff(one);
                if (c.is_zero()) continue;
                // pivot on the constant part of (i,j): clear row i from the
                // other columns, then drop row i and column j
                const Polynomial pivot = m[i][j];
                for (std::size_t j2 = 0; j2 < col_twists.size(); ++j2) {
                    if (j2 == j || m[i][j2].is_zero()) continue;
                    const Polynomial f = m[i][j2].scaled(c.inverse());
                    for (std::size_t i2 = 0; i2 < row_twists.size(); ++i2) {
                        if (i2 == i) continue;
                        m[i2][j2] -= m[i2][j] * f;
                    }
                    m[i][j2] = Polynomial::zero(ring);
                }
                for (auto& row : m) row.erase(row.begin() + j);
                m.erase(m.begin() + i);
                row_twists.erase(row_twists.begin() + i);
                col_twists.erase(col_twists.begin() + j);
                found = true;
            }
        }
    }

    GradedMatrix out(ring, FreeModule(row_twists), FreeModule(col_twists));
    for (std::size_t i = 0; i < row_twists.size(); ++i)
        for (std::size_t j = 0; j < col_twists.size(); ++j) out.set_entry(i, j, m[i][j]);
    return out;
}

namespace {

// Pivoting on a constant entry mixes degrees only if the matrix was
// homogeneous to begin with, which set_entry enforces again on rebuild.
GradedMatrix matrix_from_columns(const RingPtr& ring, const FreeModule& target,
                                 const std::vector<ModuleVec>& cols) {
    std::vector<int> twists;
    twists.reserve(cols.size());
    for (const auto& c : cols)
        twists.push_back(static_cast<int>(module_vec_degree(c, target).value_or(0)));
    GradedMatrix m(ring, target, FreeModule(std::move(twists)));
    for (std::size_t j = 0; j < cols.size(); ++j) m.set_column(j, cols[j]);
    return m;
}

} // namespace

Resolution minimal_resolution(const ModuleSpec& spec, std::size_t length) {
    Resolution res;
    res.ring = spec.ring;
    res.spec = spec;
    const RingPtr& ring = spec.ring;

    GradedMatrix d1;
    if (spec.kind == ModuleSpec::Kind::cyclic) {
        std::vector<ModuleVec> gens;
        for (const auto& g : spec.ideal_gens)
            if (!g.is_zero()) gens.push_back(ModuleVec{g});
        const FreeModule l0({0});
        gens = minimal_generators(ring, l0, std::move(gens));
        for (const auto& g : gens)
            check(g[0].degree() > 0, "ideal contains a unit: the module is zero");
        if (gens.empty()) {
            res.modules.push_back(l0);
            res.complete = true;
            return res;
        }
        d1 = matrix_from_columns(ring, l0, gens);
    } else {
        GradedMatrix p = minimalize_presentation(spec.presentation);
        check(p.target().rank() > 0, "presentation minimalizes to the zero module");
        std::vector<ModuleVec> cols;
        for (std::size_t j = 0; j < p.cols(); ++j) {
            if (!module_vec_is_zero(p.column(j))) cols.push_back(p.column(j));
        }
        cols = minimal_generators(ring, p.target(), std::move(cols));
        if (cols.empty()) {
            res.modules.push_back(p.target());
            res.complete = true;
            return res;
        }
        d1 = matrix_from_columns(ring, p.target(), cols);
    }

    res.modules.push_back(d1.target());
    res.modules.push_back(d1.source());
    res.diffs.push_back(std::move(d1));

    check(length >= 1, "resolution length must be at least 1");
    for (std::size_t step = 2; step <= length; ++step) {
        const GradedMatrix& prev = res.diffs.back();
        auto syz = column_syzygies(prev);
        syz = minimal_generators(ring, prev.source(), std::move(syz));
        if (syz.empty()) {
            res.complete = true;
            break;
        }
        std::sort(syz.begin(), syz.end(), [&](const ModuleVec& a, const ModuleVec& b) {
            return module_vec_before(a, b, prev.source(), ring->order());
        });
        GradedMatrix d = matrix_from_columns(ring, prev.source(), syz);
        require_internal(d.entries_in_max_ideal(),
                         "syzygy step produced a non-minimal differential");
        res.modules.push_back(d.source());
        res.diffs.push_back(std::move(d));
    }
    return res;
}

void Resolution::verify() const {
    for (std::size_t i = 0; i + 1 < diffs.size(); ++i) {
        GradedMatrix c = graded_compose(diffs[i], diffs[i + 1]);
        require_internal(c.is_zero(), "resolution: d∘d != 0 at step " + std::to_string(i + 1));
    }
    for (std::size_t i = 0; i < diffs.size(); ++i) {
        require_internal(diffs[i].entries_in_max_ideal(),
                         "resolution: differential " + std::to_string(i + 1) + " is not minimal");
    }
    // exactness: ker d_i ⊆ im d_{i+1} (the other inclusion is d∘d = 0)
    for (std::size_t i = 0; i + 1 < diffs.size(); ++i) {
        auto kernel_gens = column_syzygies(diffs[i]);
        std::vector<ModuleVec> image_cols;
        for (std::size_t j = 0; j < diffs[i + 1].cols(); ++j)
            image_cols.push_back(diffs[i + 1].column(j));
        auto gb = GroebnerBasis::compute(ring, diffs[i].source(), image_cols);
        for (const auto& k : kernel_gens) {
            require_internal(gb.contains(k),
                             "resolution: not exact at step " + std::to_string(i + 1));
        }
    }
}

BettiTable betti(const Resolution& res) {
    BettiTable t;
    for (const auto& m : res.modules) {
        std::map<int, int> step;
        for (int tw : m.twists()) step[tw]++;
        t.steps.push_back(std::move(step));
    }
    return t;
}

} // namespace gmmp

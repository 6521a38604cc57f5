#include "gmmp/massey.hpp"

#include <algorithm>
#include <sstream>

namespace gmmp {

std::string to_string(DefiningEntry::Choice c) {
    switch (c) {
        case DefiningEntry::Choice::tangent_basis: return "tangent-basis";
        case DefiningEntry::Choice::zero: return "zero";
        case DefiningEntry::Choice::solved: return "solved";
        case DefiningEntry::Choice::fixture: return "fixture";
    }
    return "?";
}

bool RelationAlgebra::relations_all_zero() const {
    for (const auto& f : relations)
        if (!f.is_zero()) return false;
    return true;
}

std::vector<Polynomial> RelationAlgebra::nonzero_relations() const {
    std::vector<Polynomial> out;
    for (const auto& f : relations)
        if (!f.is_zero()) out.push_back(f);
    return out;
}

MasseyEngine::MasseyEngine(ExtBasis ext, RingPtr uring)
    : ext_(std::move(ext)), uring_(std::move(uring)) {
    check(uring_->nvars() == ext_.dim1(),
          "tangent ring must have one variable per Ext^1 basis element");
}

RingPtr MasseyEngine::tangent_ring(std::size_t d, const std::string& stem, MonomialOrder order) {
    std::vector<std::string> names;
    names.reserve(d);
    for (std::size_t i = 1; i <= d; ++i) names.push_back(stem + std::to_string(i));
    return PolyRing::free_ring(std::move(names), order);
}

// Products alpha_{m1} . alpha_{m2} of the current defining system, summed over
// ordered decompositions and keyed by the total index m1 + m2.
struct MasseyEngine::RawTable {
    std::map<MultiIndex, GradedMatrix, MonomialDesc> by_index;

    RawTable(const RingPtr& uring,
             const std::map<MultiIndex, YonedaCochain, MonomialDesc>& ds, unsigned cap) {
        by_index = std::map<MultiIndex, GradedMatrix, MonomialDesc>{MonomialDesc{uring->order()}};
        for (const auto& [m1, a1] : ds) {
            for (const auto& [m2, a2] : ds) {
                MultiIndex n = m1 * m2;
                if (n.degree() > cap) continue;
                GradedMatrix term = graded_compose(a1.comp(1), a2.comp(2));
                auto it = by_index.find(n);
                if (it == by_index.end())
                    by_index.emplace(n, std::move(term));
                else
                    it->second += term;
            }
        }
    }
};

std::map<MultiIndex, YonedaCochain, MonomialDesc> MasseyEngine::tangent_system(
    const DefiningSystemPins& pins, std::vector<DefiningEntry>* log,
    std::map<MultiIndex, bool, MonomialDesc>* used) const {
    const std::size_t d = ext_.dim1();
    std::map<MultiIndex, YonedaCochain, MonomialDesc> ds{MonomialDesc{uring_->order()}};
    for (std::size_t i = 0; i < d; ++i) {
        MultiIndex e = Monomial::var(d, i);
        YonedaCochain alpha = ext_.basis1()[i];
        auto choice = DefiningEntry::Choice::tangent_basis;
        if (auto pin = pins.find(e); pin != pins.end()) {
            // a pinned tangent cochain must lift the same representative and
            // be an exact cocycle
            check(pin->second.comp(1) == alpha.comp(1),
                  "pinned tangent cochain " + monomial_str(e, *uring_) +
                      " does not match the basis representative");
            GradedMatrix dpin = graded_compose(res().diff(1), pin->second.comp(2)) +
                                graded_compose(pin->second.comp(1), res().diff(2));
            check(dpin.is_zero(), "pinned tangent cochain " + monomial_str(e, *uring_) +
                                      " is not a cocycle");
            alpha = pin->second;
            choice = DefiningEntry::Choice::fixture;
            if (used) (*used)[e] = true;
        }
        if (log) log->push_back(DefiningEntry{e, alpha, choice});
        ds.emplace(e, std::move(alpha));
    }
    return ds;
}

std::vector<MasseyValue> MasseyEngine::cup_table(const DefiningSystemPins& pins) const {
    auto ds = tangent_system(pins, nullptr, nullptr);
    RawTable raw(uring_, ds, 2);
    std::vector<MasseyValue> out;
    for (const auto& n : monomials_of_degree(ext_.dim1(), 2, uring_->order())) {
        MasseyValue v;
        v.index = n;
        auto it = raw.by_index.find(n);
        v.cochain = (it != raw.by_index.end()) ? it->second : ext_.zero_cochain2();
        v.cls = ext_.class_of(v.cochain);
        out.push_back(std::move(v));
    }
    return out;
}

CupCensus MasseyEngine::census_of(const std::vector<MasseyValue>& values) {
    CupCensus c;
    c.total = values.size();
    for (const auto& v : values) {
        if (v.identically_zero())
            ++c.identically_zero;
        else if (v.class_zero())
            ++c.cohomologically_zero;
        else
            ++c.nonzero;
    }
    return c;
}

RelationAlgebra MasseyEngine::compute_hull(unsigned target_order,
                                           const DefiningSystemPins& pins) const {
    check(target_order >= 2, "hull order must be at least 2");
    const std::size_t d = ext_.dim1();
    const std::size_t r = ext_.dim2();

    RelationAlgebra ra;
    ra.uring = uring_;
    ra.tangent_dim = d;
    ra.obstruction_dim = r;
    ra.quotient = LocalQuotient::initial(uring_, r);

    std::map<MultiIndex, bool, MonomialDesc> pin_used{MonomialDesc{uring_->order()}};
    for (const auto& [m, a] : pins) pin_used.emplace(m, false);
    auto ds = tangent_system(pins, &ra.defining_system, &pin_used);

    unsigned quiet_streak = 0;
    for (unsigned target = 2; target <= target_order; ++target) {
        const auto bprime = ra.quotient.basis_Bprime(target);
        RawTable raw(uring_, ds, target);
        TruncExpander rexp = ra.quotient.r_expander();

        // Massey values on B'_target: y(n) = sum_m beta'_{m,n} raw(m).
        // Expand each raw index once and distribute onto the basis monomials.
        std::map<MultiIndex, GradedMatrix, MonomialDesc> y_acc{MonomialDesc{uring_->order()}};
        for (const auto& n : bprime) y_acc.emplace(n, ext_.zero_cochain2());
        for (const auto& [m, cochain] : raw.by_index) {
            auto exp = rexp.expand(m);
            for (const auto& [n, c] : exp.basis_coeffs) {
                auto it = y_acc.find(n);
                if (it == y_acc.end()) continue;
                it->second += cochain.scaled(c);
            }
        }
        std::vector<MasseyValue> values;
        bool all_classes_zero = true;
        std::vector<Polynomial> corrections(r, Polynomial::zero(uring_));
        for (const auto& n : bprime) {
            GradedMatrix y = std::move(y_acc.at(n));
            require_internal(ext_.is_cocycle2(y),
                             "Massey value is not a cocycle (obstruction situation violated)");
            MasseyValue v;
            v.index = n;
            v.cls = ext_.class_of(y);
            v.cochain = std::move(y);
            if (!v.class_zero()) all_classes_zero = false;
            for (std::size_t j = 0; j < r; ++j) {
                if (!v.cls[j].is_zero())
                    corrections[j] += Polynomial::monomial(uring_, n, v.cls[j]);
            }
            values.push_back(std::move(v));
        }
        ra.values_by_order.push_back(values);
        if (target == 2) {
            ra.census = census_of(values);
            ra.all_cups_identically_zero = (ra.census.total == ra.census.identically_zero);
        }

        ra.quotient = ra.quotient.extended(corrections);
        TruncExpander aexp = ra.quotient.a_expander();

        // defining-system equations d(alpha_m) = -b_m for the new basis
        std::map<MultiIndex, GradedMatrix, MonomialDesc> b_acc{MonomialDesc{uring_->order()}};
        for (const auto& m : ra.quotient.bases().at(target)) b_acc.emplace(m, ext_.zero_cochain2());
        for (const auto& [n, cochain] : raw.by_index) {
            auto exp = aexp.expand(n);
            for (const auto& [m, c] : exp.basis_coeffs) {
                auto it = b_acc.find(m);
                if (it == b_acc.end()) continue;
                it->second += cochain.scaled(c);
            }
        }
        bool new_alphas_zero = true;
        for (const auto& m : ra.quotient.bases().at(target)) {
            GradedMatrix b = std::move(b_acc.at(m));
            DefiningEntry entry;
            entry.index = m;
            if (b.is_zero()) {
                YonedaCochain zero;
                zero.level = 1;
                zero.comps.emplace(1, GradedMatrix::zero(res().ring, res().module(0),
                                                         res().module(1)));
                zero.comps.emplace(2, GradedMatrix::zero(res().ring, res().module(1),
                                                         res().length() >= 2
                                                             ? res().module(2)
                                                             : FreeModule(std::vector<int>{})));
                entry.cochain = std::move(zero);
                entry.choice = DefiningEntry::Choice::zero;
            } else if (auto pin = pins.find(m); pin != pins.end()) {
                GradedMatrix lhs = graded_compose(res().diff(1), pin->second.comp(2)) +
                                   graded_compose(pin->second.comp(1), res().diff(2));
                check(lhs == -b, "pinned defining-system element for " +
                                     monomial_str(m, *uring_) +
                                     " does not satisfy d(alpha) = -b");
                entry.cochain = pin->second;
                entry.choice = DefiningEntry::Choice::fixture;
                pin_used[m] = true;
            } else {
                auto sol = ext_.solve_coboundary(-b);
                require_internal(sol.has_value(),
                                 "b_m is not a coboundary (obstruction situation violated)");
                entry.cochain = std::move(*sol);
                entry.choice = DefiningEntry::Choice::solved;
            }
            if (!entry.cochain.is_identically_zero()) new_alphas_zero = false;
            ds.emplace(m, entry.cochain);
            ra.defining_system.push_back(std::move(entry));
        }

        const bool quiet = all_classes_zero && new_alphas_zero;
        quiet_streak = quiet ? quiet_streak + 1 : 0;
    }

    // pins beyond the computed order are legitimately untouched; anything else
    // unused indicates a typo in the fixture
    for (const auto& [m, used] : pin_used) {
        check(used || m.degree() > target_order,
              "fixture defining-system entry " + monomial_str(m, *uring_) +
                  " was never consumed by the run");
    }

    ra.order = target_order;
    ra.relations = ra.quotient.relations();
    ra.stabilized = quiet_streak >= 2;
    ra.stabilized_at = ra.stabilized ? target_order - quiet_streak + 1 : 0;
    return ra;
}

ExtBasis restrict_basis(const ExtBasis& ext, const std::vector<std::size_t>& keep) {
    return ext.restricted(keep);
}

namespace {

RingPtr combined_ring(const RingPtr& xring, const RingPtr& uring) {
    std::vector<std::string> vars = xring->var_names();
    for (const auto& v : uring->var_names()) vars.push_back(v);
    return PolyRing::free_ring(vars, xring->order());
}

Polynomial into_combined(const Polynomial& p, const RingPtr& comb, std::size_t offset) {
    Polynomial out = Polynomial::zero(comb);
    for (const auto& [m, c] : p.terms()) {
        std::vector<unsigned> exps(comb->nvars(), 0);
        for (std::size_t i = 0; i < m.nvars(); ++i) exps[offset + i] = m.exp(i);
        out.add_term(Monomial(std::move(exps)), c);
    }
    return out;
}

} // namespace

VersalFamily versal_family(const Resolution& res, const RelationAlgebra& ra) {
    VersalFamily vf;
    vf.combined_ring = combined_ring(res.ring, ra.uring);

    const FreeModule l0 = res.module(0);
    const FreeModule l1 = res.modules.size() > 1 ? res.module(1) : FreeModule(std::vector<int>{});
    const MultiIndex zero_idx = Monomial::one(ra.uring->nvars());

    if (res.length() >= 1) vf.comp1.emplace_back(zero_idx, res.diff(1));
    if (res.length() >= 2) vf.comp2.emplace_back(zero_idx, res.diff(2));
    for (const auto& e : ra.defining_system) {
        if (e.cochain.has(1) && !e.cochain.comp(1).is_zero())
            vf.comp1.emplace_back(e.index, e.cochain.comp(1));
        if (e.cochain.has(2) && !e.cochain.comp(2).is_zero())
            vf.comp2.emplace_back(e.index, e.cochain.comp(2));
    }

    // flatness to order: coefficients of d^S_1 ∘ d^S_2 vanish in A_N
    if (res.length() >= 2) {
        std::map<MultiIndex, GradedMatrix, MonomialDesc> square{MonomialDesc{ra.uring->order()}};
        for (const auto& [m1, a1] : vf.comp1) {
            for (const auto& [m2, a2] : vf.comp2) {
                MultiIndex n = m1 * m2;
                if (n.degree() > ra.order) continue;
                GradedMatrix term = graded_compose(a1, a2);
                auto it = square.find(n);
                if (it == square.end())
                    square.emplace(n, std::move(term));
                else
                    it->second += term;
            }
        }
        TruncExpander aexp = ra.quotient.a_expander();
        std::map<MultiIndex, GradedMatrix, MonomialDesc> reduced{MonomialDesc{ra.uring->order()}};
        for (const auto& [n, mat] : square) {
            auto exp = aexp.expand(n);
            for (const auto& [b, c] : exp.basis_coeffs) {
                auto it = reduced.find(b);
                if (it == reduced.end())
                    reduced.emplace(b, mat.scaled(c));
                else
                    it->second += mat.scaled(c);
            }
        }
        for (const auto& [b, mat] : reduced) {
            require_internal(mat.is_zero(),
                             "flatness check failure at basis monomial " +
                                 monomial_str(b, *ra.uring));
        }
    }
    vf.flatness_checked = true;

    // perturbed ideal generators for cyclic modules
    if (res.spec.kind == ModuleSpec::Kind::cyclic && l0.rank() == 1 && res.length() >= 1) {
        const std::size_t nx = res.ring->nvars();
        for (std::size_t j = 0; j < l1.rank(); ++j) {
            Polynomial gen = Polynomial::zero(vf.combined_ring);
            for (const auto& [m, mat] : vf.comp1) {
                const Polynomial coeff = mat.entry(0, j);
                if (coeff.is_zero()) continue;
                Polynomial cx = into_combined(coeff, vf.combined_ring, 0);
                Polynomial cu = Polynomial::zero(vf.combined_ring);
                std::vector<unsigned> exps(vf.combined_ring->nvars(), 0);
                for (std::size_t i = 0; i < m.nvars(); ++i) exps[nx + i] = m.exp(i);
                cu.add_term(Monomial(std::move(exps)), Rational(1));
                gen += cx * cu;
            }
            vf.perturbed_generators.push_back(std::move(gen));
        }
    }
    return vf;
}

std::string smoothness_report(const RelationAlgebra& ra) {
    std::ostringstream os;
    os << "tangent dimension " << ra.tangent_dim << ", obstruction dimension "
       << ra.obstruction_dim << ", computed to order " << ra.order << ".\n";
    if (ra.tangent_dim == 0) {
        os << "Zero tangent space: the local moduli is a reduced point (vacuously smooth).\n";
        return os.str();
    }
    if (ra.relations_all_zero()) {
        os << "Unobstructed to order " << ra.order
           << ": no relations found; the local formal moduli is formally smooth to this order";
        os << (ra.stabilized ? " and the construction has stabilized" : "");
        os << ".\n";
        if (ra.all_cups_identically_zero) {
            os << "All cup products vanish identically, so every defining system can be chosen "
                  "zero; granted stabilization, the corresponding moduli point is nonsingular "
                  "(sheaf side included; no sheaf computation performed).\n";
        }
    } else {
        const auto rels = ra.nonzero_relations();
        std::size_t quad = 0;
        {
            SpanBuilder span(monomials_of_degree(ra.uring->nvars(), 2, ra.uring->order()).size());
            auto quadrics = monomials_of_degree(ra.uring->nvars(), 2, ra.uring->order());
            std::map<Monomial, std::size_t, MonomialDesc> idx{MonomialDesc{ra.uring->order()}};
            for (std::size_t i = 0; i < quadrics.size(); ++i) idx.emplace(quadrics[i], i);
            for (const auto& f : rels) {
                QVec v(quadrics.size());
                for (const auto& [m, c] : f.terms())
                    if (m.degree() == 2) v[idx.at(m)] = c;
                span.try_add(v);
            }
            quad = span.rank();
        }
        os << "Obstructed: " << rels.size() << " nonzero relation(s), " << quad
           << " independent quadratic part(s).\n";
        os << (ra.stabilized
                   ? "Relations stabilized at order " + std::to_string(ra.stabilized_at) + ".\n"
                   : "Relations have not stabilized within the computed order.\n");
    }
    return os.str();
}

} // namespace gmmp

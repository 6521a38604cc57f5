#include "gmmp/groebner.hpp"

#include <algorithm>
#include <set>
#include <tuple>

namespace gmmp {

namespace {

struct Lead {
    std::size_t comp = 0;
    Monomial mono;
    Rational coeff;
};

std::optional<Lead> lead_term(const ModuleVec& v) {
    for (std::size_t c = 0; c < v.size(); ++c) {
        if (!v[c].is_zero()) return Lead{c, v[c].leading_monomial(), v[c].leading_coeff()};
    }
    return std::nullopt;
}

Polynomial rering(const Polynomial& p, const RingPtr& target) {
    Polynomial r = Polynomial::zero(target);
    for (const auto& [m, c] : p.terms()) r += Polynomial::monomial(target, m, c);
    return r;
}

ModuleVec rering(const ModuleVec& v, const RingPtr& target) {
    ModuleVec r;
    r.reserve(v.size());
    for (const auto& p : v) r.push_back(rering(p, target));
    return r;
}

} // namespace

GroebnerBasis::InternalWitness GroebnerBasis::divide(const ModuleVec& v) const {
    InternalWitness w;
    w.quotients.assign(elements_.size(), Polynomial::zero(work_ring_));
    ModuleVec work = v;
    ModuleVec rem = module_vec_zero(work_ring_, v.size());
    while (auto lt = lead_term(work)) {
        bool reduced = false;
        for (std::size_t k = 0; k < elements_.size(); ++k) {
            const auto el = lead_term(elements_[k].vec);
            if (!el || el->comp != lt->comp || !el->mono.divides(lt->mono)) continue;
            const Monomial q = lt->mono.divide(el->mono);
            const Rational f = lt->coeff / el->coeff;
            for (std::size_t c = 0; c < work.size(); ++c) {
                if (elements_[k].vec[c].is_zero()) continue;
                work[c] -= elements_[k].vec[c].times_monomial(q, f);
            }
            w.quotients[k] += Polynomial::monomial(work_ring_, q, f);
            reduced = true;
            break;
        }
        if (!reduced) {
            rem[lt->comp].add_term(lt->mono, lt->coeff);
            // remove the term from the working vector
            work[lt->comp].add_term(lt->mono, -lt->coeff);
        }
    }
    w.remainder = std::move(rem);
    return w;
}

GroebnerBasis GroebnerBasis::compute(RingPtr ring, FreeModule ambient,
                                     std::vector<ModuleVec> gens) {
    GroebnerBasis gb;
    gb.ring_ = ring;
    gb.work_ring_ = ring->is_quotient() ? ring->ambient() : ring;
    gb.ambient_ = ambient;
    gb.n_inputs_ = gens.size();

    for (const auto& v : gens) {
        check(v.size() == ambient.rank(), "generator rank does not match ambient module");
        check(module_vec_degree(v, ambient).has_value(),
              "buchberger: inhomogeneous generator");
    }

    for (const auto& v : gens) gb.inputs_.push_back(rering(v, gb.work_ring_));
    std::vector<ModuleVec> extended = gb.inputs_;
    if (ring->is_quotient()) {
        for (const auto& g : ring->quotient_gb()) {
            for (std::size_t c = 0; c < ambient.rank(); ++c) {
                ModuleVec v = module_vec_zero(gb.work_ring_, ambient.rank());
                v[c] = g;
                extended.push_back(std::move(v));
            }
        }
    }
    const std::size_t n_ext = extended.size();

    auto unit_transform = [&](std::size_t i, const Rational& scale) {
        std::vector<Polynomial> t(n_ext, Polynomial::zero(gb.work_ring_));
        t[i] = Polynomial::constant(gb.work_ring_, scale);
        return t;
    };

    // seed basis with the nonzero inputs, made monic
    for (std::size_t i = 0; i < n_ext; ++i) {
        auto lt = lead_term(extended[i]);
        if (!lt) continue;
        const Rational inv = lt->coeff.inverse();
        gb.elements_.push_back(
            Element{module_vec_scaled(extended[i], inv), unit_transform(i, inv)});
    }

    // all-pairs Buchberger (no pair criteria; output is the unique reduced
    // basis either way)
    using PairKey = std::tuple<long, std::size_t, std::size_t>;
    std::set<PairKey> queue;
    auto push_pairs_for = [&](std::size_t j) {
        const auto lj = lead_term(gb.elements_[j].vec);
        for (std::size_t i = 0; i < j; ++i) {
            const auto li = lead_term(gb.elements_[i].vec);
            if (li->comp != lj->comp) continue;
            const Monomial l = Monomial::lcm(li->mono, lj->mono);
            const long deg = static_cast<long>(l.degree()) + gb.ambient_.twist(li->comp);
            queue.insert({deg, i, j});
        }
    };
    for (std::size_t j = 0; j < gb.elements_.size(); ++j) push_pairs_for(j);

    while (!queue.empty()) {
        const auto [deg, i, j] = *queue.begin();
        queue.erase(queue.begin());
        const auto li = lead_term(gb.elements_[i].vec);
        const auto lj = lead_term(gb.elements_[j].vec);
        const Monomial l = Monomial::lcm(li->mono, lj->mono);
        const Monomial mi = l.divide(li->mono);
        const Monomial mj = l.divide(lj->mono);
        ModuleVec s = module_vec_sub(module_vec_times(gb.elements_[i].vec, mi, Rational(1)),
                                     module_vec_times(gb.elements_[j].vec, mj, Rational(1)));
        auto w = gb.divide(s);
        if (module_vec_is_zero(w.remainder)) continue;
        std::vector<Polynomial> t(n_ext, Polynomial::zero(gb.work_ring_));
        for (std::size_t e = 0; e < n_ext; ++e) {
            t[e] = gb.elements_[i].transform[e].times_monomial(mi, Rational(1)) -
                   gb.elements_[j].transform[e].times_monomial(mj, Rational(1));
        }
        for (std::size_t k = 0; k < gb.elements_.size(); ++k) {
            if (w.quotients[k].is_zero()) continue;
            for (std::size_t e = 0; e < n_ext; ++e)
                t[e] -= w.quotients[k] * gb.elements_[k].transform[e];
        }
        const auto lr = lead_term(w.remainder);
        const Rational inv = lr->coeff.inverse();
        gb.elements_.push_back(Element{module_vec_scaled(w.remainder, inv),
                                       [&] {
                                           for (auto& p : t) p = p.scaled(inv);
                                           return std::move(t);
                                       }()});
        push_pairs_for(gb.elements_.size() - 1);
    }

    // inter-reduce to the unique reduced basis
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < gb.elements_.size(); ++i) {
            Element el = std::move(gb.elements_[i]);
            gb.elements_.erase(gb.elements_.begin() + i);
            auto w = gb.divide(el.vec);
            if (!(w.remainder == el.vec)) changed = true;
            if (module_vec_is_zero(w.remainder)) {
                --i;
                continue;
            }
            std::vector<Polynomial> t = el.transform;
            for (std::size_t k = 0; k < gb.elements_.size(); ++k) {
                if (w.quotients[k].is_zero()) continue;
                for (std::size_t e = 0; e < n_ext; ++e)
                    t[e] -= w.quotients[k] * gb.elements_[k].transform[e];
            }
            const auto lr = lead_term(w.remainder);
            const Rational inv = lr->coeff.inverse();
            for (auto& p : t) p = p.scaled(inv);
            gb.elements_.insert(gb.elements_.begin() + i,
                                Element{module_vec_scaled(w.remainder, inv), std::move(t)});
        }
    }

    // canonical element order: ascending module degree, then position, then
    // descending ring order on the leading monomial
    std::sort(gb.elements_.begin(), gb.elements_.end(), [&](const Element& a, const Element& b) {
        const auto la = lead_term(a.vec);
        const auto lb = lead_term(b.vec);
        const long da = static_cast<long>(la->mono.degree()) + gb.ambient_.twist(la->comp);
        const long db = static_cast<long>(lb->mono.degree()) + gb.ambient_.twist(lb->comp);
        if (da != db) return da < db;
        if (la->comp != lb->comp) return la->comp < lb->comp;
        return monomial_greater(la->mono, lb->mono, gb.work_ring_->order());
    });

    // public view: over a quotient ring, elements that collapse into the ideal
    // are folded away
    for (std::size_t k = 0; k < gb.elements_.size(); ++k) {
        ModuleVec img = ring->is_quotient() ? rering(gb.elements_[k].vec, ring)
                                            : gb.elements_[k].vec;
        if (module_vec_is_zero(img)) continue;
        gb.public_gens_.push_back(std::move(img));
        gb.public_index_.push_back(k);
    }

    // division matrix of every extended input over the final basis (the ideal
    // columns participate: their unit relations carry the R-linear syzygies)
    gb.extended_ = std::move(extended);
    for (std::size_t i = 0; i < gb.extended_.size(); ++i) {
        auto w = gb.divide(gb.extended_[i]);
        require_internal(module_vec_is_zero(w.remainder),
                         "input does not reduce to zero against its own basis");
        gb.inputs_over_gb_.push_back(std::move(w.quotients));
    }

    return gb;
}

DivisionWitness GroebnerBasis::normal_form(const ModuleVec& v) const {
    check(v.size() == ambient_.rank(), "normal_form: rank mismatch");
    auto w = divide(rering(v, work_ring_));
    DivisionWitness out;
    out.quotients.reserve(public_gens_.size());
    for (std::size_t g = 0; g < public_gens_.size(); ++g) {
        const Polynomial& q = w.quotients[public_index_[g]];
        out.quotients.push_back(ring_->is_quotient() ? rering(q, ring_) : q);
    }
    out.remainder = ring_->is_quotient() ? rering(w.remainder, ring_) : std::move(w.remainder);
    return out;
}

bool GroebnerBasis::contains(const ModuleVec& v) const {
    auto w = divide(rering(v, work_ring_));
    return module_vec_is_zero(w.remainder);
}

std::optional<std::vector<Polynomial>> GroebnerBasis::express_in_inputs(const ModuleVec& v) const {
    auto w = divide(rering(v, work_ring_));
    if (!module_vec_is_zero(w.remainder)) return std::nullopt;
    std::vector<Polynomial> x(n_inputs_, Polynomial::zero(work_ring_));
    for (std::size_t k = 0; k < elements_.size(); ++k) {
        if (w.quotients[k].is_zero()) continue;
        for (std::size_t i = 0; i < n_inputs_; ++i) {
            if (elements_[k].transform[i].is_zero()) continue;
            x[i] += w.quotients[k] * elements_[k].transform[i];
        }
    }
    if (ring_->is_quotient())
        for (auto& p : x) p = rering(p, ring_);
    return x;
}

FreeModule GroebnerBasis::syzygy_module() const {
    std::vector<int> twists;
    twists.reserve(n_inputs_);
    for (std::size_t i = 0; i < n_inputs_; ++i) {
        auto d = module_vec_degree(inputs_[i], ambient_);
        twists.push_back(static_cast<int>(d.value_or(0)));
    }
    return FreeModule(std::move(twists));
}

std::vector<ModuleVec> GroebnerBasis::input_syzygies() const {
    std::vector<ModuleVec> out;
    const std::size_t n_ext = elements_.empty() ? n_inputs_ : elements_[0].transform.size();

    auto project = [&](const std::vector<Polynomial>& row) {
        ModuleVec r(row.begin(), row.begin() + n_inputs_);
        if (ring_->is_quotient())
            for (auto& p : r) p = rering(p, ring_);
        return r;
    };

    // unit relations input_i = sum_k U_ik g_k  ->  rows of (Id - U T), taken
    // over the extended inputs so ideal-column relations project down
    for (std::size_t i = 0; i < extended_.size(); ++i) {
        std::vector<Polynomial> row(n_ext, Polynomial::zero(work_ring_));
        row[i] = Polynomial::constant(work_ring_, Rational(1));
        for (std::size_t k = 0; k < elements_.size(); ++k) {
            const Polynomial& u = inputs_over_gb_[i][k];
            if (u.is_zero()) continue;
            for (std::size_t e = 0; e < n_ext; ++e) {
                if (elements_[k].transform[e].is_zero()) continue;
                row[e] -= u * elements_[k].transform[e];
            }
        }
        ModuleVec r = project(row);
        if (!module_vec_is_zero(r)) out.push_back(std::move(r));
    }

    // Schreyer relations from the S-pairs of the final basis
    for (std::size_t j = 0; j < elements_.size(); ++j) {
        const auto lj = lead_term(elements_[j].vec);
        for (std::size_t i = 0; i < j; ++i) {
            const auto li = lead_term(elements_[i].vec);
            if (li->comp != lj->comp) continue;
            const Monomial l = Monomial::lcm(li->mono, lj->mono);
            const Monomial mi = l.divide(li->mono);
            const Monomial mj = l.divide(lj->mono);
            ModuleVec s =
                module_vec_sub(module_vec_times(elements_[i].vec, mi, Rational(1)),
                               module_vec_times(elements_[j].vec, mj, Rational(1)));
            auto w = divide(s);
            require_internal(module_vec_is_zero(w.remainder),
                             "S-pair of a final basis did not reduce to zero");
            std::vector<Polynomial> row(n_ext, Polynomial::zero(work_ring_));
            for (std::size_t e = 0; e < n_ext; ++e) {
                row[e] = elements_[i].transform[e].times_monomial(mi, Rational(1)) -
                         elements_[j].transform[e].times_monomial(mj, Rational(1));
                for (std::size_t k = 0; k < elements_.size(); ++k) {
                    if (w.quotients[k].is_zero() || elements_[k].transform[e].is_zero()) continue;
                    row[e] -= w.quotients[k] * elements_[k].transform[e];
                }
            }
            ModuleVec r = project(row);
            if (!module_vec_is_zero(r)) out.push_back(std::move(r));
        }
    }
    return out;
}

bool GroebnerBasis::every_spair_reduces_to_zero() const {
    for (std::size_t j = 0; j < elements_.size(); ++j) {
        const auto lj = lead_term(elements_[j].vec);
        for (std::size_t i = 0; i < j; ++i) {
            const auto li = lead_term(elements_[i].vec);
            if (li->comp != lj->comp) continue;
            const Monomial l = Monomial::lcm(li->mono, lj->mono);
            ModuleVec s = module_vec_sub(
                module_vec_times(elements_[i].vec, l.divide(li->mono), Rational(1)),
                module_vec_times(elements_[j].vec, l.divide(lj->mono), Rational(1)));
            if (!module_vec_is_zero(divide(s).remainder)) return false;
        }
    }
    return true;
}

GroebnerBasis buchberger_ideal(const RingPtr& ring, const std::vector<Polynomial>& gens) {
    std::vector<ModuleVec> vecs;
    vecs.reserve(gens.size());
    for (const auto& g : gens) vecs.push_back(ModuleVec{g});
    return GroebnerBasis::compute(ring, FreeModule({0}), std::move(vecs));
}

RingPtr make_quotient_ring(const RingPtr& ambient, const std::vector<Polynomial>& ideal_gens) {
    check(!ambient->is_quotient(), "make_quotient_ring: ambient must be free");
    for (const auto& g : ideal_gens)
        check(g.is_homogeneous(), "quotient ideal generators must be homogeneous");
    auto gb = buchberger_ideal(ambient, ideal_gens);
    std::vector<Polynomial> basis;
    basis.reserve(gb.gens().size());
    for (const auto& v : gb.gens()) basis.push_back(v[0]);
    return PolyRing::quotient_ring(ambient, std::move(basis));
}

std::optional<ModuleVec> lift(const GradedMatrix& a, const ModuleVec& b) {
    check(b.size() == a.rows(), "lift: target rank mismatch");
    check(module_vec_degree(b, a.target()).has_value(), "lift: inhomogeneous right-hand side");
    std::vector<ModuleVec> cols;
    cols.reserve(a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j) cols.push_back(a.column(j));
    auto gb = GroebnerBasis::compute(a.ring(), a.target(), std::move(cols));
    auto x = gb.express_in_inputs(b);
    if (!x) return std::nullopt;
    ModuleVec residual = module_vec_sub(a.apply(*x), b);
    require_internal(module_vec_is_zero(residual), "lift: witness failed re-verification");
    return x;
}

std::vector<ModuleVec> column_syzygies(const GradedMatrix& a) {
    std::vector<ModuleVec> cols;
    cols.reserve(a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j) cols.push_back(a.column(j));
    auto gb = GroebnerBasis::compute(a.ring(), a.target(), std::move(cols));
    return gb.input_syzygies();
}

} // namespace gmmp

#include "gmmp/local.hpp"

#include <algorithm>

namespace gmmp {

namespace {

std::vector<Monomial> monomials_up_to(const RingPtr& ring, unsigned cap) {
    std::vector<Monomial> out;
    for (unsigned d = 0; d <= cap; ++d) {
        auto layer = monomials_of_degree(ring->nvars(), d, ring->order());
        out.insert(out.end(), layer.begin(), layer.end());
    }
    return out;
}

Polynomial truncated(const Polynomial& p, unsigned cap) {
    Polynomial r = Polynomial::zero(p.ring());
    for (const auto& [m, c] : p.terms())
        if (m.degree() <= cap) r.add_term(m, c);
    return r;
}

} // namespace

TruncExpander::TruncExpander(RingPtr uring, unsigned cap, std::vector<Monomial> basis,
                             std::vector<Polynomial> tagged_rels,
                             std::vector<Polynomial> ideal_rows, bool assert_basis_independent)
    : uring_(std::move(uring)), cap_(cap), basis_(std::move(basis)) {
    space_ = monomials_up_to(uring_, cap_);
    index_ = std::map<Monomial, std::size_t, MonomialDesc>{MonomialDesc{uring_->order()}};
    for (std::size_t i = 0; i < space_.size(); ++i) index_.emplace(space_[i], i);
    n_rels_ = tagged_rels.size();

    std::vector<QVec> rows;
    rows.reserve(basis_.size() + tagged_rels.size() + ideal_rows.size());
    for (const auto& m : basis_) {
        QVec u(space_.size());
        u[index_.at(m)] = Rational(1);
        rows.push_back(std::move(u));
    }
    for (const auto& f : tagged_rels) rows.push_back(coords_of(truncated(f, cap_)));
    std::vector<QVec> ideal_vecs;
    for (const auto& g : ideal_rows) {
        QVec v = coords_of(truncated(g, cap_));
        if (!qvec_is_zero(v)) ideal_vecs.push_back(v);
    }
    rows.insert(rows.end(), ideal_vecs.begin(), ideal_vecs.end());
    solver_ = RowSpaceSolver(rows, space_.size());
    ideal_only_ = RowSpaceSolver(ideal_vecs, space_.size());

    if (assert_basis_independent) {
        SpanBuilder span(space_.size());
        for (const auto& f : tagged_rels) span.try_add(coords_of(truncated(f, cap_)));
        for (const auto& v : ideal_vecs) span.try_add(v);
        for (const auto& m : basis_) {
            QVec u(space_.size());
            u[index_.at(m)] = Rational(1);
            require_internal(span.try_add(u),
                             "basis monomial dependent modulo the truncation ideal");
        }
        require_internal(span.rank() == space_.size(),
                         "retained basis does not span the truncated quotient");
    }
}

QVec TruncExpander::coords_of(const Polynomial& p) const {
    QVec v(space_.size());
    for (const auto& [m, c] : p.terms()) {
        auto it = index_.find(m);
        require_internal(it != index_.end(), "expander: monomial above the truncation cap");
        v[it->second] = c;
    }
    return v;
}

TruncExpander::Expansion TruncExpander::expand(const MultiIndex& n) const {
    Expansion e;
    e.basis_coeffs = std::map<Monomial, Rational, MonomialDesc>{MonomialDesc{uring_->order()}};
    e.rel_coeffs.assign(n_rels_, Rational(0));
    if (n.degree() > cap_) return e; // inside m^{cap+1}
    QVec u(space_.size());
    u[index_.at(n)] = Rational(1);
    auto z = solver_.solve(u);
    require_internal(z.has_value(), "expander: monomial not expressible (basis property violated)");
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        if (!(*z)[i].is_zero()) e.basis_coeffs.emplace(basis_[i], (*z)[i]);
    }
    for (std::size_t j = 0; j < n_rels_; ++j) e.rel_coeffs[j] = (*z)[basis_.size() + j];
    return e;
}

bool TruncExpander::ideal_contains(const Polynomial& v) const {
    return ideal_only_.contains(coords_of(truncated(v, cap_)));
}

LocalQuotient LocalQuotient::initial(RingPtr uring, std::size_t rel_count) {
    LocalQuotient q;
    q.uring_ = std::move(uring);
    q.order_ = 1;
    q.rels_.assign(rel_count, Polynomial::zero(q.uring_));
    q.b_.push_back({Monomial::one(q.uring_->nvars())});
    std::vector<MultiIndex> degree_one;
    for (std::size_t i = 0; i < q.uring_->nvars(); ++i)
        degree_one.push_back(Monomial::var(q.uring_->nvars(), i));
    std::sort(degree_one.begin(), degree_one.end(), [&](const Monomial& a, const Monomial& b) {
        return monomial_greater(a, b, q.uring_->order());
    });
    q.b_.push_back(std::move(degree_one));
    return q;
}

std::vector<MultiIndex> LocalQuotient::bar_basis() const {
    std::vector<MultiIndex> out;
    for (const auto& layer : b_) out.insert(out.end(), layer.begin(), layer.end());
    return out;
}

std::size_t LocalQuotient::dim() const { return bar_basis().size(); }

std::vector<Polynomial> LocalQuotient::ideal_rows(bool include_plain_rels, unsigned cap) const {
    // multiples u^a * f_j; |a| >= 1 always, plus a = 0 when requested
    std::vector<Polynomial> rows;
    for (const auto& f : rels_) {
        if (f.is_zero()) continue;
        if (include_plain_rels) rows.push_back(f);
        for (unsigned d = 1; d + 2 <= cap; ++d) {
            for (const auto& a : monomials_of_degree(uring_->nvars(), d, uring_->order()))
                rows.push_back(f.times_monomial(a, Rational(1)));
        }
    }
    return rows;
}

std::vector<MultiIndex> LocalQuotient::basis_Bprime(unsigned k) const {
    check(k >= 1 && k <= order_ + 1, "basis_Bprime: order out of range");
    const auto degree_k = monomials_of_degree(uring_->nvars(), k, uring_->order());
    std::map<Monomial, std::size_t, MonomialDesc> deg_index{MonomialDesc{uring_->order()}};
    for (std::size_t i = 0; i < degree_k.size(); ++i) deg_index.emplace(degree_k[i], i);

    // the part of m(f) that lies in pure degree k, modulo m^{k+1}: echelonize
    // the multiples with the lower-degree coordinates leading, keep rows
    // supported purely in degree k
    auto low = monomials_up_to(uring_, k - 1);
    std::map<Monomial, std::size_t, MonomialDesc> low_index{MonomialDesc{uring_->order()}};
    for (std::size_t i = 0; i < low.size(); ++i) low_index.emplace(low[i], i);
    const std::size_t width = low.size() + degree_k.size();

    QMatrix mult(0, width);
    for (const auto& row : ideal_rows(false, k)) {
        QVec v(width);
        bool any = false;
        for (const auto& [m, c] : row.terms()) {
            if (m.degree() > k) continue;
            any = true;
            if (m.degree() == k)
                v[low.size() + deg_index.at(m)] = c;
            else
                v[low_index.at(m)] = c;
        }
        if (any) mult.append_row(v);
    }
    mult.rref();
    SpanBuilder kill(degree_k.size());
    for (std::size_t i = 0; i < mult.rows(); ++i) {
        QVec r = mult.row(i);
        bool low_part = false;
        for (std::size_t j = 0; j < low.size(); ++j)
            if (!r[j].is_zero()) { low_part = true; break; }
        if (low_part || qvec_is_zero(r)) continue;
        kill.try_add(QVec(r.begin() + low.size(), r.end()));
    }
    const std::size_t quotient_dim = degree_k.size() - kill.rank();

    // hereditary candidates e_i + m, m in B_{k-1}, scanned in descending order
    std::vector<MultiIndex> candidates;
    for (const auto& m : b_.at(k - 1)) {
        for (std::size_t i = 0; i < uring_->nvars(); ++i) {
            Monomial c = m * Monomial::var(uring_->nvars(), i);
            if (std::find(candidates.begin(), candidates.end(), c) == candidates.end())
                candidates.push_back(c);
        }
    }
    std::sort(candidates.begin(), candidates.end(), [&](const Monomial& a, const Monomial& b) {
        return monomial_greater(a, b, uring_->order());
    });

    std::vector<MultiIndex> picked;
    for (const auto& c : candidates) {
        QVec u(degree_k.size());
        u[deg_index.at(c)] = Rational(1);
        if (kill.try_add(u)) picked.push_back(c);
    }
    require_internal(picked.size() == quotient_dim,
                     "hereditary candidates do not span the degree slice");
    return picked;
}

LocalQuotient LocalQuotient::extended(const std::vector<Polynomial>& corrections) const {
    check(corrections.size() == rels_.size(), "extended: one correction per relation required");
    const unsigned next = order_ + 1;
    const auto bprime = basis_Bprime(next);
    for (const auto& c : corrections) {
        for (const auto& [m, coef] : c.terms()) {
            check(m.degree() == next &&
                      std::find(bprime.begin(), bprime.end(), m) != bprime.end(),
                  "extended: correction not supported on B'_{N+1}");
        }
    }

    LocalQuotient q;
    q.uring_ = uring_;
    q.order_ = next;
    q.rels_.reserve(rels_.size());
    for (std::size_t j = 0; j < rels_.size(); ++j) q.rels_.push_back(rels_[j] + corrections[j]);
    q.b_ = b_;

    // select B_{next} inside B' against the new quotient A_{next}
    auto space = monomials_up_to(uring_, next);
    std::map<Monomial, std::size_t, MonomialDesc> index{MonomialDesc{uring_->order()}};
    for (std::size_t i = 0; i < space.size(); ++i) index.emplace(space[i], i);
    SpanBuilder span(space.size());
    for (const auto& row : q.ideal_rows(true, next + 1)) {
        QVec v(space.size());
        for (const auto& [m, c] : row.terms())
            if (m.degree() <= next) v[index.at(m)] = c;
        span.try_add(v);
    }
    for (const auto& m : bar_basis()) {
        QVec u(space.size());
        u[index.at(m)] = Rational(1);
        require_internal(span.try_add(u), "old basis monomial became dependent in the new stage");
    }
    std::vector<MultiIndex> picked;
    for (const auto& c : bprime) {
        QVec u(space.size());
        u[index.at(c)] = Rational(1);
        if (span.try_add(u)) picked.push_back(c);
    }
    require_internal(span.rank() == space.size(),
                     "B' does not complete the basis of the new stage");
    q.b_.push_back(std::move(picked));
    return q;
}

TruncExpander LocalQuotient::a_expander() const {
    return TruncExpander(uring_, order_, bar_basis(),
                         [&] {
                             std::vector<Polynomial> tagged;
                             for (const auto& f : rels_) tagged.push_back(f);
                             return tagged;
                         }(),
                         ideal_rows(false, order_ + 1), true);
}

TruncExpander LocalQuotient::r_expander() const {
    std::vector<Monomial> basis = bar_basis();
    for (const auto& m : basis_Bprime(order_ + 1)) basis.push_back(m);
    return TruncExpander(uring_, order_ + 1, std::move(basis),
                         [&] {
                             std::vector<Polynomial> tagged;
                             for (const auto& f : rels_) tagged.push_back(f);
                             return tagged;
                         }(),
                         ideal_rows(false, order_ + 2), false);
}

NormalFormWitness LocalQuotient::normal_form_witness(const MultiIndex& n) const {
    check(n.nvars() == uring_->nvars(), "witness: arity mismatch");
    check(n.degree() <= order_ + 1, "witness: order out of range");
    auto exp = a_expander().expand(n);
    NormalFormWitness w;
    w.input = n;
    w.basis_coeffs = std::move(exp.basis_coeffs);
    w.rel_coeffs = std::move(exp.rel_coeffs);
    return w;
}

bool LocalQuotient::verify_witness(const NormalFormWitness& w) const {
    Polynomial defect = Polynomial::monomial(uring_, w.input);
    for (const auto& [m, c] : w.basis_coeffs)
        defect -= Polynomial::monomial(uring_, m, c);
    for (std::size_t j = 0; j < rels_.size(); ++j)
        defect -= rels_[j].scaled(w.rel_coeffs[j]);
    // defect must lie in m^{order+1} + m(f)
    Polynomial low = Polynomial::zero(uring_);
    for (const auto& [m, c] : defect.terms())
        if (m.degree() <= order_) low.add_term(m, c);
    if (low.is_zero()) return true;
    TruncExpander e(uring_, order_, {}, {}, ideal_rows(false, order_ + 1), false);
    return e.ideal_contains(low);
}

} // namespace gmmp

#include "gmmp/hom_ext.hpp"

#include <algorithm>

namespace gmmp {

HomSlice::HomSlice(RingPtr ring, FreeModule target, FreeModule source)
    : ring_(std::move(ring)), target_(std::move(target)), source_(std::move(source)) {
    for (std::size_t i = 0; i < target_.rank(); ++i) {
        for (std::size_t j = 0; j < source_.rank(); ++j) {
            const long deg = static_cast<long>(source_.twist(j)) - target_.twist(i);
            auto monos = graded_piece_basis(ring_, deg);
            if (monos.empty()) continue;
            auto& block = blocks_[{i, j}];
            block.first = coords_.size();
            std::map<Monomial, std::size_t, MonomialDesc> index{MonomialDesc{ring_->order()}};
            for (std::size_t k = 0; k < monos.size(); ++k) {
                index.emplace(monos[k], coords_.size());
                coords_.push_back(Coord{i, j, monos[k]});
            }
            block.second = std::move(index);
        }
    }
}

QVec HomSlice::coords_of(const GradedMatrix& m) const {
    require_internal(m.target() == target_ && m.source() == source_,
                     "HomSlice::coords_of: shape mismatch");
    QVec v(dim());
    for (const auto& [ij, p] : m.entries()) {
        auto bl = blocks_.find(ij);
        require_internal(bl != blocks_.end(), "HomSlice::coords_of: entry outside slice");
        for (const auto& [mono, c] : p.terms()) {
            auto it = bl->second.second.find(mono);
            require_internal(it != bl->second.second.end(),
                             "HomSlice::coords_of: non-standard monomial in entry");
            v[it->second] = c;
        }
    }
    return v;
}

GradedMatrix HomSlice::matrix_of(const QVec& v) const {
    require_internal(v.size() == dim(), "HomSlice::matrix_of: dimension mismatch");
    GradedMatrix m(ring_, target_, source_);
    std::map<std::pair<std::size_t, std::size_t>, Polynomial> acc;
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (v[k].is_zero()) continue;
        const auto& c = coords_[k];
        auto [it, fresh] = acc.try_emplace({c.row, c.col}, Polynomial::zero(ring_));
        it->second.add_term(c.mono, v[k]);
    }
    for (auto& [ij, p] : acc) m.set_entry(ij.first, ij.second, std::move(p));
    return m;
}

GradedMatrix HomSlice::unit(std::size_t k) const {
    QVec v(dim());
    v.at(k) = Rational(1);
    return matrix_of(v);
}

const GradedMatrix& YonedaCochain::comp(std::size_t n) const {
    auto it = comps.find(n);
    check(it != comps.end(),
          "cochain is missing component " + std::to_string(n) + " required by this operation");
    return it->second;
}

YonedaCochain YonedaCochain::operator-() const {
    YonedaCochain r;
    r.level = level;
    for (const auto& [n, m] : comps) r.comps.emplace(n, -m);
    return r;
}

YonedaCochain& YonedaCochain::operator+=(const YonedaCochain& o) {
    require_internal(level == o.level, "cochain level mismatch");
    require_internal(comps.size() == o.comps.size(), "cochain component sets differ");
    for (auto& [n, m] : comps) {
        auto it = o.comps.find(n);
        require_internal(it != o.comps.end(), "cochain component sets differ");
        m += it->second;
    }
    return *this;
}

YonedaCochain YonedaCochain::scaled(const Rational& c) const {
    YonedaCochain r;
    r.level = level;
    for (const auto& [n, m] : comps) r.comps.emplace(n, m.scaled(c));
    return r;
}

bool YonedaCochain::is_identically_zero() const {
    for (const auto& [n, m] : comps)
        if (!m.is_zero()) return false;
    return true;
}

YonedaCochain yoneda_diff(const Resolution& res, const YonedaCochain& xi) {
    const int p = xi.level;
    YonedaCochain out;
    out.level = p + 1;
    for (std::size_t n = static_cast<std::size_t>(p) + 1; n <= res.length(); ++n) {
        if (!xi.has(n) || !xi.has(n - 1)) continue;
        GradedMatrix first = graded_compose(res.diff(n - p), xi.comp(n));
        GradedMatrix second = graded_compose(xi.comp(n - 1), res.diff(n));
        // delta∘xi - (-1)^p xi∘delta
        out.comps.emplace(n, (p % 2 == 0) ? first - second : first + second);
    }
    // a truncation shorter than p+1 supports no components at all; that is
    // fine (the condition is vacuous), but missing input components are not
    check(!out.comps.empty() || res.length() < static_cast<std::size_t>(p) + 1,
          "yoneda_diff: no computable components");
    return out;
}

YonedaCochain cup(const YonedaCochain& a, const YonedaCochain& b) {
    YonedaCochain out;
    out.level = a.level + b.level;
    for (const auto& [n, bn] : b.comps) {
        if (n < static_cast<std::size_t>(b.level) || !a.has(n - b.level)) continue;
        out.comps.emplace(n, graded_compose(a.comp(n - b.level), bn));
    }
    check(!out.comps.empty(), "cup: no computable components");
    return out;
}

namespace {

FreeModule level_module(const Resolution& res, std::size_t i) {
    return i < res.modules.size() ? res.modules[i] : FreeModule(std::vector<int>{});
}

GradedMatrix level_diff(const Resolution& res, std::size_t i) {
    if (i >= 1 && i <= res.length()) return res.diff(i);
    return GradedMatrix::zero(res.ring, level_module(res, i - 1), level_module(res, i));
}

} // namespace

ExtBasis ExtBasis::compute(const Resolution& res) {
    check(res.length() >= 3 || res.complete,
          "Ext computation requires a resolution of length >= 3 (or a complete one)");
    ExtBasis e;
    e.res_ = std::make_shared<const Resolution>(res);
    e.ring_ = res.ring;
    e.build();
    return e;
}

std::optional<QVec> ExtBasis::k_coords(const Frame& f, const QVec& v) {
    QVec w(f.kernel.free_cols.size());
    for (std::size_t t = 0; t < w.size(); ++t) w[t] = v[f.kernel.free_cols[t]];
    // reconstruct and compare: v must lie in the kernel span
    QVec rec(v.size());
    for (std::size_t t = 0; t < w.size(); ++t) {
        if (w[t].is_zero()) continue;
        qvec_axpy(rec, w[t], f.kernel.vectors[t]);
    }
    for (std::size_t i = 0; i < v.size(); ++i)
        if (rec[i] != v[i]) return std::nullopt;
    return w;
}

ExtBasis::Frame ExtBasis::build_frame(int p) const {
    const Resolution& res = *res_;
    const HomSlice& cp = (p == 1) ? c1_ : c2_;
    const FreeModule lnext = level_module(res, static_cast<std::size_t>(p) + 1);
    const GradedMatrix delta_next = level_diff(res, static_cast<std::size_t>(p) + 1);
    const GradedMatrix delta1 = level_diff(res, 1);
    const GradedMatrix delta_p = level_diff(res, static_cast<std::size_t>(p));

    // D^{p+1}: images of delta_1∘tau for tau in Hom(L_{p+1}, L_1)
    HomSlice cnext(ring_, level_module(res, 0), lnext);
    HomSlice tau_next(ring_, level_module(res, 1), lnext);
    std::vector<QVec> d_next_rows;
    d_next_rows.reserve(tau_next.dim());
    for (std::size_t k = 0; k < tau_next.dim(); ++k)
        d_next_rows.push_back(cnext.coords_of(graded_compose(delta1, tau_next.unit(k))));
    RowSpaceSolver d_next(d_next_rows, cnext.dim());

    // kernel of f -> residue of f∘delta_{p+1} modulo D^{p+1}
    QMatrix a(cnext.dim(), cp.dim());
    for (std::size_t k = 0; k < cp.dim(); ++k) {
        QVec img = cnext.coords_of(graded_compose(cp.unit(k), delta_next));
        QVec residue = d_next.reduce(img);
        for (std::size_t i = 0; i < cnext.dim(); ++i) a.at(i, k) = residue[i];
    }

    Frame f;
    f.kernel = a.kernel();

    // B^p rows: boundaries psi∘delta_p, then the D^p directions delta_1∘tau
    const HomSlice& cprev = (p == 1) ? c0_ : c1_;
    const HomSlice& tau_p = (p == 1) ? tau1_ : tau2_;
    std::vector<QVec> b_in_c;
    for (std::size_t k = 0; k < cprev.dim(); ++k) {
        b_in_c.push_back(cp.coords_of(graded_compose(cprev.unit(k), delta_p)));
        f.b_tags.emplace_back('T', k);
    }
    for (std::size_t k = 0; k < tau_p.dim(); ++k) {
        b_in_c.push_back(cp.coords_of(graded_compose(delta1, tau_p.unit(k))));
        f.b_tags.emplace_back('D', k);
    }
    for (std::size_t k = 0; k < b_in_c.size(); ++k) {
        auto w = k_coords(f, b_in_c[k]);
        require_internal(w.has_value(), "a boundary failed the cocycle condition");
        f.b_rows.push_back(std::move(*w));
    }

    // echelon complement of B inside K: the Ext^p pivots
    const std::size_t kdim = f.kernel.free_cols.size();
    SpanBuilder span(kdim);
    for (const auto& r : f.b_rows) span.try_add(r);
    for (std::size_t u = 0; u < kdim; ++u) {
        QVec unit(kdim);
        unit[u] = Rational(1);
        if (span.try_add(unit)) f.complement.push_back(u);
    }

    std::vector<QVec> solver_rows = f.b_rows;
    for (auto u : f.complement) {
        QVec unit(kdim);
        unit[u] = Rational(1);
        solver_rows.push_back(std::move(unit));
    }
    f.solver = RowSpaceSolver(solver_rows, kdim);
    return f;
}

void ExtBasis::build() {
    const Resolution& res = *res_;
    const FreeModule l0 = level_module(res, 0);
    const FreeModule l1 = level_module(res, 1);
    const FreeModule l2 = level_module(res, 2);
    c0_ = HomSlice(ring_, l0, l0);
    c1_ = HomSlice(ring_, l0, l1);
    c2_ = HomSlice(ring_, l0, l2);
    tau1_ = HomSlice(ring_, l1, l1);
    tau2_ = HomSlice(ring_, l1, l2);

    f1_ = build_frame(1);
    f2_ = build_frame(2);

    if (l1.rank() > 0) {
        const GradedMatrix delta1 = level_diff(res, 1);
        std::vector<ModuleVec> cols;
        cols.reserve(delta1.cols());
        for (std::size_t j = 0; j < delta1.cols(); ++j) cols.push_back(delta1.column(j));
        d1_gb_ = std::make_shared<GroebnerBasis>(
            GroebnerBasis::compute(ring_, delta1.target(), std::move(cols)));
    }

    for (auto u : f1_.complement) basis1_.push_back(lift_cocycle1(c1_.matrix_of(f1_.kernel.vectors[u])));
    for (auto u : f2_.complement) reps2_.push_back(c2_.matrix_of(f2_.kernel.vectors[u]));
}

bool ExtBasis::is_cocycle2(const GradedMatrix& omega) const {
    if (c2_.dim() == 0) return omega.is_zero();
    return k_coords(f2_, c2_.coords_of(omega)).has_value();
}

QVec ExtBasis::class_of(const GradedMatrix& omega) const {
    if (c2_.dim() == 0) {
        require_internal(omega.is_zero(), "class_of: nonzero cochain with L2 = 0");
        return QVec(dim2());
    }
    auto kc = k_coords(f2_, c2_.coords_of(omega));
    require_internal(kc.has_value(), "class_of: cochain is not a cocycle");
    auto z = f2_.solver.solve(*kc);
    require_internal(z.has_value(), "class_of: cocycle outside K^2 span");
    QVec cls(dim2());
    for (std::size_t i = 0; i < dim2(); ++i) cls[i] = (*z)[f2_.b_rows.size() + i];
    return cls;
}

std::optional<YonedaCochain> ExtBasis::solve_coboundary(const GradedMatrix& omega) const {
    const Resolution& res = *res_;
    const FreeModule l1 = level_module(res, 1);
    const FreeModule l2 = level_module(res, 2);
    if (c2_.dim() == 0) {
        require_internal(omega.is_zero(), "solve_coboundary: nonzero cochain with L2 = 0");
        YonedaCochain eta;
        eta.level = 1;
        eta.comps.emplace(1, GradedMatrix::zero(ring_, level_module(res, 0), l1));
        eta.comps.emplace(2, GradedMatrix::zero(ring_, l1, l2));
        return eta;
    }
    auto kc = k_coords(f2_, c2_.coords_of(omega));
    require_internal(kc.has_value(), "solve_coboundary: cochain is not a cocycle");
    auto z = f2_.solver.solve(*kc);
    require_internal(z.has_value(), "solve_coboundary: cocycle outside K^2 span");
    for (std::size_t i = 0; i < dim2(); ++i) {
        if (!(*z)[f2_.b_rows.size() + i].is_zero()) return std::nullopt; // nonzero class
    }
    QVec psi(c1_.dim());
    QVec tau(tau2_.dim());
    for (std::size_t i = 0; i < f2_.b_rows.size(); ++i) {
        if ((*z)[i].is_zero()) continue;
        const auto& [kind, idx] = f2_.b_tags[i];
        if (kind == 'T')
            psi[idx] += (*z)[i];
        else
            tau[idx] += (*z)[i];
    }
    YonedaCochain eta;
    eta.level = 1;
    eta.comps.emplace(1, c1_.matrix_of(psi));
    eta.comps.emplace(2, tau2_.matrix_of(tau));
    // exact re-verification of delta_1∘eta_2 + eta_1∘delta_2 = omega
    GradedMatrix lhs = graded_compose(level_diff(res, 1), eta.comp(2)) +
                       graded_compose(eta.comp(1), level_diff(res, 2));
    require_internal(lhs == omega, "solve_coboundary: witness failed re-verification");
    return eta;
}

YonedaCochain ExtBasis::lift_cocycle1(const GradedMatrix& alpha1) const {
    const Resolution& res = *res_;
    auto kc = k_coords(f1_, c1_.coords_of(alpha1));
    check(kc.has_value(), "cocycle lift: alpha_1 does not satisfy the cocycle condition");
    GradedMatrix rho = -graded_compose(alpha1, level_diff(res, 2));
    GradedMatrix alpha2(ring_, level_module(res, 1), level_module(res, 2));
    if (!rho.is_zero()) {
        require_internal(d1_gb_ != nullptr, "cocycle lift: missing delta_1 basis");
        for (std::size_t c = 0; c < rho.cols(); ++c) {
            ModuleVec b = rho.column(c);
            if (module_vec_is_zero(b)) continue;
            auto x = d1_gb_->express_in_inputs(b);
            require_internal(x.has_value(),
                             "cocycle lift: alpha_1∘delta_2 is not in the image of delta_1");
            alpha2.set_column(c, *x);
        }
        require_internal(graded_compose(level_diff(res, 1), alpha2) == rho,
                         "cocycle lift: alpha_2 failed re-verification");
    }
    YonedaCochain a;
    a.level = 1;
    a.comps.emplace(1, alpha1);
    a.comps.emplace(2, std::move(alpha2));
    return a;
}

void ExtBasis::inject_basis1(const std::vector<GradedMatrix>& alpha1s) {
    check(alpha1s.size() == dim1(),
          "fixture basis has " + std::to_string(alpha1s.size()) + " columns, Ext^1 has dimension " +
              std::to_string(dim1()));
    SpanBuilder span(f1_.kernel.free_cols.size());
    for (const auto& r : f1_.b_rows) span.try_add(r);
    std::vector<YonedaCochain> injected;
    for (std::size_t i = 0; i < alpha1s.size(); ++i) {
        auto kc = k_coords(f1_, c1_.coords_of(alpha1s[i]));
        check(kc.has_value(),
              "fixture basis column " + std::to_string(i + 1) + " is not a cocycle");
        check(span.try_add(*kc), "fixture basis column " + std::to_string(i + 1) +
                                     " is dependent modulo coboundaries");
        injected.push_back(lift_cocycle1(alpha1s[i]));
    }
    basis1_ = std::move(injected);
}

ExtBasis ExtBasis::restricted(const std::vector<std::size_t>& keep) const {
    ExtBasis e = *this;
    e.basis1_.clear();
    std::vector<bool> seen(dim1() + 1, false);
    for (auto i : keep) {
        check(i >= 1 && i <= dim1(), "restriction index " + std::to_string(i) + " out of range");
        check(!seen[i], "duplicate restriction index " + std::to_string(i));
        seen[i] = true;
        e.basis1_.push_back(basis1_[i - 1]);
    }
    return e;
}

GradedMatrix ExtBasis::zero_cochain2() const {
    return GradedMatrix::zero(ring_, level_module(*res_, 0), level_module(*res_, 2));
}

} // namespace gmmp

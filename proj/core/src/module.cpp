#include "gmmp/module.hpp"

#include <sstream>

namespace gmmp {

std::string FreeModule::str() const {
    if (twists_.empty()) return "0";
    std::ostringstream os;
    // group equal consecutive twists (twists are kept sorted by construction
    // in resolutions, but do not rely on it)
    std::map<int, int> mult;
    for (int t : twists_) mult[t]++;
    bool first = true;
    for (const auto& [t, k] : mult) {
        if (!first) os << " + ";
        os << "R(" << -t << ")";
        if (k > 1) os << "^" << k;
        first = false;
    }
    return os.str();
}

ModuleVec module_vec_zero(const RingPtr& ring, std::size_t rank) {
    return ModuleVec(rank, Polynomial::zero(ring));
}

bool module_vec_is_zero(const ModuleVec& v) {
    for (const auto& p : v)
        if (!p.is_zero()) return false;
    return true;
}

std::optional<long> module_vec_degree(const ModuleVec& v, const FreeModule& mod) {
    std::optional<long> deg;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i].is_zero()) continue;
        auto h = v[i].homogeneous_degree();
        if (!h) return std::nullopt;
        long d = static_cast<long>(*h) + mod.twist(i);
        if (deg && *deg != d) return std::nullopt;
        deg = d;
    }
    return deg ? deg : std::optional<long>(0);
}

ModuleVec module_vec_add(const ModuleVec& a, const ModuleVec& b) {
    require_internal(a.size() == b.size(), "module vec size mismatch");
    ModuleVec r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

ModuleVec module_vec_sub(const ModuleVec& a, const ModuleVec& b) {
    require_internal(a.size() == b.size(), "module vec size mismatch");
    ModuleVec r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

ModuleVec module_vec_times(const ModuleVec& v, const Monomial& m, const Rational& c) {
    ModuleVec r;
    r.reserve(v.size());
    for (const auto& p : v) r.push_back(p.times_monomial(m, c));
    return r;
}

ModuleVec module_vec_scaled(const ModuleVec& v, const Rational& c) {
    ModuleVec r;
    r.reserve(v.size());
    for (const auto& p : v) r.push_back(p.scaled(c));
    return r;
}

GradedMatrix::GradedMatrix(RingPtr ring, FreeModule target, FreeModule source)
    : ring_(std::move(ring)), target_(std::move(target)), source_(std::move(source)) {}

GradedMatrix GradedMatrix::identity(RingPtr ring, const FreeModule& mod) {
    GradedMatrix m(ring, mod, mod);
    for (std::size_t i = 0; i < mod.rank(); ++i)
        m.set_entry(i, i, Polynomial::constant(ring, Rational(1)));
    return m;
}

Polynomial GradedMatrix::entry(std::size_t i, std::size_t j) const {
    auto it = entries_.find({i, j});
    return it == entries_.end() ? Polynomial::zero(ring_) : it->second;
}

void GradedMatrix::set_entry(std::size_t i, std::size_t j, Polynomial p) {
    check(i < rows() && j < cols(), "graded matrix index out of range");
    if (p.is_zero()) {
        entries_.erase({i, j});
        return;
    }
    check(p.ring()->same_as(*ring_), "graded matrix entry over wrong ring");
    auto h = p.homogeneous_degree();
    check(h.has_value(), "graded matrix entry must be homogeneous");
    const long want = static_cast<long>(source_.twist(j)) - target_.twist(i);
    check(static_cast<long>(*h) == want,
          "graded matrix entry degree " + std::to_string(*h) + " violates degree-0 invariant (expected " +
              std::to_string(want) + ")");
    entries_.insert_or_assign({i, j}, std::move(p));
}

ModuleVec GradedMatrix::column(std::size_t j) const {
    ModuleVec v = module_vec_zero(ring_, rows());
    for (std::size_t i = 0; i < rows(); ++i) {
        auto it = entries_.find({i, j});
        if (it != entries_.end()) v[i] = it->second;
    }
    return v;
}

void GradedMatrix::set_column(std::size_t j, const ModuleVec& v) {
    require_internal(v.size() == rows(), "set_column: rank mismatch");
    for (std::size_t i = 0; i < rows(); ++i) set_entry(i, j, v[i]);
}

GradedMatrix GradedMatrix::operator-() const {
    GradedMatrix r(ring_, target_, source_);
    for (const auto& [ij, p] : entries_) r.entries_.emplace(ij, -p);
    return r;
}

GradedMatrix& GradedMatrix::operator+=(const GradedMatrix& o) {
    check(target_ == o.target_ && source_ == o.source_, "graded matrix shape mismatch");
    for (const auto& [ij, p] : o.entries_) {
        auto it = entries_.find(ij);
        if (it == entries_.end()) {
            entries_.emplace(ij, p);
        } else {
            it->second += p;
            if (it->second.is_zero()) entries_.erase(it);
        }
    }
    return *this;
}

GradedMatrix& GradedMatrix::operator-=(const GradedMatrix& o) {
    *this += -o;
    return *this;
}

GradedMatrix GradedMatrix::scaled(const Rational& c) const {
    GradedMatrix r(ring_, target_, source_);
    if (c.is_zero()) return r;
    for (const auto& [ij, p] : entries_) r.entries_.emplace(ij, p.scaled(c));
    return r;
}

ModuleVec GradedMatrix::apply(const ModuleVec& v) const {
    require_internal(v.size() == cols(), "apply: rank mismatch");
    ModuleVec r = module_vec_zero(ring_, rows());
    for (const auto& [ij, p] : entries_) {
        if (v[ij.second].is_zero()) continue;
        r[ij.first] += p * v[ij.second];
    }
    return r;
}

bool operator==(const GradedMatrix& a, const GradedMatrix& b) {
    if (a.target_ != b.target_ || a.source_ != b.source_) return false;
    if (a.entries_.size() != b.entries_.size()) return false;
    auto ia = a.entries_.begin();
    auto ib = b.entries_.begin();
    for (; ia != a.entries_.end(); ++ia, ++ib) {
        if (ia->first != ib->first || ia->second != ib->second) return false;
    }
    return true;
}

bool GradedMatrix::entries_in_max_ideal() const {
    const Monomial one = Monomial::one(ring_->nvars());
    for (const auto& [ij, p] : entries_) {
        if (!p.coeff(one).is_zero()) return false;
    }
    return true;
}

std::string GradedMatrix::str() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < rows(); ++i) {
        os << "[ ";
        for (std::size_t j = 0; j < cols(); ++j) {
            if (j) os << " | ";
            os << entry(i, j).str();
        }
        os << " ]\n";
    }
    return os.str();
}

GradedMatrix graded_compose(const GradedMatrix& a, const GradedMatrix& b) {
    check(a.ring()->same_as(*b.ring()), "graded_compose: ring mismatch");
    check(a.source() == b.target(), "graded_compose: twist mismatch");
    GradedMatrix r(a.ring(), a.target(), b.source());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            Polynomial acc = Polynomial::zero(a.ring());
            for (const auto& [ij, p] : a.entries()) {
                if (ij.first != i) continue;
                const Polynomial q = b.entry(ij.second, j);
                if (q.is_zero()) continue;
                acc += p * q;
            }
            r.set_entry(i, j, std::move(acc));
        }
    }
    return r;
}

} // namespace gmmp

#include "gmmp/poly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace gmmp {

MonomialOrder monomial_order_from_string(const std::string& s) {
    if (s == "degrevlex") return MonomialOrder::degrevlex;
    if (s == "lex") return MonomialOrder::lex;
    throw ValidationError("unknown monomial order: " + s);
}

std::string to_string(MonomialOrder o) {
    return o == MonomialOrder::degrevlex ? "degrevlex" : "lex";
}

Monomial::Monomial(std::vector<unsigned> exps) : exps_(std::move(exps)) {
    degree_ = std::accumulate(exps_.begin(), exps_.end(), 0u);
}

Monomial Monomial::var(std::size_t nvars, std::size_t i, unsigned e) {
    std::vector<unsigned> exps(nvars, 0);
    exps.at(i) = e;
    return Monomial(std::move(exps));
}

Monomial Monomial::operator*(const Monomial& o) const {
    std::vector<unsigned> exps(exps_.size());
    for (std::size_t i = 0; i < exps_.size(); ++i) exps[i] = exps_[i] + o.exps_[i];
    return Monomial(std::move(exps));
}

bool Monomial::divides(const Monomial& o) const {
    for (std::size_t i = 0; i < exps_.size(); ++i)
        if (exps_[i] > o.exps_[i]) return false;
    return true;
}

Monomial Monomial::divide(const Monomial& o) const {
    std::vector<unsigned> exps(exps_.size());
    for (std::size_t i = 0; i < exps_.size(); ++i) exps[i] = exps_[i] - o.exps_[i];
    return Monomial(std::move(exps));
}

Monomial Monomial::lcm(const Monomial& a, const Monomial& b) {
    std::vector<unsigned> exps(a.exps_.size());
    for (std::size_t i = 0; i < exps.size(); ++i) exps[i] = std::max(a.exps_[i], b.exps_[i]);
    return Monomial(std::move(exps));
}

bool monomial_greater(const Monomial& a, const Monomial& b, MonomialOrder order) {
    switch (order) {
        case MonomialOrder::degrevlex: {
            if (a.degree() != b.degree()) return a.degree() > b.degree();
            // a > b iff the last index where they differ has a smaller exponent in a.
            for (std::size_t i = a.nvars(); i-- > 0;) {
                if (a.exp(i) != b.exp(i)) return a.exp(i) < b.exp(i);
            }
            return false;
        }
        case MonomialOrder::lex: {
            for (std::size_t i = 0; i < a.nvars(); ++i) {
                if (a.exp(i) != b.exp(i)) return a.exp(i) > b.exp(i);
            }
            return false;
        }
    }
    return false;
}

std::shared_ptr<const PolyRing> PolyRing::free_ring(std::vector<std::string> vars,
                                                    MonomialOrder order) {
    for (std::size_t i = 0; i < vars.size(); ++i)
        for (std::size_t j = i + 1; j < vars.size(); ++j)
            check(vars[i] != vars[j], "duplicate variable name: " + vars[i]);
    auto r = std::shared_ptr<PolyRing>(new PolyRing());
    r->vars_ = std::move(vars);
    r->order_ = order;
    return r;
}

std::shared_ptr<const PolyRing> PolyRing::quotient_ring(std::shared_ptr<const PolyRing> ambient,
                                                        std::vector<Polynomial> reduced_gb) {
    check(ambient != nullptr && !ambient->is_quotient(),
          "quotient ring requires a free ambient ring");
    for (const auto& g : reduced_gb) {
        check(g.ring().get() == ambient.get(), "quotient basis not over the ambient ring");
        check(!g.is_zero() && g.is_homogeneous(), "quotient ideal must have homogeneous nonzero generators");
    }
    auto r = std::shared_ptr<PolyRing>(new PolyRing());
    r->vars_ = ambient->vars_;
    r->order_ = ambient->order_;
    r->ambient_ = std::move(ambient);
    r->gb_ = std::make_unique<std::vector<Polynomial>>(std::move(reduced_gb));
    return r;
}

const std::vector<Polynomial>& PolyRing::quotient_gb() const {
    static const std::vector<Polynomial> empty;
    return gb_ ? *gb_ : empty;
}

bool PolyRing::same_as(const PolyRing& other) const {
    if (this == &other) return true;
    if (vars_ != other.vars_ || order_ != other.order_) return false;
    if (is_quotient() != other.is_quotient()) return false;
    if (!is_quotient()) return true;
    const auto& a = quotient_gb();
    const auto& b = other.quotient_gb();
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return false;
    return true;
}

std::optional<std::size_t> PolyRing::var_index(const std::string& name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == name) return i;
    return std::nullopt;
}

bool PolyRing::is_standard_monomial(const Monomial& m) const {
    if (!is_quotient()) return true;
    for (const auto& g : quotient_gb())
        if (g.leading_monomial().divides(m)) return false;
    return true;
}

PolyRing::~PolyRing() = default;

Polynomial::Polynomial(RingPtr ring)
    : ring_(std::move(ring)), terms_(MonomialDesc{ring_->order()}) {}

Polynomial Polynomial::constant(RingPtr ring, const Rational& c) {
    Polynomial p(std::move(ring));
    if (!c.is_zero()) p.terms_.emplace(Monomial::one(p.ring_->nvars()), c);
    return p;
}

Polynomial Polynomial::monomial(RingPtr ring, const Monomial& m, const Rational& c) {
    Polynomial p(std::move(ring));
    check(m.nvars() == p.ring_->nvars(), "monomial arity does not match ring");
    if (!c.is_zero()) p.terms_.emplace(m, c);
    p.reduce_mod_quotient();
    return p;
}

Polynomial Polynomial::variable(RingPtr ring, std::size_t i) {
    auto n = ring->nvars();
    return monomial(std::move(ring), Monomial::var(n, i));
}

const Monomial& Polynomial::leading_monomial() const {
    require_internal(!terms_.empty(), "leading term of zero polynomial");
    return terms_.begin()->first;
}

const Rational& Polynomial::leading_coeff() const {
    require_internal(!terms_.empty(), "leading term of zero polynomial");
    return terms_.begin()->second;
}

unsigned Polynomial::degree() const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
}

std::optional<unsigned> Polynomial::homogeneous_degree() const {
    if (terms_.empty()) return 0u;
    unsigned d = terms_.begin()->first.degree();
    for (const auto& [m, c] : terms_)
        if (m.degree() != d) return std::nullopt;
    return d;
}

Rational Polynomial::coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

Polynomial Polynomial::operator-() const {
    Polynomial r(ring_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    check(ring_->same_as(*o.ring_), "polynomial ring mismatch");
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    check(ring_->same_as(*o.ring_), "polynomial ring mismatch");
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    check(a.ring_->same_as(*b.ring_), "polynomial ring mismatch");
    Polynomial r(a.ring_);
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
    r.reduce_mod_quotient();
    return r;
}

Polynomial Polynomial::scaled(const Rational& c) const {
    Polynomial r(ring_);
    if (c.is_zero()) return r;
    for (const auto& [m, k] : terms_) r.terms_.emplace(m, k * c);
    return r;
}

Polynomial Polynomial::times_monomial(const Monomial& m, const Rational& c) const {
    Polynomial r(ring_);
    if (c.is_zero()) return r;
    for (const auto& [mm, k] : terms_) r.terms_.emplace(mm * m, k * c);
    r.reduce_mod_quotient();
    return r;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
    if (!a.ring_->same_as(*b.ring_)) return false;
    if (a.terms_.size() != b.terms_.size()) return false;
    auto ia = a.terms_.begin();
    auto ib = b.terms_.begin();
    for (; ia != a.terms_.end(); ++ia, ++ib) {
        if (ia->first != ib->first || ia->second != ib->second) return false;
    }
    return true;
}

Polynomial Polynomial::remainder(const Polynomial& p, const std::vector<Polynomial>& divisors) {
    Polynomial work = p;
    Polynomial rem(p.ring_);
    while (!work.is_zero()) {
        const Monomial lm = work.leading_monomial();
        const Rational lc = work.leading_coeff();
        bool reduced = false;
        for (const auto& g : divisors) {
            if (g.is_zero()) continue;
            if (g.leading_monomial().divides(lm)) {
                const Monomial q = lm.divide(g.leading_monomial());
                const Rational f = lc / g.leading_coeff();
                // work -= f * q * g (term-level; no quotient reduction here).
                for (const auto& [m, c] : g.terms()) work.add_term(m * q, -(c * f));
                reduced = true;
                break;
            }
        }
        if (!reduced) {
            rem.terms_.emplace(lm, lc);
            work.terms_.erase(work.terms_.begin());
        }
    }
    return rem;
}

void Polynomial::reduce_mod_quotient() {
    if (!ring_->is_quotient() || terms_.empty()) return;
    bool standard = true;
    for (const auto& [m, c] : terms_) {
        if (!ring_->is_standard_monomial(m)) { standard = false; break; }
    }
    if (standard) return;
    Polynomial nf = remainder(*this, ring_->quotient_gb());
    terms_ = std::move(nf.terms_);
}

Polynomial poly_arith(const Polynomial& f, const Polynomial& g, ArithOp op) {
    check(f.ring()->same_as(*g.ring()), "poly_arith: ring mismatch");
    switch (op) {
        case ArithOp::add: return f + g;
        case ArithOp::sub: return f - g;
        case ArithOp::mul: return f * g;
    }
    throw ValidationError("poly_arith: bad op");
}

namespace {

void enumerate_exponents(std::size_t var, unsigned remaining, std::vector<unsigned>& cur,
                         std::vector<Monomial>& out) {
    if (var + 1 == cur.size()) {
        cur[var] = remaining;
        out.emplace_back(cur);
        return;
    }
    for (unsigned e = 0; e <= remaining; ++e) {
        cur[var] = e;
        enumerate_exponents(var + 1, remaining - e, cur, out);
    }
}

} // namespace

std::vector<Monomial> monomials_of_degree(std::size_t nvars, unsigned degree, MonomialOrder order) {
    std::vector<Monomial> out;
    if (nvars == 0) {
        if (degree == 0) out.push_back(Monomial(std::vector<unsigned>{}));
        return out;
    }
    std::vector<unsigned> cur(nvars, 0);
    enumerate_exponents(0, degree, cur, out);
    std::sort(out.begin(), out.end(),
              [&](const Monomial& a, const Monomial& b) { return monomial_greater(a, b, order); });
    return out;
}

std::vector<Monomial> graded_piece_basis(const RingPtr& ring, long degree) {
    std::vector<Monomial> out;
    if (degree < 0) return out;
    for (auto& m : monomials_of_degree(ring->nvars(), static_cast<unsigned>(degree), ring->order())) {
        if (ring->is_standard_monomial(m)) out.push_back(std::move(m));
    }
    return out;
}

std::string monomial_str(const Monomial& m, const PolyRing& ring) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < m.nvars(); ++i) {
        if (m.exp(i) == 0) continue;
        if (!first) os << "*";
        os << ring.var_names()[i];
        if (m.exp(i) > 1) os << "^" << m.exp(i);
        first = false;
    }
    if (first) os << "1";
    return os.str();
}

std::string Polynomial::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        Rational a = c;
        if (first) {
            if (a.sign() < 0) { os << "-"; a = -a; }
        } else {
            os << (a.sign() < 0 ? " - " : " + ");
            if (a.sign() < 0) a = -a;
        }
        if (m.is_one()) {
            os << a.str();
        } else {
            if (!a.is_one()) os << a.str() << "*";
            os << monomial_str(m, *ring_);
        }
        first = false;
    }
    return os.str();
}

} // namespace gmmp

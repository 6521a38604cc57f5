#pragma once

#include "gmmp/errors.hpp"
#include "gmmp/rational.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace gmmp {

enum class MonomialOrder { degrevlex, lex };

MonomialOrder monomial_order_from_string(const std::string& s);
std::string to_string(MonomialOrder o);

// Exponent vector with cached total degree. Standard grading: every variable
// has degree 1.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::vector<unsigned> exps);
    static Monomial one(std::size_t nvars) { return Monomial(std::vector<unsigned>(nvars, 0)); }
    static Monomial var(std::size_t nvars, std::size_t i, unsigned e = 1);

    std::size_t nvars() const { return exps_.size(); }
    unsigned exp(std::size_t i) const { return exps_[i]; }
    const std::vector<unsigned>& exps() const { return exps_; }
    unsigned degree() const { return degree_; }
    bool is_one() const { return degree_ == 0; }

    Monomial operator*(const Monomial& o) const;
    bool divides(const Monomial& o) const;
    // Requires divisibility.
    Monomial divide(const Monomial& o) const;
    static Monomial lcm(const Monomial& a, const Monomial& b);

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.exps_ == b.exps_; }
    friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }

private:
    std::vector<unsigned> exps_;
    unsigned degree_ = 0;
};

// Strict "a > b" in the given order (a comes before b in canonical printing).
bool monomial_greater(const Monomial& a, const Monomial& b, MonomialOrder order);

struct MonomialDesc {
    MonomialOrder order = MonomialOrder::degrevlex;
    bool operator()(const Monomial& a, const Monomial& b) const {
        return monomial_greater(a, b, order);
    }
};

class Polynomial;

// A graded polynomial ring k[x_1..x_n], optionally presented as a quotient
// S/I by a homogeneous ideal. The quotient is carried as the reduced Groebner
// basis of I over the free ambient ring; elements of the quotient are stored
// as normal forms against it.
class PolyRing : public std::enable_shared_from_this<PolyRing> {
public:
    static std::shared_ptr<const PolyRing> free_ring(std::vector<std::string> vars,
                                                     MonomialOrder order = MonomialOrder::degrevlex);
    // `reduced_gb` must be a reduced Groebner basis of a homogeneous ideal over
    // `ambient` (see groebner.hpp::make_quotient_ring for the checked builder).
    static std::shared_ptr<const PolyRing> quotient_ring(std::shared_ptr<const PolyRing> ambient,
                                                         std::vector<Polynomial> reduced_gb);

    std::size_t nvars() const { return vars_.size(); }
    const std::vector<std::string>& var_names() const { return vars_; }
    MonomialOrder order() const { return order_; }

    bool is_quotient() const { return ambient_ != nullptr; }
    const std::shared_ptr<const PolyRing>& ambient() const { return ambient_; }
    const std::vector<Polynomial>& quotient_gb() const;

    // True for the free ring and for quotients with identical ambient data.
    bool same_as(const PolyRing& other) const;

    std::optional<std::size_t> var_index(const std::string& name) const;

    // A monomial of the free cover is standard if no quotient leading term
    // divides it. For a free ring every monomial is standard.
    bool is_standard_monomial(const Monomial& m) const;

    ~PolyRing();

private:
    PolyRing() = default;
    std::vector<std::string> vars_;
    MonomialOrder order_ = MonomialOrder::degrevlex;
    std::shared_ptr<const PolyRing> ambient_; // null for a free ring
    std::unique_ptr<std::vector<Polynomial>> gb_;
};

using RingPtr = std::shared_ptr<const PolyRing>;

// Sparse exact polynomial with terms kept in the ring's canonical order
// (leading term first). Quotient-ring elements are kept in normal form.
class Polynomial {
public:
    using TermMap = std::map<Monomial, Rational, MonomialDesc>;

    explicit Polynomial(RingPtr ring);
    static Polynomial zero(RingPtr ring) { return Polynomial(std::move(ring)); }
    static Polynomial constant(RingPtr ring, const Rational& c);
    static Polynomial monomial(RingPtr ring, const Monomial& m, const Rational& c = Rational(1));
    static Polynomial variable(RingPtr ring, std::size_t i);

    const RingPtr& ring() const { return ring_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }

    const Monomial& leading_monomial() const;
    const Rational& leading_coeff() const;
    unsigned degree() const; // total degree; 0 for the zero polynomial

    // Degree if homogeneous (zero polynomial counts as homogeneous of any
    // degree), std::nullopt otherwise.
    std::optional<unsigned> homogeneous_degree() const;
    bool is_homogeneous() const { return homogeneous_degree().has_value(); }

    Rational coeff(const Monomial& m) const;

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { a += b; return a; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { a -= b; return a; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    Polynomial scaled(const Rational& c) const;
    Polynomial times_monomial(const Monomial& m, const Rational& c) const;

    friend bool operator==(const Polynomial& a, const Polynomial& b);
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    std::string str() const;

    // Term-level mutation used by builders; keeps zero coefficients out.
    void add_term(const Monomial& m, const Rational& c);

    // Plain multivariate division remainder against `divisors` (leading and
    // tail reduction, first divisor whose leading term divides wins). Used for
    // quotient-ring normal forms; witness-carrying division lives in groebner.
    static Polynomial remainder(const Polynomial& p, const std::vector<Polynomial>& divisors);

private:
    void reduce_mod_quotient();
    RingPtr ring_;
    TermMap terms_;
};

enum class ArithOp { add, sub, mul };

// Spec-level entry point: exact +, -, * with ring check and quotient
// reduction.
Polynomial poly_arith(const Polynomial& f, const Polynomial& g, ArithOp op);

// All monomials of the given total degree, in descending ring order.
std::vector<Monomial> monomials_of_degree(std::size_t nvars, unsigned degree, MonomialOrder order);

// k-basis of the graded piece R_degree: all monomials for a free ring, the
// standard monomials for a quotient. Negative degrees yield the empty list.
std::vector<Monomial> graded_piece_basis(const RingPtr& ring, long degree);

std::string monomial_str(const Monomial& m, const PolyRing& ring);

} // namespace gmmp

#pragma once

#include "gmmp/linalg.hpp"
#include "gmmp/poly.hpp"

#include <map>
#include <vector>

namespace gmmp {

// Multi-indices over the tangent directions are exponent vectors, i.e.
// monomials of the tangent ring k[u_1..u_d].
using MultiIndex = Monomial;

// Unique expansion of u^n in a truncated quotient: coefficients over the
// retained monomial basis and over the relation classes; the remaining part
// lies in the discarded ideal directions.
struct NormalFormWitness {
    MultiIndex input;
    std::map<Monomial, Rational, MonomialDesc> basis_coeffs;
    std::vector<Rational> rel_coeffs; // one per relation
};

// Expansion engine for one truncation level: monomial-basis units first, then
// the tagged relation rows, then the discarded ideal directions. Queries are
// canonical and re-verifiable.
class TruncExpander {
public:
    TruncExpander() = default;
    TruncExpander(RingPtr uring, unsigned cap, std::vector<Monomial> basis,
                  std::vector<Polynomial> tagged_rels, std::vector<Polynomial> ideal_rows,
                  bool assert_basis_independent);

    struct Expansion {
        std::map<Monomial, Rational, MonomialDesc> basis_coeffs;
        std::vector<Rational> rel_coeffs;
    };
    // |n| may exceed cap; such monomials expand to zero.
    Expansion expand(const MultiIndex& n) const;

    unsigned cap() const { return cap_; }
    const std::vector<Monomial>& basis() const { return basis_; }
    // Is v (a polynomial of degree <= cap) inside the discarded ideal span?
    bool ideal_contains(const Polynomial& v) const;

private:
    QVec coords_of(const Polynomial& p) const;
    RingPtr uring_;
    unsigned cap_ = 0;
    std::vector<Monomial> space_; // all monomials of degree <= cap, canonical order
    std::map<Monomial, std::size_t, MonomialDesc> index_;
    std::vector<Monomial> basis_;
    std::size_t n_rels_ = 0;
    RowSpaceSolver solver_;
    RowSpaceSolver ideal_only_;
};

// One stage of the tower of truncated local quotients
//    A_N = k[[u_1..u_d]] / (m^{N+1} + (f_1..f_r)),
// carrying the selected monomial bases B_k (k <= N) and the relation series
// truncated at order N. Immutable; `extended` returns the next stage.
class LocalQuotient {
public:
    LocalQuotient() = default; // empty shell; use initial()/extended()
    static LocalQuotient initial(RingPtr uring, std::size_t rel_count);

    const RingPtr& ring() const { return uring_; }
    std::size_t tangent_dim() const { return uring_->nvars(); }
    std::size_t rel_count() const { return rels_.size(); }
    unsigned order() const { return order_; }
    const std::vector<Polynomial>& relations() const { return rels_; }
    const std::vector<std::vector<MultiIndex>>& bases() const { return b_; }
    std::vector<MultiIndex> bar_basis() const; // B_0 ∪ ... ∪ B_order
    std::size_t dim() const;                   // |bar_basis| = dim_k A_N

    // Monomial basis of m^k/(m^{k+1} + m^k ∩ m(f)) whose members all factor
    // as e_i + m with m in B_{k-1} (hereditary property, asserted).
    std::vector<MultiIndex> basis_Bprime(unsigned k) const;

    // Next tower stage: corrections[j] (supported on B'_{order+1}) is added to
    // relation j, and B_{order+1} is selected greedily inside B'_{order+1}.
    LocalQuotient extended(const std::vector<Polynomial>& corrections) const;

    // Expansion in A_order over bar_basis with relation coefficients.
    TruncExpander a_expander() const;
    // Expansion in k[[u]]/(m^{order+2} + m(f)) over bar_basis ∪ B'_{order+1},
    // with the relation classes adjoined as tagged basis elements.
    TruncExpander r_expander() const;

    NormalFormWitness normal_form_witness(const MultiIndex& n) const;
    // Reconstructs u^n from the witness and checks the defect lies in
    // m^{order+1} + m(f).
    bool verify_witness(const NormalFormWitness& w) const;

private:

    std::vector<Polynomial> ideal_rows(bool include_plain_rels, unsigned cap) const;
    RingPtr uring_;
    unsigned order_ = 1;
    std::vector<Polynomial> rels_;
    std::vector<std::vector<MultiIndex>> b_;
};

} // namespace gmmp

#pragma once

#include "gmmp/poly.hpp"

#include <map>
#include <utility>
#include <vector>

namespace gmmp {

// Twisted graded free module  ⊕_i R(-a_i). Basis element e_i has degree a_i.
class FreeModule {
public:
    FreeModule() = default;
    explicit FreeModule(std::vector<int> twists) : twists_(std::move(twists)) {}

    std::size_t rank() const { return twists_.size(); }
    int twist(std::size_t i) const { return twists_.at(i); }
    const std::vector<int>& twists() const { return twists_; }

    friend bool operator==(const FreeModule& a, const FreeModule& b) {
        return a.twists_ == b.twists_;
    }
    friend bool operator!=(const FreeModule& a, const FreeModule& b) { return !(a == b); }

    std::string str() const; // e.g. "R(-2)^3 + R(-4)^3"

private:
    std::vector<int> twists_;
};

// Element of a twisted free module, stored densely by component.
using ModuleVec = std::vector<Polynomial>;

ModuleVec module_vec_zero(const RingPtr& ring, std::size_t rank);
bool module_vec_is_zero(const ModuleVec& v);
// Degree of a homogeneous element: twist(i) + deg(entry_i), the same for all
// nonzero components. nullopt for inhomogeneous, 0-vector counts as any degree.
std::optional<long> module_vec_degree(const ModuleVec& v, const FreeModule& mod);
ModuleVec module_vec_add(const ModuleVec& a, const ModuleVec& b);
ModuleVec module_vec_sub(const ModuleVec& a, const ModuleVec& b);
ModuleVec module_vec_times(const ModuleVec& v, const Monomial& m, const Rational& c);
ModuleVec module_vec_scaled(const ModuleVec& v, const Rational& c);

// Homogeneous degree-0 map between twisted free modules: entry (i,j) is zero
// or homogeneous of degree source.twist(j) - target.twist(i). This is the
// carrier for resolution differentials, Ext representatives and cochain
// components.
class GradedMatrix {
public:
    GradedMatrix() = default;
    GradedMatrix(RingPtr ring, FreeModule target, FreeModule source);

    static GradedMatrix zero(RingPtr ring, FreeModule target, FreeModule source) {
        return GradedMatrix(std::move(ring), std::move(target), std::move(source));
    }
    static GradedMatrix identity(RingPtr ring, const FreeModule& mod);

    const RingPtr& ring() const { return ring_; }
    const FreeModule& target() const { return target_; }
    const FreeModule& source() const { return source_; }
    std::size_t rows() const { return target_.rank(); }
    std::size_t cols() const { return source_.rank(); }

    bool is_zero() const { return entries_.empty(); }
    Polynomial entry(std::size_t i, std::size_t j) const;
    // Validates the degree invariant; zero entries are dropped.
    void set_entry(std::size_t i, std::size_t j, Polynomial p);
    const std::map<std::pair<std::size_t, std::size_t>, Polynomial>& entries() const {
        return entries_;
    }

    ModuleVec column(std::size_t j) const;
    void set_column(std::size_t j, const ModuleVec& v);

    GradedMatrix operator-() const;
    GradedMatrix& operator+=(const GradedMatrix& o);
    GradedMatrix& operator-=(const GradedMatrix& o);
    friend GradedMatrix operator+(GradedMatrix a, const GradedMatrix& b) { a += b; return a; }
    friend GradedMatrix operator-(GradedMatrix a, const GradedMatrix& b) { a -= b; return a; }
    GradedMatrix scaled(const Rational& c) const;

    ModuleVec apply(const ModuleVec& v) const; // matrix * vector

    friend bool operator==(const GradedMatrix& a, const GradedMatrix& b);
    friend bool operator!=(const GradedMatrix& a, const GradedMatrix& b) { return !(a == b); }

    // True when no entry has a nonzero constant term (all entries in the
    // irrelevant maximal ideal).
    bool entries_in_max_ideal() const;

    std::string str() const;

private:
    RingPtr ring_;
    FreeModule target_, source_;
    std::map<std::pair<std::size_t, std::size_t>, Polynomial> entries_;
};

// A ∘ B with the usual convention (apply B first). Requires
// A.source == B.target as twist sequences.
GradedMatrix graded_compose(const GradedMatrix& a, const GradedMatrix& b);

} // namespace gmmp

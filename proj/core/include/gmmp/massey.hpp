#pragma once

#include "gmmp/hom_ext.hpp"
#include "gmmp/local.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gmmp {

// One generalized matric Massey product <alpha; n>: the representative
// 2-cochain y(n) (leading component L2 -> L0) and its class coordinates.
struct MasseyValue {
    MultiIndex index;
    GradedMatrix cochain;
    QVec cls;
    bool identically_zero() const { return cochain.is_zero(); }
    bool class_zero() const { return qvec_is_zero(cls); }
};

struct CupCensus {
    std::size_t total = 0;
    std::size_t identically_zero = 0;
    std::size_t cohomologically_zero = 0; // zero class, nonzero cochain
    std::size_t nonzero = 0;
};

// A defining-system element alpha_m together with how it was chosen.
struct DefiningEntry {
    MultiIndex index;
    YonedaCochain cochain; // level 1, components 1 and 2
    enum class Choice { tangent_basis, zero, solved, fixture } choice;
};

std::string to_string(DefiningEntry::Choice c);

// The relation algebra k[[u_1..u_d]]/(f_1..f_r) computed to a finite order,
// together with the defining-system log and stabilization diagnostics.
struct RelationAlgebra {
    RingPtr uring;
    std::size_t tangent_dim = 0;
    std::size_t obstruction_dim = 0;
    unsigned order = 1;
    std::vector<Polynomial> relations;
    LocalQuotient quotient;
    std::vector<DefiningEntry> defining_system;           // canonical order
    std::vector<std::vector<MasseyValue>> values_by_order; // [0] <-> order 2
    CupCensus census;                                      // of the order-2 table
    bool all_cups_identically_zero = false;
    bool stabilized = false;
    unsigned stabilized_at = 0; // first order of the trailing quiet streak

    bool relations_all_zero() const;
    // nonzero relations, canonical order
    std::vector<Polynomial> nonzero_relations() const;
};

// Perturbed resolution data over the relation algebra: d^S_i = d_i +
// sum_m alpha_{m,i} u^m for the computable components i = 1, 2, flatness
// checked to the computed order. For cyclic modules the perturbed ideal
// generators are materialized over the combined ring k[x.., u..].
struct VersalFamily {
    RingPtr combined_ring; // module ring variables followed by tangent variables
    std::vector<std::pair<MultiIndex, GradedMatrix>> comp1; // includes index 0 = d_1
    std::vector<std::pair<MultiIndex, GradedMatrix>> comp2; // includes index 0 = d_2
    std::vector<Polynomial> perturbed_generators;           // cyclic case, combined ring
    bool flatness_checked = false;
};

// Defining-system pins keyed by multi-index (fixture data): the engine
// validates d(alpha_m) = -b_m exactly before accepting a pinned choice.
using DefiningSystemPins = std::map<MultiIndex, YonedaCochain, MonomialDesc>;

// Driver for the inductive construction. Keeps its own copy of the Ext
// machinery (which in turn owns its resolution), so temporaries are fine.
// The tangent ring must have one variable per Ext^1 basis element of `ext`.
class MasseyEngine {
public:
    MasseyEngine(ExtBasis ext, RingPtr uring);

    static RingPtr tangent_ring(std::size_t d, const std::string& stem = "t",
                                MonomialOrder order = MonomialOrder::degrevlex);

    // All products <alpha; n> with |n| = 2, with the identically-zero /
    // cohomologically-zero census. Tangent-direction pins are honored.
    std::vector<MasseyValue> cup_table(const DefiningSystemPins& pins = {}) const;
    static CupCensus census_of(const std::vector<MasseyValue>& values);

    // Runs the tower order by order up to target_order: Massey values on
    // B'_k, relation corrections, basis selection, and the defining-system
    // equations d(alpha_m) = -b_m for the new basis elements.
    RelationAlgebra compute_hull(unsigned target_order,
                                 const DefiningSystemPins& pins = {}) const;

private:
    struct RawTable; // products of the current defining system by total index
    const Resolution& res() const { return ext_.resolution(); }
    // the order-one defining system: basis representatives, with validated
    // pin replacements for the tangent directions
    std::map<MultiIndex, YonedaCochain, MonomialDesc> tangent_system(
        const DefiningSystemPins& pins, std::vector<DefiningEntry>* log,
        std::map<MultiIndex, bool, MonomialDesc>* used) const;
    ExtBasis ext_;
    RingPtr uring_;
};

// Sub-basis of Ext^1 spanned by the kept tangent directions (1-based).
ExtBasis restrict_basis(const ExtBasis& ext, const std::vector<std::size_t>& keep);

VersalFamily versal_family(const Resolution& res, const RelationAlgebra& ra);

std::string smoothness_report(const RelationAlgebra& ra);

} // namespace gmmp

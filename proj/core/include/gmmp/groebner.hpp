#pragma once

#include "gmmp/module.hpp"

#include <optional>
#include <vector>

namespace gmmp {

// Quotients and remainder of a full division: input = sum_i quotients[i] *
// gens[i] + remainder, with no remainder term divisible by a basis leading
// term. The identity re-verifies exactly in the ring's arithmetic.
struct DivisionWitness {
    std::vector<Polynomial> quotients;
    ModuleVec remainder;
};

// Reduced Groebner basis of a submodule of a twisted free module, with
// transform bookkeeping back to the original generators. The module order is
// position-over-term with the ring order underneath; bases are monic and
// auto-reduced, hence unique for the order, and every derived output is
// deterministic.
//
// Over a quotient ring R = S/I the computation is lifted to S with the ideal
// columns g*e_c adjoined; public views (gens, witnesses, syzygies) are the
// R-images with the ideal part folded away.
class GroebnerBasis {
public:
    // All generators must be homogeneous elements of ⊕ R(-a_i).
    static GroebnerBasis compute(RingPtr ring, FreeModule ambient, std::vector<ModuleVec> gens);

    const RingPtr& ring() const { return ring_; }
    const FreeModule& ambient() const { return ambient_; }
    const std::vector<ModuleVec>& gens() const { return public_gens_; }
    bool reduced() const { return true; }

    DivisionWitness normal_form(const ModuleVec& v) const;
    bool contains(const ModuleVec& v) const;

    // Coefficients over the ORIGINAL generator list, or nullopt when v is not
    // in the submodule.
    std::optional<std::vector<Polynomial>> express_in_inputs(const ModuleVec& v) const;

    // Homogeneous generators of {c : sum_i c_i * input_i = 0}, as elements of
    // the free module with twist(i) = deg(input_i).
    std::vector<ModuleVec> input_syzygies() const;
    FreeModule syzygy_module() const;

    // Exhaustive S-pair check (test/diagnostic use).
    bool every_spair_reduces_to_zero() const;

private:
    struct Element {
        ModuleVec vec;                   // over the ambient free ring, monic
        std::vector<Polynomial> transform; // over extended inputs
    };

    struct InternalWitness {
        std::vector<Polynomial> quotients; // over elements_
        ModuleVec remainder;
    };
    InternalWitness divide(const ModuleVec& v) const;

    RingPtr ring_;            // the ring the caller sees (may be a quotient)
    RingPtr work_ring_;       // free ambient ring used internally
    FreeModule ambient_;
    std::size_t n_inputs_ = 0;          // original generator count
    std::vector<ModuleVec> inputs_;     // originals, lifted to work_ring_
    std::vector<ModuleVec> extended_;   // originals plus ideal columns
    std::vector<Element> elements_;     // internal reduced GB over work_ring_
    std::vector<ModuleVec> public_gens_;
    std::vector<std::size_t> public_index_; // element index per public gen
    std::vector<std::vector<Polynomial>> zero_syzygies_; // input coords
    std::vector<std::vector<Polynomial>> inputs_over_gb_; // U over extended_
};

// Spec-level wrapper for ideals: Groebner basis of (gens) ⊆ R as a rank-1
// module computation.
GroebnerBasis buchberger_ideal(const RingPtr& ring, const std::vector<Polynomial>& gens);

// Builds R = S/I from homogeneous ideal generators over the free ring S.
RingPtr make_quotient_ring(const RingPtr& ambient, const std::vector<Polynomial>& ideal_gens);

// Solves A x = b exactly; returns the canonical witness or nullopt when b is
// not in the column span. The result is re-verified before returning.
std::optional<ModuleVec> lift(const GradedMatrix& a, const ModuleVec& b);

// Generators of the syzygy module of the columns of A.
std::vector<ModuleVec> column_syzygies(const GradedMatrix& a);

} // namespace gmmp

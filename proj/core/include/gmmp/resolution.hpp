#pragma once

#include "gmmp/groebner.hpp"

#include <map>
#include <string>
#include <vector>

namespace gmmp {

// A finitely generated graded module, given either as R/(g_1..g_s) or as the
// cokernel of a homogeneous presentation matrix.
struct ModuleSpec {
    enum class Kind { cyclic, presented };
    Kind kind = Kind::cyclic;
    RingPtr ring;
    std::vector<Polynomial> ideal_gens; // cyclic
    GradedMatrix presentation;          // presented

    static ModuleSpec cyclic(RingPtr ring, std::vector<Polynomial> gens);
    static ModuleSpec presented(GradedMatrix p);
};

struct BettiTable {
    // steps[i] maps twist -> multiplicity for L_i
    std::vector<std::map<int, int>> steps;
    std::vector<std::size_t> ranks() const;
    std::string str() const;
};

// Truncated minimal graded free resolution 0 <- M <- L_0 <- ... <- L_len.
// diffs[i] is d_{i+1} : L_{i+1} -> L_i. `complete` is set when the kernel
// vanished before the requested truncation (so the resolution is the whole
// minimal resolution, not a truncation).
struct Resolution {
    RingPtr ring;
    ModuleSpec spec;
    std::vector<FreeModule> modules;
    std::vector<GradedMatrix> diffs;
    bool complete = false;

    std::size_t length() const { return diffs.size(); }
    const FreeModule& module(std::size_t i) const { return modules.at(i); }
    const GradedMatrix& diff(std::size_t i) const { return diffs.at(i - 1); } // d_i, i >= 1

    // d∘d = 0, minimality, and exactness at every interior step (double
    // inclusion via Groebner membership). Throws InternalError on violation.
    void verify() const;
};

Resolution minimal_resolution(const ModuleSpec& spec, std::size_t length);

BettiTable betti(const Resolution& res);

// Row/column elimination of constant (degree-0) entries in a presentation
// matrix; detects the zero module (target rank 0 after pruning).
GradedMatrix minimalize_presentation(const GradedMatrix& p);

// Irredundant homogeneous generating set: drops, scanning from the back of
// the canonically ordered list, every generator contained in the span of the
// others. For graded modules the result is a minimal generating set.
std::vector<ModuleVec> minimal_generators(const RingPtr& ring, const FreeModule& ambient,
                                          std::vector<ModuleVec> gens);

} // namespace gmmp

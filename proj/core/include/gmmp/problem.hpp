#pragma once

#include "gmmp/massey.hpp"
#include "gmmp/parser.hpp"
#include "gmmp/resolution.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gmmp {

// Line-oriented problem description. Grammar (one `key: value` per line,
// `#` to end of line is a comment, blank lines ignored):
//
//   ring: x0 x1 x2 x3            required; variable names
//   monomial-order: degrevlex    optional (degrevlex | lex)
//   quotient: <poly>             optional, repeatable: ring becomes S/I
//   generator: <poly>            cyclic module M = R/(g1..gs); repeatable
//   row-twists: 0 0              presented module: twists of the target
//   matrix-row: p | p | p        presented module rows; repeatable
//   target-order: 5              optional default for hull/versal
//   restrict: 22 23 24           optional restriction to tangent directions
//   fixture-basis: file.fix      optional; path relative to this file
//   tangent-stem: t              optional tangent variable stem (default t)
struct ProblemFile {
    struct Src {
        std::string text;
        std::size_t line = 1;
    };
    std::vector<std::string> ring_vars;
    MonomialOrder order = MonomialOrder::degrevlex;
    std::vector<Src> quotient_srcs;
    std::vector<Src> generator_srcs;
    std::vector<int> row_twists;
    std::vector<std::vector<Src>> matrix_rows;
    std::optional<unsigned> target_order;
    std::vector<std::size_t> restrict_indices;
    std::string fixture_path; // empty when absent; resolved against base_dir
    std::string tangent_stem = "t";
    std::string base_dir;

    static ProblemFile load(const std::string& path);
    static ProblemFile parse(const std::string& text, const std::string& base_dir);

    bool is_presented() const { return !matrix_rows.empty() || !row_twists.empty(); }
    std::string resolved_fixture_path() const;
};

struct BuiltProblem {
    RingPtr ring;
    ModuleSpec spec;
};

// Materializes the ring (with optional monomial-order override) and the
// module spec; all inhomogeneity diagnostics happen here, not in the parser.
BuiltProblem build_problem(const ProblemFile& pf, std::optional<MonomialOrder> order_override);

// Fixture file: pinned data for exact reproduction runs. Sections:
//
//   basis                        one `vec: p | ... | p` line per element
//   differential <i>             `row:` lines; pins d_i (i = 2 or 3)
//   alpha <n1,n2,..> <comp>      `row:` lines; pins a defining-system choice
//
// The basis vectors are maps L1 -> L0 (requires rank L0 = 1); alpha components
// 1 and 2 are maps L1 -> L0 and L2 -> L1.
struct FixtureFile {
    struct Section {
        enum class Kind { basis, differential, alpha } kind;
        int number = 0;                    // differential index or alpha component
        std::vector<unsigned> alpha_index; // exponent vector
        std::vector<std::vector<ProblemFile::Src>> rows;
        std::size_t line = 1;
    };
    std::vector<Section> sections;

    static FixtureFile load(const std::string& path);
    static FixtureFile parse(const std::string& text);
};

struct BuiltFixture {
    std::vector<GradedMatrix> basis;            // alpha_1 representatives
    std::map<int, GradedMatrix> differentials;  // pinned d_i
    DefiningSystemPins pins;
};

BuiltFixture build_fixture(const FixtureFile& ff, const Resolution& res, const RingPtr& uring);

// Just the pinned differentials (shape-checked against the engine resolution);
// used before frames are rebuilt so pinned alpha shapes can refer to the
// pinned L_2.
std::map<int, GradedMatrix> build_fixture_diffs(const FixtureFile& ff, const Resolution& res);

// Resolution with differentials d_2, d_3 replaced by pinned ones; the result
// is fully re-verified (d∘d = 0, minimality, exactness) and rejected with a
// diagnostic if anything fails.
Resolution apply_fixture_differentials(const Resolution& res,
                                       const std::map<int, GradedMatrix>& diffs);

} // namespace gmmp

#pragma once

#include "gmmp/linalg.hpp"
#include "gmmp/resolution.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace gmmp {

// Coordinates for the finite-dimensional degree-0 piece Hom_{R,0}(A, B) of a
// hom module between twisted free modules. Coordinate order: (target row,
// source column) lexicographic, then the monomial basis of the entry's degree
// slice in descending ring order.
class HomSlice {
public:
    HomSlice() = default;
    HomSlice(RingPtr ring, FreeModule target, FreeModule source);

    struct Coord {
        std::size_t row, col;
        Monomial mono;
    };

    std::size_t dim() const { return coords_.size(); }
    const std::vector<Coord>& coords() const { return coords_; }
    const FreeModule& target() const { return target_; }
    const FreeModule& source() const { return source_; }

    QVec coords_of(const GradedMatrix& m) const;
    GradedMatrix matrix_of(const QVec& v) const;
    GradedMatrix unit(std::size_t k) const;

private:
    RingPtr ring_;
    FreeModule target_, source_;
    std::vector<Coord> coords_;
    // block lookup: (row, col) -> (offset, monomial index map)
    std::map<std::pair<std::size_t, std::size_t>,
             std::pair<std::size_t, std::map<Monomial, std::size_t, MonomialDesc>>>
        blocks_;
};

// Element of the degree-0 graded Yoneda complex Hom^p_{R,0}(L., L.): a level p
// and the components xi_n : L_n -> L_{n-p} that fit inside the truncated
// resolution. Operations declare which components they need and fail loudly
// instead of extending silently.
struct YonedaCochain {
    int level = 0;
    std::map<std::size_t, GradedMatrix> comps;

    bool has(std::size_t n) const { return comps.count(n) != 0; }
    const GradedMatrix& comp(std::size_t n) const;

    YonedaCochain operator-() const;
    YonedaCochain& operator+=(const YonedaCochain& o);
    friend YonedaCochain operator+(YonedaCochain a, const YonedaCochain& b) { a += b; return a; }
    YonedaCochain scaled(const Rational& c) const;
    bool is_identically_zero() const;
};

// Yoneda differential with the fixed convention
//   (d xi)_n = delta_{n-p} ∘ xi_n  - (-1)^p  xi_{n-1} ∘ delta_n ,
// computed on every component the truncation supports. Applying it twice
// yields zero on all computable components.
YonedaCochain yoneda_diff(const Resolution& res, const YonedaCochain& xi);

// Composition product; for 1-cochains the leading component is
// (a·b)_2 = a_1 ∘ b_2 : L_2 -> L_0. A cup of cocycles is a cocycle.
YonedaCochain cup(const YonedaCochain& a, const YonedaCochain& b);

// k-bases of Ext^1_{R,0}(M,M) and Ext^2_{R,0}(M,M) with lifted Yoneda cocycle
// representatives, plus the solvers the Massey construction needs:
// cohomology-class coordinates and exact coboundary solving, all as exact
// linear algebra over enumerated monomial bases of the degree-0 Hom pieces.
//
// Concretely, with C^p = Hom_{R,0}(L_p, L_0)_0 and D^p = delta_1 ∘
// Hom_{R,0}(L_p, L_1)_0 (the directions that vanish in M):
//    cocycles  K^p = { f : f ∘ delta_{p+1} ∈ D^{p+1} },
//    boundaries B^p = { g ∘ delta_p } + D^p,
// and Ext^p = K^p / B^p. Bases are extracted in echelon form over the fixed
// coordinate order, so every output is deterministic.
class ExtBasis {
public:
    // Keeps its own copy of the resolution, so the argument may be a
    // temporary; everything derived from this basis refers to that copy.
    static ExtBasis compute(const Resolution& res);

    const Resolution& resolution() const { return *res_; }

    std::size_t dim1() const { return basis1_.size(); }
    std::size_t dim2() const { return reps2_.size(); }

    // Degree-1 representatives: cocycles with components alpha_1: L1->L0 and
    // alpha_2: L2->L1 (d(alpha) = 0 at the computable component).
    const std::vector<YonedaCochain>& basis1() const { return basis1_; }
    // Degree-2 representatives dual to the class functionals.
    const std::vector<GradedMatrix>& reps2() const { return reps2_; }

    bool is_cocycle2(const GradedMatrix& omega) const;
    // Class coordinates in k^r of a 2-cocycle's leading component; zero vector
    // iff omega is a coboundary. Throws if omega is not a cocycle.
    QVec class_of(const GradedMatrix& omega) const;

    // Exact solve of delta_1∘eta_2 + eta_1∘delta_2 = omega (leading component
    // of d(eta) = omega). Returns nullopt when the class of omega is nonzero.
    std::optional<YonedaCochain> solve_coboundary(const GradedMatrix& omega) const;

    // Lift a map alpha_1 : L1 -> L0 that is a cocycle (alpha_1∘delta_2 lands
    // in D^2) to a full representative by solving delta_1∘alpha_2 =
    // -alpha_1∘delta_2 column by column with the division witness against the
    // delta_1 column basis.
    YonedaCochain lift_cocycle1(const GradedMatrix& alpha1) const;

    // Replace the degree-1 basis by injected representatives (fixture basis).
    // Each column is validated as a cocycle and the classes must form a basis
    // of Ext^1; diagnostics carry the offending column index.
    void inject_basis1(const std::vector<GradedMatrix>& alpha1s);

    // Sub-basis with the kept tangent directions (1-based indices).
    ExtBasis restricted(const std::vector<std::size_t>& keep) const;

    GradedMatrix zero_cochain2() const; // zero map L2 -> L0 (empty if L2 = 0)

    const HomSlice& slice1() const { return c1_; }
    const HomSlice& slice2() const { return c2_; }

private:
public:
    ExtBasis() = default; // empty shell; use compute()
private:
    struct Frame {
        QMatrix::KernelBasis kernel;          // basis of K^p in C^p coords
        std::vector<QVec> b_rows;             // B^p spanning rows in K-coords
        std::vector<std::pair<char, std::size_t>> b_tags; // 'T' psi-index / 'D' tau-index
        std::vector<std::size_t> complement;  // K-coord pivots of Ext^p
        RowSpaceSolver solver;                // rows: b_rows ++ complement units
    };

    // K-coordinate readoff; nullopt when v is not in K^p.
    static std::optional<QVec> k_coords(const Frame& f, const QVec& v);

    void build();
    Frame build_frame(int p) const;

    std::shared_ptr<const Resolution> res_;
    RingPtr ring_;
    HomSlice c0_, c1_, c2_;   // Hom(L_p, L_0)
    HomSlice tau1_, tau2_;    // Hom(L_1, L_1), Hom(L_2, L_1)
    Frame f1_, f2_;
    std::shared_ptr<const GroebnerBasis> d1_gb_; // columns of delta_1, with transforms
    std::vector<YonedaCochain> basis1_;
    std::vector<GradedMatrix> reps2_;
};

} // namespace gmmp

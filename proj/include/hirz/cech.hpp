#pragma once

// Čech cohomology of line bundles and rank-2 extensions on F_n and P² over the
// cover by the affine toric charts.
//
// F_n is the toric surface with rays
//     u0 = (1,0)   D0 = f        (fiber over 0)
//     u1 = (0,1)   D1 = σ        (negative section)
//     u2 = (-1,n)  D2 ~ f        (fiber over ∞)
//     u3 = (0,-1)  D3 ~ σ + nf   (section at infinity)
// and maximal cones {u0,u1}, {u1,u2}, {u2,u3}, {u3,u0}. Chart k is the cone
// missing one fiber (base chart: D2 or D0 absent) and one section (fiber
// coordinate chart: D3 or D1 absent). O(aσ + bf) = O(b·D0 + a·D1), and a monomial
// χ^m is a section over the chart U_I of a face I iff <m, u_ρ> >= -d_ρ for every
// ray ρ of the cone ∩_{i∈I} σ_i. With this choice the transition functions are
// monomials in the torus coordinates; the base coordinate enters the σ-direction
// transition to the n-th power through u2 = (-1, n). Calibration: h⁰(O(σ)) = 1
// on F_n for n >= 1.
//
// P² has rays (1,0), (0,1), (-1,-1), three charts, and O(dH) = O(d·D2).
//
// Every Čech differential preserves the character m, so the complex is a direct
// sum of finite pieces, one per m. A truncation box |m|∞ <= B keeps a direct
// summand; it computes the cohomology exactly as soon as it contains the support,
// which the stability check (B -> B+1 changes nothing) certifies.

#include "hirz/exact_matrix.hpp"
#include "hirz/line_cohomology.hpp"
#include "hirz/picard.hpp"

#include <array>
#include <compare>
#include <iosfwd>
#include <map>
#include <vector>

namespace hirz::cech {

/// Character m of the torus; the multidegree of a Laurent monomial.
using Degree = std::array<long, 2>;

struct Face {
    std::vector<int> charts;  // increasing chart indices
    std::vector<int> rays;    // rays of the intersected cone
};

/// Fan of the surface together with the nerve of its affine cover.
class ChartCover {
public:
    explicit ChartCover(const Surface& s);

    const Surface& surface() const noexcept { return surface_; }
    int chart_count() const noexcept { return static_cast<int>(cones_.size()); }
    /// Highest Čech degree (number of charts - 1).
    int top_degree() const noexcept { return chart_count() - 1; }

    const std::vector<Face>& faces(int p) const { return faces_.at(static_cast<std::size_t>(p)); }
    std::size_t face_index(int p, const std::vector<int>& charts) const;

    /// Boundary of face J of degree p+1: (index of face in degree p, sign (-1)^k).
    const std::vector<std::pair<std::size_t, int>>& boundary(int p, std::size_t j) const {
        return boundary_.at(static_cast<std::size_t>(p)).at(j);
    }

    /// Torus-invariant representative: coefficients d_ρ with D = Σ d_ρ D_ρ.
    std::vector<long> divisor_coefficients(const DivisorClass& d) const;

    bool regular(const Face& face, const Degree& m, const std::vector<long>& coeff) const;

private:
    Surface surface_;
    std::vector<Degree> rays_;
    std::vector<std::vector<int>> cones_;
    std::vector<std::vector<Face>> faces_;
    std::vector<std::vector<std::vector<std::pair<std::size_t, int>>>> boundary_;
};

/// Basis element of a Čech cochain group: the monomial χ^m on the face's chart.
struct CochainKey {
    Degree m;
    std::size_t face;

    friend auto operator<=>(const CochainKey&, const CochainKey&) = default;
};

/// Čech cochain of some line bundle in a fixed degree, with finitely many terms.
struct Cochain {
    int degree = 0;
    std::map<CochainKey, Rational> terms;

    bool is_zero() const;
    Cochain& operator+=(const Cochain& other);
    friend Cochain operator*(const Rational& k, Cochain c);
};

/// Half width B of the default truncation box for O(D):
/// |a| + |b| + n(|a| + 1) + 2 on F_n, |d| + 2 on P².
long default_half_width(const Surface& s, const DivisorClass& d);

/// The Čech complex of O(D) restricted to characters in [-B, B]².
class CechComplex {
public:
    CechComplex(const ChartCover& cover, const DivisorClass& d, long half_width);

    long half_width() const noexcept { return half_width_; }
    int top_degree() const noexcept { return static_cast<int>(basis_.size()) - 1; }
    const std::vector<CochainKey>& basis(int p) const { return basis_.at(static_cast<std::size_t>(p)); }
    /// d^p : C^p -> C^{p+1}, for 0 <= p < top_degree().
    const SparseMatrix& differential(int p) const { return differential_.at(static_cast<std::size_t>(p)); }
    std::size_t rank(int p) const;

    /// dim H^p for every p in [0, top_degree()].
    std::vector<std::size_t> cohomology_dimensions() const;
    /// Throws std::logic_error if some H^p with p >= 3 is nonzero.
    CohomologyTriple cohomology() const;
    bool composition_vanishes() const;

    /// Text dump: one "# basis p" block per degree listing "index m1 m2 charts",
    /// then for each differential a "# d p rows cols nnz" header followed by
    /// "row col value" triples (0-based, value as p/q).
    void write(std::ostream& os) const;

private:
    long half_width_;
    std::vector<std::vector<CochainKey>> basis_;
    std::vector<SparseMatrix> differential_;
    mutable std::vector<long> rank_cache_;
};

/// The finite piece of the Čech complex in a single character m.
struct DegreePiece {
    Degree m;
    std::vector<std::vector<std::size_t>> present;  // per p: face indices regular at m
    std::vector<Matrix> differential;               // d_p : C^p_m -> C^{p+1}_m

    std::size_t dim(int p) const { return present.at(static_cast<std::size_t>(p)).size(); }
    std::size_t cohomology(int p) const;
    std::size_t position(int p, std::size_t face) const;
};

DegreePiece degree_piece(const ChartCover& cover, const std::vector<long>& coeff, const Degree& m);

/// Cocycles spanning a complement of the coboundaries in one character.
struct DegreeCohomology {
    Matrix boundaries;                      // columns span B^p_m
    std::vector<RationalVector> representatives;
};

DegreeCohomology degree_cohomology(const DegreePiece& piece, int p);

/// Coordinates of the class of a cocycle y in C^p_m with respect to the representatives.
RationalVector class_coordinates(const DegreeCohomology& coh, const RationalVector& y);

/// Homogeneous cocycles whose classes form a basis of H^p(O(D)); characters are
/// visited in increasing lexicographic order. Throws TruncationUnstable.
std::vector<Cochain> cohomology_basis(const Surface& s, const DivisorClass& d, int p);

/// Čech differential of a cochain of O(D).
Cochain coboundary(const ChartCover& cover, const DivisorClass& d, const Cochain& c);

/// g ∪ c for g ∈ C^1(O(A)) and c ∈ C^p(O(B)); the result lives in C^{p+1}(O(A + B)).
Cochain cup(const ChartCover& cover, const Cochain& g, const Cochain& c);

/// Extension 0 -> O(sub) -> E -> O(quot) -> 0 with class given by a 1-cocycle of O(sub - quot).
struct ExtClass {
    DivisorClass sub;
    DivisorClass quot;
    Cochain cocycle{1, {}};

    friend bool operator==(const ExtClass& lhs, const ExtClass& rhs) {
        return lhs.sub == rhs.sub && lhs.quot == rhs.quot && lhs.cocycle.terms == rhs.cocycle.terms;
    }
};

/// Throws InvalidCocycle unless e.cocycle is a 1-cocycle of O(sub - quot).
void validate_cocycle(const Surface& s, const ExtClass& e);

/// The extension whose class is the seed-th element of cohomology_basis(sub - quot, 1).
ExtClass basis_extension(const Surface& s, const DivisorClass& sub, const DivisorClass& quot, std::size_t seed);

/// h^i of O(D) from ranks of the Čech differentials; checked at B and B + 1.
CohomologyTriple cech_line_h(const Surface& s, const DivisorClass& d);

/// dim Ext¹(O(quot), O(sub)) = h¹(sub - quot).
Integer ext_dim(const Surface& s, const DivisorClass& quot, const DivisorClass& sub);

enum class Route {
    LongExactSequence,  // ranks of the connecting maps, cup product with the cocycle
    TotalComplex,       // ranks of the Čech complex of E itself
};

/// h^i(E ⊗ O(twist)). Throws TruncationUnstable if enlarging a box changes the answer.
CohomologyTriple rank2_cech_h(const Surface& s, const ExtClass& e, const DivisorClass& twist,
                              Route route = Route::LongExactSequence);

/// Whether the cocycle is d⁰ of some 0-cochain, i.e. the extension sequence splits.
bool cocycle_is_coboundary(const Surface& s, const ExtClass& e);

}  // namespace hirz::cech

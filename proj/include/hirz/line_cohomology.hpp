#pragma once

#include "hirz/picard.hpp"

#include <iosfwd>

namespace hirz {

/// Dimensions (h⁰, h¹, h²) of the cohomology of a sheaf on a surface.
struct CohomologyTriple {
    Integer h0;
    Integer h1;
    Integer h2;

    const Integer& operator[](int i) const;
    Integer euler() const { return h0 - h1 + h2; }

    CohomologyTriple& operator+=(const CohomologyTriple& other);
    friend CohomologyTriple operator+(CohomologyTriple lhs, const CohomologyTriple& rhs) { return lhs += rhs; }
    friend bool operator==(const CohomologyTriple&, const CohomologyTriple&) = default;
};

std::ostream& operator<<(std::ostream& os, const CohomologyTriple& h);

/// h⁰(O(D)) in closed form: Σ_{k=0..a} max(0, b - kn + 1) on F_n, C(d+2, 2) on P².
Integer line_h0(const Surface& s, const DivisorClass& d);

/// All three dimensions; h² via Serre duality and h¹ from Riemann–Roch.
CohomologyTriple line_h(const Surface& s, const DivisorClass& d);

/// K - D.
DivisorClass serre_dual(const Surface& s, const DivisorClass& d);

}  // namespace hirz

#include "hirz/line_cohomology.hpp"

#include <ostream>
#include <stdexcept>

namespace hirz {

const Integer& CohomologyTriple::operator[](int i) const {
    switch (i) {
        case 0: return h0;
        case 1: return h1;
        case 2: return h2;
        default: throw std::out_of_range("cohomological degree must be 0, 1 or 2");
    }
}

CohomologyTriple& CohomologyTriple::operator+=(const CohomologyTriple& other) {
    h0 += other.h0;
    h1 += other.h1;
    h2 += other.h2;
    return *this;
}

std::ostream& operator<<(std::ostream& os, const CohomologyTriple& h) {
    return os << h.h0 << ' ' << h.h1 << ' ' << h.h2;
}

Integer line_h0(const Surface& s, const DivisorClass& d) {
    d.check_on(s);
    if (s.is_plane()) {
        const Integer& deg = d[0];
        if (deg < 0) return 0;
        return (deg + 2) * (deg + 1) / 2;
    }
    // π_* O(aσ + bf) = ⊕_{k=0..a} O_{P¹}(b - kn)
    const Integer& a = d[0];
    const Integer& b = d[1];
    if (a < 0 || b < 0) return 0;
    const Integer n = s.n();
    if (n == 0) return (a + 1) * (b + 1);
    Integer last = floor_div(b, n);
    if (last > a) last = a;
    // Σ_{k=0..last} (b + 1 - kn)
    return (last + 1) * (b + 1) - n * last * (last + 1) / 2;
}

DivisorClass serre_dual(const Surface& s, const DivisorClass& d) {
    d.check_on(s);
    return canonical_class(s) - d;
}

CohomologyTriple line_h(const Surface& s, const DivisorClass& d) {
    CohomologyTriple h;
    h.h0 = line_h0(s, d);
    h.h2 = line_h0(s, serre_dual(s, d));
    h.h1 = h.h0 + h.h2 - chi_line(s, d);
    if (h.h1 < 0) {
        throw std::logic_error("negative h1 for (" + d.str() + ") on " + s.name());
    }
    return h;
}

}  // namespace hirz

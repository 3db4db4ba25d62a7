#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace hirz {

/// Arbitrary precision integer used for every lattice coordinate and dimension.
using Integer = mpz_class;
using Rational = mpq_class;

inline Integer floor_div(const Integer& num, const Integer& den) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return q;
}

inline bool is_even(const Integer& v) { return mpz_even_p(v.get_mpz_t()) != 0; }

inline Integer abs_value(const Integer& v) { return abs(v); }

/// Narrow to a machine integer; used only where a value indexes memory (truncation boxes).
inline long to_long(const Integer& v) {
    if (!v.fits_slong_p()) {
        throw std::overflow_error("integer " + v.get_str() + " does not fit in a machine word");
    }
    return v.get_si();
}

}  // namespace hirz

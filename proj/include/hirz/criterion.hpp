#pragma once

// Decision procedure for splitting of rank-2 bundles from cohomology data.
//
// Pipeline: read c1 and c2 off Euler characteristics at a few twists, twist the
// bundle so that c2 = 0 and c1 = -aσ - bf (a, b >= 0) or aσ - bf (a, b > 0), then
// test the section criterion
//     h⁰(E(-σ)) = h⁰(E(-f)) = 0,  h⁰(E) >= 1,  h⁰(E(-c1)) >= 1 + h⁰(O(-c1)),
// which forces E ≅ O ⊕ O(c1). On P² the first two conditions collapse to
// h⁰(E(-H)) = 0 and the normal form is c1 = d <= 0.
//
// Comparing an unknown bundle with a given split bundle F only ever needs the
// finite twist set returned by certificate_twists().

#include "hirz/bundles.hpp"
#include "hirz/errors.hpp"
#include "hirz/line_cohomology.hpp"
#include "hirz/picard.hpp"

#include <json.hpp>

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hirz {

/// Cohomology of an unknown bundle twisted by a line bundle. Must be deterministic.
using CohomologyOracle = std::function<CohomologyTriple(const DivisorClass&)>;

/// Answers from a finished table; throws std::out_of_range outside its window.
CohomologyOracle table_oracle(CohomologyTable table);
/// Live engine for a presentation, memoized (safe to call from several threads).
CohomologyOracle bundle_oracle(const Bundle2& e, OracleKind kind = OracleKind::Closed);
/// t -> q(t + m), the oracle of E ⊗ O(m).
CohomologyOracle twisted(CohomologyOracle q, const DivisorClass& m);

enum class Relation { Equal, AtLeast };

/// One cohomology number the verdict depends on; re-check with q(twist)[degree].
struct CertificateEntry {
    DivisorClass twist;
    int degree = 0;
    Relation relation = Relation::Equal;
    Integer expected;
    Integer observed;

    bool holds() const { return relation == Relation::Equal ? observed == expected : observed >= expected; }
    friend bool operator==(const CertificateEntry&, const CertificateEntry&) = default;
};

struct SplitVerdict {
    enum class Kind { Split, NotSplitWithin, Inconclusive };

    Kind kind = Kind::Inconclusive;
    std::optional<std::pair<DivisorClass, DivisorClass>> summands;
    std::vector<CertificateEntry> certificate;
    std::optional<DivisorClass> normalization_twist;
    std::string reason;

    bool is_split() const noexcept { return kind == Kind::Split; }
};

nlohmann::json verdict_json(const SplitVerdict& v);
/// 0 split, 1 not split, 2 inconclusive.
int exit_code(const SplitVerdict& v);

/// Twists queried by recover_chern: 0, f, σ and the consistency twist -(σ + (n+1)f)
/// on F_n; 0, H and -H on P².
std::vector<DivisorClass> recovery_twists(const Surface& s);

/// Chern data from χ(E ⊗ M) - χ(E) = c1·M + M·(M - K).
/// Throws InconsistentOracle if the consistency twist disagrees with Riemann–Roch.
ChernData recover_chern(const Surface& s, const CohomologyOracle& q);

struct Normalization {
    DivisorClass twist;  // M
    ChernData normal;    // Chern data of E ⊗ O(M)

    friend bool operator==(const Normalization&, const Normalization&) = default;
};

/// c1 = -aσ - bf with a, b >= 0, or aσ - bf with a, b > 0; on P², c1 <= 0.
bool in_lemma_shape(const Surface& s, const DivisorClass& c1);

/// Per-coordinate bound |M_i| <= |c1_i| + |c2| + 4 on the normalization search.
Integer normalization_bound(const ChernData& ch, std::size_t coordinate);

/// Every twist M in the search box with c2(E ⊗ M) = 0 and c1(E ⊗ M) in lemma shape,
/// ordered by (|α| + |β|, α, β) of the normal form c1(E ⊗ M) = ασ + βf.
std::vector<Normalization> normalization_candidates(const Surface& s, const ChernData& ch);

/// The first candidate. Throws NotNormalizable, distinguishing "no solution in
/// the lattice" from "none inside the box".
Normalization normalize(const Surface& s, const ChernData& ch);

/// Section criterion on an already normalized bundle: Split(0, c1) or the failed conditions.
/// Throws PreconditionViolated if ch is not a normal form.
SplitVerdict lemma2_decide(const Surface& s, const CohomologyOracle& q, const ChernData& ch);

/// Recover, normalize, and run the section criterion on each candidate twist.
SplitVerdict decide(const Surface& s, const CohomologyOracle& q);

/// Recovery twists, the normalization twist M of F, and M - σ, M - f, M, M - c1(F ⊗ M)
/// (M - H, M, M - c1 on P²), in that order without repeats.
std::vector<DivisorClass> certificate_twists(const Bundle2& split);

/// Whether the bundle behind qE is the split bundle F, checked on certificate_twists(F).
SplitVerdict theorem1_decide(const Surface& s, const CohomologyOracle& qE, const Bundle2& split);

/// The Pic ≅ Z version on P².
SplitVerdict theorem5_decide(const CohomologyOracle& q, const Bundle2& split);

}  // namespace hirz

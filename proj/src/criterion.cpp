#include "hirz/criterion.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

namespace hirz {

namespace {

SplitVerdict inconclusive(std::string reason) {
    SplitVerdict v;
    v.kind = SplitVerdict::Kind::Inconclusive;
    v.reason = std::move(reason);
    return v;
}

SplitVerdict split_verdict(DivisorClass first, DivisorClass second) {
    SplitVerdict v;
    v.kind = SplitVerdict::Kind::Split;
    v.summands = std::make_pair(std::move(first), std::move(second));
    return v;
}

// (|α| + |β|, α, β) on F_n, (|d|, d) on P².
std::vector<Integer> preference_key(const DivisorClass& c1) {
    Integer norm = 0;
    for (const auto& c : c1.coords()) norm += abs_value(c);
    std::vector<Integer> key{norm};
    key.insert(key.end(), c1.coords().begin(), c1.coords().end());
    return key;
}

void push_unique(std::vector<DivisorClass>& out, const DivisorClass& d) {
    if (std::find(out.begin(), out.end(), d) == out.end()) out.push_back(d);
}

std::vector<DivisorClass> lemma2_twists(const Surface& s, const DivisorClass& c1) {
    if (s.is_plane()) return {-DivisorClass::hyperplane(), DivisorClass::zero(s), -c1};
    return {-DivisorClass::sigma(), -DivisorClass::fiber(), DivisorClass::zero(s), -c1};
}

// Whether some twist in the whole lattice normalizes ch; used only to label NotNormalizable.
enum class Existence { None, Exists, Unknown };

bool fn_shape(const Integer& alpha, const Integer& beta) {
    return (alpha <= 0 && beta <= 0) || (alpha > 0 && beta < 0);
}

Existence fn_solution_exists(const Surface& s, const ChernData& ch) {
    const Integer& p = ch.c1[0];
    const Integer& q = ch.c1[1];
    const Integer delta = intersect(s, ch.c1, ch.c1) - 4 * ch.c2;
    const Integer n = s.n();
    auto admissible = [&](const Integer& alpha) {
        if (!is_even(alpha - p)) return false;
        const Integer num = delta + n * alpha * alpha;
        const Integer den = 2 * alpha;
        if (num % den != 0) return false;
        const Integer beta = num / den;
        return is_even(beta - q) && fn_shape(alpha, beta);
    };
    if (delta == 0) {
        if (is_even(p)) return Existence::Exists;
        for (long alpha = -1; alpha >= -4; --alpha) {
            if (admissible(Integer(alpha))) return Existence::Exists;
        }
        return Existence::None;
    }
    const Integer magnitude = abs_value(delta);
    if (magnitude > Integer("100000000000000")) return Existence::Unknown;
    for (Integer k = 1; k * k <= magnitude; ++k) {
        if (magnitude % k != 0) continue;
        const Integer other = magnitude / k;
        for (const Integer& d : {k, other}) {
            if (admissible(d) || admissible(Integer(-d))) return Existence::Exists;
        }
    }
    return Existence::None;
}

DivisorClass split_normalization(const Bundle2& split) {
    if (!split.is_sum()) throw PreconditionViolated("comparison bundle must be a direct sum of line bundles");
    const auto& s = split.surface();
    const auto& [l1, l2] = split.summands();
    std::optional<DivisorClass> m;
    for (const auto& option : {-l1, -l2}) {
        const DivisorClass c1 = l1 + l2 + 2 * option;
        if (!in_lemma_shape(s, c1)) continue;
        if (!m || preference_key(c1) < preference_key(l1 + l2 + 2 * *m)) m = option;
    }
    if (!m) throw std::logic_error("neither summand normalizes O(" + l1.str() + ") + O(" + l2.str() + ")");
    return *m;
}

SplitVerdict compare_with_split(const Surface& s, const CohomologyOracle& qE, const Bundle2& split) {
    if (!(split.surface() == s)) throw SurfaceMismatch("comparison bundle lives on " + split.surface().name());
    const auto twists = certificate_twists(split);
    const auto& [l1, l2] = split.summands();
    const DivisorClass m = split_normalization(split);
    for (const auto& t : twists) {
        const auto observed = qE(t);
        const auto expected = bundle_h(split, t);
        if (observed == expected) continue;
        SplitVerdict v;
        v.kind = SplitVerdict::Kind::NotSplitWithin;
        v.normalization_twist = m;
        v.reason = "cohomology differs from O(" + l1.str() + ") + O(" + l2.str() + ") at twist (" + t.str() + ")";
        for (int i = 0; i < 3; ++i) {
            if (observed[i] != expected[i]) v.certificate.push_back({t, i, Relation::Equal, expected[i], observed[i]});
        }
        return v;
    }
    const auto normal = twist_chern(s, chern(split), m);
    if (!lemma2_decide(s, twisted(qE, m), normal).is_split()) {
        throw std::logic_error("section criterion fails on data identical to a split bundle");
    }
    auto v = split_verdict(l1, l2);
    v.normalization_twist = m;
    return v;
}

}  // namespace

CohomologyOracle table_oracle(CohomologyTable table) {
    auto entries = std::make_shared<std::map<DivisorClass, CohomologyTriple>>();
    for (auto& entry : table.entries) entries->emplace(std::move(entry.twist), std::move(entry.h));
    return [entries](const DivisorClass& t) {
        const auto it = entries->find(t);
        if (it == entries->end()) throw std::out_of_range("twist (" + t.str() + ") is outside the table window");
        return it->second;
    };
}

CohomologyOracle bundle_oracle(const Bundle2& e, OracleKind kind) {
    struct State {
        State(Bundle2 b, OracleKind k) : bundle(std::move(b)), kind(k) {}
        Bundle2 bundle;
        OracleKind kind;
        std::mutex mutex;
        std::map<DivisorClass, CohomologyTriple> cache;
    };
    auto state = std::make_shared<State>(e, kind);
    return [state](const DivisorClass& t) {
        {
            std::lock_guard lock(state->mutex);
            const auto it = state->cache.find(t);
            if (it != state->cache.end()) return it->second;
        }
        auto h = bundle_h(state->bundle, t, state->kind);
        std::lock_guard lock(state->mutex);
        state->cache.emplace(t, h);
        return h;
    };
}

CohomologyOracle twisted(CohomologyOracle q, const DivisorClass& m) {
    return [q = std::move(q), m](const DivisorClass& t) { return q(t + m); };
}

nlohmann::json verdict_json(const SplitVerdict& v) {
    nlohmann::json out;
    switch (v.kind) {
        case SplitVerdict::Kind::Split: out["verdict"] = "split"; break;
        case SplitVerdict::Kind::NotSplitWithin: out["verdict"] = "not_split"; break;
        case SplitVerdict::Kind::Inconclusive: out["verdict"] = "inconclusive"; break;
    }
    if (v.summands) out["summands"] = {divisor_json(v.summands->first), divisor_json(v.summands->second)};
    if (!v.certificate.empty()) {
        auto cert = nlohmann::json::array();
        for (const auto& c : v.certificate) {
            cert.push_back({{"twist", divisor_json(c.twist)},
                            {"i", c.degree},
                            {"relation", c.relation == Relation::Equal ? "eq" : "ge"},
                            {"expected", integer_json(c.expected)},
                            {"observed", integer_json(c.observed)}});
        }
        out["certificate"] = cert;
    }
    if (v.normalization_twist) out["normalization_twist"] = divisor_json(*v.normalization_twist);
    if (!v.reason.empty()) out["reason"] = v.reason;
    return out;
}

int exit_code(const SplitVerdict& v) {
    switch (v.kind) {
        case SplitVerdict::Kind::Split: return 0;
        case SplitVerdict::Kind::NotSplitWithin: return 1;
        case SplitVerdict::Kind::Inconclusive: return 2;
    }
    return 2;
}

std::vector<DivisorClass> recovery_twists(const Surface& s) {
    if (s.is_plane()) return {DivisorClass::zero(s), DivisorClass::hyperplane(), -DivisorClass::hyperplane()};
    return {DivisorClass::zero(s), DivisorClass::fiber(), DivisorClass::sigma(), DivisorClass::fn(-1, -(s.n() + 1))};
}

ChernData recover_chern(const Surface& s, const CohomologyOracle& q) {
    const auto k = canonical_class(s);
    const auto twists = recovery_twists(s);
    const Integer chi0 = q(twists[0]).euler();
    // χ(E ⊗ M) - χ(E) - M·(M - K) = c1·M
    auto c1_dot = [&](const DivisorClass& m) -> Integer { return q(m).euler() - chi0 - intersect(s, m, m - k); };

    DivisorClass c1;
    if (s.is_plane()) {
        c1 = DivisorClass::plane(c1_dot(DivisorClass::hyperplane()));
    } else {
        const Integer x = c1_dot(DivisorClass::fiber());
        const Integer y = c1_dot(DivisorClass::sigma()) + s.n() * x;
        c1 = DivisorClass::fn(x, y);
    }
    const Integer twice = intersect(s, c1, c1 - k);
    if (!is_even(twice)) throw InconsistentOracle("recovered c1 = (" + c1.str() + ") has odd c1·(c1 - K)");
    ChernData ch{c1, 2 + twice / 2 - chi0};

    const auto& check = twists.back();
    const Integer predicted = chi0 + intersect(s, c1, check) + intersect(s, check, check - k);
    const Integer observed = q(check).euler();
    if (predicted != observed) {
        throw InconsistentOracle("Euler characteristic at twist (" + check.str() + ") is " + observed.get_str() +
                                 ", Riemann–Roch for the recovered Chern data gives " + predicted.get_str());
    }
    return ch;
}

bool in_lemma_shape(const Surface& s, const DivisorClass& c1) {
    c1.check_on(s);
    if (s.is_plane()) return c1[0] <= 0;
    return fn_shape(c1[0], c1[1]);
}

Integer normalization_bound(const ChernData& ch, std::size_t coordinate) {
    return abs_value(ch.c1[coordinate]) + abs_value(ch.c2) + 4;
}

std::vector<Normalization> normalization_candidates(const Surface& s, const ChernData& ch) {
    ch.c1.check_on(s);
    std::vector<Normalization> out;
    auto accept = [&](DivisorClass m) {
        auto normal = twist_chern(s, ch, m);
        if (normal.c2 != 0 || !in_lemma_shape(s, normal.c1)) {
            throw std::logic_error("normalization candidate (" + m.str() + ") fails its own equations");
        }
        out.push_back(Normalization{std::move(m), std::move(normal)});
    };
    const Integer delta = intersect(s, ch.c1, ch.c1) - 4 * ch.c2;
    const Integer& p = ch.c1[0];
    const long bx = to_long(normalization_bound(ch, 0));

    if (s.is_plane()) {
        if (delta >= 0) {
            const Integer root = sqrt(delta);
            if (root * root == delta && is_even(root + p)) {
                const Integer x = (-root - p) / 2;
                if (abs_value(x) <= bx) accept(DivisorClass::plane(x));
            }
        }
    } else {
        const Integer& q = ch.c1[1];
        const Integer by = normalization_bound(ch, 1);
        const Integer n = s.n();
        for (long x = -bx; x <= bx; ++x) {
            const Integer alpha = p + 2 * x;
            if (alpha == 0) {
                if (delta != 0) continue;
                for (long y = -to_long(by); y <= to_long(by); ++y) {
                    if (q + 2 * y <= 0) accept(DivisorClass::fn(x, y));
                }
                continue;
            }
            // D'² = 2αβ - nα² must equal Δ = c1² - 4c2
            const Integer num = delta + n * alpha * alpha;
            if (num % (2 * alpha) != 0) continue;
            const Integer beta = num / (2 * alpha);
            if (!is_even(beta - q) || !fn_shape(alpha, beta)) continue;
            const Integer y = (beta - q) / 2;
            if (abs_value(y) <= by) accept(DivisorClass::fn(x, y));
        }
    }
    std::sort(out.begin(), out.end(), [](const Normalization& a, const Normalization& b) {
        return preference_key(a.normal.c1) < preference_key(b.normal.c1);
    });
    return out;
}

Normalization normalize(const Surface& s, const ChernData& ch) {
    auto candidates = normalization_candidates(s, ch);
    if (!candidates.empty()) return std::move(candidates.front());

    Existence exists;
    if (s.is_plane()) {
        const Integer delta = ch.c1[0] * ch.c1[0] - 4 * ch.c2;
        const Integer root = delta >= 0 ? Integer(sqrt(delta)) : Integer(-1);
        exists = root >= 0 && root * root == delta ? Existence::Exists : Existence::None;
    } else {
        exists = fn_solution_exists(s, ch);
    }
    const std::string data = "c1 = (" + ch.c1.str() + "), c2 = " + ch.c2.get_str();
    switch (exists) {
        case Existence::None:
            throw NotNormalizable(NotNormalizable::Cause::ProvablyNone,
                                  "no twist of the lattice gives c2 = 0 with c1 of split shape for " + data);
        case Existence::Exists:
            throw NotNormalizable(NotNormalizable::Cause::BoxExhausted,
                                  "normalizing twists for " + data + " lie outside the search box");
        case Existence::Unknown: break;
    }
    throw NotNormalizable(NotNormalizable::Cause::BoxExhausted,
                          "no normalizing twist inside the search box for " + data);
}

SplitVerdict lemma2_decide(const Surface& s, const CohomologyOracle& q, const ChernData& ch) {
    if (ch.c2 != 0 || !in_lemma_shape(s, ch.c1)) {
        throw PreconditionViolated("Chern data c1 = (" + ch.c1.str() + "), c2 = " + ch.c2.get_str() +
                                   " is not a normal form");
    }
    const auto twists = lemma2_twists(s, ch.c1);
    std::vector<CertificateEntry> conditions;
    for (std::size_t i = 0; i + 2 < twists.size(); ++i) {
        conditions.push_back({twists[i], 0, Relation::Equal, 0, 0});
    }
    conditions.push_back({twists[twists.size() - 2], 0, Relation::AtLeast, 1, 0});
    conditions.push_back({twists.back(), 0, Relation::AtLeast, 1 + line_h0(s, -ch.c1), 0});

    SplitVerdict v;
    for (auto& c : conditions) {
        c.observed = q(c.twist).h0;
        if (!c.holds()) v.certificate.push_back(c);
    }
    if (v.certificate.empty()) return split_verdict(DivisorClass::zero(s), ch.c1);
    v.kind = SplitVerdict::Kind::NotSplitWithin;
    v.reason = "section criterion fails for normal form c1 = (" + ch.c1.str() + ")";
    return v;
}

namespace {

SplitVerdict decide_unguarded(const Surface& s, const CohomologyOracle& q) {
    ChernData ch;
    try {
        ch = recover_chern(s, q);
    } catch (const InconsistentOracle& e) {
        return inconclusive(e.what());
    }
    const auto candidates = normalization_candidates(s, ch);
    if (candidates.empty()) {
        try {
            normalize(s, ch);
        } catch (const NotNormalizable& e) {
            return inconclusive(e.what());
        }
    }
    std::optional<SplitVerdict> first_failure;
    for (const auto& [m, normal] : candidates) {
        auto v = lemma2_decide(s, twisted(q, m), normal);
        v.normalization_twist = m;
        if (v.is_split()) {
            v.summands = std::make_pair(-m, normal.c1 - m);
            return v;
        }
        for (auto& c : v.certificate) c.twist += m;
        if (!first_failure) first_failure = std::move(v);
    }
    first_failure->reason += candidates.size() == 1
                                 ? std::string()
                                 : " (and for the other " + std::to_string(candidates.size() - 1) +
                                       " normalizing twists in the box)";
    return *first_failure;
}

SplitVerdict missing_data(const std::out_of_range& e) {
    return inconclusive(std::string("the oracle has no data: ") + e.what());
}

}  // namespace

SplitVerdict decide(const Surface& s, const CohomologyOracle& q) {
    try {
        return decide_unguarded(s, q);
    } catch (const std::out_of_range& e) {
        return missing_data(e);
    }
}

std::vector<DivisorClass> certificate_twists(const Bundle2& split) {
    const auto& s = split.surface();
    const DivisorClass m = split_normalization(split);
    std::vector<DivisorClass> out;
    for (const auto& t : recovery_twists(s)) push_unique(out, t);
    push_unique(out, m);
    for (const auto& t : lemma2_twists(s, chern(split).c1 + 2 * m)) push_unique(out, m + t);
    return out;
}

SplitVerdict theorem1_decide(const Surface& s, const CohomologyOracle& qE, const Bundle2& split) {
    if (s.is_plane()) throw SurfaceMismatch("theorem1_decide works on F_n; use theorem5_decide on P2");
    try {
        return compare_with_split(s, qE, split);
    } catch (const std::out_of_range& e) {
        return missing_data(e);
    }
}

SplitVerdict theorem5_decide(const CohomologyOracle& q, const Bundle2& split) {
    if (!split.surface().is_plane()) throw SurfaceMismatch("theorem5_decide works on P2");
    try {
        return compare_with_split(split.surface(), q, split);
    } catch (const std::out_of_range& e) {
        return missing_data(e);
    }
}

}  // namespace hirz

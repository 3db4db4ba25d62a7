#pragma once

#include "hirz/cech.hpp"
#include "hirz/line_cohomology.hpp"
#include "hirz/picard.hpp"

#include <json.hpp>

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace hirz {

/// A rank-2 bundle given either as O(L1) ⊕ O(L2) or as an extension of line bundles.
class Bundle2 {
public:
    struct Sum {
        DivisorClass first;
        DivisorClass second;
        friend bool operator==(const Sum&, const Sum&) = default;
    };

    static Bundle2 sum(const Surface& s, DivisorClass first, DivisorClass second);
    static Bundle2 extension(const Surface& s, cech::ExtClass e);

    const Surface& surface() const noexcept { return surface_; }
    bool is_sum() const noexcept { return std::holds_alternative<Sum>(presentation_); }
    const Sum& summands() const { return std::get<Sum>(presentation_); }
    const cech::ExtClass& extension_class() const { return std::get<cech::ExtClass>(presentation_); }

    friend bool operator==(const Bundle2&, const Bundle2&) = default;

private:
    Bundle2(const Surface& s, std::variant<Sum, cech::ExtClass> p) : surface_(s), presentation_(std::move(p)) {}

    Surface surface_;
    std::variant<Sum, cech::ExtClass> presentation_;
};

Bundle2 twist(const Bundle2& e, const DivisorClass& m);
ChernData chern(const Bundle2& e);

/// Which engine answers cohomology queries. For sums: closed form, Čech, or both
/// (asserting equality). Extensions always go through Čech; Both additionally
/// cross-checks the long-exact-sequence route against the total complex.
enum class OracleKind { Closed, Cech, Both };

OracleKind parse_oracle_kind(const std::string& text);
std::string to_string(OracleKind kind);

/// h^i(E ⊗ O(twist)).
CohomologyTriple bundle_h(const Bundle2& e, const DivisorClass& twist, OracleKind kind = OracleKind::Closed);

/// Rectangle of twists, visited row-major in ascending order.
class Window {
public:
    static Window fn(long amin, long amax, long bmin, long bmax);
    static Window plane(long dmin, long dmax);
    /// "amin,amax,bmin,bmax" or "dmin,dmax".
    static Window parse(const std::string& text);
    /// Symmetric square [-r, r]^rank.
    static Window centered(const Surface& s, long radius);

    const std::vector<std::pair<long, long>>& ranges() const noexcept { return ranges_; }
    std::vector<DivisorClass> twists() const;
    bool contains(const DivisorClass& d) const;
    std::string str() const;

    friend bool operator==(const Window&, const Window&) = default;

private:
    std::vector<std::pair<long, long>> ranges_;
};

struct TableEntry {
    DivisorClass twist;
    CohomologyTriple h;
};

struct CohomologyTable {
    Surface surface;
    nlohmann::json bundle;
    Window window;
    std::vector<TableEntry> entries;

    std::optional<CohomologyTriple> lookup(const DivisorClass& twist) const;
};

CohomologyTable h_table(const Bundle2& e, const Window& window, OracleKind kind = OracleKind::Closed);

nlohmann::json integer_json(const Integer& v);
nlohmann::json divisor_json(const DivisorClass& d);
nlohmann::json bundle_json(const Bundle2& e);
nlohmann::json table_json(const CohomologyTable& table);
/// Inverse of table_json; entries may be arbitrary measured data. Throws ParseError.
CohomologyTable table_from_json(const nlohmann::json& j);
/// Header line "a,b,h0,h1,h2" (or "d,h0,h1,h2" on P²) then one row per entry.
std::string table_csv(const CohomologyTable& table);

}  // namespace hirz

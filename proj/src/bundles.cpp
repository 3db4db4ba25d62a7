#include "hirz/bundles.hpp"

#include "hirz/errors.hpp"

#include <sstream>

namespace hirz {

Bundle2 Bundle2::sum(const Surface& s, DivisorClass first, DivisorClass second) {
    first.check_on(s);
    second.check_on(s);
    return Bundle2(s, Sum{std::move(first), std::move(second)});
}

Bundle2 Bundle2::extension(const Surface& s, cech::ExtClass e) {
    cech::validate_cocycle(s, e);
    return Bundle2(s, std::move(e));
}

Bundle2 twist(const Bundle2& e, const DivisorClass& m) {
    m.check_on(e.surface());
    if (e.is_sum()) {
        return Bundle2::sum(e.surface(), e.summands().first + m, e.summands().second + m);
    }
    cech::ExtClass shifted = e.extension_class();
    shifted.sub += m;
    shifted.quot += m;
    return Bundle2::extension(e.surface(), std::move(shifted));
}

ChernData chern(const Bundle2& e) {
    const auto& s = e.surface();
    if (e.is_sum()) {
        const auto& [l1, l2] = e.summands();
        return ChernData{l1 + l2, intersect(s, l1, l2)};
    }
    const auto& ext = e.extension_class();
    return ChernData{ext.sub + ext.quot, intersect(s, ext.sub, ext.quot)};
}

OracleKind parse_oracle_kind(const std::string& text) {
    if (text == "closed") return OracleKind::Closed;
    if (text == "cech") return OracleKind::Cech;
    if (text == "both") return OracleKind::Both;
    throw ParseError("unknown oracle '" + text + "' (expected closed, cech or both)");
}

std::string to_string(OracleKind kind) {
    switch (kind) {
        case OracleKind::Closed: return "closed";
        case OracleKind::Cech: return "cech";
        case OracleKind::Both: return "both";
    }
    return "closed";
}

CohomologyTriple bundle_h(const Bundle2& e, const DivisorClass& twist, OracleKind kind) {
    const auto& s = e.surface();
    twist.check_on(s);
    if (e.is_sum()) {
        const auto& [l1, l2] = e.summands();
        if (kind == OracleKind::Closed) return line_h(s, l1 + twist) + line_h(s, l2 + twist);
        const auto cech = cech::cech_line_h(s, l1 + twist) + cech::cech_line_h(s, l2 + twist);
        if (kind == OracleKind::Both && !(cech == line_h(s, l1 + twist) + line_h(s, l2 + twist))) {
            throw std::logic_error("closed form and Čech cohomology disagree at twist (" + twist.str() + ")");
        }
        return cech;
    }
    const auto& ext = e.extension_class();
    const auto h = cech::rank2_cech_h(s, ext, twist, cech::Route::LongExactSequence);
    if (kind == OracleKind::Both && !(h == cech::rank2_cech_h(s, ext, twist, cech::Route::TotalComplex))) {
        throw std::logic_error("rank-2 Čech routes disagree at twist (" + twist.str() + ")");
    }
    return h;
}

Window Window::fn(long amin, long amax, long bmin, long bmax) {
    if (amin > amax || bmin > bmax) throw std::invalid_argument("empty twist window");
    Window w;
    w.ranges_ = {{amin, amax}, {bmin, bmax}};
    return w;
}

Window Window::plane(long dmin, long dmax) {
    if (dmin > dmax) throw std::invalid_argument("empty twist window");
    Window w;
    w.ranges_ = {{dmin, dmax}};
    return w;
}

Window Window::parse(const std::string& text) {
    std::vector<long> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            values.push_back(std::stol(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ParseError("bad window bound '" + item + "' in '" + text + "'");
        }
    }
    if (values.size() == 4) return fn(values[0], values[1], values[2], values[3]);
    if (values.size() == 2) return plane(values[0], values[1]);
    throw ParseError("window '" + text + "' must be amin,amax,bmin,bmax or dmin,dmax");
}

Window Window::centered(const Surface& s, long radius) {
    return s.is_plane() ? plane(-radius, radius) : fn(-radius, radius, -radius, radius);
}

std::vector<DivisorClass> Window::twists() const {
    std::vector<DivisorClass> out;
    if (ranges_.size() == 1) {
        for (long d = ranges_[0].first; d <= ranges_[0].second; ++d) out.push_back(DivisorClass::plane(d));
        return out;
    }
    for (long a = ranges_[0].first; a <= ranges_[0].second; ++a)
        for (long b = ranges_[1].first; b <= ranges_[1].second; ++b) out.push_back(DivisorClass::fn(a, b));
    return out;
}

bool Window::contains(const DivisorClass& d) const {
    if (d.rank() != ranges_.size()) return false;
    for (std::size_t i = 0; i < ranges_.size(); ++i) {
        if (d[i] < ranges_[i].first || d[i] > ranges_[i].second) return false;
    }
    return true;
}

std::string Window::str() const {
    std::string out;
    for (const auto& [lo, hi] : ranges_) {
        if (!out.empty()) out += ',';
        out += std::to_string(lo) + ',' + std::to_string(hi);
    }
    return out;
}

std::optional<CohomologyTriple> CohomologyTable::lookup(const DivisorClass& twist) const {
    for (const auto& entry : entries) {
        if (entry.twist == twist) return entry.h;
    }
    return std::nullopt;
}

CohomologyTable h_table(const Bundle2& e, const Window& window, OracleKind kind) {
    CohomologyTable table{e.surface(), bundle_json(e), window, {}};
    if (window.ranges().size() != e.surface().picard_rank()) {
        throw SurfaceMismatch("window " + window.str() + " does not match Pic(" + e.surface().name() + ")");
    }
    for (auto& t : window.twists()) {
        auto h = bundle_h(e, t, kind);
        table.entries.push_back(TableEntry{std::move(t), std::move(h)});
    }
    return table;
}

nlohmann::json integer_json(const Integer& v) {
    if (v.fits_slong_p()) return v.get_si();
    return v.get_str();
}

nlohmann::json divisor_json(const DivisorClass& d) {
    auto out = nlohmann::json::array();
    for (const auto& c : d.coords()) out.push_back(integer_json(c));
    return out;
}

nlohmann::json bundle_json(const Bundle2& e) {
    if (e.is_sum()) {
        return {{"kind", "sum"},
                {"summands", {divisor_json(e.summands().first), divisor_json(e.summands().second)}}};
    }
    const auto& ext = e.extension_class();
    const cech::ChartCover cover(e.surface());
    auto terms = nlohmann::json::array();
    for (const auto& [key, value] : ext.cocycle.terms) {
        terms.push_back({{"m", {key.m[0], key.m[1]}},
                         {"charts", cover.faces(1)[key.face].charts},
                         {"coefficient", value.get_str()}});
    }
    return {{"kind", "extension"}, {"sub", divisor_json(ext.sub)}, {"quot", divisor_json(ext.quot)}, {"cocycle", terms}};
}

nlohmann::json table_json(const CohomologyTable& table) {
    auto window = nlohmann::json::array();
    for (const auto& [lo, hi] : table.window.ranges()) {
        window.push_back(lo);
        window.push_back(hi);
    }
    auto entries = nlohmann::json::array();
    for (const auto& entry : table.entries) {
        entries.push_back({{"twist", divisor_json(entry.twist)},
                           {"h", {integer_json(entry.h.h0), integer_json(entry.h.h1), integer_json(entry.h.h2)}}});
    }
    return {{"surface", table.surface.name()}, {"bundle", table.bundle}, {"window", window}, {"entries", entries}};
}

namespace {

Integer integer_from_json(const nlohmann::json& v) {
    if (v.is_number_integer()) return Integer(v.get<long>());
    if (v.is_string()) {
        Integer out;
        if (out.set_str(v.get<std::string>(), 10) == 0) return out;
    }
    throw ParseError("expected an integer, got " + v.dump());
}

}  // namespace

CohomologyTable table_from_json(const nlohmann::json& j) {
    try {
        const auto surface = Surface::parse(j.at("surface").get<std::string>());
        std::vector<long> bounds = j.at("window").get<std::vector<long>>();
        const Window window = bounds.size() == 4   ? Window::fn(bounds[0], bounds[1], bounds[2], bounds[3])
                              : bounds.size() == 2 ? Window::plane(bounds[0], bounds[1])
                                                   : throw ParseError("window needs 2 or 4 bounds");
        if (window.ranges().size() != surface.picard_rank()) throw ParseError("window does not fit " + surface.name());
        CohomologyTable table{surface, j.value("bundle", nlohmann::json()), window, {}};
        for (const auto& entry : j.at("entries")) {
            std::vector<Integer> coords;
            for (const auto& c : entry.at("twist")) coords.push_back(integer_from_json(c));
            DivisorClass twist(std::move(coords));
            if (twist.rank() != surface.picard_rank()) throw ParseError("twist " + entry.at("twist").dump() + " does not fit " + surface.name());
            const auto& h = entry.at("h");
            if (h.size() != 3) throw ParseError("h must list h0, h1, h2");
            CohomologyTriple triple{integer_from_json(h[0]), integer_from_json(h[1]), integer_from_json(h[2])};
            if (triple.h0 < 0 || triple.h1 < 0 || triple.h2 < 0) throw ParseError("negative dimension at twist " + twist.str());
            table.entries.push_back({std::move(twist), std::move(triple)});
        }
        return table;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed table: ") + e.what());
    }
}

std::string table_csv(const CohomologyTable& table) {
    std::ostringstream os;
    os << (table.surface.is_plane() ? "d" : "a,b") << ",h0,h1,h2\n";
    for (const auto& entry : table.entries) {
        os << entry.twist.str() << ',' << entry.h.h0 << ',' << entry.h.h1 << ',' << entry.h.h2 << '\n';
    }
    return os.str();
}

}  // namespace hirz

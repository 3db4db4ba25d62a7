#include "hirz/picard.hpp"

#include "hirz/errors.hpp"

#include <ostream>
#include <sstream>

namespace hirz {

Surface Surface::hirzebruch(long n) {
    if (n < 0) {
        throw std::invalid_argument("Hirzebruch surface F_n requires n >= 0, got " + std::to_string(n));
    }
    return Surface(Kind::Hirzebruch, n);
}

std::string Surface::name() const {
    return is_plane() ? std::string("P2") : "F" + std::to_string(n_);
}

Surface Surface::parse(const std::string& text) {
    if (text == "P2") {
        return projective_plane();
    }
    if (text.size() >= 2 && text[0] == 'F') {
        std::size_t used = 0;
        long n = 0;
        try {
            n = std::stol(text.substr(1), &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == text.size() - 1 && text[1] != '-' && text[1] != '+') {
            return hirzebruch(n);
        }
    }
    throw ParseError("unknown surface '" + text + "' (expected F<n> or P2)");
}

bool DivisorClass::is_zero() const {
    for (const auto& c : coords_) {
        if (c != 0) return false;
    }
    return true;
}

void DivisorClass::check_on(const Surface& s) const {
    if (coords_.size() != s.picard_rank()) {
        throw SurfaceMismatch("divisor class (" + str() + ") does not belong to Pic(" + s.name() + ")");
    }
}

DivisorClass& DivisorClass::operator+=(const DivisorClass& other) {
    if (other.rank() != rank()) throw SurfaceMismatch("adding divisor classes of different lattices");
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += other.coords_[i];
    return *this;
}

DivisorClass& DivisorClass::operator-=(const DivisorClass& other) {
    if (other.rank() != rank()) throw SurfaceMismatch("subtracting divisor classes of different lattices");
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= other.coords_[i];
    return *this;
}

DivisorClass& DivisorClass::operator*=(const Integer& k) {
    for (auto& c : coords_) c *= k;
    return *this;
}

DivisorClass DivisorClass::operator-() const {
    DivisorClass out = *this;
    for (auto& c : out.coords_) c = -c;
    return out;
}

std::string DivisorClass::str() const {
    std::string out;
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (i) out += ',';
        out += coords_[i].get_str();
    }
    return out;
}

DivisorClass DivisorClass::parse(const std::string& text) {
    std::vector<Integer> coords;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        Integer v;
        std::string digits = item;
        if (!digits.empty() && digits[0] == '+') digits.erase(0, 1);
        if (digits.empty() || v.set_str(digits, 10) != 0) {
            throw ParseError("bad divisor coordinate '" + item + "' in '" + text + "'");
        }
        coords.push_back(v);
    }
    if (coords.empty() || coords.size() > 2 || (!text.empty() && text.back() == ',')) {
        throw ParseError("divisor '" + text + "' must have one or two comma separated integers");
    }
    return DivisorClass(std::move(coords));
}

std::ostream& operator<<(std::ostream& os, const DivisorClass& d) { return os << '(' << d.str() << ')'; }

std::ostream& operator<<(std::ostream& os, const ChernData& ch) {
    return os << "c1=" << ch.c1 << " c2=" << ch.c2;
}

Integer intersect(const Surface& s, const DivisorClass& d1, const DivisorClass& d2) {
    d1.check_on(s);
    d2.check_on(s);
    if (s.is_plane()) {
        return d1[0] * d2[0];
    }
    // (a σ + b f)·(c σ + d f) = -n ac + ad + bc
    return -Integer(s.n()) * d1[0] * d2[0] + d1[0] * d2[1] + d1[1] * d2[0];
}

DivisorClass canonical_class(const Surface& s) {
    if (s.is_plane()) return DivisorClass::plane(-3);
    return DivisorClass::fn(-2, -(Integer(s.n()) + 2));
}

Integer chi_line(const Surface& s, const DivisorClass& d) {
    const Integer twice = intersect(s, d, d - canonical_class(s));
    if (!is_even(twice)) {
        throw std::logic_error("D·(D-K) is odd for D = (" + d.str() + ") on " + s.name());
    }
    return 1 + twice / 2;
}

Integer chi_rank2(const Surface& s, const ChernData& ch) {
    const Integer twice = intersect(s, ch.c1, ch.c1 - canonical_class(s));
    if (!is_even(twice)) {
        throw std::logic_error("c1·(c1-K) is odd for c1 = (" + ch.c1.str() + ") on " + s.name());
    }
    return 2 + twice / 2 - ch.c2;
}

ChernData twist_chern(const Surface& s, const ChernData& ch, const DivisorClass& m) {
    return ChernData{ch.c1 + Integer(2) * m, ch.c2 + intersect(s, ch.c1, m) + intersect(s, m, m)};
}

}  // namespace hirz

#pragma once

#include "hirz/integer.hpp"

#include <compare>
#include <iosfwd>
#include <string>
#include <vector>

namespace hirz {

/// A Hirzebruch surface F_n (n >= 0) or the projective plane.
class Surface {
public:
    enum class Kind { Hirzebruch, ProjectivePlane };

    static Surface hirzebruch(long n);
    static Surface projective_plane() { return Surface(Kind::ProjectivePlane, 0); }

    Kind kind() const noexcept { return kind_; }
    bool is_plane() const noexcept { return kind_ == Kind::ProjectivePlane; }
    /// Twisting parameter n of F_n; zero for P².
    long n() const noexcept { return n_; }
    /// Rank of the Picard lattice (2 for F_n, 1 for P²).
    std::size_t picard_rank() const noexcept { return is_plane() ? 1 : 2; }

    /// "F<n>" or "P2".
    std::string name() const;
    static Surface parse(const std::string& text);

    friend bool operator==(const Surface&, const Surface&) = default;

private:
    Surface(Kind kind, long n) : kind_(kind), n_(n) {}

    Kind kind_;
    long n_;
};

/// Element of Pic(S). On F_n the coordinates are (a, b) for aσ + bf, on P² a single d for dH.
class DivisorClass {
public:
    DivisorClass() = default;
    explicit DivisorClass(std::vector<Integer> coords) : coords_(std::move(coords)) {}

    static DivisorClass fn(Integer a, Integer b) { return DivisorClass({std::move(a), std::move(b)}); }
    static DivisorClass plane(Integer d) { return DivisorClass({std::move(d)}); }
    static DivisorClass zero(const Surface& s) { return DivisorClass(std::vector<Integer>(s.picard_rank())); }
    static DivisorClass sigma() { return fn(1, 0); }
    static DivisorClass fiber() { return fn(0, 1); }
    static DivisorClass hyperplane() { return plane(1); }

    std::size_t rank() const noexcept { return coords_.size(); }
    const Integer& operator[](std::size_t i) const { return coords_.at(i); }
    const std::vector<Integer>& coords() const noexcept { return coords_; }
    bool is_zero() const;

    /// Throws SurfaceMismatch unless the class lives in Pic(s).
    void check_on(const Surface& s) const;

    DivisorClass& operator+=(const DivisorClass& other);
    DivisorClass& operator-=(const DivisorClass& other);
    DivisorClass& operator*=(const Integer& k);
    friend DivisorClass operator+(DivisorClass lhs, const DivisorClass& rhs) { return lhs += rhs; }
    friend DivisorClass operator-(DivisorClass lhs, const DivisorClass& rhs) { return lhs -= rhs; }
    friend DivisorClass operator*(const Integer& k, DivisorClass d) { return d *= k; }
    DivisorClass operator-() const;

    friend bool operator==(const DivisorClass& lhs, const DivisorClass& rhs) { return lhs.coords_ == rhs.coords_; }
    friend bool operator<(const DivisorClass& lhs, const DivisorClass& rhs) { return lhs.coords_ < rhs.coords_; }

    /// Comma separated coordinates, e.g. "1,-2" or "3".
    std::string str() const;
    static DivisorClass parse(const std::string& text);

private:
    std::vector<Integer> coords_;
};

std::ostream& operator<<(std::ostream& os, const DivisorClass& d);

/// Chern data (c1, c2) of a rank-2 bundle.
struct ChernData {
    DivisorClass c1;
    Integer c2;

    friend bool operator==(const ChernData&, const ChernData&) = default;
};

std::ostream& operator<<(std::ostream& os, const ChernData& ch);

/// Intersection pairing: σ² = -n, σ·f = 1, f² = 0 on F_n; H² = 1 on P².
Integer intersect(const Surface& s, const DivisorClass& d1, const DivisorClass& d2);

/// K = -2σ - (n+2)f on F_n, -3H on P².
DivisorClass canonical_class(const Surface& s);

/// Riemann–Roch: χ(O(D)) = 1 + D·(D - K)/2.
Integer chi_line(const Surface& s, const DivisorClass& d);

/// Riemann–Roch for rank 2: χ(E) = 2 + c1·(c1 - K)/2 - c2.
Integer chi_rank2(const Surface& s, const ChernData& ch);

/// Chern data of E ⊗ O(m): (c1 + 2m, c2 + c1·m + m²).
ChernData twist_chern(const Surface& s, const ChernData& ch, const DivisorClass& m);

}  // namespace hirz

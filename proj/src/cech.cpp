#include "hirz/cech.hpp"

#include "hirz/errors.hpp"

#include <algorithm>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace hirz::cech {

namespace {

constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

long dot(const Degree& m, const Degree& u) { return m[0] * u[0] + m[1] * u[1]; }

Degree add(const Degree& x, const Degree& y) { return {x[0] + y[0], x[1] + y[1]}; }

std::vector<std::vector<int>> subsets_of_size(int n, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> current;
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(current.size()) == k) {
            out.push_back(current);
            return;
        }
        for (int i = start; i < n; ++i) {
            current.push_back(i);
            self(self, i + 1);
            current.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

std::vector<CochainKey> box_basis(const ChartCover& cover, const std::vector<long>& coeff, int p, long half) {
    std::vector<CochainKey> out;
    const auto& faces = cover.faces(p);
    for (long m1 = -half; m1 <= half; ++m1) {
        for (long m2 = -half; m2 <= half; ++m2) {
            const Degree m{m1, m2};
            for (std::size_t f = 0; f < faces.size(); ++f) {
                if (cover.regular(faces[f], m, coeff)) out.push_back({m, f});
            }
        }
    }
    return out;
}

std::size_t index_of(const std::vector<CochainKey>& sorted, const CochainKey& key) {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), key);
    if (it == sorted.end() || !(*it == key)) return npos;
    return static_cast<std::size_t>(it - sorted.begin());
}

long sup_norm(const Degree& m) { return std::max(std::abs(m[0]), std::abs(m[1])); }

std::map<Degree, Cochain> split_by_degree(const Cochain& c) {
    std::map<Degree, Cochain> out;
    for (const auto& [key, value] : c.terms) {
        auto& part = out[key.m];
        part.degree = c.degree;
        part.terms.emplace(key, value);
    }
    return out;
}

RationalVector piece_vector(const DegreePiece& piece, int p, const Cochain& homogeneous) {
    RationalVector y(piece.dim(p));
    for (const auto& [key, value] : homogeneous.terms) {
        const std::size_t pos = piece.position(p, key.face);
        if (pos == npos) {
            throw std::logic_error("cochain term outside the sections of its chart");
        }
        y[pos] += value;
    }
    return y;
}

}  // namespace

ChartCover::ChartCover(const Surface& s) : surface_(s) {
    if (s.is_plane()) {
        rays_ = {Degree{1, 0}, Degree{0, 1}, Degree{-1, -1}};
        cones_ = {{0, 1}, {1, 2}, {2, 0}};
    } else {
        rays_ = {Degree{1, 0}, Degree{0, 1}, Degree{-1, s.n()}, Degree{0, -1}};
        cones_ = {{0, 1}, {1, 2}, {2, 3}, {3, 0}};
    }
    const int k = chart_count();
    for (int p = 0; p < k; ++p) {
        std::vector<Face> level;
        for (auto& charts : subsets_of_size(k, p + 1)) {
            std::vector<int> rays = cones_[static_cast<std::size_t>(charts[0])];
            for (std::size_t i = 1; i < charts.size(); ++i) {
                const auto& other = cones_[static_cast<std::size_t>(charts[i])];
                std::erase_if(rays, [&](int r) { return std::find(other.begin(), other.end(), r) == other.end(); });
            }
            level.push_back(Face{std::move(charts), std::move(rays)});
        }
        faces_.push_back(std::move(level));
    }
    for (int p = 0; p + 1 < k; ++p) {
        std::vector<std::vector<std::pair<std::size_t, int>>> level;
        for (const auto& face : faces(p + 1)) {
            std::vector<std::pair<std::size_t, int>> bd;
            for (std::size_t drop = 0; drop < face.charts.size(); ++drop) {
                std::vector<int> smaller;
                for (std::size_t i = 0; i < face.charts.size(); ++i) {
                    if (i != drop) smaller.push_back(face.charts[i]);
                }
                bd.emplace_back(face_index(p, smaller), drop % 2 == 0 ? 1 : -1);
            }
            level.push_back(std::move(bd));
        }
        boundary_.push_back(std::move(level));
    }
}

std::size_t ChartCover::face_index(int p, const std::vector<int>& charts) const {
    const auto& level = faces(p);
    for (std::size_t i = 0; i < level.size(); ++i) {
        if (level[i].charts == charts) return i;
    }
    throw std::out_of_range("no such face in the Čech nerve");
}

std::vector<long> ChartCover::divisor_coefficients(const DivisorClass& d) const {
    d.check_on(surface_);
    if (surface_.is_plane()) return {0, 0, to_long(d[0])};
    return {to_long(d[1]), to_long(d[0]), 0, 0};
}

bool ChartCover::regular(const Face& face, const Degree& m, const std::vector<long>& coeff) const {
    for (int r : face.rays) {
        const auto idx = static_cast<std::size_t>(r);
        if (dot(m, rays_[idx]) < -coeff[idx]) return false;
    }
    return true;
}

bool Cochain::is_zero() const {
    return std::all_of(terms.begin(), terms.end(), [](const auto& t) { return t.second == 0; });
}

Cochain& Cochain::operator+=(const Cochain& other) {
    if (other.degree != degree && !other.terms.empty() && !terms.empty()) {
        throw std::invalid_argument("adding cochains of different degrees");
    }
    if (terms.empty()) degree = other.degree;
    for (const auto& [key, value] : other.terms) {
        auto& slot = terms[key];
        slot += value;
        if (slot == 0) terms.erase(key);
    }
    return *this;
}

Cochain operator*(const Rational& k, Cochain c) {
    if (k == 0) {
        c.terms.clear();
        return c;
    }
    for (auto& [key, value] : c.terms) value *= k;
    return c;
}

long default_half_width(const Surface& s, const DivisorClass& d) {
    d.check_on(s);
    if (s.is_plane()) return to_long(abs(d[0])) + 2;
    const long a = to_long(abs(d[0]));
    const long b = to_long(abs(d[1]));
    return a + b + s.n() * (a + 1) + 2;
}

CechComplex::CechComplex(const ChartCover& cover, const DivisorClass& d, long half_width)
    : half_width_(half_width) {
    const auto coeff = cover.divisor_coefficients(d);
    for (int p = 0; p <= cover.top_degree(); ++p) basis_.push_back(box_basis(cover, coeff, p, half_width));
    for (int p = 0; p < cover.top_degree(); ++p) {
        const auto& cols = basis(p);
        const auto& rows = basis(p + 1);
        SparseMatrix dp(rows.size(), cols.size());
        for (std::size_t r = 0; r < rows.size(); ++r) {
            for (const auto& [face, sign] : cover.boundary(p, rows[r].face)) {
                const std::size_t c = index_of(cols, CochainKey{rows[r].m, face});
                if (c != npos) dp.add(r, c, sign);
            }
        }
        dp.compress();
        differential_.push_back(std::move(dp));
    }
    rank_cache_.assign(differential_.size(), -1);
}

std::size_t CechComplex::rank(int p) const {
    auto& slot = rank_cache_.at(static_cast<std::size_t>(p));
    if (slot < 0) slot = static_cast<long>(differential(p).rank());
    return static_cast<std::size_t>(slot);
}

std::vector<std::size_t> CechComplex::cohomology_dimensions() const {
    std::vector<std::size_t> dims;
    for (int p = 0; p <= top_degree(); ++p) {
        std::size_t h = basis(p).size();
        if (p < top_degree()) h -= rank(p);
        if (p > 0) h -= rank(p - 1);
        dims.push_back(h);
    }
    return dims;
}

CohomologyTriple CechComplex::cohomology() const {
    const auto dims = cohomology_dimensions();
    for (std::size_t p = 3; p < dims.size(); ++p) {
        if (dims[p] != 0) throw std::logic_error("nonzero Čech cohomology above degree 2");
    }
    return CohomologyTriple{Integer(static_cast<unsigned long>(dims[0])),
                            Integer(static_cast<unsigned long>(dims[1])),
                            Integer(static_cast<unsigned long>(dims[2]))};
}

bool CechComplex::composition_vanishes() const {
    for (int p = 0; p + 1 < top_degree(); ++p) {
        if ((differential(p + 1) * differential(p)).nonzeros() != 0) return false;
    }
    return true;
}

void CechComplex::write(std::ostream& os) const {
    for (int p = 0; p <= top_degree(); ++p) {
        os << "# basis " << p << ' ' << basis(p).size() << '\n';
        for (std::size_t i = 0; i < basis(p).size(); ++i) {
            const auto& key = basis(p)[i];
            os << i << ' ' << key.m[0] << ' ' << key.m[1] << ' ' << key.face << '\n';
        }
    }
    for (int p = 0; p < top_degree(); ++p) {
        const auto& dp = differential(p);
        os << "# d " << p << ' ' << dp.rows() << ' ' << dp.cols() << ' ' << dp.nonzeros() << '\n';
        for (const auto& e : dp.entries()) os << e.row << ' ' << e.col << ' ' << e.value.get_str() << '\n';
    }
}

std::size_t DegreePiece::cohomology(int p) const {
    std::size_t h = dim(p);
    if (static_cast<std::size_t>(p) < differential.size()) h -= differential[static_cast<std::size_t>(p)].rank();
    if (p > 0) h -= differential[static_cast<std::size_t>(p - 1)].rank();
    return h;
}

std::size_t DegreePiece::position(int p, std::size_t face) const {
    const auto& level = present.at(static_cast<std::size_t>(p));
    auto it = std::find(level.begin(), level.end(), face);
    return it == level.end() ? npos : static_cast<std::size_t>(it - level.begin());
}

DegreePiece degree_piece(const ChartCover& cover, const std::vector<long>& coeff, const Degree& m) {
    DegreePiece piece;
    piece.m = m;
    for (int p = 0; p <= cover.top_degree(); ++p) {
        std::vector<std::size_t> level;
        const auto& faces = cover.faces(p);
        for (std::size_t f = 0; f < faces.size(); ++f) {
            if (cover.regular(faces[f], m, coeff)) level.push_back(f);
        }
        piece.present.push_back(std::move(level));
    }
    for (int p = 0; p < cover.top_degree(); ++p) {
        const auto& cols = piece.present[static_cast<std::size_t>(p)];
        const auto& rows = piece.present[static_cast<std::size_t>(p + 1)];
        Matrix dp(rows.size(), cols.size());
        for (std::size_t r = 0; r < rows.size(); ++r) {
            for (const auto& [face, sign] : cover.boundary(p, rows[r])) {
                const std::size_t c = piece.position(p, face);
                if (c != npos) dp(r, c) = sign;
            }
        }
        piece.differential.push_back(std::move(dp));
    }
    return piece;
}

DegreeCohomology degree_cohomology(const DegreePiece& piece, int p) {
    const std::size_t dim = piece.dim(p);
    DegreeCohomology out;
    out.boundaries = p > 0 ? piece.differential[static_cast<std::size_t>(p - 1)] : Matrix(dim, 0);

    std::vector<RationalVector> cocycles;
    if (static_cast<std::size_t>(p) < piece.differential.size()) {
        cocycles = piece.differential[static_cast<std::size_t>(p)].nullspace();
    } else {
        for (std::size_t i = 0; i < dim; ++i) {
            RationalVector e(dim);
            e[i] = 1;
            cocycles.push_back(std::move(e));
        }
    }
    Matrix span = out.boundaries;
    std::size_t current = span.rank();
    for (auto& z : cocycles) {
        Matrix candidate = span.hconcat(Matrix::from_columns(dim, {z}));
        const std::size_t r = candidate.rank();
        if (r > current) {
            span = std::move(candidate);
            current = r;
            out.representatives.push_back(std::move(z));
        }
    }
    return out;
}

RationalVector class_coordinates(const DegreeCohomology& coh, const RationalVector& y) {
    const std::size_t rows = coh.boundaries.rows();
    const Matrix system = coh.boundaries.hconcat(Matrix::from_columns(rows, coh.representatives));
    auto x = system.solve(y);
    if (!x) throw std::logic_error("class_coordinates: vector is not a cocycle");
    return RationalVector(x->end() - static_cast<std::ptrdiff_t>(coh.representatives.size()), x->end());
}

std::vector<Cochain> cohomology_basis(const Surface& s, const DivisorClass& d, int p) {
    const ChartCover cover(s);
    const auto coeff = cover.divisor_coefficients(d);
    const long half = default_half_width(s, d);
    std::vector<Cochain> basis;
    for (long m1 = -half - 1; m1 <= half + 1; ++m1) {
        for (long m2 = -half - 1; m2 <= half + 1; ++m2) {
            const Degree m{m1, m2};
            const DegreePiece piece = degree_piece(cover, coeff, m);
            if (piece.cohomology(p) == 0) continue;
            if (sup_norm(m) > half) {
                throw TruncationUnstable("H^" + std::to_string(p) + " of O(" + d.str() + ") on " + s.name() +
                                         " has support outside the truncation box");
            }
            const auto coh = degree_cohomology(piece, p);
            for (const auto& rep : coh.representatives) {
                Cochain c;
                c.degree = p;
                for (std::size_t i = 0; i < rep.size(); ++i) {
                    if (rep[i] != 0) c.terms.emplace(CochainKey{m, piece.present[static_cast<std::size_t>(p)][i]}, rep[i]);
                }
                basis.push_back(std::move(c));
            }
        }
    }
    return basis;
}

Cochain coboundary(const ChartCover& cover, const DivisorClass& d, const Cochain& c) {
    const int p = c.degree;
    Cochain out;
    out.degree = p + 1;
    if (p >= cover.top_degree()) return out;
    const auto coeff = cover.divisor_coefficients(d);
    for (const auto& [key, value] : c.terms) {
        if (!cover.regular(cover.faces(p)[key.face], key.m, coeff)) {
            throw std::invalid_argument("coboundary: cochain term is not a section on its chart");
        }
    }
    const auto& targets = cover.faces(p + 1);
    for (const auto& [m, part] : split_by_degree(c)) {
        for (std::size_t j = 0; j < targets.size(); ++j) {
            if (!cover.regular(targets[j], m, coeff)) continue;
            Rational sum = 0;
            for (const auto& [face, sign] : cover.boundary(p, j)) {
                auto it = part.terms.find(CochainKey{m, face});
                if (it != part.terms.end()) sum += sign * it->second;
            }
            if (sum != 0) out.terms.emplace(CochainKey{m, j}, sum);
        }
    }
    return out;
}

Cochain cup(const ChartCover& cover, const Cochain& g, const Cochain& c) {
    if (g.degree != 1) throw std::invalid_argument("cup: first factor must be a 1-cochain");
    Cochain out;
    out.degree = c.degree + 1;
    if (out.degree > cover.top_degree()) return out;
    const auto& edges = cover.faces(1);
    const auto& sources = cover.faces(c.degree);
    for (const auto& [gkey, gval] : g.terms) {
        const auto& edge = edges[gkey.face].charts;
        for (const auto& [ckey, cval] : c.terms) {
            const auto& tail = sources[ckey.face].charts;
            if (tail.front() != edge[1]) continue;
            std::vector<int> charts{edge[0]};
            charts.insert(charts.end(), tail.begin(), tail.end());
            const CochainKey key{add(gkey.m, ckey.m), cover.face_index(out.degree, charts)};
            auto& slot = out.terms[key];
            slot += gval * cval;
            if (slot == 0) out.terms.erase(key);
        }
    }
    return out;
}

void validate_cocycle(const Surface& s, const ExtClass& e) {
    const ChartCover cover(s);
    const DivisorClass diff = e.sub - e.quot;
    if (e.cocycle.degree != 1) throw InvalidCocycle("extension class must be a Čech 1-cochain");
    const auto coeff = cover.divisor_coefficients(diff);
    const auto& edges = cover.faces(1);
    for (const auto& [key, value] : e.cocycle.terms) {
        if (key.face >= edges.size() || !cover.regular(edges[key.face], key.m, coeff)) {
            throw InvalidCocycle("cochain term is not a section of O(" + diff.str() + ") on its chart");
        }
    }
    if (!coboundary(cover, diff, e.cocycle).is_zero()) {
        throw InvalidCocycle("cochain is not closed under the Čech differential");
    }
}

ExtClass basis_extension(const Surface& s, const DivisorClass& sub, const DivisorClass& quot, std::size_t seed) {
    const auto basis = cohomology_basis(s, sub - quot, 1);
    if (seed >= basis.size()) {
        throw PreconditionViolated("extension seed " + std::to_string(seed) + " out of range: h1(O(" +
                                   (sub - quot).str() + ")) = " + std::to_string(basis.size()));
    }
    return ExtClass{sub, quot, basis[seed]};
}

CohomologyTriple cech_line_h(const Surface& s, const DivisorClass& d) {
    const ChartCover cover(s);
    const long half = default_half_width(s, d);
    const auto h = CechComplex(cover, d, half).cohomology();
    const auto grown = CechComplex(cover, d, half + 1).cohomology();
    if (!(h == grown)) {
        throw TruncationUnstable("Čech cohomology of O(" + d.str() + ") on " + s.name() +
                                 " changed when the truncation box grew");
    }
    return h;
}

Integer ext_dim(const Surface& s, const DivisorClass& quot, const DivisorClass& sub) {
    return cech_line_h(s, sub - quot).h1;
}

namespace {

// rank of H^p(Q) -> H^{p+1}(S), [c] -> [g ∪ c]
std::size_t connecting_rank(const Surface& s, const ChartCover& cover, const Cochain& g, const DivisorClass& sub,
                            const DivisorClass& quot, int p) {
    const auto sources = cohomology_basis(s, quot, p);
    if (sources.empty()) return 0;

    const auto coeff = cover.divisor_coefficients(sub);
    std::map<Degree, std::size_t> offset;
    std::size_t rows = 0;
    for (const auto& rep : cohomology_basis(s, sub, p + 1)) {
        const Degree m = rep.terms.begin()->first.m;
        if (!offset.contains(m)) offset[m] = rows;
        ++rows;
    }
    if (rows == 0) return 0;

    Matrix delta(rows, sources.size());
    for (std::size_t col = 0; col < sources.size(); ++col) {
        for (const auto& [m, part] : split_by_degree(cup(cover, g, sources[col]))) {
            const DegreePiece piece = degree_piece(cover, coeff, m);
            const auto coh = degree_cohomology(piece, p + 1);
            if (coh.representatives.empty()) continue;
            auto it = offset.find(m);
            if (it == offset.end()) {
                throw TruncationUnstable("connecting map hits a character outside the truncation box");
            }
            const auto coords = class_coordinates(coh, piece_vector(piece, p + 1, part));
            for (std::size_t k = 0; k < coords.size(); ++k) delta(it->second + k, col) = coords[k];
        }
    }
    return delta.rank();
}

CohomologyTriple les_route(const Surface& s, const ExtClass& e, const DivisorClass& twist) {
    const DivisorClass sub = e.sub + twist;
    const DivisorClass quot = e.quot + twist;
    const CohomologyTriple hs = cech_line_h(s, sub);
    const CohomologyTriple hq = cech_line_h(s, quot);
    if (e.cocycle.is_zero()) return hs + hq;
    const ChartCover cover(s);
    const Integer r0 = static_cast<unsigned long>(connecting_rank(s, cover, e.cocycle, sub, quot, 0));
    const Integer r1 = static_cast<unsigned long>(connecting_rank(s, cover, e.cocycle, sub, quot, 1));
    return CohomologyTriple{hs.h0 + hq.h0 - r0, hs.h1 - r0 + hq.h1 - r1, hs.h2 - r1 + hq.h2};
}

std::vector<std::size_t> total_complex_dimensions(const ChartCover& cover, const ExtClass& e, const DivisorClass& sub,
                                                  const DivisorClass& quot, long half_sub, long half_quot) {
    const CechComplex cs(cover, sub, half_sub);
    const CechComplex cq(cover, quot, half_quot);
    const int top = cover.top_degree();
    const auto& edges = cover.faces(1);

    std::vector<std::size_t> ranks;
    for (int p = 0; p < top; ++p) {
        const std::size_t col_shift = cs.basis(p).size();
        const std::size_t row_shift = cs.basis(p + 1).size();
        SparseMatrix dp(row_shift + cq.basis(p + 1).size(), col_shift + cq.basis(p).size());
        for (const auto& x : cs.differential(p).entries()) dp.add(x.row, x.col, x.value);
        for (const auto& x : cq.differential(p).entries()) dp.add(row_shift + x.row, col_shift + x.col, x.value);
        // the -g ∪ q block
        const auto& sources = cover.faces(p);
        for (std::size_t col = 0; col < cq.basis(p).size(); ++col) {
            const auto& ckey = cq.basis(p)[col];
            const auto& tail = sources[ckey.face].charts;
            for (const auto& [gkey, gval] : e.cocycle.terms) {
                const auto& edge = edges[gkey.face].charts;
                if (tail.front() != edge[1]) continue;
                std::vector<int> charts{edge[0]};
                charts.insert(charts.end(), tail.begin(), tail.end());
                const CochainKey target{add(gkey.m, ckey.m), cover.face_index(p + 1, charts)};
                const std::size_t row = index_of(cs.basis(p + 1), target);
                if (row == npos) throw std::logic_error("total complex: cup product leaves the sub box");
                dp.add(row, col_shift + col, -gval);
            }
        }
        dp.compress();
        ranks.push_back(dp.rank());
    }
    std::vector<std::size_t> dims;
    for (int p = 0; p <= top; ++p) {
        std::size_t h = cs.basis(p).size() + cq.basis(p).size();
        if (p < top) h -= ranks[static_cast<std::size_t>(p)];
        if (p > 0) h -= ranks[static_cast<std::size_t>(p - 1)];
        dims.push_back(h);
    }
    return dims;
}

CohomologyTriple total_route(const Surface& s, const ExtClass& e, const DivisorClass& twist) {
    const ChartCover cover(s);
    const DivisorClass sub = e.sub + twist;
    const DivisorClass quot = e.quot + twist;
    long reach = 0;
    for (const auto& [key, value] : e.cocycle.terms) reach = std::max(reach, sup_norm(key.m));
    const long half_quot = default_half_width(s, quot);
    const long half_sub = std::max(default_half_width(s, sub), half_quot + reach);
    const auto dims = total_complex_dimensions(cover, e, sub, quot, half_sub, half_quot);
    const auto grown = total_complex_dimensions(cover, e, sub, quot, half_sub + 1, half_quot + 1);
    if (dims != grown) {
        throw TruncationUnstable("total Čech complex changed when the truncation boxes grew");
    }
    for (std::size_t p = 3; p < dims.size(); ++p) {
        if (dims[p] != 0) throw std::logic_error("nonzero Čech cohomology above degree 2");
    }
    return CohomologyTriple{Integer(static_cast<unsigned long>(dims[0])), Integer(static_cast<unsigned long>(dims[1])),
                            Integer(static_cast<unsigned long>(dims[2]))};
}

}  // namespace

CohomologyTriple rank2_cech_h(const Surface& s, const ExtClass& e, const DivisorClass& twist, Route route) {
    e.sub.check_on(s);
    e.quot.check_on(s);
    twist.check_on(s);
    validate_cocycle(s, e);
    return route == Route::LongExactSequence ? les_route(s, e, twist) : total_route(s, e, twist);
}

bool cocycle_is_coboundary(const Surface& s, const ExtClass& e) {
    validate_cocycle(s, e);
    const ChartCover cover(s);
    const auto coeff = cover.divisor_coefficients(e.sub - e.quot);
    for (const auto& [m, part] : split_by_degree(e.cocycle)) {
        const DegreePiece piece = degree_piece(cover, coeff, m);
        if (!piece.differential[0].solve(piece_vector(piece, 1, part))) return false;
    }
    return true;
}

}  // namespace hirz::cech

#include "hirz/exact_matrix.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

namespace hirz {

RationalVector Matrix::column(std::size_t c) const {
    RationalVector out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
}

RationalVector Matrix::apply(const RationalVector& x) const {
    if (x.size() != cols_) throw std::invalid_argument("Matrix::apply: dimension mismatch");
    RationalVector out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            const Rational& a = (*this)(r, c);
            if (a != 0 && x[c] != 0) out[r] += a * x[c];
        }
    }
    return out;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
    if (cols_ != rhs.rows_) throw std::invalid_argument("Matrix product: dimension mismatch");
    Matrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const Rational& a = (*this)(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
        }
    }
    return out;
}

bool Matrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Rational& v) { return v == 0; });
}

Matrix Matrix::hconcat(const Matrix& rhs) const {
    if (rows_ != rhs.rows_) throw std::invalid_argument("hconcat: row counts differ");
    Matrix out(rows_, cols_ + rhs.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) out(r, c) = (*this)(r, c);
        for (std::size_t c = 0; c < rhs.cols_; ++c) out(r, cols_ + c) = rhs(r, c);
    }
    return out;
}

Matrix Matrix::from_columns(std::size_t rows, const std::vector<RationalVector>& cols) {
    Matrix out(rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        if (cols[c].size() != rows) throw std::invalid_argument("from_columns: ragged input");
        for (std::size_t r = 0; r < rows; ++r) out(r, c) = cols[c][r];
    }
    return out;
}

std::vector<std::size_t> Matrix::rref() {
    std::vector<std::size_t> pivots;
    std::size_t lead_row = 0;
    for (std::size_t c = 0; c < cols_ && lead_row < rows_; ++c) {
        std::size_t p = lead_row;
        while (p < rows_ && (*this)(p, c) == 0) ++p;
        if (p == rows_) continue;
        if (p != lead_row) {
            for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(p, j), (*this)(lead_row, j));
        }
        const Rational inv = 1 / (*this)(lead_row, c);
        for (std::size_t j = c; j < cols_; ++j) (*this)(lead_row, j) *= inv;
        for (std::size_t r = 0; r < rows_; ++r) {
            if (r == lead_row) continue;
            const Rational factor = (*this)(r, c);
            if (factor == 0) continue;
            for (std::size_t j = c; j < cols_; ++j) (*this)(r, j) -= factor * (*this)(lead_row, j);
        }
        pivots.push_back(c);
        ++lead_row;
    }
    return pivots;
}

std::size_t Matrix::rank() const {
    Matrix copy = *this;
    return copy.rref().size();
}

std::vector<RationalVector> Matrix::nullspace() const {
    Matrix r = *this;
    const auto pivots = r.rref();
    std::vector<bool> is_pivot(cols_, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<RationalVector> basis;
    for (std::size_t free = 0; free < cols_; ++free) {
        if (is_pivot[free]) continue;
        RationalVector v(cols_);
        v[free] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r(i, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<RationalVector> Matrix::solve(const RationalVector& b) const {
    if (b.size() != rows_) throw std::invalid_argument("Matrix::solve: dimension mismatch");
    Matrix aug(rows_, cols_ + 1);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) aug(r, c) = (*this)(r, c);
        aug(r, cols_) = b[r];
    }
    const auto pivots = aug.rref();
    if (!pivots.empty() && pivots.back() == cols_) return std::nullopt;
    RationalVector x(cols_);
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug(i, cols_);
    return x;
}

void SparseMatrix::add(std::size_t row, std::size_t col, const Rational& value) {
    if (row >= rows_ || col >= cols_) throw std::out_of_range("SparseMatrix::add: index out of range");
    if (value == 0) return;
    entries_.push_back({row, col, value});
    compressed_ = false;
}

void SparseMatrix::compress() {
    if (compressed_) return;
    std::sort(entries_.begin(), entries_.end(), [](const Entry& x, const Entry& y) {
        return std::tie(x.row, x.col) < std::tie(y.row, y.col);
    });
    std::vector<Entry> merged;
    for (auto& e : entries_) {
        if (!merged.empty() && merged.back().row == e.row && merged.back().col == e.col) {
            merged.back().value += e.value;
        } else {
            merged.push_back(std::move(e));
        }
    }
    std::erase_if(merged, [](const Entry& e) { return e.value == 0; });
    entries_ = std::move(merged);
    compressed_ = true;
}

namespace {

using IntRow = std::vector<std::pair<std::size_t, Integer>>;

// Scale to integers and divide out the content; leading entry made positive.
void make_primitive(IntRow& row) {
    if (row.empty()) return;
    Integer g = 0;
    for (const auto& [c, v] : row) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        if (g == 1) break;
    }
    if (row.front().second < 0) g = -g;
    if (g != 1) {
        for (auto& [c, v] : row) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
    }
}

IntRow to_integer_row(const std::vector<std::pair<std::size_t, Rational>>& rat) {
    Integer lcm = 1;
    for (const auto& [c, v] : rat) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den_mpz_t());
    IntRow out;
    out.reserve(rat.size());
    for (const auto& [c, v] : rat) {
        Integer scaled = v.get_num() * (lcm / v.get_den());
        out.emplace_back(c, std::move(scaled));
    }
    make_primitive(out);
    return out;
}

// row <- p_lead * row - r_lead * pivot, eliminating the shared leading column.
IntRow eliminate(const IntRow& row, const IntRow& pivot) {
    const Integer& p_lead = pivot.front().second;
    const Integer& r_lead = row.front().second;
    IntRow out;
    out.reserve(row.size() + pivot.size());
    std::size_t i = 1;
    std::size_t j = 1;
    while (i < row.size() || j < pivot.size()) {
        if (j == pivot.size() || (i < row.size() && row[i].first < pivot[j].first)) {
            out.emplace_back(row[i].first, p_lead * row[i].second);
            ++i;
        } else if (i == row.size() || pivot[j].first < row[i].first) {
            out.emplace_back(pivot[j].first, -r_lead * pivot[j].second);
            ++j;
        } else {
            Integer v = p_lead * row[i].second - r_lead * pivot[j].second;
            if (v != 0) out.emplace_back(row[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    make_primitive(out);
    return out;
}

}  // namespace

std::size_t SparseMatrix::rank() const {
    std::map<std::size_t, std::vector<std::pair<std::size_t, Rational>>> by_row;
    for (const auto& e : entries_) {
        auto& r = by_row[e.row];
        r.emplace_back(e.col, e.value);
    }
    std::unordered_map<std::size_t, IntRow> pivots;  // leading column -> reduced row
    for (auto& [index, rat] : by_row) {
        std::sort(rat.begin(), rat.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        // merge duplicates in case the matrix was not compressed
        std::vector<std::pair<std::size_t, Rational>> clean;
        for (auto& item : rat) {
            if (!clean.empty() && clean.back().first == item.first) {
                clean.back().second += item.second;
            } else {
                clean.push_back(item);
            }
        }
        std::erase_if(clean, [](const auto& item) { return item.second == 0; });
        IntRow row = to_integer_row(clean);
        while (!row.empty()) {
            auto it = pivots.find(row.front().first);
            if (it == pivots.end()) {
                const std::size_t lead = row.front().first;
                pivots.emplace(lead, std::move(row));
                break;
            }
            row = eliminate(row, it->second);
        }
    }
    return pivots.size();
}

SparseMatrix SparseMatrix::operator*(const SparseMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw std::invalid_argument("SparseMatrix product: dimension mismatch");
    std::unordered_map<std::size_t, std::vector<const Entry*>> rhs_rows;
    for (const auto& e : rhs.entries_) rhs_rows[e.row].push_back(&e);
    SparseMatrix out(rows_, rhs.cols_);
    for (const auto& e : entries_) {
        auto it = rhs_rows.find(e.col);
        if (it == rhs_rows.end()) continue;
        for (const Entry* f : it->second) out.add(e.row, f->col, e.value * f->value);
    }
    out.compress();
    return out;
}

std::size_t SparseMatrix::nonzeros() const {
    return static_cast<std::size_t>(
        std::count_if(entries_.begin(), entries_.end(), [](const Entry& e) { return e.value != 0; }));
}

void SparseMatrix::write_triples(std::ostream& os) const {
    SparseMatrix copy = *this;
    copy.compress();
    os << "% " << rows_ << ' ' << cols_ << ' ' << copy.entries_.size() << '\n';
    for (const auto& e : copy.entries_) os << e.row << ' ' << e.col << ' ' << e.value.get_str() << '\n';
}

}  // namespace hirz

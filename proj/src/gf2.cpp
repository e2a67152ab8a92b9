#include "entbundle/gf2.hpp"

#include <algorithm>
#include <stdexcept>

namespace entbundle::gf2 {

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), stride_((cols + 63) / 64), w_(rows * stride_, 0) {}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
}

Matrix Matrix::from_rows(std::size_t cols, const std::vector<std::vector<int>>& rows) {
    Matrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw std::invalid_argument("from_rows: ragged row");
        for (std::size_t c = 0; c < cols; ++c) m.set(r, c, rows[r][c] & 1);
    }
    return m;
}

bool Matrix::get(std::size_t r, std::size_t c) const {
    return (w_[r * stride_ + c / 64] >> (c % 64)) & 1u;
}

void Matrix::set(std::size_t r, std::size_t c, bool v) {
    std::uint64_t& word = w_[r * stride_ + c / 64];
    std::uint64_t bit = std::uint64_t(1) << (c % 64);
    if (v) word |= bit; else word &= ~bit;
}

void Matrix::xor_row(std::size_t dst, std::size_t src) {
    for (std::size_t k = 0; k < stride_; ++k) w_[dst * stride_ + k] ^= w_[src * stride_ + k];
}

void Matrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t k = 0; k < stride_; ++k)
        std::swap(w_[a * stride_ + k], w_[b * stride_ + k]);
}

Matrix Matrix::transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            if (get(r, c)) t.set(c, r, true);
    return t;
}

Matrix Matrix::hstack(const Matrix& right) const {
    if (rows_ != right.rows_) throw std::invalid_argument("hstack: row count mismatch");
    Matrix m(rows_, cols_ + right.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) m.set(r, c, get(r, c));
        for (std::size_t c = 0; c < right.cols_; ++c) m.set(r, cols_ + c, right.get(r, c));
    }
    return m;
}

bool Matrix::row_is_zero(std::size_t r) const {
    for (std::size_t k = 0; k < stride_; ++k)
        if (w_[r * stride_ + k]) return false;
    return true;
}

std::string Matrix::str() const {
    std::string s;
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) s += get(r, c) ? '1' : '0';
        s += '\n';
    }
    return s;
}

RrefResult rref(const Matrix& a) {
    RrefResult res;
    res.reduced = a;
    Matrix& m = res.reduced;
    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < m.cols() && pivot_row < m.rows(); ++col) {
        std::size_t found = m.rows();
        for (std::size_t r = pivot_row; r < m.rows(); ++r) {
            if (m.get(r, col)) { found = r; break; }
        }
        if (found == m.rows()) continue;
        m.swap_rows(pivot_row, found);
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r != pivot_row && m.get(r, col)) m.xor_row(r, pivot_row);
        }
        res.pivot_cols.push_back(col);
        ++pivot_row;
    }
    res.rank = pivot_row;
    return res;
}

std::size_t rank(const Matrix& a) { return rref(a).rank; }

std::optional<std::vector<std::uint8_t>> solve(const Matrix& a,
                                               const std::vector<std::uint8_t>& b) {
    if (b.size() != a.rows()) throw std::invalid_argument("solve: rhs length mismatch");
    Matrix aug(a.rows(), a.cols() + 1);
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) aug.set(r, c, a.get(r, c));
        aug.set(r, a.cols(), b[r] & 1);
    }
    RrefResult rr = rref(aug);
    // a pivot in the augmented column means b is outside the column span
    for (std::size_t i = 0; i < rr.pivot_cols.size(); ++i)
        if (rr.pivot_cols[i] == a.cols()) return std::nullopt;
    std::vector<std::uint8_t> x(a.cols(), 0);
    for (std::size_t i = 0; i < rr.pivot_cols.size(); ++i)
        x[rr.pivot_cols[i]] = rr.reduced.get(i, a.cols());
    return x;
}

Matrix nullspace_basis(const Matrix& a) {
    RrefResult rr = rref(a);
    std::vector<bool> is_pivot(a.cols(), false);
    for (std::size_t c : rr.pivot_cols) is_pivot[c] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < a.cols(); ++c)
        if (!is_pivot[c]) free_cols.push_back(c);

    Matrix n(a.cols(), free_cols.size());
    for (std::size_t j = 0; j < free_cols.size(); ++j) {
        std::size_t f = free_cols[j];
        n.set(f, j, true);
        for (std::size_t i = 0; i < rr.pivot_cols.size(); ++i)
            if (rr.reduced.get(i, f)) n.set(rr.pivot_cols[i], j, true);
    }
    return n;
}

bool span_contains(const Matrix& generators, const Matrix& candidates) {
    if (generators.rows() != candidates.rows())
        throw std::invalid_argument("span_contains: vector length mismatch");
    if (candidates.cols() == 0) return true;
    std::size_t rg = rank(generators);
    return rank(generators.hstack(candidates)) == rg;
}

bool span_equal(const Matrix& a, const Matrix& b) {
    return span_contains(a, b) && span_contains(b, a);
}

std::vector<std::uint64_t> column_span_key(const Matrix& m) {
    RrefResult rr = rref(m.transposed());
    std::vector<std::uint64_t> key;
    key.push_back(m.rows());
    key.push_back(rr.rank);
    for (std::size_t r = 0; r < rr.rank; ++r)
        for (std::size_t c = 0; c < m.rows(); ++c)
            if (rr.reduced.get(r, c)) key.push_back(std::uint64_t(r) << 32 | c);
    return key;
}

}  // namespace entbundle::gf2

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace entbundle::gf2 {

// Dense matrix over GF(2), rows bit-packed into 64-bit words.
// Row/column indices are 0-based throughout.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);

    static Matrix identity(std::size_t n);
    // rows given as 0/1 entry lists, each of length cols
    static Matrix from_rows(std::size_t cols, const std::vector<std::vector<int>>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool get(std::size_t r, std::size_t c) const;
    void set(std::size_t r, std::size_t c, bool v);

    void xor_row(std::size_t dst, std::size_t src);  // row[dst] ^= row[src]
    void swap_rows(std::size_t a, std::size_t b);

    Matrix transposed() const;
    // [this | right], row counts must match
    Matrix hstack(const Matrix& right) const;

    bool row_is_zero(std::size_t r) const;

    bool operator==(const Matrix& o) const = default;

    // rows as '0'/'1' strings, for diagnostics
    std::string str() const;

private:
    std::size_t rows_ = 0, cols_ = 0, stride_ = 0;
    std::vector<std::uint64_t> w_;
};

struct RrefResult {
    Matrix reduced;
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_cols;
};

// Reduced row echelon form with deterministic pivoting: columns are processed
// left to right and the first unused row holding a 1 becomes the pivot, so the
// result is the canonical representative of the row space.
RrefResult rref(const Matrix& a);

std::size_t rank(const Matrix& a);

// Solve a x = b over GF(2); x, b are column vectors as 0/1 bytes.
// Free variables are fixed to 0. Empty optional when inconsistent.
std::optional<std::vector<std::uint8_t>> solve(const Matrix& a,
                                               const std::vector<std::uint8_t>& b);

// Columns span {x : a x = 0}. With nullity 0 the result has zero columns.
// Satisfies rank(a) + result.cols() == a.cols().
Matrix nullspace_basis(const Matrix& a);

// True iff every column of candidates lies in the column span of generators.
bool span_contains(const Matrix& generators, const Matrix& candidates);

// True iff the column spans coincide (mutual containment).
bool span_equal(const Matrix& a, const Matrix& b);

// Canonical key of a column span: the rref of the transpose, trimmed to its
// pivot rows and serialized. Equal keys <=> equal spans.
std::vector<std::uint64_t> column_span_key(const Matrix& m);

}  // namespace entbundle::gf2

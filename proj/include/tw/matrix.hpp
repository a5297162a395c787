#ifndef TW_MATRIX_HPP
#define TW_MATRIX_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tw/digraph.hpp"
#include "tw/errors.hpp"
#include "tw/permutation.hpp"

namespace tw {

// Alphabet-valued matrix with ordered rows and columns.
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols, int alphabet = 2)
        : rows_(rows), cols_(cols), alphabet_(alphabet), data_(size_t(rows) * cols, 0) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int alphabet() const { return alphabet_; }

    std::uint8_t operator()(int r, int c) const { return data_[size_t(r) * cols_ + c]; }
    void set(int r, int c, std::uint8_t v) { data_[size_t(r) * cols_ + c] = v; }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

private:
    int rows_ = 0, cols_ = 0, alphabet_ = 2;
    std::vector<std::uint8_t> data_;
};

// A division: row and column cut points. cut value c means a boundary
// between index c-1 and c; cuts are strictly increasing, in (0, size).
struct Division {
    std::vector<int> row_cuts;
    std::vector<int> col_cuts;

    int row_parts() const { return int(row_cuts.size()) + 1; }
    int col_parts() const { return int(col_cuts.size()) + 1; }
    // Half-open [begin, end) ranges.
    std::vector<std::pair<int, int>> row_ranges(int rows) const;
    std::vector<std::pair<int, int>> col_ranges(int cols) const;
    void validate(int rows, int cols) const;
};

enum class MatrixClassKind { eq, neq, leq_rows, geq_rows, leq_cols, geq_cols };

const char* matrix_class_name(MatrixClassKind s);

// 0,1 adjacency matrix of g with rows and columns in the given vertex
// order: entry (u,v) is 1 iff the arc u -> v is present.
Matrix adjacency_matrix(const Digraph& g, const std::vector<int>& order);

// Submatrix of rows x cols (vertex lists, in the desired order).
Matrix adjacency_submatrix(const Digraph& g, const std::vector<int>& row_vertices,
                           const std::vector<int>& col_vertices);

// True iff every cell of the k x k division d contains a nonzero entry.
bool is_k_grid(const Matrix& m, const Division& d, int k);

// Exhaustive search for a k-division with a nonzero entry in every cell.
std::optional<Division> find_k_grid(const Matrix& m, int k, int cap = 24);

// (number of distinct rows, number of distinct columns).
std::pair<int, int> diversity(const Matrix& m);

// Distinct row / column counts restricted to a cell.
int distinct_rows_in_cell(const Matrix& m, int r0, int r1, int c0, int c1);
int distinct_cols_in_cell(const Matrix& m, int r0, int r1, int c0, int c1);

// Every cell of the k-division is k-diverse. Direct recomputation; used
// as the independent checker for rank-division witnesses.
bool is_rank_division(const Matrix& m, const Division& d, int k);

struct RankDivisionResult {
    enum class Status { found, not_found, unknown };
    Status status = Status::not_found;
    Division division;
    bool exact = true; // false = heuristic search, not_found impossible
};

// Searches for a k-division whose every cell is k-diverse. Exhaustive
// (with per-cell diversity tables) while rows+cols <= exact_cap and
// k <= exact_k_cap; beyond that a seeded sampling heuristic which can
// only answer `found` or `unknown`.
RankDivisionResult find_rank_division(const Matrix& m, int k, int exact_cap = 48,
                                      int exact_k_cap = 4, std::uint64_t heuristic_seed = 1);

// The six matrix encodings of a permutation: the permutation matrix,
// its complement, and the four directional propagations of the 1s.
Matrix build_M(MatrixClassKind s, const Permutation& sigma);

enum class MatrixTransform : std::uint8_t { reverse_rows, reverse_cols, transpose_complement, drop_row_col };

struct TransformStep {
    MatrixTransform op;
    int row = -1, col = -1; // for drop_row_col
};

struct NormalizedClass {
    MatrixClassKind kind;       // one of eq, leq_rows, geq_rows
    Permutation sigma;
    std::vector<TransformStep> log;
};

Matrix apply_transform(const Matrix& m, const TransformStep& t);
Matrix replay_transforms(Matrix m, const std::vector<TransformStep>& log);

// Reduces (s, sigma) with optional row/column order reversals to an
// equivalent representation with kind in {eq, leq_rows, geq_rows}:
// replaying the log on build_M(s, sigma) gives build_M of the result
// bit-exactly. The all-zero row and column removed in the strict case
// are located by search.
NormalizedClass normalize_matrix_class(MatrixClassKind s, const Permutation& sigma,
                                       bool reverse_row_order, bool reverse_col_order);

// Matrix text format: `m <rows> <cols>` then rows lines of digits 0-9.
Matrix parse_matrix(std::istream& in);
std::string format_matrix(const Matrix& m);

} // namespace tw

#endif

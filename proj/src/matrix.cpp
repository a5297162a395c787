#include "tw/matrix.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace tw {

std::vector<std::pair<int, int>> Division::row_ranges(int rows) const {
    std::vector<std::pair<int, int>> out;
    int prev = 0;
    for (int c : row_cuts) {
        out.emplace_back(prev, c);
        prev = c;
    }
    out.emplace_back(prev, rows);
    return out;
}

std::vector<std::pair<int, int>> Division::col_ranges(int cols) const {
    std::vector<std::pair<int, int>> out;
    int prev = 0;
    for (int c : col_cuts) {
        out.emplace_back(prev, c);
        prev = c;
    }
    out.emplace_back(prev, cols);
    return out;
}

void Division::validate(int rows, int cols) const {
    auto check = [](const std::vector<int>& cuts, int size, const char* what) {
        int prev = 0;
        for (int c : cuts) {
            if (c <= prev || c >= size)
                throw input_error(std::string("Division: bad ") + what + " cut " +
                                  std::to_string(c));
            prev = c;
        }
    };
    check(row_cuts, rows, "row");
    check(col_cuts, cols, "column");
}

const char* matrix_class_name(MatrixClassKind s) {
    switch (s) {
        case MatrixClassKind::eq: return "eq";
        case MatrixClassKind::neq: return "neq";
        case MatrixClassKind::leq_rows: return "leR";
        case MatrixClassKind::geq_rows: return "geR";
        case MatrixClassKind::leq_cols: return "leC";
        case MatrixClassKind::geq_cols: return "geC";
    }
    return "?";
}

Matrix adjacency_matrix(const Digraph& g, const std::vector<int>& order) {
    return adjacency_submatrix(g, order, order);
}

Matrix adjacency_submatrix(const Digraph& g, const std::vector<int>& row_vertices,
                           const std::vector<int>& col_vertices) {
    Matrix m(int(row_vertices.size()), int(col_vertices.size()), 2);
    for (size_t r = 0; r < row_vertices.size(); ++r)
        for (size_t c = 0; c < col_vertices.size(); ++c)
            if (g.has_arc(row_vertices[r], col_vertices[c])) m.set(int(r), int(c), 1);
    return m;
}

bool is_k_grid(const Matrix& m, const Division& d, int k) {
    d.validate(m.rows(), m.cols());
    if (d.row_parts() != k || d.col_parts() != k)
        throw input_error("is_k_grid: division is not a " + std::to_string(k) + "-division");
    auto rr = d.row_ranges(m.rows());
    auto cc = d.col_ranges(m.cols());
    for (auto [r0, r1] : rr)
        for (auto [c0, c1] : cc) {
            bool has_one = false;
            for (int r = r0; r < r1 && !has_one; ++r)
                for (int c = c0; c < c1 && !has_one; ++c)
                    if (m(r, c) != 0) has_one = true;
            if (!has_one) return false;
        }
    return true;
}

std::optional<Division> find_k_grid(const Matrix& m, int k, int cap) {
    if (k < 1) throw input_error("find_k_grid: k must be >= 1");
    if (m.rows() + m.cols() > 2 * cap)
        throw size_limit_error("find_k_grid: matrix too large for exhaustive search");
    if (m.rows() < k || m.cols() < k) return std::nullopt;
    // row cuts outer, greedy column strips inner: close each strip as
    // soon as it has a nonzero in every row part
    std::vector<int> rcuts(k - 1);
    for (int i = 0; i < k - 1; ++i) rcuts[i] = i + 1;
    auto next = [](std::vector<int>& cuts, int size) {
        int p = int(cuts.size());
        for (int i = p - 1; i >= 0; --i) {
            if (cuts[i] < size - (p - i)) {
                ++cuts[i];
                for (int j = i + 1; j < p; ++j) cuts[j] = cuts[j - 1] + 1;
                return true;
            }
        }
        return false;
    };
    do {
        std::vector<int> part_of_row(m.rows());
        {
            int part = 0;
            for (int r = 0; r < m.rows(); ++r) {
                while (part < k - 1 && r >= rcuts[part]) ++part;
                part_of_row[r] = part;
            }
        }
        std::vector<int> ccuts;
        std::vector<char> seen(k, 0);
        int covered = 0;
        for (int c = 0; c < m.cols(); ++c) {
            for (int r = 0; r < m.rows(); ++r)
                if (m(r, c) && !seen[part_of_row[r]]) {
                    seen[part_of_row[r]] = 1;
                    ++covered;
                }
            if (covered == k && int(ccuts.size()) < k - 1) {
                ccuts.push_back(c + 1);
                std::fill(seen.begin(), seen.end(), 0);
                covered = 0;
            }
        }
        if (int(ccuts.size()) == k - 1 && covered == k) {
            Division d;
            d.row_cuts = rcuts;
            d.col_cuts = ccuts;
            if (!is_k_grid(m, d, k)) throw verification_error("find_k_grid: bad witness");
            return d;
        }
    } while (k >= 2 && next(rcuts, m.rows()));
    return std::nullopt;
}

std::pair<int, int> diversity(const Matrix& m) {
    return {distinct_rows_in_cell(m, 0, m.rows(), 0, m.cols()),
            distinct_cols_in_cell(m, 0, m.rows(), 0, m.cols())};
}

int distinct_rows_in_cell(const Matrix& m, int r0, int r1, int c0, int c1) {
    std::set<std::string> seen;
    for (int r = r0; r < r1; ++r) {
        std::string key(size_t(c1 - c0), 0);
        for (int c = c0; c < c1; ++c) key[c - c0] = char(m(r, c));
        seen.insert(std::move(key));
    }
    return int(seen.size());
}

int distinct_cols_in_cell(const Matrix& m, int r0, int r1, int c0, int c1) {
    std::set<std::string> seen;
    for (int c = c0; c < c1; ++c) {
        std::string key(size_t(r1 - r0), 0);
        for (int r = r0; r < r1; ++r) key[r - r0] = char(m(r, c));
        seen.insert(std::move(key));
    }
    return int(seen.size());
}

bool is_rank_division(const Matrix& m, const Division& d, int k) {
    d.validate(m.rows(), m.cols());
    if (d.row_parts() != k || d.col_parts() != k) return false;
    for (auto [r0, r1] : d.row_ranges(m.rows()))
        for (auto [c0, c1] : d.col_ranges(m.cols())) {
            if (distinct_rows_in_cell(m, r0, r1, c0, c1) < k) return false;
            if (distinct_cols_in_cell(m, r0, r1, c0, c1) < k) return false;
        }
    return true;
}

namespace {

// Enumerate strictly increasing cut vectors of length parts-1 in [1, size).
bool next_cuts(std::vector<int>& cuts, int size) {
    int p = int(cuts.size());
    for (int i = p - 1; i >= 0; --i) {
        if (cuts[i] < size - (p - i)) {
            ++cuts[i];
            for (int j = i + 1; j < p; ++j) cuts[j] = cuts[j - 1] + 1;
            return true;
        }
    }
    return false;
}

std::vector<int> first_cuts(int parts) {
    std::vector<int> cuts(parts - 1);
    for (int i = 0; i < parts - 1; ++i) cuts[i] = i + 1;
    return cuts;
}

// Per-(row interval, col interval) diversity counts capped at k, so the
// division scan is table lookups only.
struct DiversityTables {
    int rows, cols, k;
    std::vector<std::uint8_t> row_div; // [ri][ci]
    std::vector<std::uint8_t> col_div;

    static int iv_index(int a, int b, int size) { return a * (size + 1) + b; }

    DiversityTables(const Matrix& m, int kk) : rows(m.rows()), cols(m.cols()), k(kk) {
        int nri = (rows + 1) * (rows + 1), nci = (cols + 1) * (cols + 1);
        row_div.assign(size_t(nri) * nci, 0);
        col_div.assign(size_t(nri) * nci, 0);
        for (int r0 = 0; r0 < rows; ++r0)
            for (int r1 = r0 + 1; r1 <= rows; ++r1)
                for (int c0 = 0; c0 < cols; ++c0)
                    for (int c1 = c0 + 1; c1 <= cols; ++c1) {
                        size_t idx = size_t(iv_index(r0, r1, rows)) * nci + iv_index(c0, c1, cols);
                        row_div[idx] = std::uint8_t(
                            std::min(k, distinct_rows_in_cell(m, r0, r1, c0, c1)));
                        col_div[idx] = std::uint8_t(
                            std::min(k, distinct_cols_in_cell(m, r0, r1, c0, c1)));
                    }
    }

    bool cell_diverse(int r0, int r1, int c0, int c1) const {
        int nci = (cols + 1) * (cols + 1);
        size_t idx = size_t(iv_index(r0, r1, rows)) * nci + iv_index(c0, c1, cols);
        return row_div[idx] >= k && col_div[idx] >= k;
    }
};

} // namespace

RankDivisionResult find_rank_division(const Matrix& m, int k, int exact_cap, int exact_k_cap,
                                      std::uint64_t heuristic_seed) {
    RankDivisionResult res;
    if (k < 1) throw input_error("find_rank_division: k must be >= 1");
    if (m.rows() < k || m.cols() < k) {
        res.status = RankDivisionResult::Status::not_found;
        return res;
    }
    if (k == 1) {
        // Any nonempty matrix is 1-diverse.
        res.status = RankDivisionResult::Status::found;
        res.division = Division{};
        return res;
    }
    bool exact = (m.rows() + m.cols() <= exact_cap) && k <= exact_k_cap;
    res.exact = exact;
    if (exact) {
        DiversityTables tables(m, k);
        std::vector<int> rcuts = first_cuts(k);
        do {
            std::vector<int> ccuts = first_cuts(k);
            Division d;
            d.row_cuts = rcuts;
            do {
                d.col_cuts = ccuts;
                bool ok = true;
                auto rr = d.row_ranges(m.rows());
                auto cc = d.col_ranges(m.cols());
                for (int i = 0; i < k && ok; ++i)
                    for (int j = 0; j < k && ok; ++j)
                        ok = tables.cell_diverse(rr[i].first, rr[i].second, cc[j].first,
                                                 cc[j].second);
                if (ok) {
                    res.status = RankDivisionResult::Status::found;
                    res.division = d;
                    return res;
                }
            } while (next_cuts(ccuts, m.cols()));
        } while (next_cuts(rcuts, m.rows()));
        res.status = RankDivisionResult::Status::not_found;
        return res;
    }
    // Heuristic: equispaced cuts, then seeded random cut choices.
    std::mt19937_64 rng(heuristic_seed);
    auto try_division = [&](const Division& d) {
        if (is_rank_division(m, d, k)) {
            res.status = RankDivisionResult::Status::found;
            res.division = d;
            return true;
        }
        return false;
    };
    Division eq;
    for (int i = 1; i < k; ++i) {
        eq.row_cuts.push_back(i * m.rows() / k);
        eq.col_cuts.push_back(i * m.cols() / k);
    }
    bool eq_valid = true;
    for (int i = 1; i < int(eq.row_cuts.size()); ++i)
        if (eq.row_cuts[i] <= eq.row_cuts[i - 1]) eq_valid = false;
    for (int i = 1; i < int(eq.col_cuts.size()); ++i)
        if (eq.col_cuts[i] <= eq.col_cuts[i - 1]) eq_valid = false;
    if (eq_valid && !eq.row_cuts.empty() && eq.row_cuts.front() >= 1 &&
        !eq.col_cuts.empty() && eq.col_cuts.front() >= 1) {
        if (try_division(eq)) return res;
    }
    auto random_cuts = [&](int size) {
        std::set<int> s;
        while (int(s.size()) < k - 1) s.insert(1 + int(rng() % (size - 1)));
        return std::vector<int>(s.begin(), s.end());
    };
    for (int attempt = 0; attempt < 200; ++attempt) {
        Division d;
        d.row_cuts = random_cuts(m.rows());
        d.col_cuts = random_cuts(m.cols());
        if (try_division(d)) return res;
    }
    res.status = RankDivisionResult::Status::unknown;
    return res;
}

Matrix build_M(MatrixClassKind s, const Permutation& sigma) {
    int n = sigma.size();
    Permutation inv = sigma.inverse();
    Matrix m(n, n, 2);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            bool one = false;
            switch (s) {
                case MatrixClassKind::eq: one = (j == sigma(i)); break;
                case MatrixClassKind::neq: one = (j != sigma(i)); break;
                case MatrixClassKind::leq_rows: one = (j <= sigma(i)); break;
                case MatrixClassKind::geq_rows: one = (j >= sigma(i)); break;
                case MatrixClassKind::leq_cols: one = (i <= inv(j)); break;
                case MatrixClassKind::geq_cols: one = (i >= inv(j)); break;
            }
            if (one) m.set(i, j, 1);
        }
    return m;
}

Matrix apply_transform(const Matrix& m, const TransformStep& t) {
    switch (t.op) {
        case MatrixTransform::reverse_rows: {
            Matrix out(m.rows(), m.cols(), m.alphabet());
            for (int r = 0; r < m.rows(); ++r)
                for (int c = 0; c < m.cols(); ++c) out.set(r, c, m(m.rows() - 1 - r, c));
            return out;
        }
        case MatrixTransform::reverse_cols: {
            Matrix out(m.rows(), m.cols(), m.alphabet());
            for (int r = 0; r < m.rows(); ++r)
                for (int c = 0; c < m.cols(); ++c) out.set(r, c, m(r, m.cols() - 1 - c));
            return out;
        }
        case MatrixTransform::transpose_complement: {
            Matrix out(m.cols(), m.rows(), 2);
            for (int r = 0; r < m.cols(); ++r)
                for (int c = 0; c < m.rows(); ++c) out.set(r, c, m(c, r) ? 0 : 1);
            return out;
        }
        case MatrixTransform::drop_row_col: {
            Matrix out(m.rows() - 1, m.cols() - 1, m.alphabet());
            for (int r = 0; r < out.rows(); ++r)
                for (int c = 0; c < out.cols(); ++c)
                    out.set(r, c, m(r < t.row ? r : r + 1, c < t.col ? c : c + 1));
            return out;
        }
    }
    throw input_error("apply_transform: unknown op");
}

Matrix replay_transforms(Matrix m, const std::vector<TransformStep>& log) {
    for (const auto& t : log) m = apply_transform(m, t);
    return m;
}

namespace {

// Derive the permutation from a matrix known to have the given shape;
// returns nullopt when the matrix does not match the shape exactly.
std::optional<Permutation> derive_sigma(const Matrix& m, MatrixClassKind s) {
    if (m.rows() != m.cols()) return std::nullopt;
    int n = m.rows();
    std::vector<int> img(n, -1);
    for (int i = 0; i < n; ++i) {
        int lo = -1, hi = -1, ones = 0;
        for (int j = 0; j < n; ++j)
            if (m(i, j)) {
                if (lo < 0) lo = j;
                hi = j;
                ++ones;
            }
        switch (s) {
            case MatrixClassKind::eq:
                if (ones != 1) return std::nullopt;
                img[i] = lo;
                break;
            case MatrixClassKind::leq_rows: // ones exactly 0..hi
                if (ones == 0 || lo != 0 || ones != hi + 1) return std::nullopt;
                img[i] = hi;
                break;
            case MatrixClassKind::geq_rows: // ones exactly lo..n-1
                if (ones == 0 || hi != n - 1 || ones != n - lo) return std::nullopt;
                img[i] = lo;
                break;
            default:
                return std::nullopt;
        }
    }
    std::vector<bool> seen(n, false);
    for (int v : img) {
        if (v < 0 || seen[v]) return std::nullopt;
        seen[v] = true;
    }
    return Permutation(img);
}

} // namespace

NormalizedClass normalize_matrix_class(MatrixClassKind s, const Permutation& sigma,
                                       bool reverse_row_order, bool reverse_col_order) {
    NormalizedClass out;
    Matrix cur = build_M(s, sigma);
    MatrixClassKind cur_s = s;
    if (reverse_row_order) {
        out.log.push_back({MatrixTransform::reverse_rows});
        cur = apply_transform(cur, out.log.back());
        switch (cur_s) {
            case MatrixClassKind::leq_cols: cur_s = MatrixClassKind::geq_cols; break;
            case MatrixClassKind::geq_cols: cur_s = MatrixClassKind::leq_cols; break;
            default: break; // row reversal keeps the other four kinds
        }
    }
    if (reverse_col_order) {
        out.log.push_back({MatrixTransform::reverse_cols});
        cur = apply_transform(cur, out.log.back());
        switch (cur_s) {
            case MatrixClassKind::leq_rows: cur_s = MatrixClassKind::geq_rows; break;
            case MatrixClassKind::geq_rows: cur_s = MatrixClassKind::leq_rows; break;
            default: break;
        }
    }
    MatrixClassKind target;
    switch (cur_s) {
        case MatrixClassKind::eq:
        case MatrixClassKind::leq_rows:
        case MatrixClassKind::geq_rows: target = cur_s; break;
        case MatrixClassKind::neq: target = MatrixClassKind::eq; break;
        case MatrixClassKind::leq_cols: target = MatrixClassKind::geq_rows; break;
        case MatrixClassKind::geq_cols: target = MatrixClassKind::leq_rows; break;
        default: throw input_error("normalize_matrix_class: bad kind");
    }
    if (cur_s == MatrixClassKind::neq || cur_s == MatrixClassKind::leq_cols ||
        cur_s == MatrixClassKind::geq_cols) {
        out.log.push_back({MatrixTransform::transpose_complement});
        cur = apply_transform(cur, out.log.back());
        if (cur_s != MatrixClassKind::neq) {
            // Strict propagation: exactly one all-zero row and one
            // all-zero column remain; locate them by search.
            int zr = -1, zc = -1;
            for (int r = 0; r < cur.rows(); ++r) {
                bool all0 = true;
                for (int c = 0; c < cur.cols() && all0; ++c) all0 = !cur(r, c);
                if (all0) {
                    if (zr >= 0) throw verification_error("normalize: two all-zero rows");
                    zr = r;
                }
            }
            for (int c = 0; c < cur.cols(); ++c) {
                bool all0 = true;
                for (int r = 0; r < cur.rows() && all0; ++r) all0 = !cur(r, c);
                if (all0) {
                    if (zc >= 0) throw verification_error("normalize: two all-zero columns");
                    zc = c;
                }
            }
            if (zr < 0 || zc < 0) throw verification_error("normalize: missing all-zero line");
            out.log.push_back({MatrixTransform::drop_row_col, zr, zc});
            cur = apply_transform(cur, out.log.back());
        }
    }
    auto derived = derive_sigma(cur, target);
    if (!derived)
        throw verification_error("normalize_matrix_class: transformed matrix does not match "
                                 "the target shape");
    out.kind = target;
    out.sigma = *derived;
    if (!(build_M(out.kind, out.sigma) == cur))
        throw verification_error("normalize_matrix_class: replay mismatch");
    return out;
}

Matrix parse_matrix(std::istream& in) {
    std::string line;
    int rows = -1, cols = -1, r = 0;
    Matrix m;
    int alphabet = 2;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        if (rows < 0) {
            std::istringstream ls(line);
            std::string tag;
            if (!(ls >> tag >> rows >> cols) || tag != "m" || rows < 0 || cols < 0)
                throw input_error("matrix line " + std::to_string(lineno) +
                                  ": expected `m <rows> <cols>`");
            m = Matrix(rows, cols, 2);
        } else {
            if (r >= rows) throw input_error("matrix: too many rows");
            if (int(line.size()) != cols)
                throw input_error("matrix line " + std::to_string(lineno) + ": expected " +
                                  std::to_string(cols) + " digits");
            for (int c = 0; c < cols; ++c) {
                if (line[c] < '0' || line[c] > '9')
                    throw input_error("matrix line " + std::to_string(lineno) +
                                      ": entries must be digits");
                int v = line[c] - '0';
                alphabet = std::max(alphabet, v + 1);
                m.set(r, c, std::uint8_t(v));
            }
            ++r;
        }
    }
    if (rows < 0) throw input_error("matrix: missing `m <rows> <cols>` header");
    if (r != rows) throw input_error("matrix: expected " + std::to_string(rows) + " rows");
    Matrix out(rows, cols, alphabet);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) out.set(i, j, m(i, j));
    return out;
}

std::string format_matrix(const Matrix& m) {
    std::string s = "m " + std::to_string(m.rows()) + " " + std::to_string(m.cols()) + "\n";
    for (int r = 0; r < m.rows(); ++r) {
        for (int c = 0; c < m.cols(); ++c) s += char('0' + m(r, c));
        s += '\n';
    }
    return s;
}

} // namespace tw

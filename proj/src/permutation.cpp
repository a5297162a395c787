#include "tw/permutation.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <sstream>

namespace tw {

Permutation::Permutation(std::vector<int> image) : image_(std::move(image)) {
    std::vector<bool> seen(image_.size(), false);
    for (int v : image_) {
        if (v < 0 || v >= int(image_.size()) || seen[v])
            throw input_error("Permutation: image is not a bijection");
        seen[v] = true;
    }
}

Permutation Permutation::identity(int n) {
    std::vector<int> img(n);
    std::iota(img.begin(), img.end(), 0);
    return Permutation(std::move(img));
}

Permutation Permutation::from_one_line_1based(const std::vector<int>& vals) {
    std::vector<int> img(vals.size());
    for (size_t i = 0; i < vals.size(); ++i) img[i] = vals[i] - 1;
    return Permutation(std::move(img));
}

Permutation Permutation::grid_construction(int k) {
    std::vector<int> img(size_t(k) * k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) img[size_t(k) * i + j] = k * j + i;
    return Permutation(std::move(img));
}

Permutation Permutation::reversal(int n) {
    std::vector<int> img(n);
    for (int i = 0; i < n; ++i) img[i] = n - 1 - i;
    return Permutation(std::move(img));
}

Permutation Permutation::inverse() const {
    std::vector<int> img(image_.size());
    for (size_t i = 0; i < image_.size(); ++i) img[image_[i]] = int(i);
    return Permutation(std::move(img));
}

Permutation Permutation::after(const Permutation& f) const {
    std::vector<int> img(image_.size());
    for (size_t i = 0; i < image_.size(); ++i) img[i] = image_[f(int(i))];
    return Permutation(std::move(img));
}

std::string Permutation::to_string_1based() const {
    std::string s;
    for (size_t i = 0; i < image_.size(); ++i) {
        if (i) s += ' ';
        s += std::to_string(image_[i] + 1);
    }
    return s;
}

void PairColoring::set(int x, int y, int c) {
    if (c < 0 || c >= gamma_) throw input_error("PairColoring: color out of alphabet");
    color_[size_t(x) * n_ + y] = c;
}

namespace {

bool pattern_prefix_ok(const Permutation& sigma, const Permutation& tau,
                       const std::vector<int>& chosen, int next) {
    int t = int(chosen.size());
    for (int s = 0; s < t; ++s)
        if (order_type(sigma(chosen[s]), sigma(next)) != order_type(tau(s), tau(t)))
            return false;
    return true;
}

bool pattern_rec(const Permutation& sigma, const Permutation& tau, std::vector<int>& chosen,
                 int from) {
    if (int(chosen.size()) == tau.size()) return true;
    int need = tau.size() - int(chosen.size());
    for (int x = from; x + need <= sigma.size(); ++x) {
        if (!pattern_prefix_ok(sigma, tau, chosen, x)) continue;
        chosen.push_back(x);
        if (pattern_rec(sigma, tau, chosen, x + 1)) return true;
        chosen.pop_back();
    }
    return false;
}

} // namespace

std::optional<std::vector<int>> contains_pattern(const Permutation& sigma,
                                                 const Permutation& tau, int cap) {
    if (tau.size() > sigma.size()) throw input_error("contains_pattern: |tau| > |sigma|");
    if (tau.size() > cap)
        throw size_limit_error("contains_pattern: |tau|=" + std::to_string(tau.size()) +
                               " exceeds cap " + std::to_string(cap));
    std::vector<int> chosen;
    if (pattern_rec(sigma, tau, chosen, 0)) return chosen;
    return std::nullopt;
}

namespace {

// For fixed row parts, decide whether some k column strips give a 1-entry
// in every (row part, strip) cell. Cutting each strip as early as
// possible is optimal, since it leaves a maximal suffix for later strips.
bool column_strips_feasible(const std::vector<int>& row_part_of_col, int k) {
    int n = int(row_part_of_col.size());
    std::vector<int> cnt(k, 0);
    int covered = 0, strips_done = 0;
    for (int c = 0; c < n; ++c) {
        if (++cnt[row_part_of_col[c]] == 1) ++covered;
        if (covered == k && strips_done < k - 1) {
            ++strips_done;
            covered = 0;
            std::fill(cnt.begin(), cnt.end(), 0);
        }
    }
    return strips_done == k - 1 && covered == k;
}

// Enumerate row divisions into k parts, each of size >= k (a smaller part
// cannot put a point in every column strip), pruning via the greedy
// column check.
bool grid_rec(const Permutation& inv, int k, int start_row, int part,
              std::vector<int>& part_of_row) {
    int n = inv.size();
    if (part == k - 1) {
        if (n - start_row < k) return false;
        for (int r = start_row; r < n; ++r) part_of_row[r] = part;
        std::vector<int> col_part(n);
        for (int c = 0; c < n; ++c) col_part[c] = part_of_row[inv(c)];
        return column_strips_feasible(col_part, k);
    }
    int remaining_parts = k - 1 - part;
    for (int size = k; start_row + size + remaining_parts * k <= n; ++size) {
        for (int r = start_row; r < start_row + size; ++r) part_of_row[r] = part;
        if (grid_rec(inv, k, start_row + size, part + 1, part_of_row)) return true;
    }
    return false;
}

} // namespace

int max_grid(const Permutation& sigma, int cap) {
    int n = sigma.size();
    if (n > cap)
        throw size_limit_error("max_grid: n=" + std::to_string(n) + " exceeds cap " +
                               std::to_string(cap));
    if (n == 0) return 0;
    Permutation inv = sigma.inverse();
    int k = 1;
    while ((k + 1) * (k + 1) <= n) {
        std::vector<int> part_of_row(n);
        if (!grid_rec(inv, k + 1, 0, 0, part_of_row)) break;
        ++k;
    }
    return k;
}

namespace {

bool factoring_ok(const BiOrder& b, const PairColoring& lambda, const std::vector<int>& xs,
                  FactoringTable& out) {
    for (auto& row : out.eta) row = {-1, -1, -1};
    for (int x : xs)
        for (int y : xs) {
            if (x == y) continue;
            int k1 = order_type(x, y) + 1;
            int k2 = order_type(b.perm(x), b.perm(y)) + 1;
            int c = lambda(x, y);
            if (out.eta[k1][k2] == -1)
                out.eta[k1][k2] = c;
            else if (out.eta[k1][k2] != c)
                return false;
        }
    return true;
}

bool uniform_rec(const BiOrder& b, const PairColoring& lambda, const Permutation& sigma,
                 std::vector<int>& chosen, int from, UniformPatternWitness& out) {
    if (int(chosen.size()) == sigma.size()) {
        FactoringTable table;
        if (!factoring_ok(b, lambda, chosen, table)) return false;
        out.indices = chosen;
        out.table = table;
        return true;
    }
    int need = sigma.size() - int(chosen.size());
    for (int x = from; x + need <= b.n(); ++x) {
        bool ok = true;
        int t = int(chosen.size());
        for (int s = 0; s < t && ok; ++s)
            ok = order_type(b.perm(chosen[s]), b.perm(x)) == order_type(sigma(s), sigma(t));
        if (!ok) continue;
        chosen.push_back(x);
        if (uniform_rec(b, lambda, sigma, chosen, x + 1, out)) return true;
        chosen.pop_back();
    }
    return false;
}

} // namespace

std::optional<UniformPatternWitness> find_pattern_with_uniform_coloring(
    const BiOrder& b, const PairColoring& lambda, const Permutation& sigma, int cap) {
    if (sigma.size() > cap)
        throw size_limit_error("find_pattern_with_uniform_coloring: |sigma|=" +
                               std::to_string(sigma.size()) + " exceeds cap " +
                               std::to_string(cap));
    if (sigma.size() > b.n()) return std::nullopt;
    if (lambda.n() != b.n())
        throw input_error("find_pattern_with_uniform_coloring: coloring domain mismatch");
    UniformPatternWitness w;
    std::vector<int> chosen;
    if (uniform_rec(b, lambda, sigma, chosen, 0, w)) return w;
    return std::nullopt;
}

Permutation parse_permutation(std::istream& in) {
    std::string line;
    int n = -1;
    std::vector<int> vals;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        if (n < 0) {
            std::string tag;
            if (!(ls >> tag >> n) || tag != "s" || n < 0)
                throw input_error("permutation line " + std::to_string(lineno) +
                                  ": expected `s <n>`");
        } else {
            int v;
            while (ls >> v) vals.push_back(v);
        }
    }
    if (n < 0) throw input_error("permutation: missing `s <n>` header");
    if (int(vals.size()) != n)
        throw input_error("permutation: expected " + std::to_string(n) + " values, found " +
                          std::to_string(vals.size()));
    return Permutation::from_one_line_1based(vals);
}

std::string format_permutation(const Permutation& p) {
    return "s " + std::to_string(p.size()) + "\n" + p.to_string_1based() + "\n";
}

} // namespace tw

#include "tw/bst.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <random>
#include <sstream>

namespace tw {

namespace {

BstTree::Arity arity_for(const Digraph& g) {
    return g.kind() == GraphKind::tournament ? BstTree::Arity::binary : BstTree::Arity::ternary;
}

} // namespace

BstTree bst_build_insertion(const Digraph& g, const std::vector<int>& seq) {
    if (int(seq.size()) != g.n()) throw input_error("bst_build: seq is not a permutation of V");
    std::vector<bool> seen(g.n(), false);
    for (int v : seq) {
        if (v < 0 || v >= g.n() || seen[v])
            throw input_error("bst_build: seq is not a permutation of V");
        seen[v] = true;
    }
    BstTree t(g.n(), arity_for(g));
    if (seq.empty()) return t;
    t.root = seq[0];
    for (size_t i = 1; i < seq.size(); ++i) {
        int v = seq[i];
        int cur = t.root;
        for (;;) {
            int* slot;
            if (g.has_arc(v, cur))
                slot = &t.left[cur];
            else if (g.has_arc(cur, v))
                slot = &t.right[cur];
            else {
                if (t.arity != BstTree::Arity::ternary)
                    throw input_error("bst_build: non-adjacent pair in a binary tree build");
                slot = &t.center[cur];
            }
            if (*slot < 0) {
                *slot = v;
                break;
            }
            cur = *slot;
        }
    }
    return t;
}

namespace {

struct PivotBuilder {
    const Digraph& g;
    BstTree tree;
    std::mt19937_64 rng;
    bool median;

    PivotBuilder(const Digraph& gg, std::uint64_t seed, bool med)
        : g(gg), tree(gg.n(), arity_for(gg)), rng(seed), median(med) {}

    int pick_pivot(const std::vector<int>& set) {
        if (!median) return set[rng() % set.size()];
        Bitset mask = Bitset::from_vector(g.n(), set);
        int best = set[0], best_score = int(set.size()) + 2;
        for (int v : set) {
            int deg = (g.out_neighbors(v) & mask).count();
            int score = std::abs(2 * deg - (int(set.size()) - 1));
            if (score < best_score || (score == best_score && v < best)) {
                best = v;
                best_score = score;
            }
        }
        return best;
    }

    int build(std::vector<int> set) {
        if (set.empty()) return -1;
        int pivot = pick_pivot(set);
        std::vector<int> in_side, mid, out_side;
        for (int v : set) {
            if (v == pivot) continue;
            if (g.has_arc(v, pivot))
                in_side.push_back(v);
            else if (g.has_arc(pivot, v))
                out_side.push_back(v);
            else
                mid.push_back(v);
        }
        if (!mid.empty() && tree.arity != BstTree::Arity::ternary)
            throw input_error("bst_build: non-adjacent pair in a binary tree build");
        tree.left[pivot] = build(std::move(in_side));
        if (tree.arity == BstTree::Arity::ternary) tree.center[pivot] = build(std::move(mid));
        tree.right[pivot] = build(std::move(out_side));
        return pivot;
    }
};

} // namespace

BstTree bst_build_random(const Digraph& g, std::uint64_t seed) {
    PivotBuilder b(g, seed, false);
    std::vector<int> all(g.n());
    std::iota(all.begin(), all.end(), 0);
    b.tree.root = b.build(std::move(all));
    return std::move(b.tree);
}

BstTree bst_build_median(const Digraph& g) {
    PivotBuilder b(g, 0, true);
    std::vector<int> all(g.n());
    std::iota(all.begin(), all.end(), 0);
    b.tree.root = b.build(std::move(all));
    return std::move(b.tree);
}

BstTree bst_build(const Digraph& g, BstStrategy strategy, std::uint64_t seed,
                  const std::vector<int>* insertion_seq) {
    switch (strategy) {
        case BstStrategy::insertion: {
            if (insertion_seq) return bst_build_insertion(g, *insertion_seq);
            std::vector<int> seq(g.n());
            std::iota(seq.begin(), seq.end(), 0);
            return bst_build_insertion(g, seq);
        }
        case BstStrategy::random_pivot: return bst_build_random(g, seed);
        case BstStrategy::median_pivot: return bst_build_median(g);
    }
    throw input_error("bst_build: unknown strategy");
}

namespace {

// Iterative post-order: children pushed before their parent is finished.
template <class F>
void post_order(const BstTree& t, F&& visit) {
    if (t.root < 0) return;
    std::vector<std::pair<int, int>> stack; // (node, state)
    stack.emplace_back(t.root, 0);
    while (!stack.empty()) {
        auto& [v, state] = stack.back();
        int child = -1;
        if (state == 0) child = t.left[v];
        else if (state == 1) child = t.center_child(v);
        else if (state == 2) child = t.right[v];
        else {
            visit(v);
            stack.pop_back();
            continue;
        }
        ++state;
        if (child >= 0) stack.emplace_back(child, 0);
    }
}

} // namespace

std::optional<BstViolation> bst_validate(const Digraph& g, const BstTree& t) {
    int n = g.n();
    if (t.n() != n) return BstViolation{-1, -1, "tree size differs from graph"};
    if (n == 0) return std::nullopt;
    if (t.root < 0 || t.root >= n) return BstViolation{t.root, -1, "bad root"};
    // Shape: every node reachable exactly once.
    std::vector<int> seen(n, 0);
    std::vector<int> stack = {t.root};
    int visited = 0;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        if (v < 0 || v >= n) return BstViolation{v, -1, "child id out of range"};
        if (seen[v]++) return BstViolation{v, -1, "node reached twice"};
        ++visited;
        for (int c : {t.left[v], t.center_child(v), t.right[v]})
            if (c >= 0) stack.push_back(c);
    }
    if (visited != n) return BstViolation{-1, -1, "unreachable nodes"};
    // Subtree masks bottom-up, then the neighbourhood constraints.
    std::vector<Bitset> sub(n);
    post_order(t, [&](int v) {
        Bitset m(n);
        m.set(v);
        for (int c : {t.left[v], t.center_child(v), t.right[v]})
            if (c >= 0) m |= sub[c];
        sub[v] = std::move(m);
    });
    // Report the first violation in preorder.
    std::vector<int> pre;
    pre.reserve(n);
    stack = {t.root};
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        pre.push_back(v);
        // push right first so left is visited first
        for (int c : {t.right[v], t.center_child(v), t.left[v]})
            if (c >= 0) stack.push_back(c);
    }
    for (int x : pre) {
        auto first_bad = [&](int child, int which) -> std::optional<BstViolation> {
            if (child < 0) return std::nullopt;
            std::optional<int> bad;
            sub[child].for_each([&](int y) {
                if (bad) return;
                bool ok = which == 0   ? g.has_arc(y, x)
                          : which == 2 ? g.has_arc(x, y)
                                       : !g.adjacent(x, y);
                if (!ok) bad = y;
            });
            if (!bad) return std::nullopt;
            const char* why = which == 0   ? "left descendant is not an in-neighbour"
                              : which == 2 ? "right descendant is not an out-neighbour"
                                           : "center descendant is adjacent";
            return BstViolation{x, *bad, why};
        };
        if (auto v = first_bad(t.left[x], 0)) return v;
        if (auto v = first_bad(t.center_child(x), 1)) return v;
        if (auto v = first_bad(t.right[x], 2)) return v;
    }
    return std::nullopt;
}

VertexOrder left_to_right(const BstTree& t) {
    std::vector<int> seq;
    seq.reserve(t.n());
    if (t.root >= 0) {
        std::vector<std::pair<int, int>> stack;
        stack.emplace_back(t.root, 0);
        while (!stack.empty()) {
            auto& [v, state] = stack.back();
            if (state == 0) {
                ++state;
                if (t.left[v] >= 0) stack.emplace_back(t.left[v], 0);
            } else if (state == 1) {
                ++state;
                seq.push_back(v);
                if (t.center_child(v) >= 0) stack.emplace_back(t.center_child(v), 0);
            } else {
                int r = t.right[v];
                stack.pop_back();
                if (r >= 0) stack.emplace_back(r, 0);
            }
        }
    }
    return VertexOrder(std::move(seq));
}

std::vector<int> branch(const BstTree& t, int leaf) {
    if (leaf < 0 || leaf >= t.n()) throw input_error("branch: no such node");
    if (t.left[leaf] >= 0 || t.right[leaf] >= 0 || t.center_child(leaf) >= 0)
        throw input_error("branch: node " + std::to_string(leaf + 1) + " is not a leaf");
    std::vector<int> parent(t.n(), -1);
    for (int v = 0; v < t.n(); ++v)
        for (int c : {t.left[v], t.center_child(v), t.right[v]})
            if (c >= 0) parent[c] = v;
    std::vector<int> path;
    for (int v = leaf; v >= 0; v = parent[v]) path.push_back(v);
    std::reverse(path.begin(), path.end());
    if (path.front() != t.root) throw input_error("branch: leaf not attached to the root");
    return path;
}

BranchChainSplit branch_chain_split(const Digraph& g, const BstTree& t, int leaf) {
    std::vector<int> path = branch(t, leaf);
    BranchChainSplit out;
    for (size_t i = 0; i < path.size(); ++i) {
        bool center_step =
            i + 1 < path.size() && t.center_child(path[i]) == path[i + 1];
        if (center_step)
            out.independent_part.push_back(path[i]);
        else
            out.chain_part.push_back(path[i]);
    }
    for (size_t i = 0; i < out.independent_part.size(); ++i)
        for (size_t j = i + 1; j < out.independent_part.size(); ++j)
            if (g.adjacent(out.independent_part[i], out.independent_part[j]))
                throw verification_error("branch_chain_split: center-branching nodes adjacent");
    return out;
}

BstTree parse_bst(std::istream& in) {
    std::string line;
    int n = -1, lineno = 0, rows = 0;
    BstTree t;
    bool have_root = false;
    std::vector<bool> seen;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "t") {
            std::string ar;
            if (!(ls >> n >> ar) || n < 0 || (ar != "binary" && ar != "ternary"))
                throw input_error("bst line " + std::to_string(lineno) +
                                  ": expected `t <n> <binary|ternary>`");
            t = BstTree(n, ar == "binary" ? BstTree::Arity::binary : BstTree::Arity::ternary);
            seen.assign(n, false);
        } else if (tag == "r") {
            int r;
            if (n < 0 || !(ls >> r) || r < 1 || r > n)
                throw input_error("bst line " + std::to_string(lineno) + ": bad root");
            t.root = r - 1;
            have_root = true;
        } else if (tag == "v") {
            if (n < 0) throw input_error("bst: `v` line before header");
            int node, l, c = 0, r;
            bool ok;
            if (t.arity == BstTree::Arity::ternary)
                ok = bool(ls >> node >> l >> c >> r);
            else
                ok = bool(ls >> node >> l >> r);
            if (!ok || node < 1 || node > n)
                throw input_error("bst line " + std::to_string(lineno) + ": bad node line");
            if (seen[node - 1])
                throw input_error("bst line " + std::to_string(lineno) + ": duplicate node");
            seen[node - 1] = true;
            auto conv = [&](int x) {
                if (x < 0 || x > n)
                    throw input_error("bst line " + std::to_string(lineno) + ": bad child id");
                return x - 1; // 0 becomes -1 = absent
            };
            t.left[node - 1] = conv(l);
            t.right[node - 1] = conv(r);
            if (t.arity == BstTree::Arity::ternary) t.center[node - 1] = conv(c);
            ++rows;
        } else {
            throw input_error("bst line " + std::to_string(lineno) + ": unknown tag");
        }
    }
    if (n < 0) throw input_error("bst: missing header");
    if (!have_root && n > 0) throw input_error("bst: missing root line");
    if (rows != n) throw input_error("bst: expected " + std::to_string(n) + " node lines");
    return t;
}

std::string format_bst(const BstTree& t) {
    bool ternary = t.arity == BstTree::Arity::ternary;
    std::string s = "t " + std::to_string(t.n()) + (ternary ? " ternary\n" : " binary\n");
    s += "r " + std::to_string(t.root + 1) + "\n";
    for (int v = 0; v < t.n(); ++v) {
        s += "v " + std::to_string(v + 1) + " " + std::to_string(t.left[v] + 1);
        if (ternary) s += " " + std::to_string(t.center[v] + 1);
        s += " " + std::to_string(t.right[v] + 1) + "\n";
    }
    return s;
}

} // namespace tw

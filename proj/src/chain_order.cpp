#include "tw/chain_order.hpp"

#include <algorithm>
#include <climits>
#include <istream>
#include <numeric>
#include <sstream>

namespace tw {

ChainQuasiOrder chain_quasi_order(const Digraph& g, const std::vector<int>& chain, char o) {
    if (o != '+' && o != '-') throw input_error("chain_quasi_order: orientation must be + or -");
    int n = g.n();
    for (size_t i = 0; i < chain.size(); ++i)
        for (size_t j = i + 1; j < chain.size(); ++j) {
            int u = chain[i], v = chain[j];
            if (!g.adjacent(u, v))
                throw input_error("chain_quasi_order: chain elements non-adjacent");
            bool forward = g.has_arc(u, v);
            if (forward != (o == '+'))
                throw input_error("chain_quasi_order: enumeration does not match orientation");
        }
    ChainQuasiOrder q;
    q.chain = chain;
    q.orientation = o;
    q.class_rank.assign(n, -1);
    Bitset remaining(n);
    remaining.set_all();
    for (int c : chain) remaining.reset(c);
    // B_i = vertices of A_{i-1} outside N^o(c_i); A_i = the rest.
    for (size_t i = 0; i < chain.size(); ++i) {
        const Bitset& fwd =
            o == '+' ? g.out_neighbors(chain[i]) : g.in_neighbors(chain[i]);
        Bitset b = remaining;
        b -= fwd;
        remaining &= fwd;
        q.classes.push_back(std::move(b));
        Bitset self(n);
        self.set(chain[i]);
        q.classes.push_back(std::move(self));
    }
    q.classes.push_back(std::move(remaining));
    for (size_t r = 0; r < q.classes.size(); ++r)
        q.classes[r].for_each([&](int v) { q.class_rank[v] = int(r); });
    return q;
}

namespace {

std::pair<int, int> rank_span(const ChainQuasiOrder& q, const std::vector<int>& xs) {
    int lo = INT_MAX, hi = -1;
    for (int v : xs) {
        lo = std::min(lo, q.rank(v));
        hi = std::max(hi, q.rank(v));
    }
    return {lo, hi};
}

} // namespace

bool overlapping(const ChainQuasiOrder& q, const std::vector<int>& x, const std::vector<int>& y) {
    for (int v : x)
        for (int w : y)
            if (v == w) throw input_error("overlapping: sets are not disjoint");
    auto [xlo, xhi] = rank_span(q, x);
    auto [ylo, yhi] = rank_span(q, y);
    return xlo <= yhi && ylo <= xhi;
}

bool overlapping(const ChainQuasiOrder& q, const Bitset& x, const Bitset& y) {
    if (x.intersects(y)) throw input_error("overlapping: sets are not disjoint");
    return overlapping(q, x.to_vector(), y.to_vector());
}

std::uint64_t budget(int k) {
    if (k < 0) throw input_error("budget: negative k");
    if (k > 30) throw size_limit_error("budget: k too large for 64-bit arithmetic");
    std::uint64_t f = 1;
    for (int i = 0; i < k; ++i) f = 4 * f + 9;
    return f;
}

namespace {

struct SortedFamily {
    // Parts sorted by left endpoint position; positions are contiguous
    // runs since each part is an interval of the order.
    std::vector<int> order_index;   // sorted part id -> input part id
    std::vector<int> start_pos, end_pos;

    int size() const { return int(order_index.size()); }

    // Parts fully inside the position interval [lo, hi]: a contiguous id
    // range, empty encoded as (1, 0).
    std::pair<int, int> parts_inside(int lo, int hi) const {
        if (lo > hi) return {1, 0};
        int first = int(std::lower_bound(start_pos.begin(), start_pos.end(), lo) -
                        start_pos.begin());
        int last = int(std::upper_bound(end_pos.begin(), end_pos.end(), hi) -
                       end_pos.begin()) - 1;
        return {first, last};
    }
};

SortedFamily sort_and_check_family(const std::vector<std::vector<int>>& family,
                                   const VertexOrder& order) {
    int n = int(order.seq.size());
    std::vector<std::pair<int, int>> spans(family.size());
    for (size_t p = 0; p < family.size(); ++p) {
        if (family[p].empty()) throw input_error("extract: empty part in family");
        int lo = INT_MAX, hi = -1;
        for (int v : family[p]) {
            if (v < 0 || v >= n) throw input_error("extract: part vertex out of range");
            lo = std::min(lo, order.rank[v]);
            hi = std::max(hi, order.rank[v]);
        }
        // A span as long as the part means distinct, contiguous positions.
        if (hi - lo + 1 != int(family[p].size()))
            throw input_error("extract: part " + std::to_string(p + 1) +
                              " is not an interval of the BST order");
        spans[p] = {lo, hi};
    }
    SortedFamily f;
    f.order_index.resize(family.size());
    std::iota(f.order_index.begin(), f.order_index.end(), 0);
    if (!std::is_sorted(f.order_index.begin(), f.order_index.end(),
                        [&](int a, int b) { return spans[a].first < spans[b].first; }))
        std::sort(f.order_index.begin(), f.order_index.end(),
                  [&](int a, int b) { return spans[a].first < spans[b].first; });
    for (int id : f.order_index) {
        f.start_pos.push_back(spans[id].first);
        f.end_pos.push_back(spans[id].second);
    }
    for (size_t i = 1; i < f.start_pos.size(); ++i)
        if (f.start_pos[i] <= f.end_pos[i - 1])
            throw input_error("extract: parts are not disjoint");
    return f;
}

} // namespace

ExtractionResult extract_nonoverlapping(const Digraph& g, const BstTree& t,
                                        const std::vector<std::vector<int>>& family, int k,
                                        bool enforce_budget) {
    if (k < 0) throw input_error("extract: negative k");
    int n = g.n();
    VertexOrder order = left_to_right(t);
    if (int(order.seq.size()) != n) throw input_error("extract: tree does not cover V");
    SortedFamily parts = sort_and_check_family(family, order);

    bool oriented = g.kind() == GraphKind::oriented;
    if (enforce_budget) {
        int alpha = oriented ? independence_number(g) : 0;
        std::uint64_t need = budget(k + alpha);
        if (std::uint64_t(parts.size()) < need)
            throw budget_underflow_error(
                need, "extract: family has " + std::to_string(parts.size()) +
                          " parts, budget(" + std::to_string(k + alpha) + ") = " +
                          std::to_string(need) + " required");
    }

    ExtractionResult res;
    if (n == 0) {
        res.order = chain_quasi_order(g, {}, '+');
        return res;
    }

    // Every subtree occupies a contiguous interval of the order, so each
    // child's span follows from its parent's span during the descent: the
    // only unknown is the center/right boundary, recovered by following
    // left links to the right subtree's first node. The number of parts
    // meeting a span [a, b] is a contiguous run of sorted part ids.
    auto weight_of_span = [&](int a, int b) {
        if (a > b) return 0;
        auto [first, last] = std::pair<int, int>{
            int(std::lower_bound(parts.end_pos.begin(), parts.end_pos.end(), a) -
                parts.end_pos.begin()),
            int(std::upper_bound(parts.start_pos.begin(), parts.start_pos.end(), b) -
                parts.start_pos.begin()) -
                1};
        return last >= first ? last - first + 1 : 0;
    };
    auto leftmost_pos = [&](int v) {
        while (t.left[v] >= 0) v = t.left[v];
        return order.rank[v];
    };

    ExtractionTrace& tr = res.trace;
    std::vector<std::pair<int, int>> branch_spans;
    // Branch descent, always into the heaviest child.
    {
        int v = t.root;
        int lo = 0, hi = n - 1;
        for (;;) {
            tr.branch_nodes.push_back(v);
            tr.weights.push_back(weight_of_span(lo, hi));
            branch_spans.emplace_back(lo, hi);
            int pos = order.rank[v];
            int c_left = t.left[v], c_center = t.center_child(v), c_right = t.right[v];
            int center_hi = hi, right_lo = pos + 1;
            if (c_right >= 0) {
                right_lo = leftmost_pos(c_right);
                center_hi = right_lo - 1;
            }
            struct Child {
                int node, lo, hi;
            };
            Child kids[3] = {{c_left, lo, pos - 1},
                             {c_center, pos + 1, center_hi},
                             {c_right, right_lo, hi}};
            int best = -1, next = -1, next_lo = 0, next_hi = 0;
            for (const auto& kid : kids)
                if (kid.node >= 0 && weight_of_span(kid.lo, kid.hi) > best) {
                    best = weight_of_span(kid.lo, kid.hi);
                    next = kid.node;
                    next_lo = kid.lo;
                    next_hi = kid.hi;
                }
            if (next < 0) break;
            v = next;
            lo = next_lo;
            hi = next_hi;
        }
    }
    int p = int(tr.branch_nodes.size()) - 1;

    // Block boundaries by the drop-by-3 rule.
    tr.block_indices.push_back(0);
    for (int i = 1; i <= p; ++i)
        if (tr.weights[i] <= tr.weights[tr.block_indices.back()] - 3)
            tr.block_indices.push_back(i);

    int leaf = tr.branch_nodes[p];
    int leaf_pos = order.rank[leaf];
    int left_with_part = 0, right_with_part = 0;
    for (size_t l = 1; l < tr.block_indices.size(); ++l) {
        int ia = tr.block_indices[l - 1], ib = tr.block_indices[l];
        auto [lo_a, hi_a] = branch_spans[ia];
        auto [lo_b, hi_b] = branch_spans[ib];
        ExtractionBlock blk;
        blk.index_from = ia;
        blk.index_to = ib;
        blk.left_span = {lo_a, lo_b - 1};
        blk.right_span = {hi_b + 1, hi_a};
        auto [lf, ll] = parts.parts_inside(blk.left_span.first, blk.left_span.second);
        auto [rf, rl] = parts.parts_inside(blk.right_span.first, blk.right_span.second);
        if (lf <= ll) {
            blk.left_part = lf;
            ++left_with_part;
        }
        if (rf <= rl) {
            blk.right_part = rf;
            ++right_with_part;
        }
        tr.blocks.push_back(blk);
    }
    bool use_left = left_with_part >= right_with_part;
    tr.side = use_left ? 'L' : 'R';
    res.orientation = use_left ? '+' : '-';

    // Chain nodes: branch nodes strictly on the chosen side of the leaf,
    // enumerated root-to-leaf. On the left side arcs run shallow to deep
    // ('+' convention); on the right side deep to shallow ('-'). Nodes
    // the branch leaves through their center child are non-adjacent to
    // everything deeper.
    std::vector<int> side_nodes;
    std::vector<bool> anti;
    for (int i = 0; i < p; ++i) {
        int v = tr.branch_nodes[i];
        bool on_left = order.rank[v] < leaf_pos;
        if (on_left != use_left) continue;
        side_nodes.push_back(v);
        anti.push_back(t.center_child(v) == tr.branch_nodes[i + 1]);
    }

    // Generalized classes along the node sequence: complete nodes filter
    // by forward neighbourhood, anti-complete nodes by non-adjacency.
    std::vector<Bitset> gen_b;
    {
        Bitset a(n);
        a.set_all();
        for (int c : side_nodes) a.reset(c);
        for (size_t i = 0; i < side_nodes.size(); ++i) {
            int c = side_nodes[i];
            Bitset keep;
            if (anti[i]) {
                keep = a;
                keep -= g.neighbors(c);
            } else {
                keep = a & (use_left ? g.out_neighbors(c) : g.in_neighbors(c));
            }
            Bitset b = a;
            b -= keep;
            gen_b.push_back(std::move(b));
            a = std::move(keep);
        }
    }

    // Pick the leftmost part inside each chosen-side block.
    std::vector<int> picked;
    for (const auto& blk : tr.blocks) {
        int part = use_left ? blk.left_part : blk.right_part;
        if (part >= 0) picked.push_back(part);
    }
    tr.selected_parts = picked;

    // Oriented case: remove anti-complete nodes and any picked part that
    // meets the class they delimit.
    std::vector<bool> drop_part(picked.size(), false);
    for (size_t i = 0; i < side_nodes.size(); ++i) {
        if (!anti[i]) continue;
        tr.anti_complete_nodes.push_back(side_nodes[i]);
        for (size_t j = 0; j < picked.size(); ++j) {
            if (drop_part[j]) continue;
            for (int pos2 = parts.start_pos[picked[j]]; pos2 <= parts.end_pos[picked[j]];
                 ++pos2)
                if (gen_b[i].test(order.seq[pos2])) {
                    drop_part[j] = true;
                    tr.removed_parts.push_back(picked[j]);
                    break;
                }
        }
    }
    for (size_t i = 0; i < side_nodes.size(); ++i)
        if (!anti[i]) res.chain.push_back(side_nodes[i]);

    for (size_t j = 0; j < picked.size(); ++j) {
        if (drop_part[j]) continue;
        int original = parts.order_index[picked[j]];
        res.part_indices.push_back(original);
        res.parts.push_back(family[original]);
    }

    res.order = chain_quasi_order(g, res.chain, res.orientation);

    // Re-verify the headline contract with the independent predicate.
    for (size_t a = 0; a < res.parts.size(); ++a)
        for (size_t b = a + 1; b < res.parts.size(); ++b)
            if (overlapping(res.order, res.parts[a], res.parts[b]))
                throw verification_error("extract: output parts overlap");
    if (enforce_budget && int(res.parts.size()) < k)
        throw verification_error("extract: budget held but fewer than k parts extracted");
    return res;
}

std::vector<std::vector<int>> parse_interval_family(std::istream& in) {
    std::string line;
    int count = -1, lineno = 0;
    std::vector<std::vector<int>> family;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        if (count < 0) {
            std::string tag;
            if (!(ls >> tag >> count) || tag != "f" || count < 0)
                throw input_error("family line " + std::to_string(lineno) +
                                  ": expected `f <count>`");
        } else {
            std::vector<int> part;
            int v;
            while (ls >> v) part.push_back(v - 1);
            if (part.empty())
                throw input_error("family line " + std::to_string(lineno) + ": empty part");
            family.push_back(std::move(part));
        }
    }
    if (count < 0) throw input_error("family: missing `f <count>` header");
    if (int(family.size()) != count)
        throw input_error("family: expected " + std::to_string(count) + " parts");
    return family;
}

std::string format_interval_family(const std::vector<std::vector<int>>& family) {
    std::string s = "f " + std::to_string(family.size()) + "\n";
    for (const auto& part : family) {
        for (size_t i = 0; i < part.size(); ++i)
            s += (i ? " " : "") + std::to_string(part[i] + 1);
        s += "\n";
    }
    return s;
}

} // namespace tw

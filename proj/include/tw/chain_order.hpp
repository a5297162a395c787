#ifndef TW_CHAIN_ORDER_HPP
#define TW_CHAIN_ORDER_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tw/bitset.hpp"
#include "tw/bst.hpp"
#include "tw/digraph.hpp"

namespace tw {

struct budget_underflow_error : input_error {
    std::uint64_t required;
    budget_underflow_error(std::uint64_t req, const std::string& msg)
        : input_error(msg), required(req) {}
};

// Total quasi-order induced by a chain c_1..c_k: each vertex is ranked by
// the first chain element whose relevant neighbourhood it leaves. Class
// sequence is B_1, {c_1}, B_2, {c_2}, ..., B_k, {c_k}, A_k.
struct ChainQuasiOrder {
    std::vector<int> chain;
    char orientation = '+';
    std::vector<Bitset> classes;  // 2k+1 classes in quasi-order position
    std::vector<int> class_rank;  // per vertex

    int rank(int v) const { return class_rank[v]; }
};

// Builds the quasi-order. The chain must be enumerated so that arcs run
// c_i -> c_j for i < j when o == '+', and for i > j when o == '-'.
// Non-chain vertices are classed by the first c_i with x not in N^o(c_i),
// which on tournaments coincides with membership in N^{-o}(c_i).
ChainQuasiOrder chain_quasi_order(const Digraph& g, const std::vector<int>& chain, char o);

// X, Y overlap iff some x1 <= y1 and some x2 >= y2 in class rank,
// i.e. their rank intervals intersect. X and Y must be disjoint.
bool overlapping(const ChainQuasiOrder& q, const Bitset& x, const Bitset& y);
bool overlapping(const ChainQuasiOrder& q, const std::vector<int>& x, const std::vector<int>& y);

// Interval-family budget: f(0) = 1, f(k+1) = 4 f(k) + 9.
std::uint64_t budget(int k);

struct ExtractionBlock {
    int index_from = 0, index_to = 0;       // branch index range [i_{l-1}, i_l]
    std::pair<int, int> left_span{1, 0};    // order-position interval, empty if lo > hi
    std::pair<int, int> right_span{1, 0};
    int left_part = -1, right_part = -1;    // leftmost family part inside, or -1
};

// Diagnostic record of one extraction run; tested invariants: weights are
// nonincreasing, (arity) * w_{i+1} + 1 >= w_i at each descent step, and
// each block boundary is the minimal index whose weight dropped by >= 3.
struct ExtractionTrace {
    std::vector<int> branch_nodes;
    std::vector<int> weights;
    std::vector<int> block_indices;        // i_0=0 < i_1 < ...
    char side = 'L';
    std::vector<ExtractionBlock> blocks;
    std::vector<int> selected_parts;       // per majority-side block, pre-removal
    std::vector<int> anti_complete_nodes;  // chain nodes removed (oriented case)
    std::vector<int> removed_parts;        // parts dropped with them
};

struct ExtractionResult {
    std::vector<int> chain;
    char orientation = '+';
    std::vector<std::vector<int>> parts;   // the extracted subfamily, in family order
    std::vector<int> part_indices;         // positions within the input family
    ChainQuasiOrder order;
    ExtractionTrace trace;
};

// The non-overlapping interval extraction. family must consist of
// pairwise disjoint intervals of left_to_right(t). When enforce_budget
// is set, requires |family| >= budget(k) on tournaments and
// budget(k + alpha) on oriented graphs, and guarantees >= k parts.
// The result is always re-verified against the overlapping predicate.
ExtractionResult extract_nonoverlapping(const Digraph& g, const BstTree& t,
                                        const std::vector<std::vector<int>>& family, int k,
                                        bool enforce_budget);

// Interval family text format: `f <count>` then one line of 1-based
// vertex ids per part.
std::vector<std::vector<int>> parse_interval_family(std::istream& in);
std::string format_interval_family(const std::vector<std::vector<int>>& family);

} // namespace tw

#endif

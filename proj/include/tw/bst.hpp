#ifndef TW_BST_HPP
#define TW_BST_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tw/digraph.hpp"

namespace tw {

// A total order on the vertex set, with O(1) rank lookup.
struct VertexOrder {
    std::vector<int> seq;  // seq[position] = vertex
    std::vector<int> rank; // rank[vertex] = position

    VertexOrder() = default;
    explicit VertexOrder(std::vector<int> s) : seq(std::move(s)), rank(seq.size(), -1) {
        for (size_t i = 0; i < seq.size(); ++i) rank[seq[i]] = int(i);
    }
};

// Search tree over the vertex set of a digraph: left descendants of x are
// in-neighbours, right descendants out-neighbours, and (ternary only)
// center descendants non-adjacent to x.
struct BstTree {
    enum class Arity { binary, ternary };

    Arity arity = Arity::binary;
    int root = -1;
    std::vector<int> left, center, right; // -1 = absent

    int n() const { return int(left.size()); }

    BstTree() = default;
    BstTree(int n, Arity a)
        : arity(a), left(n, -1), center(a == Arity::ternary ? n : 0, -1), right(n, -1) {}

    int center_child(int v) const {
        return arity == Arity::ternary ? center[v] : -1;
    }
};

enum class BstStrategy { insertion, random_pivot, median_pivot };

// Insert each vertex of seq in turn, descending left on in-neighbours,
// right on out-neighbours, center on non-adjacent vertices.
BstTree bst_build_insertion(const Digraph& g, const std::vector<int>& seq);

// Recursive pivoting: pick a pivot, split the rest into in-neighbours /
// non-adjacent / out-neighbours, recurse. Random pivot is deterministic
// given the seed; the median variant picks the vertex whose out-degree
// within the current set is closest to half the set size.
BstTree bst_build_random(const Digraph& g, std::uint64_t seed);
BstTree bst_build_median(const Digraph& g);

BstTree bst_build(const Digraph& g, BstStrategy strategy, std::uint64_t seed = 0,
                  const std::vector<int>* insertion_seq = nullptr);

struct BstViolation {
    int node = -1;
    int child = -1;
    std::string reason;
};

// nullopt when the tree is structurally sound and satisfies all
// subtree-neighbourhood constraints; otherwise the first violation in
// preorder.
std::optional<BstViolation> bst_validate(const Digraph& g, const BstTree& t);

// In-order traversal: left, node, (center,) right. Iterative, so deep
// spines are fine.
VertexOrder left_to_right(const BstTree& t);

// Root-to-leaf path. Throws input_error if leaf has children.
std::vector<int> branch(const BstTree& t, int leaf);

struct BranchChainSplit {
    std::vector<int> chain_part;       // branch minus center-branching nodes
    std::vector<int> independent_part; // center-branching nodes, pairwise non-adjacent
};

BranchChainSplit branch_chain_split(const Digraph& g, const BstTree& t, int leaf);

// BST text format: `t <n> <binary|ternary>`, `r <root>`, then n lines
// `v <node> <left> [<center>] <right>` with 0 for absent, all 1-based.
BstTree parse_bst(std::istream& in);
std::string format_bst(const BstTree& t);

} // namespace tw

#endif

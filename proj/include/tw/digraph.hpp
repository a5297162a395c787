#ifndef TW_DIGRAPH_HPP
#define TW_DIGRAPH_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "tw/bitset.hpp"
#include "tw/errors.hpp"

namespace tw {

enum class GraphKind { tournament, oriented };

// Loop-free directed graph without digons. Vertices are 0..n-1 in memory;
// all text formats are 1-based. Immutable after construction.
class Digraph {
public:
    Digraph() = default;
    Digraph(int n, GraphKind kind)
        : n_(n), kind_(kind), out_(n, Bitset(n)), in_(n, Bitset(n)) {}

    int n() const { return n_; }
    GraphKind kind() const { return kind_; }

    bool has_arc(int u, int v) const { return out_[u].test(v); }
    bool adjacent(int u, int v) const { return out_[u].test(v) || out_[v].test(u); }

    const Bitset& out_neighbors(int u) const { return out_[u]; }
    const Bitset& in_neighbors(int u) const { return in_[u]; }
    Bitset neighbors(int u) const { return out_[u] | in_[u]; }

    int arc_count() const;

    // Unchecked insertion; used by builders which validate afterwards.
    void add_arc_unchecked(int u, int v) {
        out_[u].set(v);
        in_[v].set(u);
    }

    bool operator==(const Digraph& o) const {
        return n_ == o.n_ && out_ == o.out_;
    }

private:
    int n_ = 0;
    GraphKind kind_ = GraphKind::oriented;
    std::vector<Bitset> out_, in_;
};

// Validating constructor. Arcs are 0-based pairs. Throws input_error on
// loops, digons, out-of-range ids, or (for tournaments) undecided pairs.
Digraph build_graph(int n, const std::vector<std::pair<int, int>>& arcs, GraphKind kind);

// Checks the kind invariants of an already-filled graph.
void validate_graph(const Digraph& g);

// Exact maximum independent set size by branch and bound.
// Always 1 on tournaments. Throws size_limit_error above the cap.
int independence_number(const Digraph& g, int cap = 64);

// The unique enumeration c_1,...,c_k of s with every arc c_i -> c_j for
// i < j, or nullopt if s is not a chain (non-adjacent pair or cycle).
std::optional<std::vector<int>> chain_order(const Digraph& g, const Bitset& s);
std::optional<std::vector<int>> chain_order(const Digraph& g, const std::vector<int>& s);

bool is_transitive_tournament(const Digraph& g);

// Image of g under vertex relabeling: vertex v becomes perm[v].
Digraph relabel(const Digraph& g, const std::vector<int>& perm);

// Canonical form: lexicographically minimal pair-insertion encoding over
// all relabelings, found by branch and bound with prefix pruning. Equal
// strings iff isomorphic. Exhaustive; throws size_limit_error above cap.
std::string canonical_form(const Digraph& g, int cap = 10);

// Order of the automorphism group, by backtracking over arc-preserving
// vertex maps.
std::uint64_t automorphism_count(const Digraph& g, int cap = 10);

// Digraph text format: `p dtw <n> <m>` then m lines `a <u> <v>`, 1-based,
// `#` comment lines ignored. Kind is supplied by the caller.
Digraph parse_digraph(std::istream& in, GraphKind kind);
std::string format_digraph(const Digraph& g);

Digraph random_tournament(int n, std::mt19937_64& rng);

// Random tournament with a few arcs deleted so that the independence
// number stays <= 3: deleted pairs form disjoint pairs plus at most one
// disjoint triple.
Digraph random_oriented_small_alpha(int n, std::mt19937_64& rng);

} // namespace tw

#endif

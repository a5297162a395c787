#ifndef TW_STRUCTURE_HPP
#define TW_STRUCTURE_HPP

#include <string>
#include <vector>

#include "tw/bitset.hpp"
#include "tw/bst.hpp"
#include "tw/digraph.hpp"
#include "tw/matrix.hpp"

namespace tw {

// Relational structure over a binary signature: named relations, each a
// set of ordered pairs stored as one bitset row per vertex.
class BinaryStructure {
public:
    BinaryStructure() = default;
    explicit BinaryStructure(int n) : n_(n) {}

    int n() const { return n_; }
    int relation_count() const { return int(rels_.size()); }
    const std::string& relation_name(int r) const { return rels_[r].name; }

    bool holds(int r, int u, int v) const { return rels_[r].rows[u].test(v); }
    const Bitset& row(int r, int u) const { return rels_[r].rows[u]; }

    int find_relation(const std::string& name) const {
        for (size_t i = 0; i < rels_.size(); ++i)
            if (rels_[i].name == name) return int(i);
        return -1;
    }

    void add_relation(const std::string& name, std::vector<Bitset> rows);
    void set_pair(int r, int u, int v) { rels_[r].rows[u].set(v); }

    // Graph arcs as the relation `arc`.
    static BinaryStructure from_digraph(const Digraph& g);
    // Arcs plus the strict total order `ord` given by a vertex order.
    static BinaryStructure from_digraph_with_order(const Digraph& g, const VertexOrder& order);

    BinaryStructure relabeled(const std::vector<int>& perm) const;
    BinaryStructure induced(const std::vector<int>& vertices) const;

private:
    struct Relation {
        std::string name;
        std::vector<Bitset> rows;
    };
    int n_ = 0;
    std::vector<Relation> rels_;
};

// True iff no relation distinguishes vertices across x and y: each
// relation is all-present or all-absent in each direction. x, y must be
// disjoint and nonempty.
bool is_homogeneous(const BinaryStructure& s, const Bitset& x, const Bitset& y);

// Adjacency matrix of a multi-relation structure under a vertex order:
// entry (u,v) packs one bit per relation, alphabet 2^R.
Matrix adjacency_matrix(const BinaryStructure& s, const std::vector<int>& order);

} // namespace tw

#endif

#include "tw/structure.hpp"

#include "tw/errors.hpp"

namespace tw {

void BinaryStructure::add_relation(const std::string& name, std::vector<Bitset> rows) {
    if (int(rows.size()) != n_)
        throw input_error("BinaryStructure: relation rows do not match domain size");
    if (find_relation(name) >= 0)
        throw input_error("BinaryStructure: duplicate relation " + name);
    if (name == "ord") {
        // Must be a strict total order.
        for (int u = 0; u < n_; ++u) {
            if (rows[u].test(u)) throw input_error("BinaryStructure: ord is not irreflexive");
            for (int v = u + 1; v < n_; ++v)
                if (rows[u].test(v) == rows[v].test(u))
                    throw input_error("BinaryStructure: ord is not total/antisymmetric");
        }
        for (int u = 0; u < n_; ++u)
            for (int v = 0; v < n_; ++v)
                if (u != v && rows[u].test(v))
                    for (int w = 0; w < n_; ++w)
                        if (w != u && w != v && rows[v].test(w) && !rows[u].test(w))
                            throw input_error("BinaryStructure: ord is not transitive");
    }
    rels_.push_back({name, std::move(rows)});
}

BinaryStructure BinaryStructure::from_digraph(const Digraph& g) {
    BinaryStructure s(g.n());
    std::vector<Bitset> rows;
    rows.reserve(g.n());
    for (int u = 0; u < g.n(); ++u) rows.push_back(g.out_neighbors(u));
    s.add_relation("arc", std::move(rows));
    return s;
}

BinaryStructure BinaryStructure::from_digraph_with_order(const Digraph& g,
                                                         const VertexOrder& order) {
    BinaryStructure s = from_digraph(g);
    std::vector<Bitset> rows(g.n(), Bitset(g.n()));
    for (int u = 0; u < g.n(); ++u)
        for (int v = 0; v < g.n(); ++v)
            if (order.rank[u] < order.rank[v]) rows[u].set(v);
    s.add_relation("ord", std::move(rows));
    return s;
}

BinaryStructure BinaryStructure::relabeled(const std::vector<int>& perm) const {
    BinaryStructure out(n_);
    for (const auto& rel : rels_) {
        std::vector<Bitset> rows(n_, Bitset(n_));
        for (int u = 0; u < n_; ++u)
            rel.rows[u].for_each([&](int v) { rows[perm[u]].set(perm[v]); });
        out.rels_.push_back({rel.name, std::move(rows)});
    }
    return out;
}

BinaryStructure BinaryStructure::induced(const std::vector<int>& vertices) const {
    int m = int(vertices.size());
    BinaryStructure out(m);
    for (const auto& rel : rels_) {
        std::vector<Bitset> rows(m, Bitset(m));
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                if (rel.rows[vertices[i]].test(vertices[j])) rows[i].set(j);
        out.rels_.push_back({rel.name, std::move(rows)});
    }
    return out;
}

Matrix adjacency_matrix(const BinaryStructure& s, const std::vector<int>& order) {
    int n = int(order.size());
    if (s.relation_count() > 7)
        throw input_error("adjacency_matrix: more than 7 relations do not fit the "
                          "digit alphabet");
    Matrix m(n, n, 1 << s.relation_count());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int bits = 0;
            for (int r = 0; r < s.relation_count(); ++r)
                if (s.holds(r, order[i], order[j])) bits |= 1 << r;
            m.set(i, j, std::uint8_t(bits));
        }
    return m;
}

bool is_homogeneous(const BinaryStructure& s, const Bitset& x, const Bitset& y) {
    if (x.none() || y.none()) throw input_error("is_homogeneous: empty side");
    if (x.intersects(y)) throw input_error("is_homogeneous: sets overlap");
    for (int r = 0; r < s.relation_count(); ++r) {
        for (auto [a, b] : {std::pair<const Bitset*, const Bitset*>{&x, &y}, {&y, &x}}) {
            int expected = -1; // -1 unknown, 0 all absent, 1 all present
            bool uniform = true;
            a->for_each([&](int u) {
                if (!uniform) return;
                int present = (s.row(r, u) & *b).count();
                int want = present == 0 ? 0 : (present == b->count() ? 1 : -2);
                if (want == -2) {
                    uniform = false;
                    return;
                }
                if (expected == -1)
                    expected = want;
                else if (expected != want)
                    uniform = false;
            });
            if (!uniform) return false;
        }
    }
    return true;
}

} // namespace tw

#include "tw/digraph.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <sstream>

namespace tw {

int Digraph::arc_count() const {
    int m = 0;
    for (int u = 0; u < n_; ++u) m += out_[u].count();
    return m;
}

Digraph build_graph(int n, const std::vector<std::pair<int, int>>& arcs, GraphKind kind) {
    if (n < 0) throw input_error("build_graph: negative vertex count");
    Digraph g(n, kind);
    for (auto [u, v] : arcs) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw input_error("build_graph: vertex id out of range: (" +
                              std::to_string(u + 1) + "," + std::to_string(v + 1) + ")");
        if (u == v)
            throw input_error("build_graph: loop at vertex " + std::to_string(u + 1));
        if (g.has_arc(v, u))
            throw input_error("build_graph: digon between " + std::to_string(u + 1) +
                              " and " + std::to_string(v + 1));
        if (g.has_arc(u, v))
            throw input_error("build_graph: duplicate arc " + std::to_string(u + 1) +
                              " -> " + std::to_string(v + 1));
        g.add_arc_unchecked(u, v);
    }
    if (kind == GraphKind::tournament) {
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (!g.adjacent(u, v))
                    throw input_error("build_graph: missing arc for pair {" +
                                      std::to_string(u + 1) + "," + std::to_string(v + 1) + "}");
    }
    return g;
}

void validate_graph(const Digraph& g) {
    for (int u = 0; u < g.n(); ++u) {
        if (g.has_arc(u, u)) throw input_error("validate_graph: loop");
        for (int v = u + 1; v < g.n(); ++v) {
            if (g.has_arc(u, v) && g.has_arc(v, u))
                throw input_error("validate_graph: digon");
            if (g.kind() == GraphKind::tournament && !g.adjacent(u, v))
                throw input_error("validate_graph: missing arc");
        }
    }
}

namespace {

int mis_rec(const std::vector<Bitset>& closed_nbr, Bitset candidates) {
    if (candidates.none()) return 0;
    int v = candidates.first();
    // Take v.
    Bitset without_nbr = candidates;
    without_nbr -= closed_nbr[v];
    int best = 1 + mis_rec(closed_nbr, without_nbr);
    // Skip v; the remainder can only win if it is larger than `best`.
    candidates.reset(v);
    if (candidates.count() > best)
        best = std::max(best, mis_rec(closed_nbr, candidates));
    return best;
}

} // namespace

int independence_number(const Digraph& g, int cap) {
    if (g.n() > cap)
        throw size_limit_error("independence_number: n=" + std::to_string(g.n()) +
                               " exceeds cap " + std::to_string(cap));
    std::vector<Bitset> closed(g.n());
    for (int v = 0; v < g.n(); ++v) {
        closed[v] = g.neighbors(v);
        closed[v].set(v);
    }
    Bitset all(g.n());
    all.set_all();
    return mis_rec(closed, all);
}

std::optional<std::vector<int>> chain_order(const Digraph& g, const Bitset& s) {
    return chain_order(g, s.to_vector());
}

std::optional<std::vector<int>> chain_order(const Digraph& g, const std::vector<int>& s) {
    std::vector<int> order(s);
    // In a transitive tournament on k vertices the out-degrees within the
    // set are k-1, ..., 0 and identify the enumeration.
    std::vector<int> deg(order.size());
    Bitset mask = Bitset::from_vector(g.n(), order);
    for (size_t i = 0; i < order.size(); ++i)
        deg[i] = (g.out_neighbors(order[i]) & mask).count();
    std::vector<size_t> idx(order.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return deg[a] > deg[b]; });
    std::vector<int> sorted;
    sorted.reserve(order.size());
    for (size_t i : idx) sorted.push_back(order[i]);
    for (size_t i = 0; i < sorted.size(); ++i)
        for (size_t j = i + 1; j < sorted.size(); ++j)
            if (!g.has_arc(sorted[i], sorted[j])) return std::nullopt;
    return sorted;
}

bool is_transitive_tournament(const Digraph& g) {
    if (g.kind() != GraphKind::tournament) return false;
    std::vector<int> all(g.n());
    std::iota(all.begin(), all.end(), 0);
    return chain_order(g, all).has_value();
}

Digraph relabel(const Digraph& g, const std::vector<int>& perm) {
    Digraph h(g.n(), g.kind());
    for (int u = 0; u < g.n(); ++u)
        g.out_neighbors(u).for_each([&](int v) { h.add_arc_unchecked(perm[u], perm[v]); });
    return h;
}

namespace {

// Pair-insertion encoding of an ordered prefix: when vertex v_t joins,
// append arc bits (v_t, v_j) and (v_j, v_t) for j < t. A full string
// determines the graph up to the chosen order, so the minimum over all
// orders is a canonical form.
struct CanonSearch {
    const Digraph& g;
    int n;
    std::string best;
    std::string cur;
    std::vector<int> order;
    std::vector<bool> used;

    explicit CanonSearch(const Digraph& gg) : g(gg), n(gg.n()), used(gg.n(), false) {}

    void append_chunk(int v) {
        for (int j : order) {
            cur.push_back(g.has_arc(v, j) ? '1' : '0');
            cur.push_back(g.has_arc(j, v) ? '1' : '0');
        }
    }

    void rec(int depth) {
        if (!best.empty() && cur.compare(0, cur.size(), best, 0, cur.size()) > 0) return;
        if (depth == n) {
            if (best.empty() || cur < best) best = cur;
            return;
        }
        for (int v = 0; v < n; ++v) {
            if (used[v]) continue;
            size_t len = cur.size();
            append_chunk(v);
            order.push_back(v);
            used[v] = true;
            rec(depth + 1);
            used[v] = false;
            order.pop_back();
            cur.resize(len);
        }
    }
};

} // namespace

std::string canonical_form(const Digraph& g, int cap) {
    if (g.n() > cap)
        throw size_limit_error("canonical_form: n=" + std::to_string(g.n()) +
                               " exceeds cap " + std::to_string(cap));
    if (g.n() == 0) return "";
    CanonSearch s(g);
    s.rec(0);
    return s.best;
}

namespace {

bool map_consistent(const Digraph& g, const std::vector<int>& img, int t, int image) {
    for (int j = 0; j < t; ++j) {
        if (g.has_arc(t, j) != g.has_arc(image, img[j])) return false;
        if (g.has_arc(j, t) != g.has_arc(img[j], image)) return false;
    }
    return true;
}

void aut_rec(const Digraph& g, std::vector<int>& img, std::vector<bool>& taken, int t,
             std::uint64_t& count) {
    if (t == g.n()) {
        ++count;
        return;
    }
    for (int image = 0; image < g.n(); ++image) {
        if (taken[image]) continue;
        if (!map_consistent(g, img, t, image)) continue;
        img[t] = image;
        taken[image] = true;
        aut_rec(g, img, taken, t + 1, count);
        taken[image] = false;
    }
}

} // namespace

std::uint64_t automorphism_count(const Digraph& g, int cap) {
    if (g.n() > cap)
        throw size_limit_error("automorphism_count: n=" + std::to_string(g.n()) +
                               " exceeds cap " + std::to_string(cap));
    if (g.n() == 0) return 1;
    std::vector<int> img(g.n(), -1);
    std::vector<bool> taken(g.n(), false);
    std::uint64_t count = 0;
    aut_rec(g, img, taken, 0, count);
    return count;
}

Digraph parse_digraph(std::istream& in, GraphKind kind) {
    std::string line;
    int n = -1, m = -1;
    std::vector<std::pair<int, int>> arcs;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "p") {
            std::string fmt;
            if (!(ls >> fmt >> n >> m) || fmt != "dtw")
                throw input_error("digraph line " + std::to_string(lineno) +
                                  ": expected `p dtw <n> <m>`");
        } else if (tag == "a") {
            int u, v;
            if (!(ls >> u >> v))
                throw input_error("digraph line " + std::to_string(lineno) + ": bad arc line");
            arcs.emplace_back(u - 1, v - 1);
        } else {
            throw input_error("digraph line " + std::to_string(lineno) + ": unknown tag `" +
                              tag + "`");
        }
    }
    if (n < 0) throw input_error("digraph: missing `p dtw` header");
    if (m >= 0 && int(arcs.size()) != m)
        throw input_error("digraph: header declares " + std::to_string(m) + " arcs, found " +
                          std::to_string(arcs.size()));
    return build_graph(n, arcs, kind);
}

std::string format_digraph(const Digraph& g) {
    std::vector<std::pair<int, int>> arcs;
    for (int u = 0; u < g.n(); ++u)
        g.out_neighbors(u).for_each([&](int v) { arcs.emplace_back(u, v); });
    std::sort(arcs.begin(), arcs.end());
    std::string out = "p dtw " + std::to_string(g.n()) + " " + std::to_string(arcs.size()) + "\n";
    for (auto [u, v] : arcs)
        out += "a " + std::to_string(u + 1) + " " + std::to_string(v + 1) + "\n";
    return out;
}

Digraph random_tournament(int n, std::mt19937_64& rng) {
    Digraph g(n, GraphKind::tournament);
    std::uint64_t bits = 0;
    int avail = 0;
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            if (avail == 0) {
                bits = rng();
                avail = 64;
            }
            if (bits & 1)
                g.add_arc_unchecked(u, v);
            else
                g.add_arc_unchecked(v, u);
            bits >>= 1;
            --avail;
        }
    }
    return g;
}

Digraph random_oriented_small_alpha(int n, std::mt19937_64& rng) {
    Digraph t = random_tournament(n, rng);
    Digraph g(n, GraphKind::oriented);
    std::vector<int> verts(n);
    std::iota(verts.begin(), verts.end(), 0);
    std::shuffle(verts.begin(), verts.end(), rng);
    // Drop the arcs inside disjoint pairs, and inside one triple with
    // probability 1/2. Non-adjacency is confined to those groups, so any
    // independent set has size <= 3.
    Bitset dropped(n);
    size_t pos = 0;
    auto drop_group = [&](int size) {
        for (int a = 0; a < size; ++a)
            for (int b = a + 1; b < size; ++b) {
                int u = verts[pos + a], v = verts[pos + b];
                dropped.set(u);
                dropped.set(v);
            }
        pos += size;
    };
    std::vector<std::pair<int, int>> groups; // (start, size)
    if (n >= 3 && (rng() & 1)) {
        groups.emplace_back(int(pos), 3);
        drop_group(3);
    }
    int pairs = n >= 2 ? int(rng() % std::max<std::uint64_t>(1, (n - pos) / 4)) : 0;
    for (int i = 0; i < pairs && pos + 2 <= size_t(n); ++i) {
        groups.emplace_back(int(pos), 2);
        drop_group(2);
    }
    auto in_same_group = [&](int u, int v) {
        for (auto [start, size] : groups) {
            bool fu = false, fv = false;
            for (int a = 0; a < size; ++a) {
                if (verts[start + a] == u) fu = true;
                if (verts[start + a] == v) fv = true;
            }
            if (fu && fv) return true;
        }
        return false;
    };
    for (int u = 0; u < n; ++u)
        t.out_neighbors(u).for_each([&](int v) {
            if (!in_same_group(u, v)) g.add_arc_unchecked(u, v);
        });
    return g;
}

} // namespace tw

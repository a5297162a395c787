#include "tw/obstructions.hpp"

#include <algorithm>
#include <future>
#include <numeric>
#include <thread>

namespace tw {

const char* obstruction_kind_name(ObstructionKind r) {
    switch (r) {
        case ObstructionKind::eq: return "eq";
        case ObstructionKind::leq: return "le";
        case ObstructionKind::geq: return "ge";
    }
    return "?";
}

namespace {

bool rel_holds(ObstructionKind r, int i, int j) {
    switch (r) {
        case ObstructionKind::eq: return i == j;
        case ObstructionKind::leq: return i <= j;
        case ObstructionKind::geq: return i >= j;
    }
    return false;
}

} // namespace

std::pair<Digraph, RoleMap> build_F(ObstructionKind r, const Permutation& sigma) {
    int n = sigma.size();
    Permutation inv = sigma.inverse();
    Digraph g(2 * n, GraphKind::tournament);
    RoleMap roles;
    for (int i = 0; i < n; ++i) roles.x_ids.push_back(i);
    for (int j = 0; j < n; ++j) roles.y_ids.push_back(n + j);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            g.add_arc_unchecked(i, j);         // x_i -> x_j
            g.add_arc_unchecked(n + i, n + j); // y_i -> y_j
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (rel_holds(r, i, inv(j)))
                g.add_arc_unchecked(n + j, i); // y_j -> x_i
            else
                g.add_arc_unchecked(i, n + j);
        }
    return {std::move(g), std::move(roles)};
}

Permutation extend_sigma(ObstructionKind r, const Permutation& sigma) {
    int n = sigma.size();
    if (n < 2) throw input_error("extend_sigma: |sigma| must be >= 2");
    std::vector<int> img;
    img.reserve(n + 1);
    if (r == ObstructionKind::eq) {
        img = sigma.image();
        img.push_back(n); // new fixed point at the end
    } else {
        img.push_back(n); // new maximum up front
        for (int v : sigma.image()) img.push_back(v);
    }
    return Permutation(std::move(img));
}

namespace {

struct DecodeCtx {
    const Digraph& t;
    DecodeResult out;

    bool fail(const std::string& why) {
        out.sigma.reset();
        out.reason = why;
        return false;
    }

    std::vector<int> with_out_degree(int d) {
        std::vector<int> v;
        for (int u = 0; u < t.n(); ++u)
            if (t.out_neighbors(u).count() == d) v.push_back(u);
        return v;
    }
    std::vector<int> with_in_degree(int d) {
        std::vector<int> v;
        for (int u = 0; u < t.n(); ++u)
            if (t.in_neighbors(u).count() == d) v.push_back(u);
        return v;
    }

    // Shared tail: X known, chains, arc consistency, read sigma'.
    bool finish(ObstructionKind r, const Bitset& x_set) {
        int m = t.n() / 2;
        if (x_set.count() != m) return fail("X has the wrong size");
        Bitset y_set = x_set.complement();
        auto xchain = chain_order(t, x_set);
        if (!xchain) return fail("X is not a chain");
        auto ychain = chain_order(t, y_set);
        if (!ychain) return fail("Y is not a chain");
        const auto& xs = *xchain;
        const auto& ys = *ychain;
        // sigma'^{-1}(j) from the cross arcs of the j-th chain element of Y.
        std::vector<int> inv_img(m, -1);
        std::vector<bool> hit(m, false);
        for (int j = 0; j < m; ++j) {
            int v = -1;
            switch (r) {
                case ObstructionKind::eq: {
                    Bitset beaten = t.out_neighbors(ys[j]) & x_set;
                    if (beaten.count() != 1) return fail("matching degree broken");
                    int xb = beaten.first();
                    v = int(std::find(xs.begin(), xs.end(), xb) - xs.begin());
                    break;
                }
                case ObstructionKind::leq:
                    v = (t.out_neighbors(ys[j]) & x_set).count() - 1;
                    break;
                case ObstructionKind::geq:
                    v = (t.in_neighbors(ys[j]) & x_set).count();
                    break;
            }
            if (v < 0 || v >= m || hit[v]) return fail("cross arcs do not encode a bijection");
            hit[v] = true;
            inv_img[j] = v;
        }
        // Every cross pair must match the kind's predicate; this also
        // checks that the leq/geq in-neighbourhoods form inclusion chains.
        for (int j = 0; j < m; ++j)
            for (int i = 0; i < m; ++i) {
                bool want = rel_holds(r, i, inv_img[j]);
                if (t.has_arc(ys[j], xs[i]) != want) return fail("cross arc inconsistent");
            }
        Permutation sigma_ext = Permutation(inv_img).inverse();
        // Extension anchor and restriction.
        std::vector<int> img;
        if (r == ObstructionKind::eq) {
            if (sigma_ext(m - 1) != m - 1) return fail("extension fixed point missing");
            img.assign(sigma_ext.image().begin(), sigma_ext.image().end() - 1);
        } else {
            if (sigma_ext(0) != m - 1) return fail("extension maximum missing");
            img.assign(sigma_ext.image().begin() + 1, sigma_ext.image().end());
        }
        if (int(img.size()) < 2) return fail("decoded permutation too small");
        out.sigma = Permutation(std::move(img));
        out.roles.x_ids = xs;
        out.roles.y_ids = ys;
        return true;
    }
};

} // namespace

DecodeResult decode_F(ObstructionKind r, const Digraph& t) {
    DecodeCtx ctx{t, {}};
    if (t.kind() != GraphKind::tournament) {
        ctx.fail("not a tournament");
        return ctx.out;
    }
    if (t.n() < 6 || t.n() % 2 != 0) {
        ctx.fail("vertex count is not an even number >= 6");
        return ctx.out;
    }
    switch (r) {
        case ObstructionKind::eq: {
            auto anchors = ctx.with_out_degree(1);
            if (anchors.size() != 1) {
                ctx.fail("expected a unique out-degree-1 vertex");
                return ctx.out;
            }
            int y_last = anchors[0];
            int x_last = t.out_neighbors(y_last).first();
            Bitset x_set = t.in_neighbors(x_last);
            x_set.set(x_last);
            x_set.reset(y_last);
            ctx.finish(r, x_set);
            return ctx.out;
        }
        case ObstructionKind::leq: {
            auto anchors = ctx.with_out_degree(1);
            if (anchors.size() != 1) {
                ctx.fail("expected a unique out-degree-1 vertex");
                return ctx.out;
            }
            int y_last = anchors[0];
            int x_first = t.out_neighbors(y_last).first();
            Bitset x_set = t.out_neighbors(x_first);
            x_set.set(x_first);
            x_set.reset(y_last); // defensive; y_last never beats into X
            ctx.finish(r, x_set);
            return ctx.out;
        }
        case ObstructionKind::geq: {
            auto candidates = ctx.with_in_degree(1);
            int x_first = -1;
            if (candidates.size() == 1) {
                x_first = candidates[0];
            } else if (candidates.size() == 2) {
                // Both x_1 and y_1 can have in-degree 1; the arc between
                // them leaves x_1 as the source.
                int a = candidates[0], b = candidates[1];
                x_first = t.has_arc(a, b) ? a : b;
            } else {
                ctx.fail("expected one or two in-degree-1 vertices");
                return ctx.out;
            }
            if (t.in_neighbors(x_first).count() != 1) {
                ctx.fail("x_1 candidate lost its in-degree anchor");
                return ctx.out;
            }
            int y_last = t.in_neighbors(x_first).first();
            Bitset x_set = t.out_neighbors(y_last);
            if (!x_set.test(x_first)) {
                ctx.fail("x_1 is not an out-neighbour of the extension vertex");
                return ctx.out;
            }
            ctx.finish(r, x_set);
            return ctx.out;
        }
    }
    ctx.fail("unknown kind");
    return ctx.out;
}

std::optional<RepresentationViolation> verify_chain_representation(
    const ChainOrderRepresentation& rep, const Digraph& g) {
    auto totally_ordered = [&](const std::vector<int>& set, const ChainQuasiOrder& q,
                               const char* name) -> std::optional<RepresentationViolation> {
        std::vector<int> ranks;
        for (int v : set) {
            if (v < 0 || v >= g.n())
                return RepresentationViolation{std::string(name) + ": vertex out of range"};
            ranks.push_back(q.rank(v));
        }
        std::sort(ranks.begin(), ranks.end());
        for (size_t i = 1; i < ranks.size(); ++i)
            if (ranks[i] == ranks[i - 1])
                return RepresentationViolation{std::string(name) +
                                               " is not totally ordered by its quasi-order"};
        return std::nullopt;
    };
    for (int v : rep.a)
        for (int w : rep.b)
            if (v == w) return RepresentationViolation{"A and B are not disjoint"};
    if (auto bad = totally_ordered(rep.a, rep.order1, "A")) return bad;
    if (auto bad = totally_ordered(rep.b, rep.order2, "B")) return bad;
    std::vector<int> a_sorted = rep.a, b_sorted = rep.b;
    std::sort(a_sorted.begin(), a_sorted.end(),
              [&](int u, int v) { return rep.order1.rank(u) < rep.order1.rank(v); });
    std::sort(b_sorted.begin(), b_sorted.end(),
              [&](int u, int v) { return rep.order2.rank(u) < rep.order2.rank(v); });
    Matrix claimed = build_M(rep.kind, rep.sigma);
    if (claimed.rows() != int(a_sorted.size()) || claimed.cols() != int(b_sorted.size()))
        return RepresentationViolation{"claimed matrix has the wrong shape"};
    Matrix actual = adjacency_submatrix(g, a_sorted, b_sorted);
    if (!(actual == claimed)) return RepresentationViolation{"adjacency matrix mismatch"};
    return std::nullopt;
}

DisjointifiedDivision disjointify_division(const std::vector<std::pair<int, int>>& row_parts,
                                           const std::vector<std::pair<int, int>>& col_parts) {
    if (row_parts.size() != col_parts.size() || row_parts.size() % 2 != 0)
        throw input_error("disjointify_division: need two families of 2k intervals");
    int k = int(row_parts.size()) / 2;
    if (k == 0) throw input_error("disjointify_division: k must be >= 1");
    auto check_family = [](const std::vector<std::pair<int, int>>& f, const char* name) {
        for (size_t i = 0; i < f.size(); ++i) {
            if (f[i].first > f[i].second)
                throw input_error(std::string("disjointify_division: empty interval in ") +
                                  name);
            if (i && f[i].first <= f[i - 1].second)
                throw input_error(std::string("disjointify_division: ") + name +
                                  " intervals not increasing");
        }
    };
    check_family(row_parts, "rows");
    check_family(col_parts, "columns");
    DisjointifiedDivision out;
    if (row_parts[k - 1].second < col_parts[k].first) {
        out.rows_first = true;
        out.row_parts.assign(row_parts.begin(), row_parts.begin() + k);
        out.col_parts.assign(col_parts.begin() + k, col_parts.end());
    } else if (col_parts[k - 1].second < row_parts[k].first) {
        out.rows_first = false;
        out.row_parts.assign(row_parts.begin() + k, row_parts.end());
        out.col_parts.assign(col_parts.begin(), col_parts.begin() + k);
    } else {
        // Cannot happen for genuine interval families: if the first half
        // of rows reaches past the start of the second half of columns,
        // the first half of columns must end before the second half of
        // rows begins.
        throw verification_error("disjointify_division: neither orientation separates");
    }
    // Final disjointness check across the chosen parts.
    std::vector<std::pair<int, int>> all = out.row_parts;
    all.insert(all.end(), out.col_parts.begin(), out.col_parts.end());
    std::sort(all.begin(), all.end());
    for (size_t i = 1; i < all.size(); ++i)
        if (all[i].first <= all[i - 1].second)
            throw verification_error("disjointify_division: chosen parts overlap");
    return out;
}

namespace {

FamilyEnumeration enumerate_one(ObstructionKind r, int m, int threads) {
    std::vector<Permutation> sigmas;
    std::vector<int> img(m);
    std::iota(img.begin(), img.end(), 0);
    do {
        sigmas.emplace_back(img);
    } while (std::next_permutation(img.begin(), img.end()));

    struct Item {
        std::string form;
        std::uint64_t auts;
    };
    std::vector<Item> items(sigmas.size());
    auto work = [&](size_t from, size_t to) {
        for (size_t i = from; i < to; ++i) {
            auto [g, roles] = build_F(r, extend_sigma(r, sigmas[i]));
            items[i].form = canonical_form(g);
            items[i].auts = automorphism_count(g);
        }
    };
    if (threads <= 1) {
        work(0, sigmas.size());
    } else {
        std::vector<std::future<void>> futs;
        size_t chunk = (sigmas.size() + threads - 1) / threads;
        for (size_t from = 0; from < sigmas.size(); from += chunk)
            futs.push_back(std::async(std::launch::async, work, from,
                                      std::min(sigmas.size(), from + chunk)));
        for (auto& f : futs) f.get();
    }
    FamilyEnumeration out;
    out.m = m;
    for (const auto& it : items) {
        out.canonical_forms.push_back(it.form);
        out.automorphism_counts.push_back(it.auts);
        if (it.auts != 1) out.all_rigid = false;
    }
    std::sort(out.canonical_forms.begin(), out.canonical_forms.end());
    out.distinct = int(std::unique(out.canonical_forms.begin(), out.canonical_forms.end()) -
                       out.canonical_forms.begin());
    out.canonical_forms.resize(out.distinct);
    return out;
}

} // namespace

std::vector<FamilyEnumeration> enumerate_family(ObstructionKind r, int m_max, int threads) {
    if (m_max > 4)
        throw size_limit_error("enumerate_family: m_max=" + std::to_string(m_max) +
                               " exceeds cap 4");
    std::vector<FamilyEnumeration> out;
    for (int m = 2; m <= m_max; ++m) out.push_back(enumerate_one(r, m, threads));
    return out;
}

namespace {

FormulaPtr out_degree_one(const std::string& u) {
    // u has a unique out-neighbour
    return f_exists("w_", f_and({f_rel("arc", u, "w_"),
                                 f_forall("z_", f_or({f_eq("z_", "w_"),
                                                      f_not(f_rel("arc", u, "z_"))}))}));
}

FormulaPtr in_degree_one(const std::string& u) {
    return f_exists("w_", f_and({f_rel("arc", "w_", u),
                                 f_forall("z_", f_or({f_eq("z_", "w_"),
                                                      f_not(f_rel("arc", "z_", u))}))}));
}

// v is in X, for each kind's anchor construction.
FormulaPtr member_of_x(ObstructionKind r, const std::string& v) {
    switch (r) {
        case ObstructionKind::eq:
            // X = in-neighbours of the anchor's out-neighbour, plus that
            // vertex, minus the anchor itself.
            return f_exists(
                "u_", f_and({out_degree_one("u_"),
                             f_exists("m_", f_and({f_rel("arc", "u_", "m_"),
                                                   f_or({f_eq(v, "m_"),
                                                         f_and({f_rel("arc", v, "m_"),
                                                                f_not(f_eq(v, "u_"))})})}))}));
        case ObstructionKind::leq:
            // X = out-neighbours of the anchor's out-neighbour, plus it.
            return f_exists(
                "u_", f_and({out_degree_one("u_"),
                             f_exists("m_", f_and({f_rel("arc", "u_", "m_"),
                                                   f_or({f_eq(v, "m_"),
                                                         f_rel("arc", "m_", v)})}))}));
        case ObstructionKind::geq: {
            // x_1: in-degree 1 and beats any other in-degree-1 vertex;
            // the anchor is its unique in-neighbour; X = anchor's
            // out-neighbourhood.
            FormulaPtr is_x1 =
                f_and({in_degree_one("p_"),
                       f_forall("q_", f_or({f_eq("q_", "p_"), f_not(in_degree_one("q_")),
                                            f_rel("arc", "p_", "q_")}))});
            return f_exists(
                "p_", f_and({is_x1, f_exists("a_", f_and({f_rel("arc", "a_", "p_"),
                                                          f_rel("arc", "a_", v)}))}));
        }
    }
    throw input_error("member_of_x: unknown kind");
}

FormulaPtr anchor_formula(ObstructionKind r, const std::string& v) {
    switch (r) {
        case ObstructionKind::eq:
        case ObstructionKind::leq: return out_degree_one(v);
        case ObstructionKind::geq: {
            FormulaPtr is_x1 =
                f_and({in_degree_one("p_"),
                       f_forall("q_", f_or({f_eq("q_", "p_"), f_not(in_degree_one("q_")),
                                            f_rel("arc", "p_", "q_")}))});
            return f_exists("p_", f_and({is_x1, f_rel("arc", v, "p_")}));
        }
    }
    throw input_error("anchor_formula: unknown kind");
}

} // namespace

Interpretation decode_interpretation(ObstructionKind r) {
    Interpretation phi;
    phi.dom = f_and({f_not(member_of_x(r, "x")), f_not(anchor_formula(r, "x"))});
    // First order of the bi-order: the position within X pulled back
    // through the matching (eq) or the in-neighbourhood inclusion order
    // (leq: reversed inclusion, geq: inclusion).
    FormulaPtr ord1;
    switch (r) {
        case ObstructionKind::eq:
            ord1 = f_exists(
                "p_", f_and({member_of_x(r, "p_"), f_rel("arc", "x", "p_"),
                             f_exists("q_", f_and({member_of_x(r, "q_"), f_rel("arc", "y", "q_"),
                                                   f_rel("arc", "p_", "q_")}))}));
            break;
        case ObstructionKind::leq:
            // strict superset of in-neighbourhoods within X
            ord1 = f_and(
                {f_forall("z_", f_or({f_not(f_and({member_of_x(r, "z_"),
                                                   f_rel("arc", "z_", "y")})),
                                      f_rel("arc", "z_", "x")})),
                 f_exists("z_", f_and({member_of_x(r, "z_"), f_rel("arc", "z_", "x"),
                                       f_not(f_rel("arc", "z_", "y"))}))});
            break;
        case ObstructionKind::geq:
            // strict subset of in-neighbourhoods within X
            ord1 = f_and(
                {f_forall("z_", f_or({f_not(f_and({member_of_x(r, "z_"),
                                                   f_rel("arc", "z_", "x")})),
                                      f_rel("arc", "z_", "y")})),
                 f_exists("z_", f_and({member_of_x(r, "z_"), f_rel("arc", "z_", "y"),
                                       f_not(f_rel("arc", "z_", "x"))}))});
            break;
    }
    phi.relations.emplace_back("ord", ord1);
    // Second order: the chain order inside Y.
    phi.relations.emplace_back("ord2", f_rel("arc", "x", "y"));
    return phi;
}

} // namespace tw

#include "doctest.h"

#include <random>
#include <sstream>

#include "oracles.hpp"
#include "tw/obstructions.hpp"
#include "tw/twinwidth.hpp"

using namespace tw;

namespace {

ContractionSequence random_sequence(int n, std::mt19937_64& rng) {
    ContractionSequence seq;
    seq.n = n;
    std::vector<int> reps(n);
    std::iota(reps.begin(), reps.end(), 0);
    while (reps.size() > 1) {
        int i = int(rng() % reps.size());
        int j = int(rng() % (reps.size() - 1));
        if (j >= i) ++j;
        seq.merges.emplace_back(reps[i], reps[j]);
        reps.erase(reps.begin() + std::max(i, j));
    }
    return seq;
}

BinaryStructure random_structure(int n, int rels, std::mt19937_64& rng) {
    BinaryStructure s(n);
    for (int r = 0; r < rels; ++r) {
        std::vector<Bitset> rows(n, Bitset(n));
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v)
                if (u != v && (rng() & 1)) rows[u].set(v);
        s.add_relation(r == 0 ? "arc" : "rel" + std::to_string(r), std::move(rows));
    }
    return s;
}

// All contraction sequences of a tiny structure, by recursion.
void all_sequences(int n, std::vector<int> reps, ContractionSequence cur,
                   std::vector<ContractionSequence>& out) {
    if (reps.size() == 1) {
        out.push_back(cur);
        return;
    }
    for (size_t i = 0; i < reps.size(); ++i)
        for (size_t j = i + 1; j < reps.size(); ++j) {
            auto next_reps = reps;
            next_reps.erase(next_reps.begin() + j);
            auto next_cur = cur;
            next_cur.merges.emplace_back(reps[i], reps[j]);
            all_sequences(n, next_reps, next_cur, out);
        }
}

} // namespace

TEST_CASE("is_homogeneous") {
    BinaryStructure tr = BinaryStructure::from_digraph(oracles::transitive_tournament(3));
    Bitset x(3), y(3);
    x.set(0);
    y.set(1);
    CHECK(is_homogeneous(tr, x, y)); // singletons
    Bitset xy(3);
    xy.set(0);
    xy.set(1);
    Bitset z(3);
    z.set(2);
    CHECK(is_homogeneous(tr, xy, z));
    BinaryStructure c3 = BinaryStructure::from_digraph(oracles::c3());
    CHECK_FALSE(is_homogeneous(c3, xy, z)); // 1->2 but 2->0
    CHECK_THROWS_AS(is_homogeneous(c3, xy, xy), input_error);
}

TEST_CASE("width_of_sequence on interval merges of a transitive tournament") {
    for (int n : {2, 5, 9}) {
        BinaryStructure s = BinaryStructure::from_digraph(oracles::transitive_tournament(n));
        ContractionSequence seq;
        seq.n = n;
        for (int i = 1; i < n; ++i) seq.merges.emplace_back(0, i); // grow a prefix interval
        for (auto mode : {WidthMode::incremental, WidthMode::recompute})
            CHECK(width_of_sequence(s, seq, mode).width == 0);
    }
}

TEST_CASE("width_of_sequence on C3: every sequence has width 1") {
    BinaryStructure s = BinaryStructure::from_digraph(oracles::c3());
    std::vector<ContractionSequence> seqs;
    ContractionSequence empty;
    empty.n = 3;
    all_sequences(3, {0, 1, 2}, empty, seqs);
    CHECK(seqs.size() == 3);
    for (const auto& seq : seqs) {
        CHECK(width_of_sequence(s, seq, WidthMode::recompute).width == 1);
        CHECK(width_of_sequence(s, seq, WidthMode::incremental).width == 1);
    }
}

TEST_CASE("bi-relation width sees the order") {
    Digraph c3 = oracles::c3();
    VertexOrder ord(std::vector<int>{0, 1, 2});
    BinaryStructure s = BinaryStructure::from_digraph_with_order(c3, ord);
    ContractionSequence seq;
    seq.n = 3;
    seq.merges = {{0, 1}, {0, 2}};
    CHECK(width_of_sequence(s, seq).width >= 1);
}

TEST_CASE("incremental and recompute modes agree on random inputs") {
    std::mt19937_64 rng(73);
    for (int it = 0; it < 1000; ++it) {
        int n = 2 + int(rng() % 11);
        BinaryStructure s = random_structure(n, 1 + int(rng() % 2), rng);
        ContractionSequence seq = random_sequence(n, rng);
        auto a = width_of_sequence(s, seq, WidthMode::incremental);
        auto b = width_of_sequence(s, seq, WidthMode::recompute);
        CHECK(a.width == b.width);
        CHECK(a.step_max == b.step_max);
    }
}

TEST_CASE("exact_twin_width basics") {
    for (int n = 1; n <= 6; ++n) {
        BinaryStructure s = BinaryStructure::from_digraph(oracles::transitive_tournament(n));
        auto [w, seq] = exact_twin_width(s);
        CHECK(w == 0);
        if (n >= 2) CHECK(width_of_sequence(s, seq).width == 0);
    }
    BinaryStructure c3 = BinaryStructure::from_digraph(oracles::c3());
    auto [w, seq] = exact_twin_width(c3);
    CHECK(w == 1);
    CHECK(width_of_sequence(c3, seq).width == 1);
    std::mt19937_64 rng(1);
    CHECK_THROWS_AS(exact_twin_width(random_structure(9, 1, rng), 8), size_limit_error);
}

TEST_CASE("exact_twin_width cross-checked by the unmemoized enumerator") {
    // the 8-vertex obstruction generator
    auto sigma = Permutation::from_one_line_1based({2, 1, 3});
    auto [g, roles] = build_F(ObstructionKind::eq, extend_sigma(ObstructionKind::eq, sigma));
    REQUIRE(g.n() == 8);
    BinaryStructure s = BinaryStructure::from_digraph(g);
    auto [w, seq] = exact_twin_width(s);
    CHECK(w == oracles::twin_width_unmemoized(s));
    CHECK(width_of_sequence(s, seq).width == w);
    // and the 6-vertex one
    auto sigma2 = Permutation::from_one_line_1based({2, 1});
    auto [g2, roles2] = build_F(ObstructionKind::eq, extend_sigma(ObstructionKind::eq, sigma2));
    BinaryStructure s2 = BinaryStructure::from_digraph(g2);
    CHECK(exact_twin_width(s2).first == oracles::twin_width_unmemoized(s2));
}

TEST_CASE("exact_twin_width is isomorphism-invariant and hereditary") {
    std::mt19937_64 rng(79);
    for (int it = 0; it < 8; ++it) {
        int n = 4 + int(rng() % 3);
        Digraph g = random_tournament(n, rng);
        BinaryStructure s = BinaryStructure::from_digraph(g);
        int w = exact_twin_width(s).first;
        // relabeling
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        CHECK(exact_twin_width(BinaryStructure::from_digraph(relabel(g, perm))).first == w);
        // induced substructures never have larger twin-width
        for (int drop = 0; drop < n; ++drop) {
            std::vector<int> keep;
            for (int v = 0; v < n; ++v)
                if (v != drop) keep.push_back(v);
            CHECK(exact_twin_width(s.induced(keep)).first <= w);
        }
        // dropping the order relation cannot raise the width
        std::vector<int> idorder(n);
        std::iota(idorder.begin(), idorder.end(), 0);
        BinaryStructure bi = BinaryStructure::from_digraph_with_order(g, VertexOrder(idorder));
        CHECK(w <= exact_twin_width(bi).first);
    }
}

TEST_CASE("greedy_contraction") {
    Digraph tr = oracles::transitive_tournament(7);
    std::vector<int> idorder(7);
    std::iota(idorder.begin(), idorder.end(), 0);
    VertexOrder ord(idorder);
    BinaryStructure s = BinaryStructure::from_digraph(tr);
    auto [rep, seq] = greedy_contraction(s, GreedyPolicy::order_adjacent, &ord);
    CHECK(rep.width == 0);
    CHECK(width_of_sequence(s, seq).width == 0);

    BinaryStructure c3 = BinaryStructure::from_digraph(oracles::c3());
    auto [rep2, seq2] = greedy_contraction(c3, GreedyPolicy::best_pair);
    CHECK(rep2.width == 1);

    // greedy is an upper bound on the exact value
    std::mt19937_64 rng(83);
    for (int it = 0; it < 10; ++it) {
        int n = 3 + int(rng() % 4);
        BinaryStructure t = BinaryStructure::from_digraph(random_tournament(n, rng));
        auto exact = exact_twin_width(t).first;
        auto greedy = greedy_contraction(t, GreedyPolicy::best_pair).first.width;
        CHECK(greedy >= exact);
    }
    CHECK_THROWS_AS(greedy_contraction(s, GreedyPolicy::order_adjacent, nullptr), input_error);
}

TEST_CASE("approximate_tournament_tww") {
    SUBCASE("transitive inputs take the contraction branch with width 0") {
        for (auto strat : {BstStrategy::insertion, BstStrategy::random_pivot,
                           BstStrategy::median_pivot}) {
            auto res = approximate_tournament_tww(oracles::transitive_tournament(16), 2, strat, 5);
            CHECK(res.kind == TournamentApproxResult::Kind::contraction);
            CHECK(res.report.width == 0);
        }
    }
    SUBCASE("single vertex") {
        auto res = approximate_tournament_tww(oracles::transitive_tournament(1), 1,
                                              BstStrategy::insertion, 0);
        CHECK(res.kind == TournamentApproxResult::Kind::contraction);
        CHECK(res.report.width == 0);
        CHECK(res.seq.merges.empty());
    }
    SUBCASE("obstruction generators return a verified witness either way") {
        auto sigma9 = Permutation::grid_construction(3);
        auto [g, roles] = build_F(ObstructionKind::eq, extend_sigma(ObstructionKind::eq, sigma9));
        auto res = approximate_tournament_tww(g, 2, BstStrategy::median_pivot, 0);
        if (res.kind == TournamentApproxResult::Kind::rank_division) {
            Matrix adj = adjacency_matrix(g, res.order.seq);
            CHECK(is_rank_division(adj, res.division, 2));
        } else {
            BinaryStructure bi = BinaryStructure::from_digraph_with_order(g, res.order);
            CHECK(width_of_sequence(bi, res.seq, WidthMode::recompute).width ==
                  res.report.width);
        }
    }
}

TEST_CASE("multi-relation adjacency matrix packs one bit per relation") {
    Digraph c3 = oracles::c3();
    VertexOrder ord(std::vector<int>{0, 1, 2});
    BinaryStructure s = BinaryStructure::from_digraph_with_order(c3, ord);
    Matrix m = adjacency_matrix(s, ord.seq);
    CHECK(m.alphabet() == 4);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            int want = (c3.has_arc(i, j) ? 1 : 0) | (i < j ? 2 : 0);
            CHECK(int(m(i, j)) == want);
        }
    // the plain digraph adjacency agrees with the single-relation packing
    Matrix plain = adjacency_matrix(c3, ord.seq);
    Matrix single = adjacency_matrix(BinaryStructure::from_digraph(c3), ord.seq);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(plain(i, j) == single(i, j));
}

TEST_CASE("contraction sequence text format") {
    ContractionSequence seq;
    seq.n = 4;
    seq.merges = {{0, 2}, {0, 1}, {0, 3}};
    std::istringstream in(format_contraction_sequence(seq));
    ContractionSequence back = parse_contraction_sequence(in);
    CHECK(back.n == seq.n);
    CHECK(back.merges == seq.merges);
}

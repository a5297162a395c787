#include "doctest.h"

#include <random>
#include <sstream>

#include "oracles.hpp"
#include "tw/digraph.hpp"

using namespace tw;

TEST_CASE("build_graph accepts C3 and rejects bad inputs") {
    Digraph c3 = build_graph(3, {{0, 1}, {1, 2}, {2, 0}}, GraphKind::tournament);
    CHECK(c3.has_arc(0, 1));
    CHECK(c3.has_arc(2, 0));
    CHECK_FALSE(c3.has_arc(1, 0));
    // undecided pair {1,3}
    CHECK_THROWS_AS(build_graph(3, {{0, 1}, {1, 2}}, GraphKind::tournament), input_error);
    // digon
    CHECK_THROWS_AS(build_graph(2, {{0, 1}, {1, 0}}, GraphKind::oriented), input_error);
    // loop
    CHECK_THROWS_AS(build_graph(2, {{1, 1}}, GraphKind::oriented), input_error);
    // out of range
    CHECK_THROWS_AS(build_graph(2, {{0, 5}}, GraphKind::oriented), input_error);
}

TEST_CASE("tournament pairs are oriented exactly one way") {
    std::mt19937_64 rng(7);
    for (int it = 0; it < 20; ++it) {
        Digraph g = random_tournament(1 + int(rng() % 30), rng);
        for (int u = 0; u < g.n(); ++u)
            for (int v = u + 1; v < g.n(); ++v) CHECK(g.has_arc(u, v) != g.has_arc(v, u));
    }
}

TEST_CASE("independence_number") {
    CHECK(independence_number(oracles::c3()) == 1);
    std::mt19937_64 rng(11);
    for (int it = 0; it < 10; ++it)
        CHECK(independence_number(random_tournament(8, rng)) == 1);
    Digraph empty4 = build_graph(4, {}, GraphKind::oriented);
    CHECK(independence_number(empty4) == 4);
    Digraph two_arcs = build_graph(4, {{0, 1}, {2, 3}}, GraphKind::oriented);
    CHECK(independence_number(two_arcs) == oracles::max_independent_set(two_arcs));
    CHECK(independence_number(two_arcs) == 2);
    // random oriented graphs against the subset-enumeration oracle
    for (int it = 0; it < 20; ++it) {
        Digraph g = random_oriented_small_alpha(10, rng);
        CHECK(independence_number(g) == oracles::max_independent_set(g));
    }
    CHECK_THROWS_AS(independence_number(empty4, 3), size_limit_error);
}

TEST_CASE("chain_order") {
    Digraph tr = oracles::transitive_tournament(3);
    Bitset all(3);
    all.set_all();
    auto chain = chain_order(tr, all);
    REQUIRE(chain.has_value());
    CHECK(*chain == std::vector<int>{0, 1, 2});
    Bitset c3all(3);
    c3all.set_all();
    CHECK_FALSE(chain_order(oracles::c3(), c3all).has_value());
    Digraph sparse = build_graph(3, {{0, 1}}, GraphKind::oriented);
    CHECK_FALSE(chain_order(sparse, all).has_value());
    // every consecutive pair of the returned enumeration is an arc
    std::mt19937_64 rng(3);
    for (int it = 0; it < 30; ++it) {
        Digraph g = random_tournament(7, rng);
        Bitset s(7);
        for (int v = 0; v < 7; ++v)
            if (rng() & 1) s.set(v);
        if (auto c = chain_order(g, s)) {
            for (size_t i = 0; i < c->size(); ++i)
                for (size_t j = i + 1; j < c->size(); ++j) CHECK(g.has_arc((*c)[i], (*c)[j]));
        }
    }
}

TEST_CASE("canonical_form identifies isomorphism classes") {
    // two labelings of C3
    Digraph a = oracles::c3();
    Digraph b = build_graph(3, {{1, 0}, {0, 2}, {2, 1}}, GraphKind::tournament);
    CHECK(canonical_form(a) == canonical_form(b));
    CHECK(canonical_form(a) != canonical_form(oracles::transitive_tournament(3)));

    // all 4-vertex tournaments: classify by the brute-force oracle and by
    // canonical forms; both must give 4 classes
    auto all4 = oracles::all_tournaments(4);
    std::vector<Digraph> reps;
    for (const auto& g : all4) {
        bool found = false;
        for (const auto& r : reps)
            if (oracles::isomorphic(g, r)) found = true;
        if (!found) reps.push_back(g);
    }
    CHECK(reps.size() == 4);
    std::set<std::string> forms;
    for (const auto& g : all4) forms.insert(canonical_form(g));
    CHECK(forms.size() == 4);
    CHECK_THROWS_AS(canonical_form(oracles::transitive_tournament(11)), size_limit_error);
}

TEST_CASE("canonical_form is relabeling-invariant for n <= 6") {
    std::mt19937_64 rng(23);
    for (int n : {1, 2, 3, 4, 5, 6}) {
        Digraph g = random_tournament(n, rng);
        std::string form = canonical_form(g);
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        do {
            CHECK(canonical_form(relabel(g, perm)) == form);
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
}

TEST_CASE("automorphism_count") {
    CHECK(automorphism_count(oracles::c3()) == 3);
    CHECK(automorphism_count(oracles::c3()) == oracles::automorphism_count(oracles::c3()));
    for (int n : {1, 4, 7}) CHECK(automorphism_count(oracles::transitive_tournament(n)) == 1);
    std::mt19937_64 rng(29);
    for (int it = 0; it < 10; ++it) {
        Digraph g = random_tournament(6, rng);
        CHECK(automorphism_count(g) == oracles::automorphism_count(g));
    }
}

TEST_CASE("digraph text format round trip and errors") {
    std::mt19937_64 rng(31);
    Digraph g = random_tournament(9, rng);
    std::string text = format_digraph(g);
    std::istringstream in(text);
    Digraph h = parse_digraph(in, GraphKind::tournament);
    CHECK(g == h);
    std::istringstream bad("p dtw 2 1\na 1 5\n");
    CHECK_THROWS_AS(parse_digraph(bad, GraphKind::oriented), input_error);
    std::istringstream comment("# hi\np dtw 2 1\na 1 2\n");
    CHECK(parse_digraph(comment, GraphKind::oriented).has_arc(0, 1));
}

TEST_CASE("random_oriented_small_alpha stays within alpha <= 3") {
    std::mt19937_64 rng(37);
    for (int it = 0; it < 25; ++it) {
        Digraph g = random_oriented_small_alpha(12, rng);
        validate_graph(g);
        CHECK(oracles::max_independent_set(g) <= 3);
    }
}

#include "doctest.h"

#include <functional>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "tw/bst.hpp"

using namespace tw;

TEST_CASE("insertion build on a transitive tournament gives the right spine") {
    Digraph tr = oracles::transitive_tournament(3);
    BstTree t = bst_build_insertion(tr, {0, 1, 2});
    CHECK(t.root == 0);
    CHECK(t.right[0] == 1);
    CHECK(t.right[1] == 2);
    CHECK(t.left[0] == -1);
    CHECK(left_to_right(t).seq == std::vector<int>{0, 1, 2});
}

TEST_CASE("insertion build on C3 follows the descent rules") {
    BstTree t = bst_build_insertion(oracles::c3(), {0, 1, 2});
    CHECK(t.root == 0);
    CHECK(t.right[0] == 1); // 0 -> 1
    CHECK(t.left[0] == 2);  // 2 -> 0
    CHECK(left_to_right(t).seq == std::vector<int>{2, 0, 1});
}

TEST_CASE("single vertex tree") {
    Digraph one(1, GraphKind::tournament);
    BstTree t = bst_build_insertion(one, {0});
    CHECK(t.root == 0);
    CHECK(left_to_right(t).seq == std::vector<int>{0});
    CHECK(branch(t, 0) == std::vector<int>{0});
}

TEST_CASE("bst_validate accepts built trees and pinpoints violations") {
    std::mt19937_64 rng(41);
    for (int it = 0; it < 40; ++it) {
        int n = 1 + int(rng() % 50);
        Digraph g = random_tournament(n, rng);
        std::vector<int> seq(n);
        std::iota(seq.begin(), seq.end(), 0);
        std::shuffle(seq.begin(), seq.end(), rng);
        for (auto t : {bst_build_insertion(g, seq), bst_build_random(g, rng()),
                       bst_build_median(g)})
            CHECK_FALSE(bst_validate(g, t).has_value());
    }
    // transitive 0->1->2 with root 1 and left child 2: 2 is an
    // out-neighbour of 1, not an in-neighbour
    Digraph tr = oracles::transitive_tournament(3);
    BstTree bad(3, BstTree::Arity::binary);
    bad.root = 1;
    bad.left[1] = 2;
    bad.right[1] = -1;
    bad.left[2] = 0;
    auto v = bst_validate(tr, bad);
    REQUIRE(v.has_value());
    CHECK(v->node == 1);
    CHECK(v->child == 2);
    // ternary tree putting an adjacent vertex into a center subtree
    Digraph og = build_graph(2, {{0, 1}}, GraphKind::oriented);
    BstTree tern(2, BstTree::Arity::ternary);
    tern.root = 0;
    tern.center[0] = 1;
    auto tv = bst_validate(og, tern);
    REQUIRE(tv.has_value());
    CHECK(tv->node == 0);
    CHECK(tv->child == 1);
}

TEST_CASE("ternary build places non-adjacent vertices in center subtrees") {
    std::mt19937_64 rng(43);
    for (int it = 0; it < 30; ++it) {
        int n = 3 + int(rng() % 40);
        Digraph g = random_oriented_small_alpha(n, rng);
        std::vector<int> seq(n);
        std::iota(seq.begin(), seq.end(), 0);
        std::shuffle(seq.begin(), seq.end(), rng);
        BstTree t = bst_build_insertion(g, seq);
        CHECK(t.arity == BstTree::Arity::ternary);
        CHECK_FALSE(bst_validate(g, t).has_value());
        CHECK_FALSE(bst_validate(g, bst_build_random(g, rng())).has_value());
    }
}

TEST_CASE("ancestor rule: arc x->y iff x <_S y, for ancestor pairs") {
    std::mt19937_64 rng(47);
    for (int it = 0; it < 25; ++it) {
        int n = 2 + int(rng() % 60);
        Digraph g = random_tournament(n, rng);
        BstTree t = bst_build_random(g, rng());
        VertexOrder ord = left_to_right(t);
        std::vector<int> path;
        std::function<void(int)> dfs = [&](int v) {
            for (int anc : path)
                CHECK(g.has_arc(anc, v) == (ord.rank[anc] < ord.rank[v]));
            path.push_back(v);
            for (int c : {t.left[v], t.right[v]})
                if (c >= 0) dfs(c);
            path.pop_back();
        };
        dfs(t.root);
    }
}

TEST_CASE("branch is a chain agreeing with the in-order position") {
    Digraph tr = oracles::transitive_tournament(3);
    BstTree spine = bst_build_insertion(tr, {0, 1, 2});
    auto b = branch(spine, 2);
    CHECK(b == std::vector<int>{0, 1, 2});
    auto chain = chain_order(tr, b);
    REQUIRE(chain.has_value());
    CHECK(*chain == b);

    BstTree t = bst_build_insertion(oracles::c3(), {0, 1, 2});
    auto b2 = branch(t, 2);
    CHECK(b2 == std::vector<int>{0, 2});
    auto chain2 = chain_order(oracles::c3(), b2);
    REQUIRE(chain2.has_value());
    VertexOrder ord = left_to_right(t);
    for (size_t i = 0; i + 1 < chain2->size(); ++i)
        CHECK(ord.rank[(*chain2)[i]] < ord.rank[(*chain2)[i + 1]]);

    CHECK_THROWS_AS(branch(t, 0), input_error); // root has children
}

TEST_CASE("branch_chain_split") {
    // no center steps: the whole branch is the chain part
    Digraph tr = oracles::transitive_tournament(4);
    BstTree spine = bst_build_insertion(tr, {0, 1, 2, 3});
    auto split = branch_chain_split(tr, spine, 3);
    CHECK(split.chain_part == std::vector<int>{0, 1, 2, 3});
    CHECK(split.independent_part.empty());

    // explicit 5-vertex oriented example with one center step: vertex 0
    // is isolated, 1..4 form a forward chain, so the branch to leaf 4
    // enters the center subtree of the root
    Digraph g = build_graph(5, {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}},
                            GraphKind::oriented);
    BstTree t = bst_build_insertion(g, {0, 1, 2, 3, 4});
    CHECK(t.center[0] == 1);
    auto b = branch(t, 4);
    CHECK(b == std::vector<int>{0, 1, 2, 3, 4});
    auto sp = branch_chain_split(g, t, 4);
    CHECK(sp.independent_part == std::vector<int>{0});
    CHECK(sp.chain_part == std::vector<int>{1, 2, 3, 4});
    auto chain = chain_order(g, sp.chain_part);
    REQUIRE(chain.has_value());
    CHECK(int(sp.independent_part.size()) <= independence_number(g));
}

TEST_CASE("bst text format round trip") {
    std::mt19937_64 rng(53);
    Digraph g = random_tournament(8, rng);
    BstTree t = bst_build_random(g, 9);
    std::istringstream in(format_bst(t));
    BstTree u = parse_bst(in);
    CHECK(u.root == t.root);
    CHECK(u.left == t.left);
    CHECK(u.right == t.right);
    Digraph og = random_oriented_small_alpha(9, rng);
    BstTree t3 = bst_build_random(og, 5);
    std::istringstream in3(format_bst(t3));
    BstTree u3 = parse_bst(in3);
    CHECK(u3.center == t3.center);
    CHECK_FALSE(bst_validate(og, u3).has_value());
}

#include <doctest.h>

#include "stochmatch/generator.hpp"
#include "stochmatch/policy.hpp"
#include "support/instances.hpp"
#include "support/oracles.hpp"

#include <cmath>

using namespace stochmatch;

TEST_CASE("greedy picks the largest probability, ties by index") {
    const Instance inst{4, {{0, 1, 0.5}, {1, 2, 0.9}, {2, 3, 0.5}}, {1, 1, 1, 1}};
    CHECK(greedy_policy(inst).choose(inst, initial_state(inst)) == EdgeId{1});
    const Instance flat{4, {{0, 1, 0.5}, {1, 2, 0.5}, {2, 3, 0.5}}, {1, 1, 1, 1}};
    CHECK(greedy_policy(flat).choose(flat, initial_state(flat)) == EdgeId{0});
    CHECK_FALSE(greedy_policy(fixtures::empty_graph()).choose(fixtures::empty_graph(),
                                                              initial_state(fixtures::empty_graph())));
}

TEST_CASE("greedy order along the all-failure path of P4") {
    const Instance inst = fixtures::p4();
    const Policy grd = greedy_policy(inst);
    State s = initial_state(inst);
    std::vector<EdgeId> seen;
    while (Choice c = grd.choose(inst, s)) {
        seen.push_back(*c);
        s = apply_failure(inst, s, *c);
    }
    CHECK(seen == std::vector<EdgeId>{1, 0, 2});
}

TEST_CASE("policy contract is enforced") {
    const Instance inst = fixtures::p4();
    const Policy idle("idle", [](const State&) -> Choice { return std::nullopt; });
    CHECK_THROWS_AS(idle.choose(inst, initial_state(inst)), ContractViolation);
    const Policy bogus("bogus", [](const State&) -> Choice { return EdgeId{9}; });
    CHECK_THROWS_AS(bogus.choose(inst, initial_state(inst)), ContractViolation);
    CHECK_THROWS_AS(build_tree(inst, idle), ContractViolation);
}

TEST_CASE("build_tree shapes") {
    const Instance one = fixtures::single_edge(0.7);
    const DecisionTree t = build_tree(one, greedy_policy(one));
    REQUIRE(t.size() == 3);
    CHECK(t.root().edge == EdgeId{0});
    CHECK(t.node(t.root().left).is_leaf());
    CHECK(t.node(t.root().right).is_leaf());

    const DecisionTree empty = build_tree(fixtures::empty_graph(), greedy_policy(fixtures::empty_graph()));
    CHECK(empty.size() == 1);
    CHECK(empty.root().is_leaf());
    CHECK(tree_value(empty) == 0.0);

    // Star K_{1,2} with t_center = 2: root probe, second probe only on failure.
    const Instance star = fixtures::star_k12();
    const DecisionTree st = build_tree(star, greedy_policy(star));
    CHECK(st.internal_count() == 2);
    CHECK(st.size() == 5);
    int max_depth = 0;
    for (const TreeNode& n : st.nodes()) max_depth = std::max(max_depth, n.depth);
    CHECK(max_depth == 2);
}

TEST_CASE("children carry the transition states") {
    const Instance inst = fixtures::p4();
    const DecisionTree t = build_tree(inst, greedy_policy(inst));
    for (const TreeNode& n : t.nodes()) {
        if (n.is_leaf()) {
            CHECK_FALSE(has_probeable_edge(inst, n.state));
            continue;
        }
        CHECK(t.node(n.left).state == apply_success(inst, n.state, *n.edge));
        CHECK(t.node(n.right).state == apply_failure(inst, n.state, *n.edge));
        CHECK(t.node(n.left).reach == doctest::Approx(n.reach * n.p).epsilon(1e-15));
    }
}

TEST_CASE("tree_value and policy_value closed forms") {
    const Instance one = fixtures::single_edge(0.7);
    CHECK(tree_value(build_tree(one, greedy_policy(one))) == 0.7);
    CHECK(policy_value(one, greedy_policy(one)) == 0.7);

    const Instance star = fixtures::star_k12();
    CHECK(std::abs(tree_value(build_tree(star, greedy_policy(star))) - 0.75) <= 1e-12);

    const Instance disjoint = fixtures::two_disjoint();
    const Policy reversed = ordered_policy(disjoint, {1, 0});
    CHECK(std::abs(policy_value(disjoint, greedy_policy(disjoint)) - 1.7) <= 1e-12);
    CHECK(std::abs(policy_value(disjoint, reversed) - 1.7) <= 1e-12);

    const Instance p3 = fixtures::p3();
    CHECK(std::abs(policy_value(p3, greedy_policy(p3)) - 0.98) <= 1e-12);

    CHECK(policy_value(fixtures::empty_graph(), greedy_policy(fixtures::empty_graph())) == 0.0);
}

TEST_CASE("greedy agrees with outcome enumeration") {
    SplitMix64 rng(17);
    for (int i = 0; i < 150; ++i) {
        const Instance inst = random_bounded_instance(rng, 6, 8, 3, ProbabilitySource::Uniform);
        const double expected = oracle::outcome_enumeration_value(inst, oracle::greedy_sequence(inst));
        CHECK(std::abs(policy_value(inst, greedy_policy(inst)) - expected) <= 1e-12);
    }
}

TEST_CASE("evaluator agreement, leaf mass and value bounds") {
    SplitMix64 rng(5);
    for (int i = 0; i < 100; ++i) {
        const Instance inst = random_bounded_instance(rng, 6, 8, 3);
        for (const Policy& pol : {greedy_policy(inst), hashed_policy(inst, 1000 + i)}) {
            const DecisionTree t = build_tree(inst, pol);
            const double tv = tree_value(t);
            CHECK(std::abs(tv - policy_value(inst, pol)) <= 1e-12);
            CHECK(std::abs(tv - t.subtree_values()[0]) <= 1e-12);

            double leaf_mass = 0.0;
            for (const TreeNode& n : t.nodes()) {
                if (n.is_leaf()) leaf_mass += n.reach;
            }
            CHECK(std::abs(leaf_mass - 1.0) <= 1e-12);
            CHECK(tv <= static_cast<double>(inst.n / 2) + 1e-12);
            CHECK(tv <= static_cast<double>(inst.edge_count()) + 1e-12);
        }
    }
}

TEST_CASE("all-p=1 greedy value is the size of its maximal matching") {
    SplitMix64 rng(8);
    for (int i = 0; i < 60; ++i) {
        Instance inst = random_bounded_instance(rng, 6, 10, 3);
        for (Edge& e : inst.edges) e.p = 1.0;
        std::vector<bool> used(inst.n, false);
        int size = 0;
        for (EdgeId e : greedy_order(inst)) {  // every probe succeeds
            if (used[inst.edges[e].u] || used[inst.edges[e].v]) continue;
            used[inst.edges[e].u] = used[inst.edges[e].v] = true;
            ++size;
        }
        const double v = policy_value(inst, greedy_policy(inst));
        CHECK(std::abs(v - size) <= 1e-12);
        CHECK(std::abs(v - std::round(v)) <= 1e-12);
    }
}

TEST_CASE("size caps apply to tree building and evaluation") {
    const Instance big = fixtures::complete(8, 0.5, 1);
    CHECK_THROWS_AS(build_tree(big, greedy_policy(big)), SizeCapExceeded);
    CHECK_THROWS_AS(policy_value(big, greedy_policy(big)), SizeCapExceeded);
    CHECK(policy_value(big, greedy_policy(big), SizeLimits::unbounded()) > 0.0);
}

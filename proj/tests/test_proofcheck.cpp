#include <doctest.h>

#include "stochmatch/generator.hpp"
#include "stochmatch/proofcheck.hpp"
#include "support/instances.hpp"

#include <cmath>

using namespace stochmatch;

namespace {

DecisionTree opt_tree(const Instance& inst) { return build_tree(inst, optimal_policy(inst)); }

/// Path 0-1-2-3 with unit patience on the middle vertices: the greedy edge
/// (1,2) is never probed by OPT.
Instance p4_unit_middle() { return {4, {{0, 1, 0.5}, {1, 2, 0.51}, {2, 3, 0.5}}, {2, 1, 1, 2}}; }

/// Edge (0,1) has the top probability but OPT prefers (0,2) then (1,3),
/// matching two pairs surely. Patience far above any path length.
Instance sure_pairs() { return {4, {{0, 1, 1.0}, {0, 2, 1.0}, {1, 3, 1.0}}, {5, 5, 5, 5}}; }

}  // namespace

TEST_CASE("OPT' on small instances") {
    const Instance one = fixtures::single_edge(0.6);
    const DecisionTree t1 = opt_tree(one);
    const OptPrime prime1 = transform_optprime(t1, 0);
    CHECK(prime1.value == 0.6);
    CHECK(prime1.value == tree_value(t1));
    CHECK(prime1.in_x[0]);

    const Instance never = p4_unit_middle();
    const DecisionTree tn = opt_tree(never);
    CHECK(event_probability(tn, EventQuery::probes_edge(1)) == 0.0);
    CHECK(transform_optprime(tn, 1).value == doctest::Approx(tree_value(tn)).epsilon(1e-15));

    const Instance p4 = fixtures::p4();
    const DecisionTree t4 = opt_tree(p4);
    const OptPrime prime4 = transform_optprime(t4, 1);
    const double p_probe = event_probability(t4, EventQuery::probes_edge(1));
    CHECK(p_probe > 0.0);
    CHECK(tree_value(t4) <= prime4.value + (1.0 - 0.51) * p_probe + 1e-9);
}

TEST_CASE("ALG_L and R_L") {
    const Instance one = fixtures::single_edge(0.6);
    const DecisionTree t1 = opt_tree(one);
    CHECK(value_algL(t1, transform_optprime(t1, 0), 0, 1) == 0.0);
    CHECK(residual_RL(t1, 0) == 0.6);

    const Instance disjoint = fixtures::two_disjoint(0.9, 0.8);
    const DecisionTree td = opt_tree(disjoint);
    CHECK(value_algL(td, transform_optprime(td, 0), 0, 1) == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(residual_RL(td, 0) == doctest::Approx(0.9).epsilon(1e-15));
}

TEST_CASE("ALG_R and R_R") {
    const Instance one = fixtures::single_edge(0.6);
    const DecisionTree t1 = opt_tree(one);
    CHECK(value_algR(one, t1, 0) == 0.0);
    CHECK(residual_RR(t1, 0, 1, 1) == 0.6);

    const Instance sure = sure_pairs();
    const DecisionTree ts = opt_tree(sure);
    CHECK(tree_value(ts) == 2.0);
    CHECK(event_probability(ts, EventQuery::probes_edge(0)) == 0.0);
    CHECK(value_algR(sure, ts, 0) == tree_value(ts));
    CHECK(residual_RR(ts, 0, 5, 5) == 0.0);

    // Middle patience 1: ALG_R cannot probe either outer edge, and R_R
    // collects both of them.
    const Instance never = p4_unit_middle();
    const DecisionTree tn = opt_tree(never);
    CHECK(value_algR(never, tn, 1) == 0.0);
    CHECK(residual_RR(tn, 1, 1, 1) == doctest::Approx(tree_value(tn)));
}

TEST_CASE("key lemma examples") {
    const Instance sure = sure_pairs();
    const DecisionTree ts = opt_tree(sure);
    const KeyLemmaResult never_last = check_key_lemma(ts, 0, 0, 5, 1.0);
    CHECK(never_last.defined);
    CHECK(never_last.lhs == 0.0);
    CHECK(never_last.lemma_holds());
    CHECK(never_last.corollary_holds());

    const Instance p1{3, {{0, 1, 1.0}, {1, 2, 0.5}}, {1, 1, 1}};
    const DecisionTree tp = opt_tree(p1);
    // OPT probes (0,1) surely, so the condition !probe has probability 0.
    CHECK_FALSE(check_key_lemma(tp, 0, 1, 1, 1.0).defined);

    const Instance p4 = fixtures::p4();
    CHECK_THROWS_AS(check_key_lemma(opt_tree(p4), 0, 0, 2, 0.5), ContractViolation);
    const KeyLemmaResult k = check_key_lemma(opt_tree(p4), 1, 1, 2, 0.51);
    CHECK(k.lemma_holds());
    CHECK(k.corollary_holds());
    CHECK(k.rhs <= k.rhs_corollary + 1e-12);
}

TEST_CASE("check_chain on a single edge") {
    const ChainReport r = check_chain(fixtures::single_edge(0.7));
    CHECK(r.passed());
    CHECK(r.e_opt == 0.7);
    CHECK(r.e_grd == 0.7);
    CHECK(r.ratio() == 1.0);
    for (const Relation& rel : r.relations) {
        const bool zero_or_p = std::abs(rel.slack) <= 1e-12 || rel.slack > 0.0;
        CHECK(zero_or_p);
    }
    CHECK(r.relations[kOptPrimeSplit].slack == 0.0);
    CHECK(r.relations[kOptSplitRight].slack == 0.0);
}

TEST_CASE("check_chain on P4") {
    const ChainReport r = check_chain(fixtures::p4(), {}, "p4");
    CHECK(r.passed());
    CHECK(r.ab == 1);
    CHECK(r.alpha == 1);
    CHECK(r.beta == 2);
    CHECK(std::abs(r.e_opt - 1.1275) <= 1e-9);
    CHECK(std::abs(r.e_grd - 1.0) <= 1e-9);
    CHECK(std::abs(r.ratio() - 1.1275) <= 1e-9);
    CHECK(r.subtree_bound.passed());
    CHECK(chain_csv_row(r).rfind("p4,0.510000000000,", 0) == 0);
}

TEST_CASE("check_chain on an instance OPT handles differently from greedy") {
    const ChainReport r = check_chain(p4_unit_middle());
    CHECK(r.passed());
    CHECK(r.p_probe == 0.0);
    CHECK(r.ratio() == doctest::Approx(1.0 / 0.51));
}

TEST_CASE("check_chain rejects empty graphs") {
    CHECK_THROWS_AS(check_chain(fixtures::empty_graph()), ContractViolation);
}

TEST_CASE("chain quantities on random instances") {
    SplitMix64 rng(61);
    for (int i = 0; i < 150; ++i) {
        const Instance inst = random_bounded_instance(rng, 6, 8, 3, i % 2 ? ProbabilitySource::Uniform
                                                                         : ProbabilitySource::Grid);
        const ChainReport r = check_chain(inst);
        CHECK(r.passed());
        CHECK(r.e_algL <= r.e_opt + 1e-9);
        CHECK(r.e_algR <= r.e_opt + 1e-9);
        CHECK(r.e_RL >= -1e-12);
        CHECK(r.e_RL <= 2.0 + 1e-12);
        CHECK(r.ratio() >= 1.0 - 1e-12);
        CHECK(r.ratio() <= 2.0 + 1e-9);
        if (r.p_ab == 1.0) {
            CHECK(r.key_alpha.lhs == 0.0);
            CHECK(r.key_beta.lhs == 0.0);
        }
    }
}

TEST_CASE("csv layout") {
    CHECK(chain_csv_header() ==
          "id,p_ab,e_opt,e_grd,ratio,slack_optp,slack_optl,slack_optr,slack_algl,slack_baseineq,"
          "slack_keylemma,slack_combined,slack_induction,slack_final");
    const ChainReport r = check_chain(fixtures::single_edge(0.7), {}, "x");
    const std::string row = chain_csv_row(r);
    CHECK(row.rfind("x,0.700000000000,0.700000000000,0.700000000000,1.00000000000,", 0) == 0);
    std::vector<double> fields;
    std::size_t pos = row.find(',') + 1;
    while (pos != 0) {
        const std::size_t next = row.find(',', pos);
        fields.push_back(std::stod(row.substr(pos, next == std::string::npos ? std::string::npos : next - pos)));
        pos = next + 1;
    }
    // Hand-derived slacks for a lone edge with p = 0.7 (P(probe) = 1).
    const std::vector<double> expected = {0.7, 0.7, 0.7, 1.0, 0.3, 0.0, 0.0, 0.3, 0.21, 0.0, 0.7, 0.0, 0.0};
    REQUIRE(fields.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) CHECK(std::abs(fields[i] - expected[i]) <= 1e-12);
}

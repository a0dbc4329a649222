#include "stochmatch/proofcheck.hpp"

#include "stochmatch/format.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace stochmatch {

OptPrime transform_optprime(const DecisionTree& opt, EdgeId ab) {
    OptPrime out;
    out.edge = ab;
    out.reach.assign(opt.size(), 0.0);
    out.in_x.assign(opt.size(), false);
    out.reach[0] = 1.0;
    // Parents precede children in node order.
    for (std::size_t i = 0; i < opt.size(); ++i) {
        const TreeNode& n = opt.nodes()[i];
        if (n.is_leaf()) continue;
        const auto left = static_cast<std::size_t>(n.left);
        const auto right = static_cast<std::size_t>(n.right);
        const double q = out.reach[i];
        out.value += q * n.p;
        if (*n.edge == ab) {
            out.in_x[i] = true;
            out.reach[left] = q;
            out.reach[right] = 0.0;
        } else {
            out.reach[left] = q * n.p;
            out.reach[right] = q * (1.0 - n.p);
        }
    }
    return out;
}

double value_algL(const DecisionTree& opt, const OptPrime& prime, Vertex alpha, Vertex beta) {
    // The follower branches exactly like OPT', so it shares OPT''s reach
    // probabilities and only drops the contributions of skipped probes.
    double total = 0.0;
    for (std::size_t i = 0; i < opt.size(); ++i) {
        const TreeNode& n = opt.nodes()[i];
        if (n.is_leaf()) continue;
        const Edge& e = opt.instance().edges[*n.edge];
        if (e.touches(alpha) || e.touches(beta)) continue;
        total += prime.reach[i] * n.p;
    }
    return total;
}

namespace {

/// P(!probe ab) times the sum of two conditionals given !probe ab; zero
/// when the condition has probability zero.
double weighted_conditional_sum(std::span<const LeafPath> paths, const EventQuery& not_probe,
                                const EventQuery& a, const EventQuery& b) {
    const double p_not = event_probability(paths, not_probe);
    auto ca = conditional_probability(paths, a, not_probe);
    auto cb = conditional_probability(paths, b, not_probe);
    if (!ca || !cb) return 0.0;
    return p_not * (*ca + *cb);
}

}  // namespace

double residual_RL(std::span<const LeafPath> paths, const Instance& inst, EdgeId ab) {
    const Edge& e = inst.edges[ab];
    const EventQuery probe = EventQuery::probes_edge(ab);
    return event_probability(paths, probe) * e.p +
           weighted_conditional_sum(paths, !probe, EventQuery::takes_vertex(e.u),
                                    EventQuery::takes_vertex(e.v));
}

double residual_RL(const DecisionTree& opt, EdgeId ab) {
    return residual_RL(leaf_paths(opt), opt.instance(), ab);
}

namespace {

double walk_algR(const Instance& inst, const DecisionTree& opt, NodeId id, const State& follower,
                 double reach) {
    const TreeNode& n = opt.node(id);
    if (n.is_leaf()) return 0.0;
    const EdgeId e = *n.edge;
    if (!is_probeable(inst, follower, e)) {
        return walk_algR(inst, opt, n.left, follower, reach * n.p) +
               walk_algR(inst, opt, n.right, follower, reach * (1.0 - n.p));
    }
    return reach * n.p +
           walk_algR(inst, opt, n.left, apply_success(inst, follower, e), reach * n.p) +
           walk_algR(inst, opt, n.right, apply_failure(inst, follower, e), reach * (1.0 - n.p));
}

}  // namespace

double value_algR(const Instance& inst, const DecisionTree& opt, EdgeId ab) {
    const State start = apply_failure(inst, initial_state(inst), ab);
    return walk_algR(inst, opt, 0, start, 1.0);
}

double residual_RR(std::span<const LeafPath> paths, const Instance& inst, EdgeId ab, int t_alpha,
                   int t_beta) {
    const Edge& e = inst.edges[ab];
    const EventQuery probe = EventQuery::probes_edge(ab);
    return event_probability(paths, probe) * e.p +
           weighted_conditional_sum(paths, !probe, EventQuery::takes_vertex_at_kth(e.u, t_alpha),
                                    EventQuery::takes_vertex_at_kth(e.v, t_beta));
}

double residual_RR(const DecisionTree& opt, EdgeId ab, int t_alpha, int t_beta) {
    return residual_RR(leaf_paths(opt), opt.instance(), ab, t_alpha, t_beta);
}

KeyLemmaResult check_key_lemma(std::span<const LeafPath> paths, const Instance& inst, EdgeId ab,
                               Vertex gamma, int t_gamma, double p_ab) {
    for (const Edge& e : inst.edges) {
        if (e.p > p_ab) {
            throw ContractViolation("key lemma needs p_ab to be the largest edge probability");
        }
    }
    KeyLemmaResult r;
    r.vertex = gamma;
    const EventQuery not_probe = !EventQuery::probes_edge(ab);
    auto take_last = conditional_probability(paths, EventQuery::takes_vertex_at_kth(gamma, t_gamma), not_probe);
    if (!take_last) {
        r.defined = false;
        return r;
    }
    r.lhs = (1.0 - p_ab) / p_ab * *take_last;
    r.rhs = *conditional_probability(paths, EventQuery::fails_kth_of_vertex(gamma, t_gamma), not_probe);
    r.rhs_corollary = *conditional_probability(paths, !EventQuery::takes_vertex(gamma), not_probe);
    return r;
}

KeyLemmaResult check_key_lemma(const DecisionTree& opt, EdgeId ab, Vertex gamma, int t_gamma,
                               double p_ab) {
    return check_key_lemma(leaf_paths(opt), opt.instance(), ab, gamma, t_gamma, p_ab);
}

// ---------------------------------------------------------------------------

bool Relation::passed() const noexcept {
    if (kind == RelationKind::Equality) return std::abs(slack) <= kChainTolerance;
    return slack >= -kChainTolerance;
}

double ChainReport::ratio() const noexcept { return e_grd > 0.0 ? e_opt / e_grd : 1.0; }

bool ChainReport::passed() const noexcept {
    return std::all_of(relations.begin(), relations.end(), [](const Relation& r) { return r.passed(); });
}

ChainReport check_chain(const Instance& inst, const SizeLimits& limits, std::string id) {
    validate(inst);
    check_limits(inst, limits);
    if (inst.edges.empty()) throw ContractViolation("proof chain needs at least one edge");

    ChainReport r;
    r.id = std::move(id);
    r.ab = greedy_order(inst).front();
    r.alpha = inst.edges[r.ab].u;
    r.beta = inst.edges[r.ab].v;
    const double p = r.p_ab = inst.edges[r.ab].p;
    const int t_alpha = inst.patience[r.alpha];
    const int t_beta = inst.patience[r.beta];

    const DecisionTree grd = build_tree(inst, greedy_policy(inst), limits);
    const std::vector<double> grd_values = grd.subtree_values();
    r.e_grd = tree_value(grd);
    r.e_grd_left = grd_values[static_cast<std::size_t>(grd.root().left)];
    r.e_grd_right = grd_values[static_cast<std::size_t>(grd.root().right)];

    const DecisionTree opt = build_tree(inst, optimal_policy(inst, limits), limits);
    const std::vector<LeafPath> paths = leaf_paths(opt);
    r.e_opt = tree_value(opt);

    const OptPrime prime = transform_optprime(opt, r.ab);
    r.e_optprime = prime.value;
    r.e_algL = value_algL(opt, prime, r.alpha, r.beta);
    r.e_RL = residual_RL(paths, inst, r.ab);
    r.e_algR = value_algR(inst, opt, r.ab);
    r.e_RR = residual_RR(paths, inst, r.ab, t_alpha, t_beta);

    const EventQuery probe = EventQuery::probes_edge(r.ab);
    r.p_probe = event_probability(paths, probe);
    const double p_not = event_probability(paths, !probe);
    r.take_alpha = conditional_probability(paths, EventQuery::takes_vertex(r.alpha), !probe);
    r.take_beta = conditional_probability(paths, EventQuery::takes_vertex(r.beta), !probe);
    r.take_alpha_last = conditional_probability(paths, EventQuery::takes_vertex_at_kth(r.alpha, t_alpha), !probe);
    r.take_beta_last = conditional_probability(paths, EventQuery::takes_vertex_at_kth(r.beta, t_beta), !probe);

    r.key_alpha = check_key_lemma(paths, inst, r.ab, r.alpha, t_alpha, p);
    r.key_beta = check_key_lemma(paths, inst, r.ab, r.beta, t_beta, p);
    r.subtree_bound = check_subtree_bound(opt);

    const State start = initial_state(inst);
    r.e_opt_left = optimal_value(residual_instance(inst, apply_success(inst, start, r.ab)), limits).value;
    r.e_opt_right = optimal_value(residual_instance(inst, apply_failure(inst, start, r.ab)), limits).value;

    // Zero-probability conditions contribute nothing once multiplied out.
    const double ta = r.take_alpha.value_or(0.0);
    const double tb = r.take_beta.value_or(0.0);
    const double ta_last = r.take_alpha_last.value_or(0.0);
    const double tb_last = r.take_beta_last.value_or(0.0);
    const double odds = (1.0 - p) / p;

    std::array<double, kRelationCount> slack{};
    slack[kOptPrimeBound] = r.e_optprime + (1.0 - p) * r.p_probe - r.e_opt;
    slack[kOptPrimeSplit] = r.e_algL + r.e_RL - r.e_optprime;
    slack[kOptSplitRight] = r.e_algR + r.e_RR - r.e_opt;
    slack[kLeftBound] = r.e_algL + r.p_probe + p_not * (ta + tb) - r.e_opt;
    const double base_rhs = p * r.e_algL + (1.0 - p) * r.e_algR + p * r.p_probe * (2.0 - p) +
                            p * p_not * (ta + odds * ta_last + tb + odds * tb_last);
    slack[kBaseInequality] = base_rhs - r.e_opt;
    slack[kKeyLemma] = std::min({r.key_alpha.slack(), r.key_alpha.slack_corollary(), r.key_beta.slack(),
                                 r.key_beta.slack_corollary()});
    const double combined = p * r.e_algL + (1.0 - p) * r.e_algR + 2.0 * p;
    slack[kCombinedBound] = combined - r.e_opt;
    slack[kInduction] = std::min(r.e_opt_left - r.e_algL, r.e_opt_right - r.e_algR);
    // E OPT <= p ALG_L + (1-p) ALG_R + 2p <= 2p (L_GRD + 1) + 2(1-p) R_GRD = 2 E GRD.
    const double greedy_split = 2.0 * p * (r.e_grd_left + 1.0) + 2.0 * (1.0 - p) * r.e_grd_right;
    slack[kFinalBound] = std::min({2.0 * r.e_grd - r.e_opt, greedy_split - combined,
                                   -std::abs(greedy_split - 2.0 * r.e_grd)});

    for (std::size_t i = 0; i < kRelationCount; ++i) r.relations[i] = {kRelationNames[i], relation_kind(i), slack[i]};
    return r;
}

std::string chain_csv_header() {
    std::string h = "id,p_ab,e_opt,e_grd,ratio";
    for (const char* n : kRelationNames) h += std::string(",slack_") + n;
    return h;
}

std::string chain_csv_row(const ChainReport& r) {
    std::ostringstream out;
    out << r.id << ',' << report_decimal(r.p_ab) << ',' << report_decimal(r.e_opt) << ','
        << report_decimal(r.e_grd) << ',' << report_decimal(r.ratio());
    for (const Relation& rel : r.relations) out << ',' << report_decimal(rel.slack);
    return out.str();
}

}  // namespace stochmatch

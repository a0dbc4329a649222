#include "stochmatch/policy.hpp"

#include <algorithm>
#include <memory>
#include <numeric>
#include <unordered_map>

namespace stochmatch {

Choice Policy::choose(const Instance& inst, const State& s) const {
    Choice c = fn_(s);
    if (c) {
        if (!is_probeable(inst, s, *c)) {
            throw ContractViolation("policy '" + name_ + "' chose non-probeable edge " +
                                    std::to_string(*c));
        }
    } else if (has_probeable_edge(inst, s)) {
        throw ContractViolation("policy '" + name_ + "' stopped while edges remain probeable");
    }
    return c;
}

std::vector<EdgeId> greedy_order(const Instance& inst) {
    std::vector<EdgeId> order(inst.edges.size());
    std::iota(order.begin(), order.end(), EdgeId{0});
    std::stable_sort(order.begin(), order.end(), [&](EdgeId a, EdgeId b) {
        return inst.edges[a].p > inst.edges[b].p;
    });
    return order;
}

Policy ordered_policy(const Instance& inst, std::vector<EdgeId> order, std::string name) {
    // Captures the instance by value so the policy outlives its argument.
    return Policy(std::move(name), [inst, order = std::move(order)](const State& s) -> Choice {
        for (EdgeId e : order) {
            if (is_probeable(inst, s, e)) return e;
        }
        return std::nullopt;
    });
}

Policy greedy_policy(const Instance& inst) {
    return ordered_policy(inst, greedy_order(inst), "greedy");
}

namespace {

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

Policy hashed_policy(const Instance& inst, std::uint64_t seed) {
    return Policy("hashed", [inst, seed](const State& s) -> Choice {
        std::vector<EdgeId> options = probeable_edges(inst, s);
        if (options.empty()) return std::nullopt;
        std::uint64_t h = mix64(seed ^ s.alive);
        for (std::uint16_t t : s.patience_left) h = mix64(h ^ t);
        return options[h % options.size()];
    });
}

// ---------------------------------------------------------------------------

std::size_t DecisionTree::internal_count() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(nodes_.begin(), nodes_.end(), [](const TreeNode& n) { return !n.is_leaf(); }));
}

std::vector<double> DecisionTree::subtree_values() const {
    std::vector<double> value(nodes_.size(), 0.0);
    for (std::size_t i = nodes_.size(); i-- > 0;) {
        const TreeNode& n = nodes_[i];
        if (n.is_leaf()) continue;
        value[i] = n.p * (1.0 + value[static_cast<std::size_t>(n.left)]) +
                   (1.0 - n.p) * value[static_cast<std::size_t>(n.right)];
    }
    return value;
}

DecisionTree build_tree(const Instance& inst, const Policy& pol, const SizeLimits& limits) {
    check_limits(inst, limits);
    std::vector<TreeNode> nodes;
    nodes.push_back(TreeNode{initial_state(inst), std::nullopt, 0.0, 1.0, kNoNode, kNoNode, kNoNode, 0});
    // Breadth-first: the work list is the node array itself.
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        Choice c = pol.choose(inst, nodes[i].state);
        if (!c) continue;
        const double p = inst.edges[*c].p;
        State win = apply_success(inst, nodes[i].state, *c);
        State lose = apply_failure(inst, nodes[i].state, *c);
        const double reach = nodes[i].reach;
        const int depth = nodes[i].depth + 1;
        const auto self = static_cast<NodeId>(i);
        const auto left = static_cast<NodeId>(nodes.size());
        nodes[i].edge = c;
        nodes[i].p = p;
        nodes[i].left = left;
        nodes[i].right = left + 1;
        nodes.push_back(TreeNode{std::move(win), std::nullopt, 0.0, reach * p, self, kNoNode, kNoNode, depth});
        nodes.push_back(
            TreeNode{std::move(lose), std::nullopt, 0.0, reach * (1.0 - p), self, kNoNode, kNoNode, depth});
    }
    return DecisionTree(inst, std::move(nodes));
}

double tree_value(const DecisionTree& t) {
    double total = 0.0;
    for (const TreeNode& n : t.nodes()) {
        if (!n.is_leaf()) total += n.reach * n.p;
    }
    return total;
}

namespace {

class PolicyEvaluator {
public:
    PolicyEvaluator(const Instance& inst, const Policy& pol) : inst_(inst), pol_(pol) {}

    double value(const State& s) {
        StateKey key = state_key(s);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        double v = 0.0;
        if (Choice c = pol_.choose(inst_, s)) {
            const double p = inst_.edges[*c].p;
            v = p * (1.0 + value(apply_success(inst_, s, *c))) +
                (1.0 - p) * value(apply_failure(inst_, s, *c));
        }
        memo_.emplace(std::move(key), v);
        return v;
    }

private:
    const Instance& inst_;
    const Policy& pol_;
    std::unordered_map<StateKey, double, StateKeyHash> memo_;
};

}  // namespace

double policy_value(const Instance& inst, const Policy& pol, const SizeLimits& limits) {
    check_limits(inst, limits);
    PolicyEvaluator eval(inst, pol);
    return eval.value(initial_state(inst));
}

}  // namespace stochmatch

#ifndef STOCHMATCH_POLICY_HPP
#define STOCHMATCH_POLICY_HPP

#include "stochmatch/core.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace stochmatch {

/// An edge to probe, or nullopt for Stop.
using Choice = std::optional<EdgeId>;

/// Deterministic adaptive policy: a function of the probe state only.
///
/// choose() enforces the contract: the returned edge is probeable, and Stop
/// is returned exactly when nothing is probeable. Violations throw
/// ContractViolation.
class Policy {
public:
    using ChoiceFn = std::function<Choice(const State&)>;

    Policy(std::string name, ChoiceFn fn) : name_(std::move(name)), fn_(std::move(fn)) {}

    const std::string& name() const noexcept { return name_; }
    Choice choose(const Instance& inst, const State& s) const;

private:
    std::string name_;
    ChoiceFn fn_;
};

/// Edge order used by greedy: descending p, ties by ascending index.
std::vector<EdgeId> greedy_order(const Instance& inst);

Policy greedy_policy(const Instance& inst);

/// Picks a probeable edge by hashing (seed, state). Still a function of the
/// state alone, so memoized evaluation applies. Useful as a random policy.
Policy hashed_policy(const Instance& inst, std::uint64_t seed);

/// Follows a fixed edge order, skipping edges that are not probeable.
Policy ordered_policy(const Instance& inst, std::vector<EdgeId> order, std::string name = "ordered");

// ---------------------------------------------------------------------------

using NodeId = std::int32_t;
inline constexpr NodeId kNoNode = -1;

struct TreeNode {
    State state;
    Choice edge;          // nullopt on leaves
    double p = 0.0;       // success probability of `edge`
    double reach = 1.0;   // probability of reaching this node
    NodeId parent = kNoNode;
    NodeId left = kNoNode;   // success branch
    NodeId right = kNoNode;  // failure branch
    int depth = 0;

    bool is_leaf() const noexcept { return !edge.has_value(); }
};

/// Materialized decision tree of a policy. Nodes are stored in creation
/// order, so every child has a larger id than its parent; the root is 0.
class DecisionTree {
public:
    DecisionTree(Instance inst, std::vector<TreeNode> nodes)
        : inst_(std::move(inst)), nodes_(std::move(nodes)) {}

    const Instance& instance() const noexcept { return inst_; }
    const std::vector<TreeNode>& nodes() const noexcept { return nodes_; }
    const TreeNode& node(NodeId id) const { return nodes_.at(static_cast<std::size_t>(id)); }
    const TreeNode& root() const { return nodes_.front(); }
    std::size_t size() const noexcept { return nodes_.size(); }
    std::size_t internal_count() const noexcept;

    /// E T(v) for every node v, computed bottom-up by the recursion
    /// E T(v) = p_v (1 + E L(v)) + (1 - p_v) E R(v).
    std::vector<double> subtree_values() const;

private:
    Instance inst_;
    std::vector<TreeNode> nodes_;
};

DecisionTree build_tree(const Instance& inst, const Policy& pol, const SizeLimits& limits = {});

/// Sum over internal nodes of reach * p.
double tree_value(const DecisionTree& t);

/// Same quantity as tree_value(build_tree(inst, pol)), by memoized recursion
/// on StateKey.
double policy_value(const Instance& inst, const Policy& pol, const SizeLimits& limits = {});

}  // namespace stochmatch

#endif  // STOCHMATCH_POLICY_HPP

#ifndef STOCHMATCH_SOLVER_HPP
#define STOCHMATCH_SOLVER_HPP

#include "stochmatch/core.hpp"
#include "stochmatch/policy.hpp"

#include <memory>
#include <unordered_map>
#include <vector>

namespace stochmatch {

struct MemoEntry {
    double value = 0.0;
    Choice best;
};

using ValueMemo = std::unordered_map<StateKey, MemoEntry, StateKeyHash>;

/// Exact expectimax over probe states:
///   V(s) = max_e  p_e (1 + V(success(s,e))) + (1 - p_e) V(failure(s,e)),
/// with V(s) = 0 when nothing is probeable. The argmax keeps the lowest edge
/// index among exactly equal values; near-ties are not collapsed.
class Solver {
public:
    explicit Solver(Instance inst, const SizeLimits& limits = {});

    const Instance& instance() const noexcept { return inst_; }
    double value(const State& s);
    Choice best(const State& s);
    /// Expected value of probing `e` first and playing optimally afterwards.
    double probe_value(const State& s, EdgeId e);
    const ValueMemo& memo() const noexcept { return memo_; }

private:
    const MemoEntry& solve(const State& s);

    Instance inst_;
    ValueMemo memo_;
};

struct OptimalSolution {
    double value = 0.0;
    ValueMemo memo;
};

OptimalSolution optimal_value(const Instance& inst, const SizeLimits& limits = {});

/// Reads choices from a solver owned by the policy; states outside the memo
/// are solved on first use. Copies share one memo, so a policy must not be
/// used from two threads at once.
Policy optimal_policy(const Instance& inst, const SizeLimits& limits = {});

struct SubtreeBoundReport {
    /// Largest E T(v) - E L(v) over internal nodes; 0 for a leaf-only tree.
    double max_margin = 0.0;
    NodeId argmax = kNoNode;
    std::vector<NodeId> violations;

    bool passed() const noexcept { return violations.empty(); }
};

/// Checks E T(v) <= E L(v) + 1 (+1e-9) at every internal node.
SubtreeBoundReport check_subtree_bound(const DecisionTree& t);

struct SubtreeMismatch {
    NodeId node;
    double tree_value;
    double optimal_value;
};

struct SubtreeOptimalityReport {
    std::size_t nodes_checked = 0;
    std::vector<SubtreeMismatch> failures;

    bool passed() const noexcept { return failures.empty(); }
};

/// Compares every subtree's value with the optimum of its state (1e-9).
SubtreeOptimalityReport check_subtree_optimality(const Instance& inst, const DecisionTree& t,
                                                 const SizeLimits& limits = {});

}  // namespace stochmatch

#endif  // STOCHMATCH_SOLVER_HPP

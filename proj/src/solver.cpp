#include "stochmatch/solver.hpp"

#include <cmath>

namespace stochmatch {

namespace {
constexpr double kTolerance = 1e-9;
}

Solver::Solver(Instance inst, const SizeLimits& limits) : inst_(std::move(inst)) {
    check_limits(inst_, limits);
}

double Solver::value(const State& s) { return solve(s).value; }

Choice Solver::best(const State& s) { return solve(s).best; }

double Solver::probe_value(const State& s, EdgeId e) {
    const double p = inst_.edges[e].p;
    const double win = solve(apply_success(inst_, s, e)).value;
    const double lose = solve(apply_failure(inst_, s, e)).value;
    return p * (1.0 + win) + (1.0 - p) * lose;
}

const MemoEntry& Solver::solve(const State& s) {
    StateKey key = state_key(s);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    MemoEntry entry;  // Stop, value 0
    for (EdgeId e = 0; e < inst_.edges.size(); ++e) {
        if (!is_probeable(inst_, s, e)) continue;
        const double v = probe_value(s, e);
        if (!entry.best || v > entry.value) {
            entry.value = v;
            entry.best = e;
        }
    }
    return memo_.emplace(std::move(key), entry).first->second;
}

OptimalSolution optimal_value(const Instance& inst, const SizeLimits& limits) {
    Solver solver(inst, limits);
    OptimalSolution out;
    out.value = solver.value(initial_state(inst));
    out.memo = solver.memo();
    return out;
}

Policy optimal_policy(const Instance& inst, const SizeLimits& limits) {
    auto solver = std::make_shared<Solver>(inst, limits);
    solver->value(initial_state(inst));
    return Policy("optimal", [solver](const State& s) { return solver->best(s); });
}

SubtreeBoundReport check_subtree_bound(const DecisionTree& t) {
    SubtreeBoundReport report;
    const std::vector<double> value = t.subtree_values();
    bool first = true;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const TreeNode& n = t.nodes()[i];
        if (n.is_leaf()) continue;
        const double margin = value[i] - value[static_cast<std::size_t>(n.left)];
        if (first || margin > report.max_margin) {
            report.max_margin = margin;
            report.argmax = static_cast<NodeId>(i);
            first = false;
        }
        if (margin > 1.0 + kTolerance) report.violations.push_back(static_cast<NodeId>(i));
    }
    return report;
}

SubtreeOptimalityReport check_subtree_optimality(const Instance& inst, const DecisionTree& t,
                                                 const SizeLimits& limits) {
    Solver solver(inst, limits);
    SubtreeOptimalityReport report;
    const std::vector<double> value = t.subtree_values();
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double best = solver.value(t.nodes()[i].state);
        ++report.nodes_checked;
        if (std::abs(value[i] - best) > kTolerance) {
            report.failures.push_back({static_cast<NodeId>(i), value[i], best});
        }
    }
    return report;
}

}  // namespace stochmatch

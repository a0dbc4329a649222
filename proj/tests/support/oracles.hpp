// Test-only reference implementations. They share no code path with the
// library beyond the Instance struct: states are plain vectors, nothing is
// memoized and no decision tree is built.
#ifndef STOCHMATCH_TESTS_ORACLES_HPP
#define STOCHMATCH_TESTS_ORACLES_HPP

#include "stochmatch/core.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

namespace oracle {

using stochmatch::Instance;

struct PlainState {
    std::vector<bool> alive;
    std::vector<int> patience;
};

inline PlainState start(const Instance& inst) {
    return {std::vector<bool>(inst.edges.size(), true), inst.patience};
}

inline bool usable(const Instance& inst, const PlainState& s, std::size_t e) {
    const auto& edge = inst.edges[e];
    return s.alive[e] && s.patience[edge.u] > 0 && s.patience[edge.v] > 0;
}

inline PlainState after(const Instance& inst, const PlainState& s, std::size_t e, bool success) {
    PlainState next = s;
    const auto& edge = inst.edges[e];
    if (success) {
        for (std::size_t f = 0; f < inst.edges.size(); ++f) {
            const auto& g = inst.edges[f];
            if (g.u == edge.u || g.u == edge.v || g.v == edge.u || g.v == edge.v) next.alive[f] = false;
        }
        next.patience[edge.u] = next.patience[edge.v] = 0;
    } else {
        next.alive[e] = false;
        --next.patience[edge.u];
        --next.patience[edge.v];
    }
    return next;
}

/// Expectimax over every probe sequence, without memoization.
inline double brute_force_opt(const Instance& inst, const PlainState& s) {
    double best = 0.0;
    for (std::size_t e = 0; e < inst.edges.size(); ++e) {
        if (!usable(inst, s, e)) continue;
        const double p = inst.edges[e].p;
        const double v = p * (1.0 + brute_force_opt(inst, after(inst, s, e, true))) +
                         (1.0 - p) * brute_force_opt(inst, after(inst, s, e, false));
        best = std::max(best, v);
    }
    return best;
}

inline double brute_force_opt(const Instance& inst) { return brute_force_opt(inst, start(inst)); }

/// Value of probing `first` and then playing optimally.
inline double brute_force_first(const Instance& inst, std::size_t first) {
    const PlainState s = start(inst);
    const double p = inst.edges[first].p;
    return p * (1.0 + brute_force_opt(inst, after(inst, s, first, true))) +
           (1.0 - p) * brute_force_opt(inst, after(inst, s, first, false));
}

/// Greedy order written out independently: stable by descending p.
inline std::vector<std::size_t> greedy_sequence(const Instance& inst) {
    std::vector<std::size_t> order(inst.edges.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return inst.edges[a].p > inst.edges[b].p; });
    return order;
}

/// Expected matched count of a fixed-order policy, by enumerating every
/// joint outcome of the m coins (each edge's result is fixed in advance)
/// and weighting the resulting run by its probability.
inline double outcome_enumeration_value(const Instance& inst, const std::vector<std::size_t>& order) {
    const std::size_t m = inst.edges.size();
    double total = 0.0;
    for (std::uint64_t outcome = 0; outcome < (std::uint64_t{1} << m); ++outcome) {
        double weight = 1.0;
        for (std::size_t e = 0; e < m; ++e) {
            weight *= (outcome >> e & 1U) ? inst.edges[e].p : 1.0 - inst.edges[e].p;
        }
        if (weight == 0.0) continue;
        PlainState s = start(inst);
        int matched = 0;
        for (std::size_t e : order) {
            if (!usable(inst, s, e)) continue;
            const bool success = outcome >> e & 1U;
            matched += success;
            s = after(inst, s, e, success);
        }
        total += weight * matched;
    }
    return total;
}

}  // namespace oracle

#endif  // STOCHMATCH_TESTS_ORACLES_HPP

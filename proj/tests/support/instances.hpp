#ifndef STOCHMATCH_TESTS_INSTANCES_HPP
#define STOCHMATCH_TESTS_INSTANCES_HPP

#include "stochmatch/core.hpp"

namespace fixtures {

using stochmatch::Instance;

inline Instance single_edge(double p, int t0 = 1, int t1 = 1) { return {2, {{0, 1, p}}, {t0, t1}}; }

inline Instance empty_graph(std::size_t n = 3) { return {n, {}, std::vector<int>(n, 1)}; }

/// Center 0 with two spokes.
inline Instance star_k12(int t_center = 2, double p = 0.5) {
    return {3, {{0, 1, p}, {0, 2, p}}, {t_center, 1, 1}};
}

/// Path a-b-c-d with p(ab)=p(cd)=0.5, p(bc)=0.51, patience 2 everywhere.
inline Instance p4() { return {4, {{0, 1, 0.5}, {1, 2, 0.51}, {2, 3, 0.5}}, {2, 2, 2, 2}}; }

/// Path a-b-c with p(ab)=0.9, p(bc)=0.8, patience 2 everywhere.
inline Instance p3() { return {3, {{0, 1, 0.9}, {1, 2, 0.8}}, {2, 2, 2}}; }

inline Instance two_disjoint(double p1 = 0.9, double p2 = 0.8) {
    return {4, {{0, 1, p1}, {2, 3, p2}}, {1, 1, 1, 1}};
}

inline Instance complete(std::size_t n, double p, int t) {
    Instance inst{n, {}, std::vector<int>(n, t)};
    for (stochmatch::Vertex u = 0; u < n; ++u) {
        for (stochmatch::Vertex v = u + 1; v < n; ++v) inst.edges.push_back({u, v, p});
    }
    return inst;
}

}  // namespace fixtures

#endif  // STOCHMATCH_TESTS_INSTANCES_HPP

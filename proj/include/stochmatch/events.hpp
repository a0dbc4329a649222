#ifndef STOCHMATCH_EVENTS_HPP
#define STOCHMATCH_EVENTS_HPP

#include "stochmatch/policy.hpp"

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace stochmatch {

/// One probe on a root-to-leaf path.
struct PathStep {
    EdgeId edge;
    Vertex u;
    Vertex v;
    bool success;
};

struct LeafPath {
    double probability;
    std::vector<PathStep> steps;
};

/// Every root-to-leaf path of a tree with its probability, zero-probability
/// paths included.
std::vector<LeafPath> leaf_paths(const DecisionTree& t);

/// Predicate over a root-to-leaf path. Vertex probe counts include every
/// probe whose edge touches the vertex; k is 1-based.
class EventQuery {
public:
    static EventQuery probes_edge(EdgeId e);
    static EventQuery takes_edge(EdgeId e);
    static EventQuery takes_vertex(Vertex x);
    /// The path contains a k-th probe touching x.
    static EventQuery probes_vertex_kth(Vertex x, int k);
    /// The k-th probe touching x occurs and succeeds.
    static EventQuery takes_vertex_at_kth(Vertex x, int k);
    /// The k-th probe touching x occurs and fails.
    static EventQuery fails_kth_of_vertex(Vertex x, int k);

    friend EventQuery operator!(const EventQuery& q);
    friend EventQuery operator&&(const EventQuery& a, const EventQuery& b);

    bool holds(std::span<const PathStep> path) const;
    std::string describe() const;

private:
    struct Node;
    explicit EventQuery(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    std::shared_ptr<const Node> node_;
};

double event_probability(std::span<const LeafPath> paths, const EventQuery& q);
double event_probability(const DecisionTree& t, const EventQuery& q);

/// P(a AND b) / P(b), or nullopt when P(b) <= 1e-15.
std::optional<double> conditional_probability(std::span<const LeafPath> paths, const EventQuery& a,
                                              const EventQuery& b);
std::optional<double> conditional_probability(const DecisionTree& t, const EventQuery& a,
                                              const EventQuery& b);

}  // namespace stochmatch

#endif  // STOCHMATCH_EVENTS_HPP

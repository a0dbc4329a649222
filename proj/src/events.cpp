#include "stochmatch/events.hpp"

#include <variant>

namespace stochmatch {

std::vector<LeafPath> leaf_paths(const DecisionTree& t) {
    std::vector<LeafPath> out;
    std::vector<PathStep> path;
    // Iterative DFS; each frame remembers which child to visit next.
    struct Frame {
        NodeId node;
        int next;
    };
    std::vector<Frame> stack{{0, 0}};
    while (!stack.empty()) {
        Frame& f = stack.back();
        const TreeNode& n = t.node(f.node);
        if (n.is_leaf()) {
            out.push_back({n.reach, path});
            stack.pop_back();
            if (!path.empty()) path.pop_back();
            continue;
        }
        if (f.next == 2) {
            stack.pop_back();
            if (!path.empty()) path.pop_back();
            continue;
        }
        const bool success = f.next == 0;
        const Edge& e = t.instance().edges[*n.edge];
        ++f.next;
        path.push_back({*n.edge, e.u, e.v, success});
        stack.push_back({success ? n.left : n.right, 0});
    }
    return out;
}

// ---------------------------------------------------------------------------

namespace {

enum class Atom { ProbesEdge, TakesEdge, TakesVertex, ProbesVertexKth, TakesVertexAtKth, FailsKthOfVertex };

struct AtomQuery {
    Atom kind;
    std::uint32_t target;  // edge or vertex
    int k;
};

/// The k-th step touching x, or nullptr.
const PathStep* kth_touching(std::span<const PathStep> path, Vertex x, int k) {
    int seen = 0;
    for (const PathStep& s : path) {
        if (s.u == x || s.v == x) {
            if (++seen == k) return &s;
        }
    }
    return nullptr;
}

bool eval_atom(const AtomQuery& a, std::span<const PathStep> path) {
    switch (a.kind) {
        case Atom::ProbesEdge:
            for (const PathStep& s : path) {
                if (s.edge == a.target) return true;
            }
            return false;
        case Atom::TakesEdge:
            for (const PathStep& s : path) {
                if (s.edge == a.target && s.success) return true;
            }
            return false;
        case Atom::TakesVertex:
            for (const PathStep& s : path) {
                if (s.success && (s.u == a.target || s.v == a.target)) return true;
            }
            return false;
        case Atom::ProbesVertexKth:
            return kth_touching(path, a.target, a.k) != nullptr;
        case Atom::TakesVertexAtKth: {
            const PathStep* s = kth_touching(path, a.target, a.k);
            return s && s->success;
        }
        case Atom::FailsKthOfVertex: {
            const PathStep* s = kth_touching(path, a.target, a.k);
            return s && !s->success;
        }
    }
    return false;
}

const char* atom_name(Atom kind) {
    switch (kind) {
        case Atom::ProbesEdge: return "ProbesEdge";
        case Atom::TakesEdge: return "TakesEdge";
        case Atom::TakesVertex: return "TakesVertex";
        case Atom::ProbesVertexKth: return "ProbesVertexKth";
        case Atom::TakesVertexAtKth: return "TakesVertexAtKth";
        case Atom::FailsKthOfVertex: return "FailsKthOfVertex";
    }
    return "?";
}

}  // namespace

struct EventQuery::Node {
    struct Not {
        std::shared_ptr<const Node> inner;
    };
    struct And {
        std::shared_ptr<const Node> lhs, rhs;
    };
    std::variant<AtomQuery, Not, And> body;

    bool holds(std::span<const PathStep> path) const {
        if (const auto* a = std::get_if<AtomQuery>(&body)) return eval_atom(*a, path);
        if (const auto* n = std::get_if<Not>(&body)) return !n->inner->holds(path);
        const auto& c = std::get<And>(body);
        return c.lhs->holds(path) && c.rhs->holds(path);
    }

    std::string describe() const {
        if (const auto* a = std::get_if<AtomQuery>(&body)) {
            std::string s = std::string(atom_name(a->kind)) + "(" + std::to_string(a->target);
            if (a->kind == Atom::ProbesVertexKth || a->kind == Atom::TakesVertexAtKth ||
                a->kind == Atom::FailsKthOfVertex) {
                s += ", " + std::to_string(a->k);
            }
            return s + ")";
        }
        if (const auto* n = std::get_if<Not>(&body)) return "NOT " + n->inner->describe();
        const auto& c = std::get<And>(body);
        return "(" + c.lhs->describe() + " AND " + c.rhs->describe() + ")";
    }
};

EventQuery EventQuery::probes_edge(EdgeId e) {
    return EventQuery(std::make_shared<const Node>(Node{AtomQuery{Atom::ProbesEdge, e, 0}}));
}
EventQuery EventQuery::takes_edge(EdgeId e) {
    return EventQuery(std::make_shared<const Node>(Node{AtomQuery{Atom::TakesEdge, e, 0}}));
}
EventQuery EventQuery::takes_vertex(Vertex x) {
    return EventQuery(std::make_shared<const Node>(Node{AtomQuery{Atom::TakesVertex, x, 0}}));
}
EventQuery EventQuery::probes_vertex_kth(Vertex x, int k) {
    return EventQuery(std::make_shared<const Node>(Node{AtomQuery{Atom::ProbesVertexKth, x, k}}));
}
EventQuery EventQuery::takes_vertex_at_kth(Vertex x, int k) {
    return EventQuery(std::make_shared<const Node>(Node{AtomQuery{Atom::TakesVertexAtKth, x, k}}));
}
EventQuery EventQuery::fails_kth_of_vertex(Vertex x, int k) {
    return EventQuery(std::make_shared<const Node>(Node{AtomQuery{Atom::FailsKthOfVertex, x, k}}));
}

EventQuery operator!(const EventQuery& q) {
    return EventQuery(std::make_shared<const EventQuery::Node>(
        EventQuery::Node{EventQuery::Node::Not{q.node_}}));
}

EventQuery operator&&(const EventQuery& a, const EventQuery& b) {
    return EventQuery(std::make_shared<const EventQuery::Node>(
        EventQuery::Node{EventQuery::Node::And{a.node_, b.node_}}));
}

bool EventQuery::holds(std::span<const PathStep> path) const { return node_->holds(path); }

std::string EventQuery::describe() const { return node_->describe(); }

// ---------------------------------------------------------------------------

double event_probability(std::span<const LeafPath> paths, const EventQuery& q) {
    double total = 0.0;
    for (const LeafPath& leaf : paths) {
        if (q.holds(leaf.steps)) total += leaf.probability;
    }
    return total;
}

double event_probability(const DecisionTree& t, const EventQuery& q) {
    return event_probability(leaf_paths(t), q);
}

std::optional<double> conditional_probability(std::span<const LeafPath> paths, const EventQuery& a,
                                              const EventQuery& b) {
    const double pb = event_probability(paths, b);
    if (pb <= 1e-15) return std::nullopt;
    return event_probability(paths, a && b) / pb;
}

std::optional<double> conditional_probability(const DecisionTree& t, const EventQuery& a,
                                              const EventQuery& b) {
    return conditional_probability(leaf_paths(t), a, b);
}

}  // namespace stochmatch

#ifndef STOCHMATCH_CORE_HPP
#define STOCHMATCH_CORE_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace stochmatch {

using Vertex = std::uint32_t;
using EdgeId = std::uint32_t;

/// Bitset over edge indices. Fixes the absolute edge limit at 64.
using EdgeMask = std::uint64_t;
inline constexpr std::size_t kMaxEdgesAbsolute = 64;

struct Edge {
    Vertex u;
    Vertex v;
    double p;

    bool touches(Vertex x) const noexcept { return u == x || v == x; }
    bool adjacent(const Edge& other) const noexcept {
        return touches(other.u) || touches(other.v);
    }
};

/// Undirected graph with a success probability per edge and a patience
/// number per vertex. Edge indices follow insertion order.
struct Instance {
    std::size_t n = 0;
    std::vector<Edge> edges;
    std::vector<int> patience;

    std::size_t edge_count() const noexcept { return edges.size(); }
    int patience_sum() const noexcept;
    /// Index of edge {a,b}, or edge_count() when absent.
    EdgeId find_edge(Vertex a, Vertex b) const noexcept;
};

/// Exact evaluation cost grows as 2^depth; these bound it.
struct SizeLimits {
    std::size_t max_edges = 24;
    int max_patience_sum = 64;

    static SizeLimits unbounded() noexcept;
};

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& what);
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// Well-formed text that describes an invalid instance.
class SemanticError : public std::runtime_error {
public:
    SemanticError(std::size_t line, const std::string& what);
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// A caller broke an operation's precondition.
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class SizeCapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Throws SemanticError (line 0) if `inst` breaks an Instance invariant.
void validate(const Instance& inst);
void check_limits(const Instance& inst, const SizeLimits& limits);

Instance parse_instance(std::istream& in);
Instance parse_instance(std::string_view text);
void write_instance(std::ostream& out, const Instance& inst);
std::string to_text(const Instance& inst);

/// Alive edges plus remaining patience per vertex.
struct State {
    EdgeMask alive = 0;
    std::vector<std::uint16_t> patience_left;

    bool operator==(const State&) const = default;
};

State initial_state(const Instance& inst);

bool is_probeable(const Instance& inst, const State& s, EdgeId e) noexcept;
EdgeMask probeable_mask(const Instance& inst, const State& s) noexcept;
std::vector<EdgeId> probeable_edges(const Instance& inst, const State& s);
bool has_probeable_edge(const Instance& inst, const State& s) noexcept;

/// Both endpoints matched: every incident edge dies, patience drops to 0.
State apply_success(const Instance& inst, const State& s, EdgeId e);
/// Edge dies, both endpoints lose one unit of patience.
State apply_failure(const Instance& inst, const State& s, EdgeId e);

/// The instance a state is equivalent to: probeable edges only, with
/// patience_left as patience. Vertices without probeable edges keep
/// patience max(1, left) since their patience is irrelevant.
Instance residual_instance(const Instance& inst, const State& s);

/// Fixed-width byte encoding: 8 bytes of alive mask, then 2 bytes per vertex.
struct StateKey {
    std::string bytes;

    bool operator==(const StateKey&) const = default;
};

struct StateKeyHash {
    std::size_t operator()(const StateKey& k) const noexcept {
        return std::hash<std::string>{}(k.bytes);
    }
};

StateKey state_key(const State& s);

}  // namespace stochmatch

#endif  // STOCHMATCH_CORE_HPP

#include "stochmatch/core.hpp"

#include "stochmatch/format.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <numeric>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <utility>

namespace stochmatch {

int Instance::patience_sum() const noexcept {
    return std::accumulate(patience.begin(), patience.end(), 0);
}

EdgeId Instance::find_edge(Vertex a, Vertex b) const noexcept {
    if (a > b) std::swap(a, b);
    for (EdgeId e = 0; e < edges.size(); ++e) {
        if (edges[e].u == a && edges[e].v == b) return e;
    }
    return static_cast<EdgeId>(edges.size());
}

SizeLimits SizeLimits::unbounded() noexcept {
    return {kMaxEdgesAbsolute, std::numeric_limits<int>::max()};
}

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                         ": " + what),
      line_(line),
      column_(column) {}

SemanticError::SemanticError(std::size_t line, const std::string& what)
    : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
      line_(line) {}

namespace {

constexpr int kMaxPatience = std::numeric_limits<std::uint16_t>::max();

void validate_edge(const Instance& inst, const Edge& e, std::size_t line) {
    if (e.u == e.v) {
        throw SemanticError(line, "self-loop on vertex " + std::to_string(e.u));
    }
    if (e.u > e.v) {
        throw SemanticError(line, "edge endpoints must satisfy u < v");
    }
    if (e.v >= inst.n) {
        throw SemanticError(line, "vertex index " + std::to_string(e.v) + " out of range");
    }
    if (!(e.p > 0.0 && e.p <= 1.0)) {
        throw SemanticError(line, "probability " + shortest_decimal(e.p) + " outside (0,1]");
    }
}

void validate_patience(int t, Vertex v, std::size_t line) {
    if (t < 1) {
        throw SemanticError(line, "patience of vertex " + std::to_string(v) + " must be >= 1");
    }
    if (t > kMaxPatience) {
        throw SemanticError(line, "patience of vertex " + std::to_string(v) + " too large");
    }
}

}  // namespace

void validate(const Instance& inst) {
    if (inst.patience.size() != inst.n) {
        throw SemanticError(0, "patience list has " + std::to_string(inst.patience.size()) +
                                   " entries, expected " + std::to_string(inst.n));
    }
    if (inst.edges.size() > kMaxEdgesAbsolute) {
        throw SizeCapExceeded("at most " + std::to_string(kMaxEdgesAbsolute) + " edges supported");
    }
    for (Vertex v = 0; v < inst.n; ++v) validate_patience(inst.patience[v], v, 0);
    std::set<std::pair<Vertex, Vertex>> seen;
    for (const Edge& e : inst.edges) {
        validate_edge(inst, e, 0);
        if (!seen.emplace(e.u, e.v).second) {
            throw SemanticError(0, "duplicate edge " + std::to_string(e.u) + " " +
                                       std::to_string(e.v));
        }
    }
}

void check_limits(const Instance& inst, const SizeLimits& limits) {
    if (inst.edge_count() > limits.max_edges) {
        throw SizeCapExceeded("instance has " + std::to_string(inst.edge_count()) +
                              " edges, cap is " + std::to_string(limits.max_edges));
    }
    if (inst.patience_sum() > limits.max_patience_sum) {
        throw SizeCapExceeded("patience sum " + std::to_string(inst.patience_sum()) +
                              " exceeds cap " + std::to_string(limits.max_patience_sum));
    }
}

// ---------------------------------------------------------------------------
// Text format

namespace {

struct Token {
    std::string_view text;
    std::size_t column;  // 1-based
};

struct Line {
    std::size_t number;
    std::vector<Token> tokens;
};

class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    /// Next non-blank line with comments stripped.
    std::optional<Line> next() {
        while (std::getline(in_, raw_)) {
            ++number_;
            if (!raw_.empty() && raw_.back() == '\r') raw_.pop_back();
            if (auto hash = raw_.find('#'); hash != std::string::npos) raw_.erase(hash);
            Line line{number_, {}};
            std::size_t i = 0;
            while (i < raw_.size()) {
                while (i < raw_.size() && (raw_[i] == ' ' || raw_[i] == '\t')) ++i;
                std::size_t start = i;
                while (i < raw_.size() && raw_[i] != ' ' && raw_[i] != '\t') ++i;
                if (i > start) {
                    line.tokens.push_back({std::string_view(raw_).substr(start, i - start), start + 1});
                }
            }
            if (!line.tokens.empty()) return line;
        }
        return std::nullopt;
    }

    std::size_t line_number() const noexcept { return number_; }

private:
    std::istream& in_;
    std::string raw_;
    std::size_t number_ = 0;
};

template <typename T>
T parse_integer(const Line& line, const Token& tok, const char* what) {
    T value{};
    auto [ptr, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), value);
    if (ec != std::errc{} || ptr != tok.text.data() + tok.text.size()) {
        throw ParseError(line.number, tok.column,
                         std::string("expected ") + what + ", got '" + std::string(tok.text) + "'");
    }
    return value;
}

double parse_real(const Line& line, const Token& tok) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), value,
                                     std::chars_format::fixed | std::chars_format::scientific);
    if (ec != std::errc{} || ptr != tok.text.data() + tok.text.size() || !std::isfinite(value)) {
        throw ParseError(line.number, tok.column,
                         "expected probability, got '" + std::string(tok.text) + "'");
    }
    return value;
}

Line expect_line(LineReader& reader, const char* what) {
    auto line = reader.next();
    if (!line) {
        throw ParseError(reader.line_number() + 1, 1, std::string("unexpected end of input, expected ") + what);
    }
    return *line;
}

void expect_token_count(const Line& line, std::size_t count, const char* what) {
    if (line.tokens.size() < count) {
        std::size_t col = line.tokens.empty()
                              ? 1
                              : line.tokens.back().column + line.tokens.back().text.size();
        throw ParseError(line.number, col, std::string("too few fields in ") + what);
    }
    if (line.tokens.size() > count) {
        throw ParseError(line.number, line.tokens[count].column,
                         std::string("unexpected extra field in ") + what);
    }
}

}  // namespace

Instance parse_instance(std::istream& in) {
    LineReader reader(in);

    Line header = expect_line(reader, "header 'stochmatch 1'");
    if (header.tokens[0].text != "stochmatch") {
        throw ParseError(header.number, header.tokens[0].column, "expected header 'stochmatch 1'");
    }
    expect_token_count(header, 2, "header");
    if (header.tokens[1].text != "1") {
        throw ParseError(header.number, header.tokens[1].column,
                         "unsupported format version '" + std::string(header.tokens[1].text) + "'");
    }

    Line sizes = expect_line(reader, "'<n> <m>'");
    expect_token_count(sizes, 2, "size line");
    Instance inst;
    inst.n = parse_integer<std::size_t>(sizes, sizes.tokens[0], "vertex count");
    auto m = parse_integer<std::size_t>(sizes, sizes.tokens[1], "edge count");
    if (m > kMaxEdgesAbsolute) {
        throw SizeCapExceeded("at most " + std::to_string(kMaxEdgesAbsolute) + " edges supported");
    }

    // An empty vertex set has an empty (hence blank, hence skipped) patience line.
    if (inst.n > 0) {
        Line pat = expect_line(reader, "patience line");
        expect_token_count(pat, inst.n, "patience line");
        inst.patience.reserve(inst.n);
        for (std::size_t v = 0; v < inst.n; ++v) {
            const Token& tok = pat.tokens[v];
            int t = parse_integer<int>(pat, tok, "patience");
            validate_patience(t, static_cast<Vertex>(v), pat.number);
            inst.patience.push_back(t);
        }
    }

    std::set<std::pair<Vertex, Vertex>> seen;
    inst.edges.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        Line line = expect_line(reader, "edge line");
        expect_token_count(line, 3, "edge line");
        Edge e{parse_integer<Vertex>(line, line.tokens[0], "vertex"),
               parse_integer<Vertex>(line, line.tokens[1], "vertex"),
               parse_real(line, line.tokens[2])};
        validate_edge(inst, e, line.number);
        if (!seen.emplace(e.u, e.v).second) {
            throw SemanticError(line.number, "duplicate edge " + std::to_string(e.u) + " " +
                                                 std::to_string(e.v));
        }
        inst.edges.push_back(e);
    }

    if (auto extra = reader.next()) {
        throw ParseError(extra->number, extra->tokens[0].column, "unexpected content after last edge");
    }
    return inst;
}

Instance parse_instance(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_instance(in);
}

void write_instance(std::ostream& out, const Instance& inst) {
    out << "stochmatch 1\n" << inst.n << ' ' << inst.edges.size() << '\n';
    for (std::size_t v = 0; v < inst.n; ++v) out << (v ? " " : "") << inst.patience[v];
    out << '\n';
    for (const Edge& e : inst.edges) {
        out << e.u << ' ' << e.v << ' ' << shortest_decimal(e.p) << '\n';
    }
}

std::string to_text(const Instance& inst) {
    std::ostringstream out;
    write_instance(out, inst);
    return out.str();
}

// ---------------------------------------------------------------------------
// Transitions

State initial_state(const Instance& inst) {
    State s;
    s.alive = inst.edges.size() == 64 ? ~EdgeMask{0} : (EdgeMask{1} << inst.edges.size()) - 1;
    s.patience_left.assign(inst.patience.begin(), inst.patience.end());
    return s;
}

bool is_probeable(const Instance& inst, const State& s, EdgeId e) noexcept {
    if (e >= inst.edges.size() || !(s.alive >> e & 1U)) return false;
    const Edge& edge = inst.edges[e];
    return s.patience_left[edge.u] > 0 && s.patience_left[edge.v] > 0;
}

EdgeMask probeable_mask(const Instance& inst, const State& s) noexcept {
    EdgeMask mask = 0;
    for (EdgeId e = 0; e < inst.edges.size(); ++e) {
        if (is_probeable(inst, s, e)) mask |= EdgeMask{1} << e;
    }
    return mask;
}

std::vector<EdgeId> probeable_edges(const Instance& inst, const State& s) {
    std::vector<EdgeId> out;
    for (EdgeId e = 0; e < inst.edges.size(); ++e) {
        if (is_probeable(inst, s, e)) out.push_back(e);
    }
    return out;
}

bool has_probeable_edge(const Instance& inst, const State& s) noexcept {
    for (EdgeId e = 0; e < inst.edges.size(); ++e) {
        if (is_probeable(inst, s, e)) return true;
    }
    return false;
}

namespace {

void require_probeable(const Instance& inst, const State& s, EdgeId e) {
    if (!is_probeable(inst, s, e)) {
        throw ContractViolation("edge " + std::to_string(e) + " is not probeable");
    }
}

}  // namespace

State apply_success(const Instance& inst, const State& s, EdgeId e) {
    require_probeable(inst, s, e);
    const Edge& hit = inst.edges[e];
    State next = s;
    for (EdgeId f = 0; f < inst.edges.size(); ++f) {
        if (inst.edges[f].adjacent(hit)) next.alive &= ~(EdgeMask{1} << f);
    }
    next.patience_left[hit.u] = 0;
    next.patience_left[hit.v] = 0;
    return next;
}

State apply_failure(const Instance& inst, const State& s, EdgeId e) {
    require_probeable(inst, s, e);
    const Edge& miss = inst.edges[e];
    State next = s;
    next.alive &= ~(EdgeMask{1} << e);
    --next.patience_left[miss.u];
    --next.patience_left[miss.v];
    return next;
}

Instance residual_instance(const Instance& inst, const State& s) {
    Instance out;
    out.n = inst.n;
    out.patience.resize(inst.n);
    for (std::size_t v = 0; v < inst.n; ++v) {
        out.patience[v] = std::max<int>(1, s.patience_left[v]);
    }
    for (EdgeId e = 0; e < inst.edges.size(); ++e) {
        if (is_probeable(inst, s, e)) out.edges.push_back(inst.edges[e]);
    }
    return out;
}

StateKey state_key(const State& s) {
    StateKey key;
    key.bytes.resize(8 + 2 * s.patience_left.size());
    for (int i = 0; i < 8; ++i) key.bytes[i] = static_cast<char>(s.alive >> (8 * i) & 0xFF);
    for (std::size_t v = 0; v < s.patience_left.size(); ++v) {
        key.bytes[8 + 2 * v] = static_cast<char>(s.patience_left[v] & 0xFF);
        key.bytes[9 + 2 * v] = static_cast<char>(s.patience_left[v] >> 8);
    }
    return key;
}

}  // namespace stochmatch

#include "stochmatch/generator.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace stochmatch {

std::optional<Family> parse_family(std::string_view name) {
    if (name == "gnp") return Family::Gnp;
    if (name == "path") return Family::Path;
    if (name == "star") return Family::Star;
    if (name == "complete") return Family::Complete;
    return std::nullopt;
}

const char* family_name(Family f) {
    switch (f) {
        case Family::Gnp: return "gnp";
        case Family::Path: return "path";
        case Family::Star: return "star";
        case Family::Complete: return "complete";
    }
    return "?";
}

void validate(const GeneratorSpec& spec) {
    if (spec.n < 1) throw std::invalid_argument("generator needs n >= 1");
    if (spec.tmax < 1 || spec.tmax > 65535) throw std::invalid_argument("generator needs 1 <= tmax <= 65535");
    if (!(spec.density >= 0.0 && spec.density <= 1.0)) {
        throw std::invalid_argument("gnp density must lie in [0, 1]");
    }
}

namespace {

double draw_probability(SplitMix64& rng, ProbabilitySource source) {
    if (source == ProbabilitySource::Grid) return static_cast<double>(rng.uniform_int(1, 10)) / 10.0;
    return 1.0 - rng.uniform();
}

void fill_random(Instance& inst, SplitMix64& rng, ProbabilitySource source, int tmax) {
    for (Edge& e : inst.edges) e.p = draw_probability(rng, source);
    inst.patience.resize(inst.n);
    for (int& t : inst.patience) t = static_cast<int>(rng.uniform_int(1, static_cast<std::uint64_t>(tmax)));
}

Instance draw(const GeneratorSpec& spec, SplitMix64& rng) {
    Instance inst;
    inst.n = spec.n;
    const auto n = static_cast<Vertex>(spec.n);
    switch (spec.family) {
        case Family::Gnp:
            for (Vertex u = 0; u < n; ++u) {
                for (Vertex v = u + 1; v < n; ++v) {
                    if (rng.uniform() < spec.density) inst.edges.push_back({u, v, 0.0});
                }
            }
            break;
        case Family::Path:
            for (Vertex u = 0; u + 1 < n; ++u) inst.edges.push_back({u, u + 1, 0.0});
            break;
        case Family::Star:
            for (Vertex v = 1; v < n; ++v) inst.edges.push_back({0, v, 0.0});
            break;
        case Family::Complete:
            for (Vertex u = 0; u < n; ++u) {
                for (Vertex v = u + 1; v < n; ++v) inst.edges.push_back({u, v, 0.0});
            }
            break;
    }
    if (inst.edges.size() > kMaxEdgesAbsolute) {
        throw SizeCapExceeded("generated instance exceeds " + std::to_string(kMaxEdgesAbsolute) + " edges");
    }
    fill_random(inst, rng, spec.probabilities, spec.tmax);
    return inst;
}

}  // namespace

std::vector<Instance> generate(const GeneratorSpec& spec, std::size_t count) {
    validate(spec);
    SplitMix64 rng(spec.seed);
    std::vector<Instance> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(draw(spec, rng));
    return out;
}

Instance random_bounded_instance(SplitMix64& rng, std::size_t max_n, std::size_t max_edges, int tmax,
                                 ProbabilitySource probabilities) {
    Instance inst;
    inst.n = static_cast<std::size_t>(rng.uniform_int(2, std::max<std::size_t>(2, max_n)));
    std::vector<std::pair<Vertex, Vertex>> pairs;
    for (Vertex u = 0; u < inst.n; ++u) {
        for (Vertex v = u + 1; v < inst.n; ++v) pairs.emplace_back(u, v);
    }
    // Partial Fisher-Yates: the first k entries become a uniform k-subset.
    const std::size_t k = static_cast<std::size_t>(rng.uniform_int(1, std::min(max_edges, pairs.size())));
    for (std::size_t i = 0; i < k; ++i) {
        std::swap(pairs[i], pairs[static_cast<std::size_t>(rng.uniform_int(i, pairs.size() - 1))]);
    }
    std::sort(pairs.begin(), pairs.begin() + static_cast<std::ptrdiff_t>(k));
    for (std::size_t i = 0; i < k; ++i) inst.edges.push_back({pairs[i].first, pairs[i].second, 0.0});
    fill_random(inst, rng, probabilities, tmax);
    return inst;
}

namespace {

/// Odometer over `digits` positions, each taking `base` values.
bool advance(std::vector<std::size_t>& digits, std::size_t base) {
    for (std::size_t& d : digits) {
        if (++d < base) return true;
        d = 0;
    }
    return false;
}

}  // namespace

void enumerate_instances(std::size_t max_n, std::span<const double> p_values, std::span<const int> t_values,
                         const std::function<void(const Instance&)>& visit) {
    if (p_values.empty() || t_values.empty()) return;
    for (std::size_t n = 1; n <= max_n; ++n) {
        std::vector<std::pair<Vertex, Vertex>> pairs;
        for (Vertex u = 0; u < n; ++u) {
            for (Vertex v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
        }
        for (std::uint64_t subset = 0; subset < (std::uint64_t{1} << pairs.size()); ++subset) {
            Instance inst;
            inst.n = n;
            inst.patience.resize(n);
            for (std::size_t i = 0; i < pairs.size(); ++i) {
                if (subset >> i & 1U) inst.edges.push_back({pairs[i].first, pairs[i].second, 0.0});
            }
            std::vector<std::size_t> p_idx(inst.edges.size(), 0);
            do {
                for (std::size_t i = 0; i < inst.edges.size(); ++i) inst.edges[i].p = p_values[p_idx[i]];
                std::vector<std::size_t> t_idx(n, 0);
                do {
                    for (std::size_t v = 0; v < n; ++v) inst.patience[v] = t_values[t_idx[v]];
                    visit(inst);
                } while (advance(t_idx, t_values.size()));
            } while (advance(p_idx, p_values.size()));
        }
    }
}

}  // namespace stochmatch

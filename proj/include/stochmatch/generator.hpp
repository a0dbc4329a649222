#ifndef STOCHMATCH_GENERATOR_HPP
#define STOCHMATCH_GENERATOR_HPP

#include "stochmatch/core.hpp"
#include "stochmatch/montecarlo.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace stochmatch {

enum class Family { Gnp, Path, Star, Complete };

enum class ProbabilitySource {
    Grid,     // uniform over {0.1, 0.2, ..., 1.0}
    Uniform,  // uniform on (0, 1]
};

std::optional<Family> parse_family(std::string_view name);
const char* family_name(Family f);

struct GeneratorSpec {
    Family family = Family::Gnp;
    std::size_t n = 5;       // vertices; for star, the center plus n-1 leaves
    double density = 0.5;    // gnp edge probability
    ProbabilitySource probabilities = ProbabilitySource::Grid;
    int tmax = 3;            // patience uniform on [1, tmax]
    std::uint64_t seed = 0;
};

/// Throws std::invalid_argument on a spec that cannot yield valid instances.
void validate(const GeneratorSpec& spec);

/// `count` instances drawn from one splitmix64 stream seeded with spec.seed.
std::vector<Instance> generate(const GeneratorSpec& spec, std::size_t count);

/// One instance with n uniform on [2, max_n], a uniformly sized random edge
/// subset of at most max_edges edges (at least one), grid or uniform
/// probabilities and patience uniform on [1, tmax].
Instance random_bounded_instance(SplitMix64& rng, std::size_t max_n, std::size_t max_edges, int tmax,
                                 ProbabilitySource probabilities = ProbabilitySource::Grid);

/// Calls `visit` with every instance on n = 1..max_n vertices: every edge
/// subset of K_n, every assignment of `p_values` to its edges and of
/// `t_values` to its vertices.
void enumerate_instances(std::size_t max_n, std::span<const double> p_values, std::span<const int> t_values,
                         const std::function<void(const Instance&)>& visit);

}  // namespace stochmatch

#endif  // STOCHMATCH_GENERATOR_HPP

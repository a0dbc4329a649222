#ifndef STOCHMATCH_MONTECARLO_HPP
#define STOCHMATCH_MONTECARLO_HPP

#include "stochmatch/policy.hpp"

#include <cstdint>
#include <iosfwd>

namespace stochmatch {

/// splitmix64 (Steele, Lea, Flood). Output is bit-identical on every
/// platform, which keeps seeded runs reproducible.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return ~result_type{0}; }

    result_type operator()() noexcept {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Top 53 bits scaled into [0, 1).
    double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [lo, hi] by rejection.
    std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi) noexcept;

private:
    std::uint64_t state_;
};

struct SimResult {
    std::uint64_t trials = 0;
    double mean = 0.0;
    double stddev = 0.0;  // sample standard deviation; 0 for a single trial
    double ci95_halfwidth = 0.0;
    std::uint64_t seed = 0;
};

/// Runs `trials` independent trajectories of `pol` from the initial state.
/// A probe succeeds iff the next uniform draw is < p. Throws
/// ContractViolation if trials == 0 or a trajectory matches two edges at
/// one vertex.
SimResult simulate(const Instance& inst, const Policy& pol, std::uint64_t trials, std::uint64_t seed);

std::ostream& operator<<(std::ostream& out, const SimResult& r);

}  // namespace stochmatch

#endif  // STOCHMATCH_MONTECARLO_HPP

#include "stochmatch/montecarlo.hpp"

#include "stochmatch/format.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <vector>

namespace stochmatch {

std::uint64_t SplitMix64::uniform_int(std::uint64_t lo, std::uint64_t hi) noexcept {
    const std::uint64_t span = hi - lo;
    if (span == max()) return (*this)();
    const std::uint64_t range = span + 1;
    const std::uint64_t limit = max() - max() % range;
    std::uint64_t x;
    do {
        x = (*this)();
    } while (x >= limit);
    return lo + x % range;
}

SimResult simulate(const Instance& inst, const Policy& pol, std::uint64_t trials, std::uint64_t seed) {
    if (trials == 0) throw ContractViolation("simulate needs at least one trial");
    SplitMix64 rng(seed);
    const State start = initial_state(inst);
    std::vector<bool> matched(inst.n);

    // Welford's running mean and sum of squared deviations.
    double mean = 0.0;
    double m2 = 0.0;
    for (std::uint64_t trial = 1; trial <= trials; ++trial) {
        State s = start;
        std::fill(matched.begin(), matched.end(), false);
        int count = 0;
        while (Choice c = pol.choose(inst, s)) {
            const Edge& e = inst.edges[*c];
            if (rng.uniform() < e.p) {
                if (matched[e.u] || matched[e.v]) {
                    throw ContractViolation("simulated trajectory is not a matching");
                }
                matched[e.u] = matched[e.v] = true;
                ++count;
                s = apply_success(inst, s, *c);
            } else {
                s = apply_failure(inst, s, *c);
            }
        }
        const double delta = count - mean;
        mean += delta / static_cast<double>(trial);
        m2 += delta * (count - mean);
    }

    SimResult r;
    r.trials = trials;
    r.seed = seed;
    r.mean = mean;
    r.stddev = trials > 1 ? std::sqrt(m2 / static_cast<double>(trials - 1)) : 0.0;
    r.ci95_halfwidth = 1.96 * r.stddev / std::sqrt(static_cast<double>(trials));
    return r;
}

std::ostream& operator<<(std::ostream& out, const SimResult& r) {
    return out << "trials " << r.trials << '\n'
               << "seed " << r.seed << '\n'
               << "mean " << report_decimal(r.mean) << '\n'
               << "stddev " << report_decimal(r.stddev) << '\n'
               << "ci95_halfwidth " << report_decimal(r.ci95_halfwidth) << '\n';
}

}  // namespace stochmatch

#include "scratchoff/stats.hpp"

#include <algorithm>
#include <cmath>

#include "scratchoff/errors.hpp"

namespace scratchoff {

std::pair<double, double> wilson_interval(uint64_t successes, uint64_t trials,
                                          double z) {
    if (trials == 0) throw InvalidParameter("wilson_interval requires trials >= 1");
    if (successes > trials)
        throw InvalidParameter("successes cannot exceed trials");
    if (z < 0.0) throw InvalidParameter("z must be non-negative");

    const double n = double(trials);
    const double p_hat = double(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p_hat + z2 / (2.0 * n)) / denom;
    const double half =
        (z / denom) * std::sqrt(p_hat * (1.0 - p_hat) / n + z2 / (4.0 * n * n));

    double low = center - half;
    double high = center + half;
    if (successes == 0) low = 0.0;
    if (successes == trials) high = 1.0;
    return {std::clamp(low, 0.0, 1.0), std::clamp(high, 0.0, 1.0)};
}

TrialStats TrialStats::from_counts(uint64_t successes, uint64_t trials, double z) {
    TrialStats stats;
    stats.trials = trials;
    stats.successes = successes;
    stats.estimate = trials == 0 ? 0.0 : double(successes) / double(trials);
    const auto [low, high] = wilson_interval(successes, trials, z);
    stats.ci_low = low;
    stats.ci_high = high;
    return stats;
}

double binomial_sigma(double p, uint64_t trials) {
    if (trials == 0) throw InvalidParameter("binomial_sigma requires trials >= 1");
    return std::sqrt(p * (1.0 - p) / double(trials));
}

} // namespace scratchoff

#pragma once

#include <cstdint>
#include <utility>

namespace scratchoff {

/// Wilson score interval for a binomial proportion at `z` standard normal
/// units. Degenerate boundaries are exact: 0 successes pins low to 0,
/// all successes pins high to 1.
std::pair<double, double> wilson_interval(uint64_t successes, uint64_t trials,
                                          double z);

/// Monte Carlo outcome with its 99.7% (z = 3) Wilson band.
struct TrialStats {
    uint64_t trials = 0;
    uint64_t successes = 0;
    double estimate = 0.0;
    double ci_low = 0.0;
    double ci_high = 1.0;

    static TrialStats from_counts(uint64_t successes, uint64_t trials, double z = 3.0);

    bool contains(double p) const { return ci_low <= p && p <= ci_high; }
    bool overlaps(const TrialStats& other) const {
        return ci_low <= other.ci_high && other.ci_low <= ci_high;
    }
};

/// sqrt(p(1-p)/n): the binomial standard error used for +-3 sigma bands.
double binomial_sigma(double p, uint64_t trials);

} // namespace scratchoff

#pragma once

// Brute-force reference implementations used only by the test suites. They
// deliberately avoid the code paths they check: the tail oracle enumerates
// outcome vectors instead of using binomial coefficients, the selection
// oracle re-sorts from scratch, and the displacement oracle tries every
// allocation.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "scratchoff/errors.hpp"

namespace scratchoff::testing {

/// Exact P[X >= l] for X ~ Binomial(t, 2^-d), by summing the probability of
/// every one of the 2^t outcome vectors. Only feasible for t <= 20.
inline double binom_at_least_oracle(uint64_t l, uint64_t t, double d) {
    if (t > 20) throw TooLarge("exhaustive enumeration capped at t = 20");
    const double p = std::exp2(-d);
    double total = 0.0;
    for (uint64_t outcome = 0; outcome < (uint64_t(1) << t); ++outcome) {
        const unsigned wins = unsigned(std::popcount(outcome));
        if (wins < l) continue;
        total += std::pow(p, double(wins)) * std::pow(1.0 - p, double(t - wins));
    }
    return total;
}

/// Top-s node ids from (id, bets) tallies by full sort: bets descending,
/// id ascending on ties. Returned sorted by id.
inline std::vector<uint64_t> top_s_sort_oracle(
    const std::vector<std::pair<uint64_t, uint64_t>>& tallies, uint64_t s) {
    std::vector<std::pair<uint64_t, uint64_t>> order = tallies;
    std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    std::vector<uint64_t> out;
    for (uint64_t i = 0; i < s && i < order.size(); ++i) out.push_back(order[i].first);
    std::sort(out.begin(), out.end());
    return out;
}

/// Visits every way to distribute `total` unit bets over `bins` slots.
inline void for_each_composition(uint64_t total, size_t bins,
                                 const std::function<void(const std::vector<uint64_t>&)>& fn) {
    std::vector<uint64_t> current(bins, 0);
    std::function<void(uint64_t, size_t)> recurse = [&](uint64_t left, size_t index) {
        if (index + 1 == bins) {
            current[index] = left;
            fn(current);
            return;
        }
        for (uint64_t take = 0; take <= left; ++take) {
            current[index] = take;
            recurse(left - take, index + 1);
        }
    };
    if (bins == 0) return;
    recurse(total, 0);
}

/// Exhaustive displacement search: starting from `tallies`, can placing
/// `remaining` bets on the nodes listed in `eligible` push node `b` out of
/// the top s? Every allocation is tried against the sort oracle.
inline bool displacement_search_oracle(
    const std::vector<std::pair<uint64_t, uint64_t>>& tallies, uint64_t s,
    uint64_t b, uint64_t remaining, const std::vector<uint64_t>& eligible) {
    if (eligible.empty()) return false;
    bool found = false;
    for_each_composition(remaining, eligible.size(), [&](const std::vector<uint64_t>& alloc) {
        if (found) return;
        std::vector<std::pair<uint64_t, uint64_t>> next = tallies;
        for (size_t i = 0; i < eligible.size(); ++i) {
            for (auto& [id, bets] : next)
                if (id == eligible[i]) bets += alloc[i];
        }
        const std::vector<uint64_t> selected = top_s_sort_oracle(next, s);
        if (!std::binary_search(selected.begin(), selected.end(), b)) found = true;
    });
    return found;
}

/// Dense grid maximum of gamma * 2^-d * (1-2^-d)^(gamma-1) over [lo, hi].
inline std::pair<double, double> grid_max_oracle(double d, double lo, double hi,
                                                 double step) {
    const double p = std::pow(2.0, -d);
    double best_gamma = lo;
    double best_value = -1.0;
    for (double g = lo; g <= hi; g += step) {
        const double v = g * p * std::pow(1.0 - p, g - 1.0);
        if (v > best_value) {
            best_value = v;
            best_gamma = g;
        }
    }
    return {best_value, best_gamma};
}

} // namespace scratchoff::testing

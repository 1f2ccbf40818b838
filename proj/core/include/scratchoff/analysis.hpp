#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "scratchoff/puzzle.hpp"
#include "scratchoff/stats.hpp"

namespace scratchoff {

/// Where f(gamma) = gamma * 2^-d * (1 - 2^-d)^(gamma - 1) peaks over
/// gamma >= 1, and which gammas (if any) reach `target`. The supremum of f
/// tends to 1/e as d grows, so targets above 1/e leave the set empty.
struct FeasibilityReport {
    double d = 0.0;
    double target = 2.0 / 3.0;
    double max_value = 0.0;
    double argmax_gamma = 1.0;
    bool feasible_empty = true;
    double feasible_low = 0.0;  // meaningful only when !feasible_empty
    double feasible_high = 0.0;
    bool paper_claim_consistent = false; // a nonempty feasible set exists
};

/// Maximizes f over gamma in [1, 10 * 2^d] by golden-section search with a
/// dense local grid pass to guard against flat stretches, then brackets the
/// f(gamma) >= target solution interval by bisection on each flank.
FeasibilityReport gamma_feasibility(double d, double target = 2.0 / 3.0);

/// One sweep row per difficulty; d_values must be non-empty and increasing.
std::vector<FeasibilityReport> limit_sweep(const std::vector<double>& d_values,
                                           double target = 2.0 / 3.0);

/// Both readings of the split-budget bound at (q, t, d): the bare product
/// q*t * 2^-d * (1-2^-d)^(qt-1) and the tail zeta(1, qt, d), each tested
/// against 2/3.
struct ParallelBoundCheck {
    uint64_t q = 1;
    uint64_t t = 1;
    double d = 0.0;
    double paper_literal = 0.0;
    double canonical = 0.0;
    bool satisfied_literal = false;  // paper_literal <= 2/3
    bool satisfied_canonical = false;
};

ParallelBoundCheck parallel_bound_check(uint64_t q, uint64_t t, double d);

/// Runs `samples` seeded work/verify pairs through a scheme and reports the
/// verify acceptance frequency over the subset where work produced a ticket.
/// Deterministic schemes must come back with successes == trials.
TrialStats correctness_harness(PuzzleScheme& scheme, uint64_t samples,
                               uint64_t seed);

// Fixed CSV schemas for the report files.
std::string feasibility_csv_header();
std::string feasibility_csv_row(const FeasibilityReport& report);
std::string parallel_check_csv_header();
std::string parallel_check_csv_row(const ParallelBoundCheck& check);

} // namespace scratchoff

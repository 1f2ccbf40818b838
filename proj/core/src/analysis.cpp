#include "scratchoff/analysis.hpp"

#include <cmath>

#include "scratchoff/csv.hpp"
#include "scratchoff/zeta.hpp"

namespace scratchoff {

namespace {

// f(gamma) = gamma * p * (1-p)^(gamma-1), the single-success bound as a
// function of the adversary's speedup.
double speedup_bound(double gamma, double p) {
    return gamma * p * std::exp((gamma - 1.0) * std::log1p(-p));
}

double golden_section_max(double lo, double hi, double p) {
    constexpr double kInvPhi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = speedup_bound(c, p);
    double fd = speedup_bound(d, p);
    for (int iter = 0; iter < 400 && (b - a) > 1e-10 * (1.0 + b); ++iter) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = speedup_bound(c, p);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = speedup_bound(d, p);
        }
    }
    return 0.5 * (a + b);
}

// Bisect f(gamma) = target on [lo, hi] where f is monotone.
double bisect_crossing(double lo, double hi, double p, double target,
                       bool increasing) {
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const bool above = speedup_bound(mid, p) >= target;
        if (above == increasing) hi = mid;
        else lo = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

FeasibilityReport gamma_feasibility(double d, double target) {
    if (d <= 0.0) throw InvalidParameter("gamma_feasibility requires d > 0");

    const double p = std::exp2(-d);
    const double hi = std::max(10.0 * std::exp2(d), 16.0);

    FeasibilityReport report;
    report.d = d;
    report.target = target;

    double argmax = golden_section_max(1.0, hi, p);
    double max_value = speedup_bound(argmax, p);

    // dense local grid around the golden bracket to ride out flat stretches
    const double span = std::max(1.0, 1e-3 * argmax);
    for (double g = std::max(1.0, argmax - span); g <= argmax + span; g += 1e-4 * span) {
        const double v = speedup_bound(g, p);
        if (v > max_value) {
            max_value = v;
            argmax = g;
        }
    }
    // boundary candidate: f may be decreasing from gamma = 1 for small d
    if (speedup_bound(1.0, p) > max_value) {
        max_value = speedup_bound(1.0, p);
        argmax = 1.0;
    }

    report.max_value = max_value;
    report.argmax_gamma = argmax;

    if (max_value < target) {
        report.feasible_empty = true;
        report.paper_claim_consistent = false;
        return report;
    }

    report.feasible_empty = false;
    report.feasible_low = speedup_bound(1.0, p) >= target
                              ? 1.0
                              : bisect_crossing(1.0, argmax, p, target, true);
    report.feasible_high = speedup_bound(hi, p) >= target
                               ? hi
                               : bisect_crossing(argmax, hi, p, target, false);
    report.paper_claim_consistent = true;
    return report;
}

std::vector<FeasibilityReport> limit_sweep(const std::vector<double>& d_values,
                                           double target) {
    if (d_values.empty()) throw InvalidParameter("limit_sweep needs at least one d");
    for (size_t i = 1; i < d_values.size(); ++i)
        if (d_values[i] <= d_values[i - 1])
            throw InvalidParameter("limit_sweep d values must be increasing");

    std::vector<FeasibilityReport> reports;
    reports.reserve(d_values.size());
    for (double d : d_values) reports.push_back(gamma_feasibility(d, target));
    return reports;
}

ParallelBoundCheck parallel_bound_check(uint64_t q, uint64_t t, double d) {
    if (q < 1 || t < 1) throw InvalidParameter("parallel_bound_check needs q, t >= 1");

    ParallelBoundCheck check;
    check.q = q;
    check.t = t;
    check.d = d;
    check.paper_literal = zeta_paper_literal(1, double(q) * double(t), d);
    check.canonical = zeta(1, q * t, d);
    check.satisfied_literal = check.paper_literal <= 2.0 / 3.0;
    check.satisfied_canonical = check.canonical <= 2.0 / 3.0;
    return check;
}

TrialStats correctness_harness(PuzzleScheme& scheme, uint64_t samples,
                               uint64_t seed) {
    if (samples == 0) throw InvalidParameter("correctness_harness needs samples >= 1");

    uint64_t produced = 0;
    uint64_t accepted = 0;
    for (uint64_t i = 0; i < samples; ++i) {
        const auto [puz, m] = scheme.sample_instance(seed, i);
        const MaybeTicket ticket = scheme.work(puz, m, seed);
        if (!ticket) continue;
        ++produced;
        if (scheme.verify(puz, m, *ticket, seed)) ++accepted;
    }

    if (produced == 0) return TrialStats{0, 0, 0.0, 0.0, 1.0};
    return TrialStats::from_counts(accepted, produced);
}

std::string feasibility_csv_header() {
    return "d,target,max_value,argmax_gamma,feasible_low,feasible_high,claim_consistent";
}

std::string feasibility_csv_row(const FeasibilityReport& r) {
    const std::string low = r.feasible_empty ? "nan" : csv_double(r.feasible_low);
    const std::string high = r.feasible_empty ? "nan" : csv_double(r.feasible_high);
    return csv_double(r.d) + "," + csv_double(r.target) + "," +
           csv_double(r.max_value) + "," + csv_double(r.argmax_gamma) + "," + low +
           "," + high + "," + (r.paper_claim_consistent ? "1" : "0");
}

std::string parallel_check_csv_header() {
    return "q,t,d,paper_literal,canonical,satisfied_literal,satisfied_canonical";
}

std::string parallel_check_csv_row(const ParallelBoundCheck& c) {
    return std::to_string(c.q) + "," + std::to_string(c.t) + "," + csv_double(c.d) +
           "," + csv_double(c.paper_literal) + "," + csv_double(c.canonical) + "," +
           (c.satisfied_literal ? "1" : "0") + "," +
           (c.satisfied_canonical ? "1" : "0");
}

} // namespace scratchoff

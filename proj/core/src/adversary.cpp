#include "scratchoff/adversary.hpp"

#include <algorithm>
#include <set>

#include "scratchoff/rng.hpp"
#include "scratchoff/zeta.hpp"

namespace scratchoff {

void WorkTranscript::log(const PuzzleInstance& puz, const Payload& m,
                         uint64_t evaluations) {
    queries_.emplace_back(puz.id, m.bytes);
    evaluations_ += evaluations;
}

bool WorkTranscript::contains(const PuzzleInstance& puz, const Payload& m) const {
    for (const auto& [id, bytes] : queries_)
        if (id == puz.id && bytes == m.bytes) return true;
    return false;
}

WorkResult WorkOracle::query(const PuzzleInstance& puz, const Payload& m,
                             uint64_t start_nonce) {
    const WorkResult result = work(config_, puz, m, budget_, start_nonce);
    transcript_.log(puz, m, result.evaluations);
    return result;
}

void AdversaryOutcome::finalize_distinct() {
    std::set<std::vector<uint8_t>> seen;
    distinct_puzzles = true;
    for (const ClaimedTicket& claim : tickets)
        if (!seen.insert(claim.puz.id).second) distinct_puzzles = false;
}

AdversaryOutcome parallel_solver(const HashPuzzleConfig& config,
                                 const std::vector<WorkerAssignment>& assignments,
                                 uint64_t per_worker_budget) {
    if (assignments.empty())
        throw InvalidParameter("parallel_solver needs at least one worker");
    for (size_t a = 0; a < assignments.size(); ++a) {
        for (size_t b = a + 1; b < assignments.size(); ++b) {
            if (assignments[a].puz.id != assignments[b].puz.id) continue;
            const uint64_t lo = std::max(assignments[a].start_nonce,
                                         assignments[b].start_nonce);
            const uint64_t hi = std::min(assignments[a].start_nonce + per_worker_budget,
                                         assignments[b].start_nonce + per_worker_budget);
            if (lo < hi)
                throw InvalidParameter(
                    "workers share a puzzle with overlapping nonce ranges");
        }
    }

    AdversaryOutcome outcome;
    for (const WorkerAssignment& assignment : assignments) {
        outcome.budget_used += config.params.init_overhead_t0; // per-worker setup
        const WorkResult result = work(config, assignment.puz, assignment.m,
                                       per_worker_budget, assignment.start_nonce);
        outcome.budget_used += result.evaluations;
        if (result.ticket && verify(config, assignment.puz, assignment.m, *result.ticket))
            outcome.tickets.push_back({assignment.puz, assignment.m, *result.ticket});
    }
    // merged deterministically: same-puzzle winners ordered lowest nonce first
    std::stable_sort(outcome.tickets.begin(), outcome.tickets.end(),
                     [](const ClaimedTicket& a, const ClaimedTicket& b) {
                         if (a.puz.id != b.puz.id) return a.puz.id < b.puz.id;
                         return a.ticket.nonce < b.ticket.nonce;
                     });
    outcome.finalize_distinct();
    return outcome;
}

CompressorStrategy compressor_strategy_from_name(const std::string& name) {
    if (name == "replay") return CompressorStrategy::kReplay;
    if (name == "grind") return CompressorStrategy::kGrind;
    if (name == "honest") return CompressorStrategy::kHonest;
    if (name == "partition") return CompressorStrategy::kPartition;
    throw InvalidParameter("unknown compressor strategy: " + name);
}

std::string compressor_strategy_name(CompressorStrategy s) {
    switch (s) {
        case CompressorStrategy::kReplay: return "replay";
        case CompressorStrategy::kGrind: return "grind";
        case CompressorStrategy::kHonest: return "honest";
        case CompressorStrategy::kPartition: return "partition";
    }
    return "unknown";
}

bool check_claims(const HashPuzzleConfig& config, const AdversaryOutcome& outcome,
                  const WorkTranscript& transcript, uint64_t l) {
    for (const ClaimedTicket& claim : outcome.tickets)
        if (transcript.contains(claim.puz, claim.m))
            throw TranscriptViolation("claimed ticket reuses an oracle query");
    if (outcome.tickets.size() < l) return false;
    if (!outcome.distinct_puzzles) return false;
    for (const ClaimedTicket& claim : outcome.tickets)
        if (!verify(config, claim.puz, claim.m, claim.ticket)) return false;
    return true;
}

namespace {

Payload sample_payload(uint64_t seed, uint64_t trial, uint64_t salt) {
    CounterRng rng(seed, streams::kPayload + (trial << 8) + salt);
    Payload m;
    m.bytes.resize(8);
    const uint64_t v = rng.next_u64();
    for (int b = 0; b < 8; ++b) m.bytes[b] = uint8_t(v >> (8 * b));
    return m;
}

PuzzleInstance sample_instance_for_trial(const HashPuzzleConfig& config,
                                         uint64_t seed, uint64_t trial,
                                         uint64_t salt) {
    return sample_puzzle_instance(config.params, seed, (trial << 4) + salt);
}

// Payload grinding: one hash per candidate payload under a fixed puzzle and
// nonce. Shares the puzzle prefix across attempts but, with an honest hash,
// buys nothing over fresh nonce scanning.
void run_grind(const HashPuzzleConfig& config, const PuzzleInstance& puz,
               uint64_t seed, uint64_t trial, uint64_t budget,
               AdversaryOutcome& outcome) {
    for (uint64_t attempt = 0; attempt < budget; ++attempt) {
        Payload m = sample_payload(seed, trial, 2);
        for (int b = 0; b < 8; ++b) m.bytes.push_back(uint8_t(attempt >> (8 * b)));
        const WorkResult result = work(config, puz, m, 1, 0);
        outcome.budget_used += result.evaluations;
        if (result.ticket) {
            outcome.tickets.push_back({puz, m, *result.ticket});
            return;
        }
    }
}

} // namespace

CompressorTrialResult compressor_game_trial(const HashPuzzleConfig& config,
                                            CompressorStrategy strategy,
                                            const CompressorGameConfig& game,
                                            uint64_t seed, uint64_t trial) {
    if (game.l < 1) throw InvalidParameter("compressor game needs l >= 1");

    WorkOracle oracle(config, game.oracle_budget);
    AdversaryOutcome outcome;
    outcome.budget_used = config.params.init_overhead_t0; // one-time setup cost

    switch (strategy) {
        case CompressorStrategy::kReplay: {
            // Ask the oracle outright and claim its answer.
            const PuzzleInstance puz = sample_instance_for_trial(config, seed, trial, 0);
            const Payload m = sample_payload(seed, trial, 0);
            const WorkResult result = oracle.query(puz, m);
            if (result.ticket) outcome.tickets.push_back({puz, m, *result.ticket});
            break;
        }
        case CompressorStrategy::kHonest: {
            // One honest solve per required ticket, splitting the free budget.
            const uint64_t per_claim = std::max<uint64_t>(1, game.free_budget / game.l);
            for (uint64_t i = 0; i < game.l; ++i) {
                const PuzzleInstance puz =
                    sample_instance_for_trial(config, seed, trial, i);
                const Payload m = sample_payload(seed, trial, i);
                const WorkResult result = work(config, puz, m, per_claim, 0);
                outcome.budget_used += result.evaluations;
                if (result.ticket) outcome.tickets.push_back({puz, m, *result.ticket});
            }
            break;
        }
        case CompressorStrategy::kGrind: {
            const PuzzleInstance puz = sample_instance_for_trial(config, seed, trial, 0);
            run_grind(config, puz, seed, trial, game.free_budget, outcome);
            break;
        }
        case CompressorStrategy::kPartition: {
            // Split the free budget across two fresh instances, stop at a win.
            const uint64_t half = std::max<uint64_t>(1, game.free_budget / 2);
            for (uint64_t i = 0; i < 2 && outcome.tickets.empty(); ++i) {
                const PuzzleInstance puz =
                    sample_instance_for_trial(config, seed, trial, 8 + i);
                const Payload m = sample_payload(seed, trial, 8 + i);
                const uint64_t budget = i == 0 ? half : game.free_budget - half;
                const WorkResult result = work(config, puz, m, budget, 0);
                outcome.budget_used += result.evaluations;
                if (result.ticket) outcome.tickets.push_back({puz, m, *result.ticket});
            }
            break;
        }
    }

    outcome.finalize_distinct();

    CompressorTrialResult result;
    try {
        result.success = check_claims(config, outcome, oracle.transcript(), game.l);
    } catch (const TranscriptViolation&) {
        result.success = false;
        result.transcript_violation = true;
    }
    result.outcome = std::move(outcome);
    return result;
}

CompressorGameStats run_compressor_game(const HashPuzzleConfig& config,
                                        CompressorStrategy strategy,
                                        const CompressorGameConfig& game,
                                        uint64_t trials, uint64_t seed) {
    if (trials == 0) throw InvalidParameter("compressor game needs trials >= 1");

    uint64_t successes = 0;
    uint64_t violations = 0;
    for (uint64_t trial = 0; trial < trials; ++trial) {
        const CompressorTrialResult r =
            compressor_game_trial(config, strategy, game, seed, trial);
        if (r.success) ++successes;
        if (r.transcript_violation) ++violations;
    }

    CompressorGameStats stats;
    stats.stats = TrialStats::from_counts(successes, trials);
    stats.transcript_violations = violations;
    stats.bound = zeta(game.l, game.free_budget, config.params.difficulty_d);
    stats.sigma = binomial_sigma(stats.bound, trials);
    stats.within_bound = stats.stats.estimate <= stats.bound + 3.0 * stats.sigma;
    return stats;
}

BetAllocation greedy_bettor(const Round& round, uint64_t bettor_id) {
    if (round.nodes().empty()) throw NoNodes("round has no nodes to bet on");
    uint64_t best = 0;
    for (uint64_t i = 1; i < round.nodes().size(); ++i)
        if (round.nodes()[i].bets > round.nodes()[best].bets) best = i;
    BetAllocation allocation;
    allocation.bettor = bettor_id;
    allocation.amounts = {{best, 1}};
    return allocation;
}

LateBettorTrace late_bettor(const RoundScheduleConfig& config, double enter_time,
                            bool abstain) {
    if (enter_time < 0.0 || enter_time > 1.0)
        throw InvalidParameter("enter_time must lie in [0, 1]");
    if (config.num_nodes == 0 || config.steps == 0)
        throw InvalidParameter("schedule needs nodes and steps");

    ValidatorSet validators;
    // producers 0..num_nodes-1, background bettors after them, strategist last
    const uint64_t background_id = config.num_nodes;
    const uint64_t strategist_id = config.num_nodes + 1;
    for (uint32_t i = 0; i < config.num_nodes; ++i)
        validators.bond(i, config.casper.production_fee + 1);
    validators.bond(background_id, config.background_deposit);
    validators.bond(strategist_id, config.bettor_deposit);

    Round round(config.seed, 1, config.casper);
    for (uint32_t i = 0; i < config.num_nodes; ++i)
        round.alpha_work(validators, i, Payload::from_string("node"));

    CounterRng schedule(config.seed, streams::kRoundSchedule);
    LateBettorTrace trace;

    for (uint32_t step = 1; step <= config.steps; ++step) {
        const double clock = double(step) / double(config.steps);
        round.advance_clock(clock);

        // one background bet per step: herd on the leader or pick uniformly
        BetAllocation background;
        background.bettor = background_id;
        if (schedule.bernoulli(config.herd_probability)) {
            background = greedy_bettor(round, background_id);
        } else {
            background.amounts = {{schedule.below(config.num_nodes), 1}};
        }
        round.beta_work(validators, background);

        if (clock >= enter_time) {
            const BetAllocation choice = greedy_bettor(round, strategist_id);
            if (!trace.entered) {
                trace.entered = true;
                trace.entry_clock = clock;
                trace.chosen_node = choice.amounts[0].first;
                trace.bets_at_entry = round.nodes()[trace.chosen_node].bets;
                trace.threshold = late_bet_threshold(trace.bets_at_entry);
                trace.threshold_met =
                    clock * round.blocktime() > trace.threshold;
            }
            if (!abstain) round.beta_work(validators, choice);
        }
    }

    const uint64_t k = round.total_bets();
    uint64_t s = selected_size_model(k, 1.0, round.blocktime(),
                                     config.casper.bet_constant);
    s = std::min<uint64_t>(s, round.nodes().size());
    round.set_selected_size(s);

    const std::vector<uint64_t> selected = round.settle(validators);
    trace.final_k = k;
    trace.final_s = s;
    if (trace.entered)
        trace.selected =
            std::binary_search(selected.begin(), selected.end(), trace.chosen_node);
    trace.snapshot = round.serialize();
    return trace;
}

} // namespace scratchoff

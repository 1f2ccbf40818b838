#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "scratchoff/casper.hpp"
#include "scratchoff/hash_puzzle.hpp"
#include "scratchoff/stats.hpp"

namespace scratchoff {

/// Append-only log of every (puz, m) pair an adversary sent to the Work
/// oracle, plus the hash attempts the oracle burned answering them.
class WorkTranscript {
public:
    void log(const PuzzleInstance& puz, const Payload& m, uint64_t evaluations);
    bool contains(const PuzzleInstance& puz, const Payload& m) const;

    size_t query_count() const { return queries_.size(); }
    uint64_t evaluations() const { return evaluations_; }

private:
    std::vector<std::pair<std::vector<uint8_t>, std::vector<uint8_t>>> queries_;
    uint64_t evaluations_ = 0;
};

/// The Work oracle handed to compressor adversaries: honest work, logged.
class WorkOracle {
public:
    WorkOracle(const HashPuzzleConfig& config, uint64_t budget_per_query)
        : config_(config), budget_(budget_per_query) {}

    WorkResult query(const PuzzleInstance& puz, const Payload& m,
                     uint64_t start_nonce = 0);

    const WorkTranscript& transcript() const { return transcript_; }

private:
    const HashPuzzleConfig& config_;
    uint64_t budget_;
    WorkTranscript transcript_;
};

struct ClaimedTicket {
    PuzzleInstance puz;
    Payload m;
    NonceTicket ticket;
};

struct AdversaryOutcome {
    std::vector<ClaimedTicket> tickets;
    uint64_t budget_used = 0;     // hash attempts outside the oracle
    bool distinct_puzzles = true; // all claimed puzzle ids differ

    void finalize_distinct();
};

// --- parallel solving (the honest algorithm split across workers) ----------

struct WorkerAssignment {
    PuzzleInstance puz;
    Payload m;
    uint64_t start_nonce = 0;
};

/// Runs one honest Work call of `per_worker_budget` attempts per assignment.
/// Assignments must be pairwise disjoint: no two workers may share a puzzle
/// id with overlapping nonce ranges. The outcome succeeds if any worker's
/// ticket verifies; all winning tickets are claimed.
AdversaryOutcome parallel_solver(const HashPuzzleConfig& config,
                                 const std::vector<WorkerAssignment>& assignments,
                                 uint64_t per_worker_budget);

// --- the compressor game (oracle-bounded solving) ---------------------------

enum class CompressorStrategy {
    kReplay,    // copies an oracle answer verbatim; always disqualified
    kGrind,     // grinds payload variations under one puzzle, no oracle use
    kHonest,    // spends the free budget exactly like the honest algorithm
    kPartition, // splits the free budget across two fresh instances
};

CompressorStrategy compressor_strategy_from_name(const std::string& name);
std::string compressor_strategy_name(CompressorStrategy s);

struct CompressorGameConfig {
    uint64_t l = 1;             // tickets the adversary must present
    uint64_t free_budget = 256; // the adversary's own attempts (gamma * t)
    uint64_t oracle_budget = 256;
};

struct CompressorTrialResult {
    AdversaryOutcome outcome;
    bool success = false;
    bool transcript_violation = false;
};

/// One seeded trial: run the strategy, then score its claims. A claim set
/// succeeds only if every ticket verifies, puzzle ids are distinct, and no
/// claimed (puz, m) appears in the oracle transcript (a reuse counts as a
/// failed trial, recorded as a violation).
CompressorTrialResult compressor_game_trial(const HashPuzzleConfig& config,
                                            CompressorStrategy strategy,
                                            const CompressorGameConfig& game,
                                            uint64_t seed, uint64_t trial);

struct CompressorGameStats {
    TrialStats stats;              // success frequency with Wilson band
    uint64_t transcript_violations = 0;
    double bound = 0.0;            // zeta(l, free_budget, d)
    double sigma = 0.0;            // binomial sigma of the bound
    bool within_bound = false;     // estimate <= bound + 3 sigma
};

CompressorGameStats run_compressor_game(const HashPuzzleConfig& config,
                                        CompressorStrategy strategy,
                                        const CompressorGameConfig& game,
                                        uint64_t trials, uint64_t seed);

/// Validates a claim set against the transcript. Throws TranscriptViolation
/// when a claimed (puz, m) was answered by the oracle.
bool check_claims(const HashPuzzleConfig& config, const AdversaryOutcome& outcome,
                  const WorkTranscript& transcript, uint64_t l);

// --- betting strategies ------------------------------------------------------

/// One bet on the node with the greatest current bets (ties to the lower
/// node id). Throws NoNodes on an empty round.
BetAllocation greedy_bettor(const Round& round, uint64_t bettor_id);

/// Seeded betting-round schedule shared by the late-bettor experiments and
/// the round CLI: `num_nodes` producers each commit one node, then one
/// background bet lands per step (greedy with herd_probability, else on a
/// uniformly random node) while the strategy bettor plays greedy from
/// enter_time onward. Settlement uses the s-model at the final clock.
struct RoundScheduleConfig {
    uint64_t seed = 0;
    uint32_t num_nodes = 8;
    uint32_t steps = 80;
    uint64_t background_deposit = 1000;
    uint64_t bettor_deposit = 1000;
    double herd_probability = 0.5;
    CasperConfig casper;
};

struct LateBettorTrace {
    uint64_t chosen_node = 0;
    uint64_t bets_at_entry = 0; // bets(b) seen when the first bet lands
    double entry_clock = 0.0;
    double threshold = 0.0; // late_bet_threshold(bets_at_entry)
    bool threshold_met = false;
    bool entered = false;
    bool selected = false; // chosen node ended in S
    uint64_t final_k = 0;
    uint64_t final_s = 0;
    std::string snapshot; // serialized settled round
};

/// Runs one scheduled round with a strategy bettor that abstains until
/// clock >= enter_time and then reinforces the current leader every step.
/// With abstain = true the bettor observes its would-be choice but places
/// nothing (paired-comparison baseline).
LateBettorTrace late_bettor(const RoundScheduleConfig& config, double enter_time,
                            bool abstain = false);

} // namespace scratchoff

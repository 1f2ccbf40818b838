#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "scratchoff/digest.hpp"
#include "scratchoff/puzzle.hpp"

namespace scratchoff {

// Protocol-wide validator limits: 80 shards of 100 bonded validators each.
inline constexpr uint32_t kShardCount = 80;
inline constexpr uint32_t kValidatorsPerShard = 100;
inline constexpr uint32_t kMaxBondedValidators = kShardCount * kValidatorsPerShard;

struct Validator {
    uint64_t id = 0;
    uint64_t deposit = 0; // unitless stake
    bool bonded = false;
    uint32_t shard = 0;
};

/// The bonded validator registry. Bonding assigns the least-full shard and
/// enforces both the per-shard and the global cap; slashing zeroes the
/// deposit and unbonds.
class ValidatorSet {
public:
    ValidatorSet(uint32_t shards = kShardCount,
                 uint32_t per_shard = kValidatorsPerShard);

    /// Bonds `id` with `deposit` stake. Throws AlreadyBonded, InvalidParameter
    /// (zero deposit), or CapExceeded when every shard is full.
    void bond(uint64_t id, uint64_t deposit);

    const Validator* find(uint64_t id) const;
    Validator* find(uint64_t id);

    uint32_t bonded_count() const { return bonded_count_; }
    uint32_t shard_fill(uint32_t shard) const { return shard_fill_.at(shard); }
    uint32_t shard_count() const { return uint32_t(shard_fill_.size()); }

    void slash(uint64_t id);

private:
    std::map<uint64_t, Validator> validators_;
    std::vector<uint32_t> shard_fill_;
    uint32_t per_shard_;
    uint32_t bonded_count_ = 0;
};

struct NodeBlock {
    uint64_t id = 0;
    uint64_t producer = 0;
    std::array<uint8_t, 32> signature_tag{}; // keyed test-hash of (producer, id)
    uint64_t bets = 0;
};

/// One bettor's stake spread over existing nodes. Amounts are positive
/// integers and must not exceed the bettor's deposit in total.
struct BetAllocation {
    uint64_t bettor = 0;
    std::vector<std::pair<uint64_t, uint64_t>> amounts; // (node id, bet)
};

struct CasperConfig {
    double p_alpha = 2.0 / 3.0; // alpha_verify acceptance probability
    double p_beta = 2.0 / 3.0;  // beta_verify acceptance probability
    uint64_t production_fee = 1;
    double blocktime = 1.0;
    double bet_constant = 0.4; // the s ~ 0.4k model coefficient
};

/// s = max(1, floor(constant * k * clock_t * blocktime)): the empirical model
/// for how many nodes a round selects as time advances. Callers clamp to the
/// node count.
uint64_t selected_size_model(uint64_t k, double clock_t, double blocktime,
                             double constant = 0.4);

/// Once clock_t * blocktime exceeds 5 / (4 * (bets_b + 1)), a greedy bet on
/// the current leader can no longer be displaced under the s-model.
double late_bet_threshold(uint64_t bets_b);

/// One betting round: nodes are produced (alpha), bet on (beta), and settled
/// by selecting the s highest-bet nodes. Single-writer: all mutation goes
/// through this object; snapshots and verifies are const.
class Round {
public:
    Round(uint64_t seed, uint64_t selected_size, const CasperConfig& config = {});

    /// Produces a node signed by `validator_id`, charging the production fee.
    /// Throws NotBonded or InsufficientDeposit (fee would zero the deposit).
    Ticket alpha_work(ValidatorSet& validators, uint64_t validator_id,
                      const Payload& payload);

    /// Recomputes the signature tag (forgeries return 0 deterministically),
    /// then draws accept/reject with probability p_alpha from a stream keyed
    /// by (round seed, ticket). Same ticket, same bit.
    bool alpha_verify(const Ticket& ticket) const;

    /// Applies a bet allocation to node tallies and the round's bet total,
    /// debiting the bettor's available stake. Throws OverStake, UnknownNode,
    /// RoundClosed, or NotBonded.
    Ticket beta_work(ValidatorSet& validators, const BetAllocation& allocation);

    /// Malformed allocations return 0; otherwise a seeded draw at p_beta.
    bool beta_verify(const Ticket& ticket) const;

    /// Selects the s highest-bet nodes (ties to the lower node id), slashes
    /// every producer whose node missed S and whose alpha ticket the verifier
    /// rejected, and closes the round. Returns S sorted by node id.
    std::vector<uint64_t> settle(ValidatorSet& validators);

    /// The closed-form displacement bound: can `remaining_bets` placed on
    /// nodes outside S push `node_id` out of the top s? Answers
    /// remaining_bets >= s * (bets(b) + 1), the cost of raising s empty
    /// rivals strictly above b. Throws NodeNotInS when b is not in the top s.
    bool displacement_possible(uint64_t node_id, uint64_t remaining_bets) const;

    /// Current top-s node ids (what settle would select), sorted ascending.
    std::vector<uint64_t> selected_set() const;

    void advance_clock(double clock_t); // monotone within the round
    void set_selected_size(uint64_t s);

    const std::vector<NodeBlock>& nodes() const { return nodes_; }
    const NodeBlock* find_node(uint64_t node_id) const;
    uint64_t total_bets() const { return total_bets_; }
    uint64_t selected_size() const { return selected_size_; }
    double clock() const { return clock_; }
    double blocktime() const { return config_.blocktime; }
    uint64_t seed() const { return seed_; }
    bool settled() const { return settled_; }
    const CasperConfig& config() const { return config_; }

    /// Line-oriented snapshot, bit-exact for replay comparison:
    ///   s,k,clock_t,blocktime,seed
    ///   <values>
    ///   node_id,producer_id,bets
    ///   <one node per line>
    std::string serialize() const;

    uint64_t available_stake(const ValidatorSet& validators, uint64_t bettor) const;

private:
    std::array<uint8_t, 32> node_tag(uint64_t producer, uint64_t node_id) const;

    uint64_t seed_;
    uint64_t selected_size_;
    CasperConfig config_;
    double clock_ = 0.0;
    bool settled_ = false;
    uint64_t total_bets_ = 0;
    std::vector<NodeBlock> nodes_;
    std::vector<Ticket> production_tickets_;   // parallel to nodes_
    std::map<uint64_t, uint64_t> round_stake_; // bettor id -> stake spent
};

/// PuzzleScheme adapter for the alpha flavour: Work commits a node to a
/// standing round, Verify is the seeded randomized check. Lets the generic
/// correctness harness measure the acceptance frequency.
class AlphaPuzzleScheme final : public PuzzleScheme {
public:
    explicit AlphaPuzzleScheme(uint64_t round_seed, const CasperConfig& config = {});

    std::string name() const override { return "alpha"; }
    const PuzzleParams& params() const override { return params_; }

    std::pair<PuzzleInstance, Payload> sample_instance(uint64_t seed,
                                                       uint64_t index) const override;
    MaybeTicket work(const PuzzleInstance& puz, const Payload& m,
                     uint64_t seed) override;
    bool verify(const PuzzleInstance& puz, const Payload& m, const Ticket& ticket,
                uint64_t seed) const override;
    bool deterministic_verify() const override { return false; }

    const Round& round() const { return round_; }

private:
    static constexpr uint64_t kProducerId = 1;
    PuzzleParams params_;
    ValidatorSet validators_;
    Round round_;
};

} // namespace scratchoff

#include "scratchoff/casper.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstring>

#include "scratchoff/rng.hpp"

namespace scratchoff {

namespace {

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

uint64_t ticket_fingerprint(const Ticket& ticket) {
    const Digest32 digest = keyed_test_hash(ticket.solver_id, ticket.value);
    uint64_t v = 0;
    std::memcpy(&v, digest.data(), 8);
    return v;
}

bool seeded_accept(uint64_t round_seed, uint64_t stream, const Ticket& ticket,
                   double probability) {
    const uint64_t draw = CounterRng::at(round_seed, stream, ticket_fingerprint(ticket));
    return static_cast<double>(draw >> 11) * 0x1.0p-53 < probability;
}

} // namespace

ValidatorSet::ValidatorSet(uint32_t shards, uint32_t per_shard)
    : shard_fill_(shards, 0), per_shard_(per_shard) {
    if (shards == 0 || per_shard == 0)
        throw InvalidParameter("validator set needs at least one shard slot");
}

void ValidatorSet::bond(uint64_t id, uint64_t deposit) {
    if (deposit == 0) throw InvalidParameter("bond requires a positive deposit");
    auto it = validators_.find(id);
    if (it != validators_.end() && it->second.bonded)
        throw AlreadyBonded("validator " + std::to_string(id) + " is already bonded");
    if (bonded_count_ >= shard_fill_.size() * per_shard_)
        throw CapExceeded("validator cap of " +
                          std::to_string(shard_fill_.size() * per_shard_) + " reached");

    // least-full shard, lowest index on ties; a free slot exists by the check above
    uint32_t best = 0;
    for (uint32_t s = 1; s < shard_fill_.size(); ++s)
        if (shard_fill_[s] < shard_fill_[best]) best = s;

    Validator v{id, deposit, true, best};
    validators_[id] = v;
    ++shard_fill_[best];
    ++bonded_count_;
}

const Validator* ValidatorSet::find(uint64_t id) const {
    auto it = validators_.find(id);
    return it == validators_.end() ? nullptr : &it->second;
}

Validator* ValidatorSet::find(uint64_t id) {
    auto it = validators_.find(id);
    return it == validators_.end() ? nullptr : &it->second;
}

void ValidatorSet::slash(uint64_t id) {
    Validator* v = find(id);
    if (v == nullptr || !v->bonded) return;
    v->deposit = 0;
    v->bonded = false;
    --shard_fill_[v->shard];
    --bonded_count_;
}

uint64_t selected_size_model(uint64_t k, double clock_t, double blocktime,
                             double constant) {
    if (clock_t < 0.0 || clock_t > 1.0)
        throw InvalidParameter("clock_t must lie in [0, 1]");
    if (blocktime <= 0.0) throw InvalidParameter("blocktime must be positive");
    if (constant <= 0.0) throw InvalidParameter("bet model constant must be positive");
    const double s = std::floor(constant * double(k) * clock_t * blocktime);
    return s < 1.0 ? 1 : uint64_t(s);
}

double late_bet_threshold(uint64_t bets_b) {
    return 5.0 / (4.0 * (double(bets_b) + 1.0));
}

Round::Round(uint64_t seed, uint64_t selected_size, const CasperConfig& config)
    : seed_(seed), selected_size_(selected_size), config_(config) {
    if (selected_size == 0) throw InvalidParameter("selected set size must be >= 1");
    if (config.p_alpha < 0.0 || config.p_alpha > 1.0 || config.p_beta < 0.0 ||
        config.p_beta > 1.0)
        throw InvalidParameter("verify probabilities must lie in [0, 1]");
    if (config.blocktime <= 0.0) throw InvalidParameter("blocktime must be positive");
}

std::array<uint8_t, 32> Round::node_tag(uint64_t producer, uint64_t node_id) const {
    uint8_t buf[16];
    for (int i = 0; i < 8; ++i) buf[i] = uint8_t(producer >> (8 * i));
    for (int i = 0; i < 8; ++i) buf[8 + i] = uint8_t(node_id >> (8 * i));
    return keyed_test_hash(seed_, buf);
}

Ticket Round::alpha_work(ValidatorSet& validators, uint64_t validator_id,
                         const Payload& payload) {
    if (settled_) throw RoundClosed("round already settled");
    Validator* v = validators.find(validator_id);
    if (v == nullptr || !v->bonded)
        throw NotBonded("validator " + std::to_string(validator_id) + " is not bonded");
    if (v->deposit <= config_.production_fee)
        throw InsufficientDeposit("production fee would exhaust the deposit");
    v->deposit -= config_.production_fee;

    NodeBlock node;
    node.id = nodes_.size();
    node.producer = validator_id;
    node.signature_tag = node_tag(validator_id, node.id);
    node.bets = 0;

    Ticket ticket;
    ticket.solver_id = validator_id;
    ticket.body = SignatureEvidence{node.id, node.signature_tag};
    ticket.value.reserve(32 + payload.bytes.size());
    for (uint8_t b : node.signature_tag) ticket.value.push_back(b);
    for (uint8_t b : payload.bytes) ticket.value.push_back(b);

    nodes_.push_back(node);
    production_tickets_.push_back(ticket);
    return ticket;
}

bool Round::alpha_verify(const Ticket& ticket) const {
    const auto* sig = std::get_if<SignatureEvidence>(&ticket.body);
    if (sig == nullptr) return false;
    if (node_tag(ticket.solver_id, sig->node_id) != sig->tag) return false;
    return seeded_accept(seed_, streams::kAlphaVerify, ticket, config_.p_alpha);
}

uint64_t Round::available_stake(const ValidatorSet& validators, uint64_t bettor) const {
    const Validator* v = validators.find(bettor);
    if (v == nullptr || !v->bonded) return 0;
    auto it = round_stake_.find(bettor);
    const uint64_t spent = it == round_stake_.end() ? 0 : it->second;
    return v->deposit > spent ? v->deposit - spent : 0;
}

Ticket Round::beta_work(ValidatorSet& validators, const BetAllocation& allocation) {
    if (settled_) throw RoundClosed("round already settled");
    const Validator* v = validators.find(allocation.bettor);
    if (v == nullptr || !v->bonded)
        throw NotBonded("bettor " + std::to_string(allocation.bettor) + " is not bonded");

    uint64_t total = 0;
    for (const auto& [node_id, amount] : allocation.amounts) {
        if (amount == 0) throw InvalidParameter("bet amounts must be positive");
        if (node_id >= nodes_.size())
            throw UnknownNode("node " + std::to_string(node_id) + " does not exist");
        total += amount;
    }
    if (total > available_stake(validators, allocation.bettor))
        throw OverStake("allocation exceeds the bettor's available stake");

    for (const auto& [node_id, amount] : allocation.amounts) {
        nodes_[node_id].bets += amount;
        total_bets_ += amount;
    }
    round_stake_[allocation.bettor] += total;

    Ticket ticket;
    ticket.solver_id = allocation.bettor;
    BetEvidence evidence;
    evidence.bets = allocation.amounts;
    std::sort(evidence.bets.begin(), evidence.bets.end());
    for (const auto& [node_id, amount] : evidence.bets) {
        for (int i = 0; i < 8; ++i) ticket.value.push_back(uint8_t(node_id >> (8 * i)));
        for (int i = 0; i < 8; ++i) ticket.value.push_back(uint8_t(amount >> (8 * i)));
    }
    ticket.body = std::move(evidence);
    return ticket;
}

bool Round::beta_verify(const Ticket& ticket) const {
    const auto* bets = std::get_if<BetEvidence>(&ticket.body);
    if (bets == nullptr) return false;
    for (const auto& [node_id, amount] : bets->bets)
        if (amount == 0 || node_id >= nodes_.size()) return false;
    return seeded_accept(seed_, streams::kBetaVerify, ticket, config_.p_beta);
}

std::vector<uint64_t> Round::selected_set() const {
    if (nodes_.size() < selected_size_)
        throw NotEnoughNodes("round has " + std::to_string(nodes_.size()) +
                             " nodes but selects " + std::to_string(selected_size_));
    std::vector<uint64_t> order(nodes_.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](uint64_t a, uint64_t b) {
        if (nodes_[a].bets != nodes_[b].bets) return nodes_[a].bets > nodes_[b].bets;
        return a < b; // ties to the lower node id
    });
    order.resize(selected_size_);
    std::sort(order.begin(), order.end());
    return order;
}

std::vector<uint64_t> Round::settle(ValidatorSet& validators) {
    if (settled_) throw RoundClosed("round already settled");
    std::vector<uint64_t> selected = selected_set();

    std::vector<bool> in_s(nodes_.size(), false);
    for (uint64_t id : selected) in_s[id] = true;
    for (size_t i = 0; i < nodes_.size(); ++i) {
        if (in_s[i]) continue;
        if (!alpha_verify(production_tickets_[i])) validators.slash(nodes_[i].producer);
    }

    settled_ = true;
    return selected;
}

bool Round::displacement_possible(uint64_t node_id, uint64_t remaining_bets) const {
    const std::vector<uint64_t> selected = selected_set();
    if (!std::binary_search(selected.begin(), selected.end(), node_id))
        throw NodeNotInS("node " + std::to_string(node_id) + " is not in the top s");
    const uint64_t bets_b = nodes_[node_id].bets;
    return remaining_bets >= selected_size_ * (bets_b + 1);
}

void Round::advance_clock(double clock_t) {
    if (clock_t < clock_ || clock_t > 1.0)
        throw InvalidParameter("round clock must advance monotonically within [0, 1]");
    clock_ = clock_t;
}

void Round::set_selected_size(uint64_t s) {
    if (s == 0) throw InvalidParameter("selected set size must be >= 1");
    selected_size_ = s;
}

const NodeBlock* Round::find_node(uint64_t node_id) const {
    return node_id < nodes_.size() ? &nodes_[node_id] : nullptr;
}

AlphaPuzzleScheme::AlphaPuzzleScheme(uint64_t round_seed, const CasperConfig& config)
    : round_(round_seed, 1, config) {
    // deep deposit so production fees never run out mid-harness
    validators_.bond(kProducerId, uint64_t(1) << 40);
}

std::pair<PuzzleInstance, Payload> AlphaPuzzleScheme::sample_instance(
    uint64_t seed, uint64_t index) const {
    // the alpha verifier ignores (puz, m); carry the trial index as payload
    CounterRng rng(seed, streams::kPuzzleInstance + (index << 8));
    PuzzleInstance puz;
    puz.id.resize(8);
    const uint64_t v = rng.next_u64();
    for (int b = 0; b < 8; ++b) puz.id[size_t(b)] = uint8_t(v >> (8 * b));
    Payload m;
    for (int b = 0; b < 8; ++b) m.bytes.push_back(uint8_t(index >> (8 * b)));
    return {std::move(puz), std::move(m)};
}

MaybeTicket AlphaPuzzleScheme::work(const PuzzleInstance& /*puz*/, const Payload& m,
                                    uint64_t /*seed*/) {
    return round_.alpha_work(validators_, kProducerId, m);
}

bool AlphaPuzzleScheme::verify(const PuzzleInstance& /*puz*/, const Payload& /*m*/,
                               const Ticket& ticket, uint64_t /*seed*/) const {
    return round_.alpha_verify(ticket);
}

std::string Round::serialize() const {
    std::string out = "s,k,clock_t,blocktime,seed\n";
    out += std::to_string(selected_size_) + "," + std::to_string(total_bets_) + "," +
           format_double(clock_) + "," + format_double(config_.blocktime) + "," +
           std::to_string(seed_) + "\n";
    out += "node_id,producer_id,bets\n";
    for (const NodeBlock& node : nodes_) {
        out += std::to_string(node.id) + "," + std::to_string(node.producer) + "," +
               std::to_string(node.bets) + "\n";
    }
    return out;
}

} // namespace scratchoff

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "scratchoff/hash_puzzle.hpp"
#include "scratchoff/rng.hpp"
#include "scratchoff/stats.hpp"
#include "scratchoff/zeta.hpp"

using namespace scratchoff;

namespace {

PuzzleInstance make_puz(uint64_t seed) {
    return sample_puzzle_instance(PuzzleParams{}, seed, 0);
}

} // namespace

TEST_CASE("sha256 known vectors") {
    // FIPS 180-4 examples
    const std::vector<uint8_t> abc = {'a', 'b', 'c'};
    CHECK(to_hex(Sha256::hash(abc)) ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(to_hex(Sha256::hash({})) ==
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");

    const std::string two = "abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq";
    const std::vector<uint8_t> v(two.begin(), two.end());
    CHECK(to_hex(Sha256::hash(v)) ==
          "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1");

    // multi-block streaming matches one-shot
    std::vector<uint8_t> big(1000, 0x5a);
    Sha256 h;
    h.update(std::span<const uint8_t>(big.data(), 300));
    h.update(std::span<const uint8_t>(big.data() + 300, 700));
    CHECK(h.finish() == Sha256::hash(big));
}

TEST_CASE("gen computes the difficulty target") {
    // d = 0: the whole digest space wins
    const HashPuzzleConfig c0 = gen(256, 0.0);
    CHECK(c0.target.covers_all);
    Digest32 all_ff;
    all_ff.fill(0xff);
    CHECK(c0.target.admits(all_ff));

    // d = 8: T = 2^248, so exactly the digests with a zero first byte win
    const HashPuzzleConfig c8 = gen(256, 8.0);
    CHECK_FALSE(c8.target.covers_all);
    CHECK(c8.target.bytes[0] == 0x01);
    for (int i = 1; i < 32; ++i) CHECK(c8.target.bytes[i] == 0x00);
    Digest32 d1{};
    d1[0] = 0x00;
    d1[1] = 0xff;
    CHECK(c8.target.admits(d1));
    d1[0] = 0x01;
    CHECK_FALSE(c8.target.admits(d1));

    CHECK_THROWS_AS(gen(256, 300.0), DifficultyOutOfRange);
    CHECK_THROWS_AS(gen(256, -1.0), DifficultyOutOfRange);
    CHECK_THROWS_AS(gen(128, 8.0), InvalidParameter);
}

TEST_CASE("zero difficulty wins on the first attempt") {
    const HashPuzzleConfig c = gen(256, 0.0);
    const PuzzleInstance puz = make_puz(1);
    const Payload m = Payload::from_string("payload");
    const WorkResult r = work(c, puz, m, 1, 0);
    REQUIRE(r.ticket.has_value());
    CHECK(r.ticket->nonce == 0);
    CHECK(r.evaluations == 1);
    CHECK(verify(c, puz, m, *r.ticket));
}

TEST_CASE("maximum difficulty never wins a small budget") {
    const HashPuzzleConfig c = gen(256, 64.0);
    for (uint64_t seed = 0; seed < 100; ++seed) {
        const PuzzleInstance puz = make_puz(seed);
        const WorkResult r = work(c, puz, Payload::from_string("m"), 10, 0);
        // expected win probability 10 * 2^-64; a hit here warrants inspection
        CHECK_FALSE(r.ticket.has_value());
        CHECK(r.evaluations == 10);
    }
}

TEST_CASE("work finds verifiable tickets at moderate difficulty") {
    const HashPuzzleConfig c = gen(256, 8.0, 4096);
    const PuzzleInstance puz = make_puz(7);
    const Payload m = Payload::from_string("block");
    uint64_t wins = 0;
    const uint64_t trials = 1000;
    for (uint64_t i = 0; i < trials; ++i) {
        const WorkResult r = work(c, puz, m, 4096, i * 4096);
        if (r.ticket && verify(c, puz, m, *r.ticket)) ++wins;
    }
    // success probability per trial is 1 - (1 - 2^-8)^4096 ~ 1 - 1.1e-7
    CHECK(wins >= 999);
}

TEST_CASE("correctness: work success implies verify accepts") {
    const HashPuzzleConfig c = gen(256, 4.0);
    for (uint64_t seed = 0; seed < 2000; ++seed) {
        const PuzzleInstance puz = make_puz(seed);
        const Payload m = Payload::from_string("p");
        const WorkResult r = work(c, puz, m, 64, 0);
        if (r.ticket) CHECK(verify(c, puz, m, *r.ticket));
    }
}

TEST_CASE("attempt accounting equals min(budget, winning index + 1)") {
    const HashPuzzleConfig c = gen(256, 4.0);
    const Payload m = Payload::from_string("acct");
    for (uint64_t seed = 0; seed < 200; ++seed) {
        const PuzzleInstance puz = make_puz(seed);
        const uint64_t budget = 64;
        const WorkResult r = work(c, puz, m, budget, 0);
        if (r.ticket) CHECK(r.evaluations == r.ticket->nonce + 1);
        else CHECK(r.evaluations == budget);
    }
}

TEST_CASE("work scans exactly the assigned nonce window") {
    const HashPuzzleConfig c = gen(256, 2.0);
    const PuzzleInstance puz = make_puz(11);
    const Payload m = Payload::from_string("w");

    // find the first winner from 0, then start past it: the next win differs
    const WorkResult first = work(c, puz, m, 1u << 10, 0);
    REQUIRE(first.ticket.has_value());
    const WorkResult next = work(c, puz, m, 1u << 10, first.ticket->nonce + 1);
    REQUIRE(next.ticket.has_value());
    CHECK(next.ticket->nonce > first.ticket->nonce);

    // a window strictly before the first winner finds nothing
    if (first.ticket->nonce > 0) {
        const WorkResult before = work(c, puz, m, first.ticket->nonce, 0);
        CHECK_FALSE(before.ticket.has_value());
        CHECK(before.evaluations == first.ticket->nonce);
    }

    CHECK_THROWS_AS(work(c, puz, m, (uint64_t(1) << 32) + 1, 0), InvalidParameter);
}

TEST_CASE("verify rejects tampering") {
    const HashPuzzleConfig c = gen(256, 4.0);
    const PuzzleInstance puz = make_puz(3);
    const Payload m = Payload::from_string("honest");
    const WorkResult r = work(c, puz, m, 4096, 0);
    REQUIRE(r.ticket.has_value());

    NonceTicket tampered = *r.ticket;
    tampered.digest[5] ^= 0x01;
    CHECK_FALSE(verify(c, puz, m, tampered));

    NonceTicket wrong_nonce = *r.ticket;
    wrong_nonce.nonce += 1;
    CHECK_FALSE(verify(c, puz, m, wrong_nonce));

    // a ticket for payload m does not transfer to a different payload
    const Payload other = Payload::from_string("other");
    CHECK_FALSE(verify(c, puz, other, *r.ticket));
}

TEST_CASE("ticket wire format round-trips") {
    NonceTicket t;
    t.nonce = 0x0123456789abcdefULL;
    for (int i = 0; i < 32; ++i) t.digest[i] = uint8_t(i * 7);
    const auto wire = t.serialize();
    CHECK(wire[0] == 0xef); // little-endian nonce first
    CHECK(NonceTicket::deserialize(wire) == t);
}

TEST_CASE("keyed test hash pins an exact winning nonce") {
    // With the seeded test hash the winning nonce is a pure function of the
    // key, so the full work path can be asserted without statistics.
    const HashPuzzleConfig c = gen(256, 8.0, 4096, 0, 1.0, HashKind::kTest64, 42);
    const PuzzleInstance puz = make_puz(5);
    const Payload m = Payload::from_string("pinned");

    const WorkResult scan = work(c, puz, m, 4096, 0);
    REQUIRE(scan.ticket.has_value());
    const uint64_t expected = scan.ticket->nonce;

    for (int rep = 0; rep < 3; ++rep) {
        const WorkResult again = work(c, puz, m, 4096, 0);
        REQUIRE(again.ticket.has_value());
        CHECK(again.ticket->nonce == expected);
        CHECK(verify(c, puz, m, *again.ticket));
    }

    // a different key moves the winner
    const HashPuzzleConfig c2 = gen(256, 8.0, 4096, 0, 1.0, HashKind::kTest64, 43);
    const WorkResult other = work(c2, puz, m, 4096, 0);
    REQUIRE(other.ticket.has_value());
    CHECK(other.ticket->nonce != expected);
}

TEST_CASE("empirical success rate sits in the Wilson band of zeta") {
    // links the tail bound to the concrete scheme at (t, d) = (256, 8)
    const HashPuzzleConfig c = gen(256, 8.0, 256);
    HashPuzzleScheme scheme(c);
    uint64_t wins = 0;
    const uint64_t trials = 10000;
    for (uint64_t i = 0; i < trials; ++i) {
        const auto [puz, m] = scheme.sample_instance(99, i);
        if (scheme.work(puz, m, 99)) ++wins;
    }
    const TrialStats stats = TrialStats::from_counts(wins, trials);
    CHECK(stats.contains(zeta(1, 256, 8.0)));
}

TEST_CASE("scheme adapter verifies its own tickets") {
    HashPuzzleScheme scheme(gen(256, 4.0, 64));
    CHECK(scheme.deterministic_verify());
    const auto [puz, m] = scheme.sample_instance(1, 0);
    const MaybeTicket ticket = scheme.work(puz, m, 1);
    REQUIRE(ticket.has_value());
    CHECK(scheme.verify(puz, m, *ticket, 1));

    Ticket forged = *ticket;
    forged.value[10] ^= 0xff;
    CHECK_FALSE(scheme.verify(puz, m, forged, 1));
}

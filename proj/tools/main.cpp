// scratchoff: deterministic scratch-off-puzzle experiments from the command
// line. Every subcommand reads an optional `key = value` config file, applies
// the SCRATCHOFF_SEED override, then applies flags, and emits CSV plus a run
// manifest. Identical (config, seed) pairs produce byte-identical CSVs.
//
// Exit codes: 0 success, 1 invariant or statistical failure, 2 usage error.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "scratchoff/adversary.hpp"
#include "scratchoff/analysis.hpp"
#include "scratchoff/casper.hpp"
#include "scratchoff/config.hpp"
#include "scratchoff/csv.hpp"
#include "scratchoff/hash_puzzle.hpp"
#include "scratchoff/rng.hpp"
#include "scratchoff/stats.hpp"
#include "scratchoff/zeta.hpp"

using namespace scratchoff;

namespace {

struct CliState {
    std::string config_path;
    std::string manifest_path = "run.manifest";
    bool manifest_requested = false;
    ExperimentConfig config;
    std::vector<std::string> outputs;
    std::chrono::steady_clock::time_point start;
};

void load_base_config(CliState& state) {
    if (!state.config_path.empty()) state.config = load_config(state.config_path);
    apply_env_overrides(state.config);
    state.start = std::chrono::steady_clock::now();
}

void finish_run(CliState& state, const std::string& subcommand) {
    if (state.outputs.empty() && !state.manifest_requested) return;
    RunManifest manifest;
    manifest.subcommand = subcommand;
    manifest.config = state.config;
    manifest.outputs = state.outputs;
    manifest.duration_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - state.start)
            .count();
    manifest.write_atomic(state.manifest_path);
}

// --- zeta --------------------------------------------------------------------

int run_zeta(CliState& state, bool paper_literal) {
    const ExperimentConfig& c = state.config;
    const double value = paper_literal
                             ? zeta_paper_literal(c.l, double(c.t), c.d)
                             : zeta(c.l, c.t, c.d);
    std::printf("%s\n", csv_double(value).c_str());
    return 0;
}

// --- pow ----------------------------------------------------------------------

int run_pow(CliState& state, const std::string& csv_path) {
    const ExperimentConfig& c = state.config;
    const HashPuzzleConfig config = gen(256, c.d, c.t);
    HashPuzzleScheme scheme(config);

    std::unique_ptr<CsvWriter> csv;
    if (!csv_path.empty()) {
        csv = std::make_unique<CsvWriter>(csv_path,
                                          "trial,success,evaluations,nonce,ticket");
        state.outputs.push_back(csv_path);
    }

    uint64_t wins = 0;
    uint64_t correctness_failures = 0;
    for (uint64_t trial = 0; trial < c.trials; ++trial) {
        const auto [puz, m] = scheme.sample_instance(c.seed, trial);
        const WorkResult r = work(config, puz, m, c.t, 0);
        std::string nonce_field, ticket_field;
        if (r.ticket) {
            ++wins;
            if (!verify(config, puz, m, *r.ticket)) ++correctness_failures;
            nonce_field = std::to_string(r.ticket->nonce);
            const auto wire = r.ticket->serialize();
            ticket_field = to_hex(wire);
        }
        if (csv)
            csv->row({std::to_string(trial), r.ticket ? "1" : "0",
                      std::to_string(r.evaluations), nonce_field, ticket_field});
    }
    if (csv) csv->close();

    const TrialStats stats = TrialStats::from_counts(wins, c.trials);
    const double expected = zeta(1, c.t, c.d);
    std::printf("trials=%llu successes=%llu rate=%s wilson=[%s,%s] zeta=%s\n",
                (unsigned long long)c.trials, (unsigned long long)wins,
                csv_double(stats.estimate).c_str(), csv_double(stats.ci_low).c_str(),
                csv_double(stats.ci_high).c_str(), csv_double(expected).c_str());

    if (correctness_failures > 0) {
        std::fprintf(stderr,
                     "FAIL: %llu tickets failed verification after a work success\n",
                     (unsigned long long)correctness_failures);
        return 1;
    }
    if (!stats.contains(expected)) {
        std::fprintf(stderr,
                     "FAIL: empirical rate %s outside the 99.7%% Wilson interval "
                     "[%s, %s] of zeta(1, %llu, %s) = %s\n",
                     csv_double(stats.estimate).c_str(),
                     csv_double(stats.ci_low).c_str(),
                     csv_double(stats.ci_high).c_str(), (unsigned long long)c.t,
                     csv_double(c.d).c_str(), csv_double(expected).c_str());
        return 1;
    }
    return 0;
}

// --- casper-round -------------------------------------------------------------

int run_casper_round(CliState& state, const std::string& strategy,
                     const std::string& snapshot_path) {
    const ExperimentConfig& c = state.config;

    RoundScheduleConfig schedule;
    schedule.seed = c.seed;
    schedule.num_nodes = uint32_t(std::min<uint64_t>(c.validators, 64));
    schedule.steps = uint32_t(std::min<uint64_t>(c.trials, 10000));
    schedule.casper.blocktime = c.blocktime;
    schedule.casper.p_beta = c.p_beta;
    schedule.casper.production_fee = c.fee;
    schedule.casper.bet_constant = c.bet_constant;

    double enter_time = 0.0;
    bool abstain = false;
    if (strategy == "none") {
        abstain = true;
    } else if (strategy == "greedy") {
        enter_time = 0.0;
    } else if (strategy.rfind("late:", 0) == 0) {
        enter_time = std::stod(strategy.substr(5));
    } else {
        throw InvalidParameter("strategy must be none, greedy, or late:<t>");
    }

    const LateBettorTrace trace = late_bettor(schedule, enter_time, abstain);

    if (!snapshot_path.empty()) {
        std::ofstream out(snapshot_path, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write snapshot: " + snapshot_path);
        out << trace.snapshot;
        state.outputs.push_back(snapshot_path);
    } else {
        std::fputs(trace.snapshot.c_str(), stdout);
    }

    std::printf("k=%llu s=%llu chosen_node=%llu bets_at_entry=%llu threshold=%s "
                "threshold_met=%d selected=%d\n",
                (unsigned long long)trace.final_k, (unsigned long long)trace.final_s,
                (unsigned long long)trace.chosen_node,
                (unsigned long long)trace.bets_at_entry,
                csv_double(trace.threshold).c_str(), int(trace.threshold_met),
                int(trace.selected));
    return 0;
}

// --- incompressibility ----------------------------------------------------------

int run_incompressibility(CliState& state, const std::string& strategy_name,
                          const std::string& csv_path) {
    const ExperimentConfig& c = state.config;
    const CompressorStrategy strategy = compressor_strategy_from_name(strategy_name);

    const HashPuzzleConfig config = gen(256, c.d, c.t);
    CompressorGameConfig game;
    game.l = c.l;
    game.oracle_budget = c.t;
    game.free_budget = uint64_t(c.gamma * double(c.t));

    const CompressorGameStats result =
        run_compressor_game(config, strategy, game, c.trials, c.seed);

    if (!csv_path.empty()) {
        CsvWriter csv(csv_path,
                      "strategy,l,gamma,t,d,trials,successes,rate,bound,sigma,"
                      "violations,within_bound");
        csv.row({strategy_name, std::to_string(c.l), csv_double(c.gamma),
                 std::to_string(c.t), csv_double(c.d), std::to_string(c.trials),
                 std::to_string(result.stats.successes),
                 csv_double(result.stats.estimate), csv_double(result.bound),
                 csv_double(result.sigma),
                 std::to_string(result.transcript_violations),
                 result.within_bound ? "1" : "0"});
        csv.close();
        state.outputs.push_back(csv_path);
    }

    std::printf("strategy=%s trials=%llu successes=%llu rate=%s bound=%s "
                "violations=%llu\n",
                strategy_name.c_str(), (unsigned long long)c.trials,
                (unsigned long long)result.stats.successes,
                csv_double(result.stats.estimate).c_str(),
                csv_double(result.bound).c_str(),
                (unsigned long long)result.transcript_violations);

    if (strategy == CompressorStrategy::kReplay && result.stats.successes > 0) {
        std::fprintf(stderr, "FAIL: replay adversary scored despite transcript "
                             "exclusion\n");
        return 1;
    }
    if (!result.within_bound) {
        std::fprintf(stderr,
                     "FAIL: success rate %s exceeds zeta(%llu, %llu, %s) + 3 sigma "
                     "= %s\n",
                     csv_double(result.stats.estimate).c_str(),
                     (unsigned long long)c.l, (unsigned long long)game.free_budget,
                     csv_double(c.d).c_str(),
                     csv_double(result.bound + 3.0 * result.sigma).c_str());
        return 1;
    }
    return 0;
}

// --- feasibility / gamma-sweep / parallel-check ---------------------------------

int run_feasibility(CliState& state, double target, const std::string& csv_path) {
    const FeasibilityReport report = gamma_feasibility(state.config.d, target);
    std::printf("%s\n%s\n", feasibility_csv_header().c_str(),
                feasibility_csv_row(report).c_str());
    if (!csv_path.empty()) {
        CsvWriter csv(csv_path, feasibility_csv_header());
        csv.raw_row(feasibility_csv_row(report));
        csv.close();
        state.outputs.push_back(csv_path);
    }
    return 0;
}

int run_gamma_sweep(CliState& state, const std::string& d_list, double target,
                    const std::string& csv_path) {
    std::vector<double> ds;
    std::string token;
    std::istringstream in(d_list);
    while (std::getline(in, token, ',')) {
        if (!token.empty()) ds.push_back(std::stod(token));
    }
    const std::vector<FeasibilityReport> reports = limit_sweep(ds, target);

    std::printf("%s\n", feasibility_csv_header().c_str());
    for (const FeasibilityReport& r : reports)
        std::printf("%s\n", feasibility_csv_row(r).c_str());

    if (!csv_path.empty()) {
        CsvWriter csv(csv_path, feasibility_csv_header());
        for (const FeasibilityReport& r : reports) csv.raw_row(feasibility_csv_row(r));
        csv.close();
        state.outputs.push_back(csv_path);
    }
    return 0;
}

int run_parallel_check(CliState& state, const std::string& csv_path) {
    const ExperimentConfig& c = state.config;
    const ParallelBoundCheck check = parallel_bound_check(c.q, c.t, c.d);
    std::printf("%s\n%s\n", parallel_check_csv_header().c_str(),
                parallel_check_csv_row(check).c_str());
    if (!csv_path.empty()) {
        CsvWriter csv(csv_path, parallel_check_csv_header());
        csv.raw_row(parallel_check_csv_row(check));
        csv.close();
        state.outputs.push_back(csv_path);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"scratch-off puzzle laboratory"};
    app.require_subcommand(1);

    CliState state;
    app.add_option("--config", state.config_path,
                   "key = value config file (defaults documented per flag)");
    auto* manifest_opt = app.add_option(
        "--manifest", state.manifest_path,
        "manifest path (default run.manifest, written when files are produced)");

    // flag storage; only values the user actually passed are applied
    uint64_t seed = 0, trials = 0, t = 0, q = 0, l = 0, validators = 0;
    double d = 0, gamma = 0, blocktime = 0, p_beta = 0, target = 2.0 / 3.0;
    std::string csv_path, snapshot_path, strategy = "greedy", d_list = "1,2,4,8,16";
    bool paper_literal = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->fallthrough(); // let --config / --manifest follow the subcommand
        cmd->add_option("--seed", seed, "random seed (default 0)");
        cmd->add_option("--trials", trials, "Monte Carlo trials (default 10000)");
        cmd->add_option("--d", d, "log2 difficulty (default 8)");
        cmd->add_option("--t", t, "attempts per Work call (default 256)");
        return cmd;
    };

    CLI::App* zeta_cmd = add_common(app.add_subcommand(
        "zeta", "evaluate the at-least-l tail probability"));
    zeta_cmd->add_option("--l", l, "required successes (default 1)");
    zeta_cmd->add_flag("--paper-literal", paper_literal,
                       "evaluate the bare product form instead of the tail");

    CLI::App* pow_cmd = add_common(app.add_subcommand(
        "pow", "seeded nonce-search trials against the difficulty target"));
    pow_cmd->add_option("--csv", csv_path, "per-trial CSV output path");

    CLI::App* round_cmd = add_common(app.add_subcommand(
        "casper-round", "simulate one betting round under the s-model"));
    round_cmd->add_option("--strategy", strategy, "none | greedy | late:<t>");
    round_cmd->add_option("--snapshot", snapshot_path,
                          "write the round snapshot to this file");
    round_cmd->add_option("--blocktime", blocktime, "blocktime seconds (default 1)");
    round_cmd->add_option("--p-beta", p_beta, "beta verify probability");
    round_cmd->add_option("--validators", validators, "node producers (default 100)");

    CLI::App* inc_cmd = add_common(app.add_subcommand(
        "incompressibility", "run a compressor adversary against the oracle game"));
    inc_cmd->add_option("--strategy", strategy, "replay | grind | honest | partition");
    inc_cmd->add_option("--gamma", gamma, "adversary speedup factor (default 1)");
    inc_cmd->add_option("--l", l, "tickets the adversary must present (default 1)");
    inc_cmd->add_option("--csv", csv_path, "summary CSV output path");

    CLI::App* feas_cmd = add_common(app.add_subcommand(
        "feasibility", "maximize the speedup bound and report the feasible set"));
    feas_cmd->add_option("--target", target, "acceptance probability (default 2/3)");
    feas_cmd->add_option("--csv", csv_path, "report CSV output path");

    CLI::App* sweep_cmd = add_common(app.add_subcommand(
        "gamma-sweep", "feasibility trend over a list of difficulties"));
    sweep_cmd->add_option("--d-values", d_list, "comma-separated d list");
    sweep_cmd->add_option("--target", target, "acceptance probability (default 2/3)");
    sweep_cmd->add_option("--csv", csv_path, "sweep CSV output path");

    CLI::App* par_cmd = add_common(app.add_subcommand(
        "parallel-check", "evaluate the split-budget bound at (q, t, d)"));
    par_cmd->add_option("--q", q, "worker count (default 1)");
    par_cmd->add_option("--csv", csv_path, "record CSV output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        load_base_config(state);
        state.manifest_requested = manifest_opt->count() > 0;

        // flags override config-file values
        CLI::App* active = app.get_subcommands().front();
        auto applied = [&](const char* name) { return active->count(name) > 0; };
        if (applied("--seed")) state.config.seed = seed;
        if (applied("--trials")) state.config.trials = trials;
        if (applied("--d")) state.config.d = d;
        if (applied("--t")) state.config.t = t;
        if (active->get_option_no_throw("--l") && applied("--l")) state.config.l = l;
        if (active->get_option_no_throw("--q") && applied("--q")) state.config.q = q;
        if (active->get_option_no_throw("--gamma") && applied("--gamma"))
            state.config.gamma = gamma;
        if (active->get_option_no_throw("--blocktime") && applied("--blocktime"))
            state.config.blocktime = blocktime;
        if (active->get_option_no_throw("--p-beta") && applied("--p-beta"))
            state.config.p_beta = p_beta;
        if (active->get_option_no_throw("--validators") && applied("--validators"))
            state.config.validators = validators;
        if (csv_path.empty()) csv_path = state.config.output;
        state.config.validate();

        int status = 0;
        if (active == zeta_cmd) status = run_zeta(state, paper_literal);
        else if (active == pow_cmd) status = run_pow(state, csv_path);
        else if (active == round_cmd)
            status = run_casper_round(state, strategy, snapshot_path);
        else if (active == inc_cmd)
            status = run_incompressibility(state, strategy, csv_path);
        else if (active == feas_cmd) status = run_feasibility(state, target, csv_path);
        else if (active == sweep_cmd)
            status = run_gamma_sweep(state, d_list, target, csv_path);
        else if (active == par_cmd) status = run_parallel_check(state, csv_path);

        finish_run(state, active->get_name());
        return status;
    } catch (const UnknownKey& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const ParseError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const RangeError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const InvalidParameter& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 2;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}

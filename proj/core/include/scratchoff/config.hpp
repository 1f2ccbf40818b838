#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <vector>

namespace scratchoff {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kSeedEnvVar = "SCRATCHOFF_SEED";

/// Experiment knobs shared by every subcommand. Loaded from a flat
/// `key = value` file, overridden by SCRATCHOFF_SEED and then by flags.
struct ExperimentConfig {
    uint64_t seed = 0;
    uint64_t trials = 10000;

    // scratch-off scheme parameters
    double d = 8.0;
    uint64_t t = 256;
    uint64_t q = 1;
    uint64_t l = 1;
    double gamma = 1.0;

    // betting-round parameters
    uint64_t validators = 100;
    uint64_t shards = 80;
    double blocktime = 1.0;
    double p_beta = 0.6667;
    uint64_t fee = 1;
    double bet_constant = 0.4;

    std::string output;

    /// Range-checks every field; throws RangeError naming the violated bound.
    void validate() const;
};

/// Parses a config file. Throws ParseError with the offending line number,
/// UnknownKey for keys outside the schema, and RangeError from validation.
ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config(std::istream& in);

/// Applies the SCRATCHOFF_SEED override if the variable is set.
void apply_env_overrides(ExperimentConfig& config);

/// Per-run record: config echo, artifact version, output files, duration.
/// Written to a temp file and renamed so readers never see a partial one.
struct RunManifest {
    std::string subcommand;
    ExperimentConfig config;
    std::vector<std::string> outputs;
    double duration_seconds = 0.0;

    std::string render() const;
    void write_atomic(const std::string& path) const;
};

} // namespace scratchoff

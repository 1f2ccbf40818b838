#include "scratchoff/config.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "scratchoff/casper.hpp"
#include "scratchoff/csv.hpp"
#include "scratchoff/errors.hpp"

namespace scratchoff {

void ExperimentConfig::validate() const {
    if (trials < 1) throw RangeError("trials must be >= 1");
    if (d < 0.0 || d > 64.0) throw RangeError("d must lie in [0, 64]");
    if (t < 1 || t > (uint64_t(1) << 32))
        throw RangeError("t must lie in [1, 2^32]");
    if (q < 1) throw RangeError("q must be >= 1");
    if (gamma < 1.0) throw RangeError("gamma must be >= 1");
    if (validators > kMaxBondedValidators)
        throw RangeError("validators exceeds the cap of " +
                         std::to_string(kMaxBondedValidators) + " (" +
                         std::to_string(kShardCount) + " shards x " +
                         std::to_string(kValidatorsPerShard) + ")");
    if (shards < 1 || shards > kShardCount)
        throw RangeError("shards must lie in [1, " + std::to_string(kShardCount) + "]");
    if (validators > shards * kValidatorsPerShard)
        throw RangeError("validators exceeds " + std::to_string(shards) +
                         " shards x " + std::to_string(kValidatorsPerShard));
    if (blocktime <= 0.0) throw RangeError("blocktime must be positive");
    if (p_beta < 0.0 || p_beta > 1.0) throw RangeError("p_beta must lie in [0, 1]");
    if (bet_constant <= 0.0) throw RangeError("bet_constant must be positive");
}

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

uint64_t parse_u64(const std::string& value, int line) {
    try {
        size_t pos = 0;
        if (!value.empty() && value[0] == '-')
            throw ParseError("expected a non-negative integer", line);
        const uint64_t v = std::stoull(value, &pos);
        if (pos != value.size()) throw ParseError("trailing characters after integer", line);
        return v;
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        throw ParseError("expected an integer, got '" + value + "'", line);
    }
}

double parse_f64(const std::string& value, int line) {
    try {
        size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw ParseError("trailing characters after number", line);
        return v;
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        throw ParseError("expected a number, got '" + value + "'", line);
    }
}

} // namespace

ExperimentConfig parse_config(std::istream& in) {
    ExperimentConfig config;
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;

        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError("expected 'key = value'", line_no);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ParseError("empty key", line_no);
        if (value.empty()) throw ParseError("empty value for key '" + key + "'", line_no);

        if (key == "seed") config.seed = parse_u64(value, line_no);
        else if (key == "trials") config.trials = parse_u64(value, line_no);
        else if (key == "d") config.d = parse_f64(value, line_no);
        else if (key == "t") config.t = parse_u64(value, line_no);
        else if (key == "q") config.q = parse_u64(value, line_no);
        else if (key == "l") config.l = parse_u64(value, line_no);
        else if (key == "gamma") config.gamma = parse_f64(value, line_no);
        else if (key == "validators") config.validators = parse_u64(value, line_no);
        else if (key == "shards") config.shards = parse_u64(value, line_no);
        else if (key == "blocktime") config.blocktime = parse_f64(value, line_no);
        else if (key == "p_beta") config.p_beta = parse_f64(value, line_no);
        else if (key == "fee") config.fee = parse_u64(value, line_no);
        else if (key == "bet_constant") config.bet_constant = parse_f64(value, line_no);
        else if (key == "output") config.output = value;
        else throw UnknownKey("unknown config key '" + key + "'");
    }
    config.validate();
    return config;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open config file: " + path);
    return parse_config(in);
}

void apply_env_overrides(ExperimentConfig& config) {
    const char* env = std::getenv(kSeedEnvVar);
    if (env == nullptr || *env == '\0') return;
    try {
        config.seed = parse_u64(env, 0);
    } catch (const ParseError&) {
        throw RangeError(std::string(kSeedEnvVar) + " must be a 64-bit integer");
    }
}

std::string RunManifest::render() const {
    std::ostringstream out;
    out << "artifact_version = " << kVersion << "\n";
    out << "subcommand = " << subcommand << "\n";
    out << "seed = " << config.seed << "\n";
    out << "trials = " << config.trials << "\n";
    out << "d = " << csv_double(config.d) << "\n";
    out << "t = " << config.t << "\n";
    out << "q = " << config.q << "\n";
    out << "l = " << config.l << "\n";
    out << "gamma = " << csv_double(config.gamma) << "\n";
    out << "validators = " << config.validators << "\n";
    out << "shards = " << config.shards << "\n";
    out << "blocktime = " << csv_double(config.blocktime) << "\n";
    out << "p_beta = " << csv_double(config.p_beta) << "\n";
    out << "fee = " << config.fee << "\n";
    out << "bet_constant = " << csv_double(config.bet_constant) << "\n";
    for (const std::string& file : outputs) out << "output_file = " << file << "\n";
    out << "duration_seconds = " << csv_double(duration_seconds) << "\n";
    return out.str();
}

void RunManifest::write_atomic(const std::string& path) const {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write manifest: " + tmp);
        out << render();
    }
    std::filesystem::rename(tmp, path);
}

} // namespace scratchoff

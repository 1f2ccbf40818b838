#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "scratchoff/config.hpp"
#include "scratchoff/csv.hpp"
#include "scratchoff/errors.hpp"

using namespace scratchoff;

namespace {

ExperimentConfig parse(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
}

} // namespace

TEST_CASE("empty config yields the documented defaults") {
    const ExperimentConfig c = parse("");
    CHECK(c.seed == 0);
    CHECK(c.trials == 10000);
    CHECK(c.d == 8.0);
    CHECK(c.t == 256);
    CHECK(c.q == 1);
    CHECK(c.l == 1);
    CHECK(c.gamma == 1.0);
    CHECK(c.validators == 100);
    CHECK(c.shards == 80);
    CHECK(c.blocktime == 1.0);
    CHECK(c.p_beta == 0.6667);
    CHECK(c.fee == 1);
    CHECK(c.bet_constant == 0.4);
    CHECK(c.output.empty());
}

TEST_CASE("keys, comments and whitespace parse") {
    const ExperimentConfig c = parse(
        "# experiment setup\n"
        "seed = 42\n"
        "  trials=500  \n"
        "d = 6.5\n"
        "\n"
        "output = runs/out.csv\n");
    CHECK(c.seed == 42);
    CHECK(c.trials == 500);
    CHECK(c.d == 6.5);
    CHECK(c.output == "runs/out.csv");
}

TEST_CASE("unknown keys are rejected") {
    CHECK_THROWS_AS(parse("frobnicate = 1\n"), UnknownKey);
}

TEST_CASE("parse errors carry the line number") {
    try {
        parse("seed = 1\nnot a kv line\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
    CHECK_THROWS_AS(parse("seed = twelve\n"), ParseError);
    CHECK_THROWS_AS(parse("seed = -4\n"), ParseError);
    CHECK_THROWS_AS(parse("seed =\n"), ParseError);
    CHECK_THROWS_AS(parse("d = 1.5x\n"), ParseError);
}

TEST_CASE("range violations name the bound") {
    try {
        parse("validators = 9000\n");
        FAIL("expected RangeError");
    } catch (const RangeError& e) {
        CHECK(std::string(e.what()).find("8000") != std::string::npos);
    }
    CHECK_THROWS_AS(parse("d = 65\n"), RangeError);
    CHECK_THROWS_AS(parse("trials = 0\n"), RangeError);
    CHECK_THROWS_AS(parse("p_beta = 1.5\n"), RangeError);
    CHECK_THROWS_AS(parse("shards = 81\n"), RangeError);
    CHECK_THROWS_AS(parse("gamma = 0.5\n"), RangeError);
    CHECK_THROWS_AS(parse("blocktime = 0\n"), RangeError);
    // 41 shards only hold 4100 validators
    CHECK_THROWS_AS(parse("validators = 4200\nshards = 41\n"), RangeError);
}

TEST_CASE("seed env var overrides the config") {
    ExperimentConfig c = parse("seed = 1\n");
    setenv(kSeedEnvVar, "777", 1);
    apply_env_overrides(c);
    CHECK(c.seed == 777);

    setenv(kSeedEnvVar, "bogus", 1);
    CHECK_THROWS_AS(apply_env_overrides(c), RangeError);
    unsetenv(kSeedEnvVar);
    c.seed = 5;
    apply_env_overrides(c);
    CHECK(c.seed == 5);
}

TEST_CASE("load_config reads files") {
    const std::string path = "test_config_tmp.cfg";
    {
        std::ofstream out(path);
        out << "seed = 9\nt = 128\n";
    }
    const ExperimentConfig c = load_config(path);
    CHECK(c.seed == 9);
    CHECK(c.t == 128);
    std::filesystem::remove(path);

    CHECK_THROWS_AS(load_config("does_not_exist.cfg"), Error);
}

TEST_CASE("manifest renders the config echo and writes atomically") {
    RunManifest manifest;
    manifest.subcommand = "pow";
    manifest.config = parse("seed = 3\n");
    manifest.outputs = {"a.csv", "b.csv"};
    manifest.duration_seconds = 1.25;

    const std::string text = manifest.render();
    CHECK(text.find("artifact_version = 0.1.0\n") != std::string::npos);
    CHECK(text.find("subcommand = pow\n") != std::string::npos);
    CHECK(text.find("seed = 3\n") != std::string::npos);
    CHECK(text.find("output_file = a.csv\n") != std::string::npos);
    CHECK(text.find("output_file = b.csv\n") != std::string::npos);
    CHECK(text.find("duration_seconds = 1.25\n") != std::string::npos);

    const std::string path = "test_manifest_tmp.txt";
    manifest.write_atomic(path);
    CHECK(std::filesystem::exists(path));
    CHECK_FALSE(std::filesystem::exists(path + ".tmp"));
    std::ifstream in(path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    CHECK(buffer.str() == text);
    std::filesystem::remove(path);
}

TEST_CASE("csv writer pins the column count") {
    const std::string path = "test_csv_tmp.csv";
    {
        CsvWriter csv(path, "a,b,c");
        csv.row({"1", "2", "3"});
        CHECK_THROWS_AS(csv.row({"1", "2"}), Error);
        csv.raw_row("4,5,6");
        CHECK_THROWS_AS(csv.raw_row("7,8"), Error);
        csv.close();
    }
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    CHECK(line == "a,b,c");
    std::getline(in, line);
    CHECK(line == "1,2,3");
    std::getline(in, line);
    CHECK(line == "4,5,6");
    std::filesystem::remove(path);
}

TEST_CASE("csv_double is shortest-round-trip stable") {
    CHECK(csv_double(0.5) == "0.5");
    CHECK(csv_double(1.0) == "1");
    CHECK(csv_double(0.6328402451084637) == csv_double(0.6328402451084637));
    CHECK(std::stod(csv_double(0.6328402451084637)) == 0.6328402451084637);
}

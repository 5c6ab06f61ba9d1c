// Experiment configuration parsing and hashing.

#include <doctest.h>

#include "nselab/config.hpp"

using namespace nselab;

TEST_CASE("defaults and overrides")
{
    const auto c = parse_config(R"({"solver": {"n": 16, "dt": 0.002, "t_end": 0.1, "mode": "stokes",
                                               "initial": {"kind": "rough", "sigma": 0.8, "seed": 9}},
                                    "ledger": {"norms": [{"r": "4", "q": "4", "k": 0}], "mollify": [0.05]},
                                    "output": {"directory": "out", "formats": ["json"]}})");
    CHECK(c.solver.n == 16);
    CHECK(c.solver.dt == 0.002);
    CHECK(c.solver.mode == SolverMode::Stokes);
    CHECK(c.solver.initial.kind == "rough");
    CHECK(c.solver.initial.seed == 9);
    CHECK(c.solver.viscosity == 1.0);
    REQUIRE(c.ledger.norms.size() == 1);
    CHECK(c.ledger.norms[0].r == Exponent(4));
    CHECK(c.ledger.mollify_eps == std::vector<double>{0.05});
    CHECK(c.output.directory == "out");
    CHECK(c.output.formats == std::vector<std::string>{"json"});

    const auto d = parse_config("{}");
    CHECK(d.solver.n == 32);
    CHECK(d.ledger.norms.size() == ledger::default_norm_triples().size());
}

TEST_CASE("unknown keys are rejected with their name")
{
    CHECK_THROWS_WITH_AS(parse_config(R"({"solver": {"nn": 32}})"), doctest::Contains("solver.nn"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(R"({"extra": 1})"), doctest::Contains("extra"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(R"({"solver": {"initial": {"sigmaa": 1}}})"),
                         doctest::Contains("solver.initial.sigmaa"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"ledger": {"norms": [{"r": "1/0", "q": "2", "k": 0}]}})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"solver": {"n": 15}})"), ConfigError);
    CHECK_THROWS_AS(parse_config("not json"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"output": {"formats": ["xml"]}})"), ConfigError);
}

TEST_CASE("hash depends only on the effective configuration")
{
    const auto a = parse_config(R"({"solver": {"n": 16}})");
    const auto b = parse_config(R"({ "solver" : { "n" : 16, "dt": 0.001 } })");
    const auto c = parse_config(R"({"solver": {"n": 32}})");
    CHECK(config_hash(a) == config_hash(b));
    CHECK(config_hash(a) != config_hash(c));
    CHECK(config_hash(a).size() == 16);
    CHECK(canonical_json(parse_config(canonical_json(a))) == canonical_json(a));
}

#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "run.hpp"

using namespace dqwalk;
using namespace dqwalk::cli;

namespace {

std::filesystem::path scratch_dir(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / ("dqwalk_cli_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

TEST_CASE("config parsing") {
    const RunConfig d = make_config(std::nullopt, Mode::evolve, {});
    CHECK(d.walk.spec.n == 5);
    CHECK(d.walk.spec.q == 0.2);
    CHECK(d.mode == Mode::evolve);
    CHECK(d.format == Format::csv);

    Overrides o;
    o.n = 6;
    o.q = 0.7;
    o.steps = 12;
    o.format = "json";
    const RunConfig c = make_config(std::string(R"({"walk": {"N": 4, "q": 0.1}, "steps": 3, "seed": 9})"),
                                    Mode::spectrum, o);
    CHECK(c.walk.spec.n == 6);
    CHECK(c.walk.spec.q == 0.7);
    CHECK(c.steps == 12);
    CHECK(c.seed == 9);
    CHECK(c.format == Format::json);

    CHECK_THROWS_AS(make_config(std::string("{not json"), Mode::spectrum, {}), ValidationError);
    CHECK_THROWS_AS(make_config(std::string(R"({"steps": -1})"), Mode::evolve, {}), ValidationError);
    CHECK_THROWS_AS(make_config(std::string(R"({"epsilon": 0})"), Mode::evolve, {}), ValidationError);
    CHECK_THROWS_AS(make_config(std::string(R"({"mode": "plot"})"), Mode::evolve, {}), ValidationError);
    CHECK_THROWS_AS(make_config(std::string(R"({"format": "xml"})"), Mode::evolve, {}), ValidationError);
    CHECK_THROWS_AS(make_config(std::string(R"({"walk": {"N": 5, "q": 0.3, "coin": {"theta": 0, "phi1": 0,
        "phi2": 0}}})"), Mode::spectrum, {}), ValidationError);
    Overrides q0;
    q0.q = 0.0;
    CHECK_THROWS_AS(make_config(std::nullopt, Mode::verify_all, q0), ValidationError);
    CHECK_THROWS_AS(parse_mode("plot"), ValidationError);
}

TEST_CASE("spectrum run") {
    const auto dir = scratch_dir("spectrum");
    for (int n : {4, 5}) {
        Overrides o;
        o.n = n;
        o.q = 0.25;
        o.output = (dir / ("n" + std::to_string(n))).string();
        const RunConfig config = make_config(std::nullopt, Mode::spectrum, o);
        std::ostringstream log, err;
        CHECK(run(config, log, err) == kSuccess);
        const std::string summary = slurp(dir / ("n" + std::to_string(n) + "_spectrum.txt"));
        CHECK(summary.find(n == 5 ? "peripheral: {1}\n" : "peripheral: {1, -1}\n") != std::string::npos);
        CHECK(summary.find("eigenspace structure: pass") != std::string::npos);
        CHECK(summary.find("orthogonality: pass") != std::string::npos);
        const auto report = io::json::parse(slurp(dir / ("n" + std::to_string(n) + "_spectrum.json")));
        CHECK(report["peripheral"].size() == (n == 5 ? 1u : 2u));
        CHECK(std::filesystem::exists(dir / ("n" + std::to_string(n) + "_eigenmatrix_0.csv")));
    }
}

TEST_CASE("evolve run") {
    const auto dir = scratch_dir("evolve");
    SUBCASE("steps = 0 writes only the initial row") {
        Overrides o;
        o.steps = 0;
        o.output = (dir / "zero").string();
        std::ostringstream log, err;
        CHECK(run(make_config(std::nullopt, Mode::evolve, o), log, err) == kSuccess);
        std::istringstream csv(slurp(dir / "zero_trajectory.csv"));
        std::string line;
        int lines = 0;
        while (std::getline(csv, line)) ++lines;
        CHECK(lines == 2);
    }
    SUBCASE("odd N summary") {
        Overrides o;
        o.steps = 400;
        o.output = (dir / "odd").string();
        std::ostringstream log, err;
        CHECK(run(make_config(std::nullopt, Mode::evolve, o), log, err) == kSuccess);
        const auto summary = io::json::parse(slurp(dir / "odd_summary.json"));
        CHECK(summary["first_t_below"].is_number_integer());
        CHECK(summary["final_distance"].get<double>() < 1e-6);
        CHECK(summary["final_mutual_info"].get<double>() < 1e-6);
    }
    SUBCASE("even N summary splits parities") {
        Overrides o;
        o.n = 4;
        o.steps = 400;
        o.output = (dir / "even").string();
        std::ostringstream log, err;
        CHECK(run(make_config(std::nullopt, Mode::evolve, o), log, err) == kSuccess);
        const auto summary = io::json::parse(slurp(dir / "even_summary.json"));
        REQUIRE(summary["parity_split"].size() == 2);
        for (const auto& pc : summary["parity_split"]) {
            CHECK(pc["first_t_below"].is_number_integer());
            CHECK(pc["tail_sup"].get<double>() < 1e-6);
        }
        CHECK(summary["limit_state_description"].get<std::string>().find("I_pm1") != std::string::npos);
    }
    SUBCASE("identical configs give byte-identical output") {
        Overrides o;
        o.steps = 50;
        o.format = "json";
        for (const char* name : {"a", "b"}) {
            o.output = (dir / name).string();
            std::ostringstream log, err;
            REQUIRE(run(make_config(std::nullopt, Mode::evolve, o), log, err) == kSuccess);
        }
        CHECK(slurp(dir / "a_trajectory.json") == slurp(dir / "b_trajectory.json"));
        CHECK(slurp(dir / "a_summary.json") == slurp(dir / "b_summary.json"));
    }
    SUBCASE("unwritable output is a validation error") {
        Overrides o;
        o.steps = 1;
        o.output = (dir / "missing" / "sub" / "x").string();
        std::ostringstream log, err;
        CHECK(run(make_config(std::nullopt, Mode::evolve, o), log, err) == kValidationError);
    }
}

TEST_CASE("verify-all run is deterministic") {
    const auto dir = scratch_dir("verify");
    Overrides o;
    o.n = 3;
    o.q = 0.5;
    o.seed = 5;
    for (const char* name : {"a", "b"}) {
        o.output = (dir / name).string();
        std::ostringstream log, err;
        CHECK(run(make_config(std::nullopt, Mode::verify_all, o), log, err) == kSuccess);
        CHECK(log.str().find("FAIL") == std::string::npos);
    }
    CHECK(slurp(dir / "a_verify.json") == slurp(dir / "b_verify.json"));
}

TEST_CASE("DQWALK_MAX_T caps steps") {
    ::setenv("DQWALK_MAX_T", "7", 1);
    CHECK(effective_max_steps(100) == 7);
    CHECK(effective_max_steps(3) == 3);
    ::setenv("DQWALK_MAX_T", "abc", 1);
    CHECK_THROWS_AS(effective_max_steps(100), ValidationError);
    ::unsetenv("DQWALK_MAX_T");
    CHECK(effective_max_steps(100) == 100);
}

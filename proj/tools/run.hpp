#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "dqwalk/io.hpp"

namespace dqwalk::cli {

enum class Mode { spectrum, evolve, verify_all };
enum class Format { csv, json };

enum ExitCode : int { kSuccess = 0, kValidationError = 1, kNumericalError = 2 };

struct RunConfig {
    io::WalkConfig walk;
    Mode mode = Mode::spectrum;
    std::size_t steps = 2000;
    double epsilon = kDefaultEpsilon;
    std::string output = "dqwalk";
    Format format = Format::csv;
    std::uint64_t seed = 42;
};

/// Command-line overrides applied on top of the config file.
struct Overrides {
    std::optional<int> n;
    std::optional<double> q;
    std::optional<std::size_t> steps;
    std::optional<double> epsilon;
    std::optional<std::string> output;
    std::optional<std::string> format;
    std::optional<std::uint64_t> seed;
};

Mode parse_mode(const std::string& s);

/// Builds a validated config from optional JSON text plus overrides.
/// Missing fields take defaults (walk: N=5, q=0.2, Hadamard, node(0,r)).
RunConfig make_config(const std::optional<std::string>& json_text, Mode mode, const Overrides& overrides);

/// Caps `steps` by the DQWALK_MAX_T environment variable when set.
std::size_t effective_max_steps(std::size_t steps);

int run_spectrum(const RunConfig& config, std::ostream& log);
int run_evolve(const RunConfig& config, std::ostream& log);
int run_verify_all(const RunConfig& config, std::ostream& log);

/// Dispatches on config.mode and maps exceptions onto the exit-code contract.
int run(const RunConfig& config, std::ostream& log, std::ostream& err);

} // namespace dqwalk::cli

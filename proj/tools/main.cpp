#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "run.hpp"

int main(int argc, char** argv) {
    using namespace dqwalk::cli;

    CLI::App app{"Decoherent quantum walks on the N-cycle: spectra, trajectories and limit checks"};
    app.require_subcommand(1);

    std::string config_path;
    Overrides overrides;
    int n = 0;
    double q = 0.0;
    std::size_t steps = 0;
    double epsilon = 0.0;
    std::string out;
    std::string format;
    std::uint64_t seed = 0;

    const std::pair<const char*, const char*> commands[] = {
        {"spectrum", "Peripheral spectrum and eigenmatrices of the walk channel"},
        {"evolve", "Evolve a state; write trajectory, position and entanglement data"},
        {"verify-all", "Run every structural and convergence check for one walk"},
    };
    for (const auto& [name, description] : commands) {
        auto* sub = app.add_subcommand(name, description);
        sub->add_option("--config", config_path, "Run configuration JSON file");
        sub->add_option("--n", n, "Cycle length N (>= 3)");
        sub->add_option("--q", q, "Decoherence rate, 0 < q < 1");
        sub->add_option("--steps", steps, "Number of time steps");
        sub->add_option("--epsilon", epsilon, "Convergence threshold (Frobenius norm)");
        sub->add_option("--out", out, "Output path prefix");
        sub->add_option("--format", format, "csv or json");
        sub->add_option("--seed", seed, "Seed for randomized checks");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kValidationError;
    }

    const CLI::App* sub = app.get_subcommands().front();
    if (sub->count("--n")) overrides.n = n;
    if (sub->count("--q")) overrides.q = q;
    if (sub->count("--steps")) overrides.steps = steps;
    if (sub->count("--epsilon")) overrides.epsilon = epsilon;
    if (sub->count("--out")) overrides.output = out;
    if (sub->count("--format")) overrides.format = format;
    if (sub->count("--seed")) overrides.seed = seed;

    try {
        std::optional<std::string> text;
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) {
                std::cerr << "validation error: cannot read config " << config_path << "\n";
                return kValidationError;
            }
            std::ostringstream buf;
            buf << in.rdbuf();
            text = buf.str();
        }
        const RunConfig config = make_config(text, parse_mode(sub->get_name()), overrides);
        return run(config, std::cout, std::cerr);
    } catch (const dqwalk::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kValidationError;
    } catch (const dqwalk::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kNumericalError;
    }
}

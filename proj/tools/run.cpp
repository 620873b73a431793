#include "run.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "dqwalk/verify.hpp"

namespace dqwalk::cli {

namespace {

using io::json;

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ValidationError("cannot open output file " + path);
    }
    out << content;
}

std::string format_eigenvalue(Complex v) {
    std::ostringstream out;
    const double re = std::abs(v.real()) < 1e-9 ? 0.0 : v.real();
    out << std::setprecision(6) << re;
    if (std::abs(v.imag()) > 1e-9) {
        out << (v.imag() < 0 ? "-" : "+") << std::abs(v.imag()) << "i";
    }
    return out.str();
}

json optional_index(const std::optional<std::size_t>& v) { return v ? json(*v) : json(nullptr); }

std::string describe_limit(const WalkSpec& spec, double c) {
    std::ostringstream out;
    if (spec.n % 2 == 1) {
        out << "I/" << spec.dim() << " (odd N)";
    } else {
        out << "I/" << spec.dim() << " + (-1)^t * " << std::setprecision(17) << c << "/" << spec.dim()
            << " * I_pm1 (even N)";
    }
    return out.str();
}

} // namespace

Mode parse_mode(const std::string& s) {
    if (s == "spectrum") {
        return Mode::spectrum;
    }
    if (s == "evolve") {
        return Mode::evolve;
    }
    if (s == "verify-all") {
        return Mode::verify_all;
    }
    throw ValidationError("unknown mode \"" + s + "\"");
}

namespace {

Format parse_format(const std::string& s) {
    if (s == "csv") {
        return Format::csv;
    }
    if (s == "json") {
        return Format::json;
    }
    throw ValidationError("unknown output format \"" + s + "\" (expected csv or json)");
}

} // namespace

RunConfig make_config(const std::optional<std::string>& json_text, Mode mode, const Overrides& overrides) {
    json root = json::object();
    if (json_text) {
        try {
            root = json::parse(*json_text);
        } catch (const json::parse_error& e) {
            throw ValidationError(std::string("config is not valid JSON: ") + e.what());
        }
        if (!root.is_object()) {
            throw ValidationError("config must be a JSON object");
        }
    }
    json walk = root.value("walk", json::object());
    if (!walk.contains("N")) {
        walk["N"] = 5;
    }
    if (!walk.contains("q")) {
        walk["q"] = 0.2;
    }
    if (overrides.n) {
        walk["N"] = *overrides.n;
    }
    if (overrides.q) {
        walk["q"] = *overrides.q;
    }

    try {
        if (root.contains("steps") && (!root["steps"].is_number_integer() || root["steps"].get<long long>() < 0)) {
            throw ValidationError("steps must be an integer >= 0");
        }
        if (root.contains("mode")) {
            parse_mode(root["mode"].get<std::string>());
        }
        RunConfig config{io::walk_config_from_json(walk)};
        config.mode = mode;
        config.steps = overrides.steps.value_or(root.value("steps", config.steps));
        config.epsilon = overrides.epsilon.value_or(root.value("epsilon", config.epsilon));
        config.output = overrides.output.value_or(root.value("output", config.output));
        config.format = parse_format(overrides.format.value_or(root.value("format", std::string("csv"))));
        config.seed = overrides.seed.value_or(root.value("seed", config.seed));
        if (!(config.epsilon > 0.0)) {
            throw ValidationError("epsilon must be > 0");
        }
        return config;
    } catch (const json::exception& e) {
        throw ValidationError(std::string("config: ") + e.what());
    }
}

std::size_t effective_max_steps(std::size_t steps) {
    if (const char* cap = std::getenv("DQWALK_MAX_T")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(cap, &end, 10);
        if (end == cap || *end != '\0') {
            throw ValidationError(std::string("DQWALK_MAX_T is not a nonnegative integer: ") + cap);
        }
        return std::min<std::size_t>(steps, static_cast<std::size_t>(v));
    }
    return steps;
}

int run_spectrum(const RunConfig& config, std::ostream& log) {
    const WalkSpec& spec = config.walk.spec;
    const Gro channel = build_channel(spec);
    const auto report = peripheral_spectrum(matricize(channel));
    const auto structure = verify_eigenspace_structure(report, spec.n);
    const auto orth = check_orthogonality(report);

    std::ostringstream summary;
    summary << "walk: N=" << spec.n << " q=" << io::format_real(spec.q) << "\n";
    summary << "peripheral: {";
    for (std::size_t i = 0; i < report.peripheral.size(); ++i) {
        summary << (i ? ", " : "") << format_eigenvalue(report.peripheral[i].value);
    }
    summary << "}\n";
    summary << "interior_max_modulus: " << io::format_real(report.interior_max_modulus) << "\n";
    summary << "eigenspace structure: " << (structure.pass ? "pass" : "FAIL") << "\n" << structure.detail;
    bool all_t1 = true;
    for (const auto& p : report.peripheral) {
        const auto pair_check = check_eigen_pair_conditions(channel, p.eigenmatrix, p.value / std::abs(p.value));
        all_t1 = all_t1 && pair_check.forward_pass && pair_check.backward_pass;
        summary << "eigen-pair conditions at lambda=" << format_eigenvalue(p.value)
                << ": forward " << (pair_check.forward_pass ? "pass" : "FAIL") << " (commutation "
                << io::format_real(pair_check.commutation_residual) << ", noise " << io::format_real(pair_check.noise_residual)
                << "), backward " << (pair_check.backward_pass ? "pass" : "FAIL") << " (" << io::format_real(pair_check.eigen_residual)
                << ")\n";
    }
    summary << "orthogonality: " << (orth.pass ? "pass" : "FAIL") << " (max |<X,Y>| " << io::format_real(orth.residual)
            << ")\n";

    write_file(config.output + "_spectrum.json", io::spectral_report_to_json(report).dump(2) + "\n");
    write_file(config.output + "_spectrum.txt", summary.str());
    if (config.format == Format::csv) {
        for (std::size_t i = 0; i < report.peripheral.size(); ++i) {
            write_file(config.output + "_eigenmatrix_" + std::to_string(i) + ".csv",
                       io::matrix_to_csv(report.peripheral[i].eigenmatrix));
        }
    }
    log << summary.str();
    return structure.pass && orth.pass && all_t1 ? kSuccess : kNumericalError;
}

int run_evolve(const RunConfig& config, std::ostream& log) {
    const WalkSpec& spec = config.walk.spec;
    const DensityMatrix rho0 = initial_state(spec, config.walk.initial);
    const Trajectory traj = evolve(spec, rho0, effective_max_steps(config.steps));
    const auto records = entanglement_trajectory(traj);
    const auto conv = convergence_report(traj, config.epsilon);

    if (config.format == Format::csv) {
        std::ostringstream csv;
        io::write_trajectory_csv(csv, traj, records);
        write_file(config.output + "_trajectory.csv", csv.str());
    } else {
        json rows = json::array();
        for (std::size_t t = 0; t < traj.states.size(); ++t) {
            json p = json::array();
            for (int x = 0; x < spec.n; ++x) {
                p.push_back(traj.position_dist[t](x));
            }
            rows.push_back({{"t", t},
                            {"distance_to_limit", traj.distance_to_limit[t]},
                            {"P", std::move(p)},
                            {"c_t", traj.parity_overlap[t]},
                            {"S_total", records[t].s_joint},
                            {"S_coin", records[t].s_coin},
                            {"S_walker", records[t].s_walker},
                            {"mutual_info", records[t].mutual_info}});
        }
        write_file(config.output + "_trajectory.json", rows.dump(2) + "\n");
    }

    json parity = json::array();
    for (const auto& pc : conv.parity_split) {
        parity.push_back({{"parity", pc.parity}, {"first_t_below", optional_index(pc.first_t_below)},
                          {"tail_sup", pc.tail_sup}});
    }
    const json summary{{"N", spec.n},
                       {"q", spec.q},
                       {"steps", traj.steps()},
                       {"epsilon", conv.epsilon},
                       {"first_t_below", optional_index(conv.first_t_below)},
                       {"final_distance", conv.final_distance},
                       {"final_mutual_info", records.back().mutual_info},
                       {"parity_split", std::move(parity)},
                       {"limit_state_description", describe_limit(spec, traj.parity_overlap.front())}};
    write_file(config.output + "_summary.json", summary.dump(2) + "\n");
    log << summary.dump(2) << "\n";
    return kSuccess;
}

int run_verify_all(const RunConfig& config, std::ostream& log) {
    Rng rng(config.seed);
    const std::size_t max_t = effective_max_steps(std::max<std::size_t>(config.steps, 10000));
    const auto results = verify::verify_all(config.walk.spec, rng, max_t);
    bool all = true;
    json out = json::array();
    for (const auto& r : results) {
        all = all && r.pass;
        log << (r.pass ? "PASS" : "FAIL") << " [" << r.id << "] " << r.title << ": " << r.measured
            << " (required " << r.expected << ")\n";
        out.push_back({{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"measured", r.measured},
                       {"expected", r.expected}});
    }
    write_file(config.output + "_verify.json", out.dump(2) + "\n");
    return all ? kSuccess : kNumericalError;
}

int run(const RunConfig& config, std::ostream& log, std::ostream& err) {
    try {
        switch (config.mode) {
        case Mode::spectrum:
            return run_spectrum(config, log);
        case Mode::evolve:
            return run_evolve(config, log);
        case Mode::verify_all:
            return run_verify_all(config, log);
        }
    } catch (const ValidationError& e) {
        err << "validation error: " << e.what() << "\n";
        return kValidationError;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << "\n";
        return kNumericalError;
    }
    return kValidationError;
}

} // namespace dqwalk::cli

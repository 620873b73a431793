#include "dqwalk/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <sstream>

namespace dqwalk::io {

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json matrix_to_json(const ComplexMatrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row.push_back({m(i, j).real(), m(i, j).imag()});
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

ComplexMatrix matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty() || !j.front().is_array() || j.front().empty()) {
        throw ValidationError("matrix JSON must be a nonempty array of nonempty rows");
    }
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = static_cast<Eigen::Index>(j.front().size());
    ComplexMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const json& row = j[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
            throw ValidationError("matrix JSON rows must have equal length");
        }
        for (Eigen::Index k = 0; k < cols; ++k) {
            const json& e = row[static_cast<std::size_t>(k)];
            if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
                throw ValidationError("matrix JSON entries must be [re, im] number pairs");
            }
            m(i, k) = Complex(e[0].get<double>(), e[1].get<double>());
        }
    }
    if (!m.allFinite()) {
        throw ValidationError("matrix JSON contains non-finite entries");
    }
    return m;
}

std::string matrix_to_csv(const ComplexMatrix& m) {
    std::ostringstream out;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j > 0) {
                out << ',';
            }
            const double im = m(i, j).imag();
            out << format_real(m(i, j).real()) << (std::signbit(im) ? '-' : '+') << format_real(std::abs(im)) << 'j';
        }
        out << '\n';
    }
    return out.str();
}

namespace {

Complex parse_csv_entry(const std::string& cell) {
    const char* begin = cell.c_str();
    char* end = nullptr;
    const double re = std::strtod(begin, &end);
    if (end == begin || (*end != '+' && *end != '-')) {
        throw ValidationError("malformed CSV matrix entry '" + cell + "'");
    }
    const char sign = *end;
    const char* im_begin = end + 1;
    const double im = std::strtod(im_begin, &end);
    if (end == im_begin || *end != 'j' || *(end + 1) != '\0') {
        throw ValidationError("malformed CSV matrix entry '" + cell + "'");
    }
    return {re, sign == '-' ? -im : im};
}

} // namespace

ComplexMatrix matrix_from_csv(const std::string& text) {
    std::vector<std::vector<Complex>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        std::vector<Complex> row;
        std::istringstream cells(line);
        std::string cell;
        while (std::getline(cells, cell, ',')) {
            row.push_back(parse_csv_entry(cell));
        }
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw ValidationError("CSV matrix rows must have equal length");
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) {
        throw ValidationError("CSV matrix is empty");
    }
    ComplexMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < rows[i].size(); ++j) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
        }
    }
    return m;
}

json channel_to_json(const QuantumOperation& op) {
    json kraus = json::array();
    for (const auto& a : op.kraus()) {
        kraus.push_back(matrix_to_json(a));
    }
    return {{"dim", op.dim()}, {"kraus", std::move(kraus)}};
}

QuantumOperation channel_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kraus") || !j["kraus"].is_array()) {
        throw ValidationError("channel JSON requires a \"kraus\" array");
    }
    std::vector<ComplexMatrix> kraus;
    for (const auto& k : j["kraus"]) {
        kraus.push_back(matrix_from_json(k));
    }
    QuantumOperation op(std::move(kraus));
    if (j.contains("dim") && j["dim"].get<Eigen::Index>() != op.dim()) {
        throw ValidationError("channel JSON \"dim\" does not match its Kraus operators");
    }
    return op;
}

json gro_to_json(const Gro& g) {
    json us = json::array();
    for (const auto& w : g.unitaries()) {
        us.push_back({{"p", w.p}, {"U", matrix_to_json(w.u)}});
    }
    return {{"unitaries", std::move(us)}, {"q", g.q()}, {"noise", channel_to_json(g.noise())}};
}

Gro gro_from_json(const json& j) {
    if (!j.is_object() || !j.contains("unitaries") || !j.contains("q") || !j.contains("noise")) {
        throw ValidationError("GRO JSON requires \"unitaries\", \"q\" and \"noise\"");
    }
    std::vector<WeightedUnitary> us;
    for (const auto& w : j["unitaries"]) {
        us.push_back({w.at("p").get<double>(), matrix_from_json(w.at("U"))});
    }
    return Gro(std::move(us), j["q"].get<double>(), channel_from_json(j["noise"]));
}

namespace {

CoinOperator coin_from_json(const json& c) {
    if (!c.is_object()) {
        throw ValidationError("\"coin\" must be an object");
    }
    if (c.contains("kind")) {
        if (c["kind"] != "hadamard") {
            throw ValidationError("unknown coin kind " + c["kind"].dump());
        }
        return CoinOperator::hadamard();
    }
    if (!c.contains("theta") || !c.contains("phi1") || !c.contains("phi2")) {
        throw ValidationError("parametric coin requires \"theta\", \"phi1\", \"phi2\"");
    }
    return CoinOperator::parametric(c["theta"].get<double>(), c["phi1"].get<double>(), c["phi2"].get<double>());
}

InitialKind initial_from_json(const json& j) {
    const std::string kind = j.value("kind", "node");
    if (kind == "node") {
        NodeInit init;
        init.x = j.value("x", 0);
        const std::string coin = j.value("coin", "r");
        if (coin == "r") {
            init.coin = NodeInit::Coin::right;
        } else if (coin == "l") {
            init.coin = NodeInit::Coin::left;
        } else if (coin == "mixed") {
            init.coin = NodeInit::Coin::mixed;
        } else {
            throw ValidationError("initial coin must be \"r\", \"l\" or \"mixed\", got \"" + coin + "\"");
        }
        return init;
    }
    if (kind == "parity-balanced") {
        ParityBalancedInit init;
        init.x = j.value("x", 0);
        init.coin = j.value("coin", "r") == "l" ? CoinState::left : CoinState::right;
        return init;
    }
    throw ValidationError("unknown initial state kind \"" + kind + "\"");
}

} // namespace

WalkConfig walk_config_from_json(const json& j) {
    if (!j.is_object() || !j.contains("N") || !j.contains("q")) {
        throw ValidationError("walk JSON requires \"N\" and \"q\"");
    }
    try {
        const CoinOperator coin = j.contains("coin") ? coin_from_json(j["coin"]) : CoinOperator::hadamard();
        WalkSpec spec(j["N"].get<int>(), j["q"].get<double>(), coin);
        InitialKind initial = j.contains("initial") ? initial_from_json(j["initial"]) : InitialKind{NodeInit{}};
        return {std::move(spec), std::move(initial)};
    } catch (const json::exception& e) {
        throw ValidationError(std::string("walk JSON: ") + e.what());
    }
}

json spectral_report_to_json(const SpectralReport& report) {
    json peripheral = json::array();
    for (const auto& p : report.peripheral) {
        peripheral.push_back({{"re", p.value.real()},
                              {"im", p.value.imag()},
                              {"residual", p.residual},
                              {"eigenmatrix", matrix_to_json(p.eigenmatrix)}});
    }
    return {{"peripheral", std::move(peripheral)},
            {"interior_max_modulus", report.interior_max_modulus},
            {"tol", report.tol_peri}};
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj, const std::vector<EntanglementRecord>& records) {
    if (records.size() != traj.states.size()) {
        throw ValidationError("trajectory CSV: entanglement records do not cover the trajectory");
    }
    out << "t,distance_to_limit";
    for (int x = 0; x < traj.spec.n; ++x) {
        out << ",P_" << x;
    }
    out << ",c_t,S_total,S_coin,S_walker,mutual_info\n";
    for (std::size_t t = 0; t < traj.states.size(); ++t) {
        out << t << ',' << format_real(traj.distance_to_limit[t]);
        for (int x = 0; x < traj.spec.n; ++x) {
            out << ',' << format_real(traj.position_dist[t](x));
        }
        const auto& r = records[t];
        out << ',' << format_real(traj.parity_overlap[t]) << ',' << format_real(r.s_joint) << ','
            << format_real(r.s_coin) << ',' << format_real(r.s_walker) << ',' << format_real(r.mutual_info) << '\n';
    }
}

} // namespace dqwalk::io

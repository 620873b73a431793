#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "dqwalk/entropy.hpp"
#include "dqwalk/spectral.hpp"

namespace dqwalk::io {

using nlohmann::json;

/// Formats a double with 17 significant digits.
std::string format_real(double v);

/// Matrix JSON: nested row arrays of [re, im] pairs.
json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const json& j);

/// Matrix CSV: one line per row, entries written as "re+imj" / "re-imj".
std::string matrix_to_csv(const ComplexMatrix& m);
ComplexMatrix matrix_from_csv(const std::string& text);

/// {"dim": n, "kraus": [matrix...]}
json channel_to_json(const QuantumOperation& op);
QuantumOperation channel_from_json(const json& j);

/// {"unitaries": [{"p": .., "U": matrix}], "q": .., "noise": channel}
json gro_to_json(const Gro& g);
Gro gro_from_json(const json& j);

struct WalkConfig {
    WalkSpec spec;
    InitialKind initial;
};

/// {"N", "q", "coin": {"kind": "hadamard"} | {"theta", "phi1", "phi2"},
///  "initial": {"kind": "node", "x", "coin": "r"|"l"|"mixed"} | {"kind": "parity-balanced"}}
/// A missing "initial" defaults to node 0 with coin r.
WalkConfig walk_config_from_json(const json& j);

/// {"peripheral": [{"re", "im", "residual", "eigenmatrix"}], "interior_max_modulus", "tol"}
json spectral_report_to_json(const SpectralReport& report);

/// Columns: t, distance_to_limit, P_0..P_{N-1}, c_t, S_total, S_coin, S_walker, mutual_info.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj, const std::vector<EntanglementRecord>& records);

} // namespace dqwalk::io

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "cavur/protocol.hpp"

namespace cavur {

/// Fixed CSV schema of the sweep output.
inline constexpr const char* kCsvHeader =
    "u_b,u_c,H_sx_C,H_sy_B,H_sx,H_sy,J_C_sx,J_B_sy,lhs,bound,slack";

/// One CSV row with 17-significant-digit floats (lossless round trip).
std::string csv_row(const GameReport& report);

std::string to_csv(const std::vector<GameReport>& reports);

nlohmann::json to_json(const GameReport& report);
GameReport game_report_from_json(const nlohmann::json& j);

nlohmann::json to_json(const std::vector<GameReport>& reports);
nlohmann::json to_json(const SimulationReport& report);

std::string format_text(const GameReport& report);
std::string format_text(const SimulationReport& report);

}  // namespace cavur

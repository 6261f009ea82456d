#pragma once

#include <ostream>
#include <string>

#include "qpc/attack.hpp"

namespace qpc::io {

inline constexpr const char* kAttackCsvHeader = "round,ratio,tv,success";

// Header plus one row per round. Values use %.17g, so output is
// byte-identical across runs with the same inputs.
void write_attack_csv(std::ostream& os, const attack::AttackReport& report);

// Single `key=value` line without trailing newline.
std::string format_summary(const attack::AttackReport& report);

// One JSON object per report (no per-state vector), for JSON-lines logs.
std::string format_json_line(const attack::AttackReport& report);

}  // namespace qpc::io

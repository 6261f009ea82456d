#include "qpc/report_io.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

namespace qpc::io {
namespace {

std::string num(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_attack_csv(std::ostream& os, const attack::AttackReport& report) {
  os << kAttackCsvHeader << '\n';
  for (const auto& r : report.rounds) {
    os << r.round << ',' << num(r.ratio) << ',' << num(r.tv) << ',' << num(r.success) << '\n';
  }
}

std::string format_summary(const attack::AttackReport& report) {
  std::string s = "scenario=" + std::string(attack::scenario_name(report.scenario)) +
                  " n=" + std::to_string(report.qubits) + " ratio=" + num(report.ratio_pk_px) +
                  " tv=" + num(report.tv_distance) +
                  " iterations=" + std::to_string(report.iterations) +
                  " success=" + num(report.success_probability);
  switch (report.scenario) {
    case attack::Scenario::single_key_cpa:
    case attack::Scenario::multi_key_cpa:
      s += " even_round_deviation=" + num(report.even_round_deviation);
      break;
    case attack::Scenario::grover:
      s += " closed_form_error=" + num(report.closed_form_error);
      break;
    case attack::Scenario::reuse_sweep:
      s += " advantage=" + num(report.advantage);
      break;
    case attack::Scenario::passive:
      break;
  }
  return s;
}

std::string format_json_line(const attack::AttackReport& report) {
  // JSON has no infinity; non-finite ratios become strings.
  auto value = [](double v) -> nlohmann::json {
    if (std::isfinite(v)) return v;
    return num(v);
  };
  nlohmann::json j;
  j["scenario"] = attack::scenario_name(report.scenario);
  j["n"] = report.qubits;
  j["ratio"] = value(report.ratio_pk_px);
  j["tv"] = value(report.tv_distance);
  j["iterations"] = report.iterations;
  j["success"] = value(report.success_probability);
  j["even_round_deviation"] = value(report.even_round_deviation);
  j["closed_form_error"] = value(report.closed_form_error);
  j["advantage"] = value(report.advantage);
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : report.rounds) {
    rows.push_back({{"round", r.round}, {"ratio", value(r.ratio)}, {"tv", value(r.tv)},
                    {"success", value(r.success)}});
  }
  j["rounds"] = std::move(rows);
  return j.dump();
}

}  // namespace qpc::io

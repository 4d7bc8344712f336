#ifndef LCPG_RUN_REPORT_HPP
#define LCPG_RUN_REPORT_HPP

#include <string>
#include <vector>

#include "json.hpp"
#include "lcpg/error.hpp"

namespace lcpg {

enum ExitCode : int { exit_ok = 0, exit_verification = 1, exit_input = 2, exit_solver = 3 };

struct PropertyResult {
  std::string name;
  bool passed = true;
  std::size_t checked = 0;
  nlohmann::json counterexample;  // null when passed
  double seconds = 0.0;

  friend bool operator==(const PropertyResult&, const PropertyResult&) = default;
};

struct RunReport {
  std::string command;
  std::string input;     // file path or generator spec
  std::string quantity;
  nlohmann::json values = nlohmann::json::object();
  nlohmann::json witnesses = nlohmann::json::object();
  double wall_time = 0.0;
  nlohmann::json tolerances = nlohmann::json::object();
  nlohmann::json stats = nlohmann::json::object();
  std::vector<PropertyResult> properties;
  int exit_code = exit_ok;

  bool all_passed() const {
    for (const auto& p : properties) {
      if (!p.passed) return false;
    }
    return true;
  }

  friend bool operator==(const RunReport&, const RunReport&) = default;
};

inline void to_json(nlohmann::json& j, const PropertyResult& p) {
  j = {{"name", p.name}, {"passed", p.passed}, {"checked", p.checked}, {"counterexample", p.counterexample},
       {"seconds", p.seconds}};
}

inline void from_json(const nlohmann::json& j, PropertyResult& p) {
  p.name = j.at("name").get<std::string>();
  p.passed = j.at("passed").get<bool>();
  p.checked = j.at("checked").get<std::size_t>();
  p.counterexample = j.value("counterexample", nlohmann::json());
  p.seconds = j.value("seconds", 0.0);
}

inline void to_json(nlohmann::json& j, const RunReport& r) {
  j = {{"command", r.command},       {"input", r.input},         {"quantity", r.quantity},
       {"values", r.values},         {"witnesses", r.witnesses}, {"wall_time", r.wall_time},
       {"tolerances", r.tolerances}, {"stats", r.stats},         {"properties", r.properties},
       {"exit_code", r.exit_code}};
}

inline void from_json(const nlohmann::json& j, RunReport& r) {
  if (!j.is_object()) throw InputError("run report must be a JSON object");
  r.command = j.at("command").get<std::string>();
  r.input = j.value("input", std::string());
  r.quantity = j.value("quantity", std::string());
  r.values = j.value("values", nlohmann::json::object());
  r.witnesses = j.value("witnesses", nlohmann::json::object());
  r.wall_time = j.value("wall_time", 0.0);
  r.tolerances = j.value("tolerances", nlohmann::json::object());
  r.stats = j.value("stats", nlohmann::json::object());
  r.properties = j.value("properties", std::vector<PropertyResult>{});
  r.exit_code = j.value("exit_code", 0);
}

inline std::string emit(const RunReport& r, int indent = 2) { return nlohmann::json(r).dump(indent); }

inline RunReport parse_report(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("run report: ") + e.what());
  }
  return j.get<RunReport>();
}

}  // namespace lcpg

#endif  // LCPG_RUN_REPORT_HPP

#pragma once

// QiteConfig from a JSON document. Recognized keys:
//   max_steps, tau_min, tau_max, tau_points, golden_tol, variance_tol,
//   tau_mode ("rederived" | "cumulative" | "sequential" | "fixed"),
//   fixed_tau, monotone_guard,
//   itd: { excised_edges: [i, j], ramp: [1.0, 0.5] }
// Missing keys keep their defaults; unknown keys are rejected.

#include <fstream>
#include <set>
#include <string>

#include <json.hpp>

#include "qitecut/errors.hpp"
#include "qitecut/qite.hpp"

namespace qitecut {

inline QiteConfig config_from_json(const nlohmann::json& j, QiteConfig cfg = {}) {
  if (!j.is_object()) throw ParseError("config: top level must be an object");
  static const std::set<std::string> known{"max_steps",    "tau_min",  "tau_max",   "tau_points",
                                           "golden_tol",   "variance_tol", "tau_mode", "fixed_tau",
                                           "monotone_guard", "itd"};
  try {
    for (const auto& [key, value] : j.items())
      if (!known.contains(key)) throw ParseError("config: unknown key '" + key + "'");
    if (j.contains("max_steps")) cfg.max_steps = j.at("max_steps").get<int>();
    if (j.contains("tau_min")) cfg.tau_grid.min = j.at("tau_min").get<double>();
    if (j.contains("tau_max")) cfg.tau_grid.max = j.at("tau_max").get<double>();
    if (j.contains("tau_points")) cfg.tau_grid.points = j.at("tau_points").get<int>();
    if (j.contains("golden_tol")) cfg.golden_tol = j.at("golden_tol").get<double>();
    if (j.contains("variance_tol")) cfg.variance_tol = j.at("variance_tol").get<double>();
    if (j.contains("tau_mode")) cfg.tau_mode = parse_tau_mode(j.at("tau_mode").get<std::string>());
    if (j.contains("fixed_tau")) cfg.fixed_tau = j.at("fixed_tau").get<double>();
    if (j.contains("monotone_guard")) cfg.monotone_guard = j.at("monotone_guard").get<bool>();
    if (j.contains("itd")) {
      const auto& it = j.at("itd");
      ItdSchedule s;
      if (it.contains("excised_edges")) s.excised_edges = it.at("excised_edges").get<std::vector<std::size_t>>();
      if (it.contains("ramp")) s.ramp = it.at("ramp").get<std::vector<double>>();
      cfg.itd = s;
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  return cfg;
}

inline QiteConfig load_config(const std::string& path, QiteConfig cfg = {}) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file: " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  return config_from_json(j, cfg);
}

}  // namespace qitecut

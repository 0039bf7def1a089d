#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pwm/metrics.hpp"
#include "pwm/types.hpp"

namespace pwm {

// Provenance record attached to every file a command writes.
struct RunManifest {
  std::string command;
  nlohmann::json config;
  std::uint64_t seed = 0;
  std::string engine_version;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  double duration_seconds = 0.0;
  int threads = 1;
};

// Serialized output of one aggregation method: per-question
// probabilities of A, optional per-respondent parameters, and whatever
// diagnostics the method produced.
struct MethodReport {
  std::string method;
  std::vector<std::string> question_ids;
  std::vector<double> prob_a;
  bool lesioned = false;
  std::map<std::string, std::vector<double>> respondent_params;
  nlohmann::json diagnostics;  // free-form per method
  std::optional<RunManifest> manifest;
};

std::vector<HardAnswer> hard_answers(const MethodReport& report);

nlohmann::json manifest_to_json(const RunManifest& manifest);
nlohmann::json report_to_json(const MethodReport& report);
MethodReport report_from_json(const nlohmann::json& doc);

void save_report(const MethodReport& report, const std::filesystem::path& path);
MethodReport load_report(const std::filesystem::path& path);

}  // namespace pwm

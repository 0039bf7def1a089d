#include "pwm/report.hpp"

#include <fstream>

#include "pwm/dataset.hpp"

namespace pwm {

using nlohmann::json;

std::vector<HardAnswer> hard_answers(const MethodReport& report) {
  std::vector<HardAnswer> hard;
  hard.reserve(report.prob_a.size());
  for (const double p : report.prob_a) hard.push_back(harden(p));
  return hard;
}

json manifest_to_json(const RunManifest& m) {
  return json{{"command", m.command},       {"config", m.config},
              {"seed", m.seed},             {"engine_version", m.engine_version},
              {"inputs", m.inputs},         {"outputs", m.outputs},
              {"duration_seconds", m.duration_seconds}, {"threads", m.threads}};
}

namespace {

RunManifest manifest_from_json(const json& doc) {
  RunManifest m;
  m.command = doc.value("command", "");
  m.config = doc.value("config", json::object());
  m.seed = doc.value("seed", std::uint64_t{0});
  m.engine_version = doc.value("engine_version", "");
  m.inputs = doc.value("inputs", std::vector<std::string>{});
  m.outputs = doc.value("outputs", std::vector<std::string>{});
  m.duration_seconds = doc.value("duration_seconds", 0.0);
  m.threads = doc.value("threads", 1);
  return m;
}

}  // namespace

json report_to_json(const MethodReport& report) {
  json questions = json::array();
  for (std::size_t q = 0; q < report.prob_a.size(); ++q) {
    const HardAnswer h = harden(report.prob_a[q]);
    questions.push_back(
        {{"id", report.question_ids[q]},
         {"prob_a", report.prob_a[q]},
         {"answer", h == HardAnswer::tie ? "tie" : (h == HardAnswer::A ? "A" : "B")}});
  }
  json doc{{"method", report.method}, {"questions", std::move(questions)}};
  if (report.lesioned) doc["lesioned"] = true;
  if (!report.respondent_params.empty()) {
    json params;
    for (const auto& [name, values] : report.respondent_params) params[name] = values;
    doc["respondent_params"] = std::move(params);
  }
  if (!report.diagnostics.is_null()) doc["diagnostics"] = report.diagnostics;
  if (report.manifest) doc["manifest"] = manifest_to_json(*report.manifest);
  return doc;
}

MethodReport report_from_json(const json& doc) {
  MethodReport report;
  report.method = doc.at("method").get<std::string>();
  for (const auto& item : doc.at("questions")) {
    report.question_ids.push_back(item.at("id").get<std::string>());
    report.prob_a.push_back(item.at("prob_a").get<double>());
  }
  report.lesioned = doc.value("lesioned", false);
  if (doc.contains("respondent_params"))
    for (const auto& [name, values] : doc["respondent_params"].items())
      report.respondent_params[name] = values.get<std::vector<double>>();
  if (doc.contains("diagnostics")) report.diagnostics = doc["diagnostics"];
  if (doc.contains("manifest")) report.manifest = manifest_from_json(doc["manifest"]);
  return report;
}

void save_report(const MethodReport& report, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DatasetError("cannot write " + path.string());
  out << report_to_json(report).dump(2) << '\n';
}

MethodReport load_report(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DatasetError("cannot open " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw DatasetError("report parse failure: " + std::string(e.what()));
  }
  return report_from_json(doc);
}

}  // namespace pwm

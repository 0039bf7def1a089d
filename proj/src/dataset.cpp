#include "pwm/dataset.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace pwm {

using nlohmann::json;

std::string ValidationReport::to_string() const {
  std::ostringstream out;
  for (const auto& e : errors) out << "error: " << e.location << ": " << e.rule << "\n";
  for (const auto& w : warnings) out << "warning: " << w.location << ": " << w.rule << "\n";
  return out.str();
}

namespace {

std::string cell(Index q, Index r, const char* channel) {
  std::ostringstream out;
  out << "question " << q << ", respondent " << r << ", " << channel;
  return out.str();
}

}  // namespace

ValidationReport validate(const ResponseDataset& ds) {
  ValidationReport rep;
  const Index q_count = ds.votes.rows();
  const Index n = ds.votes.cols();
  auto err = [&rep](std::string loc, std::string rule) {
    rep.errors.push_back({std::move(loc), std::move(rule)});
  };

  if (q_count == 0 || n == 0) err("dataset", "needs at least one question and one respondent");
  if (static_cast<Index>(ds.question_ids.size()) != q_count)
    err("question_ids", "count must match the vote matrix rows");
  if (ds.predictions.rows() != q_count || ds.predictions.cols() != n)
    err("predictions", "shape must match the vote matrix");
  if (ds.has_confidences() &&
      (ds.confidences.rows() != q_count || ds.confidences.cols() != n))
    err("confidences", "shape must match the vote matrix");
  if (ds.has_key() && static_cast<Index>(ds.answer_key.size()) != q_count)
    err("answer_key", "length must match the question count");
  if (!ds.reversed.empty() && static_cast<Index>(ds.reversed.size()) != q_count)
    err("polarity", "length must match the question count");
  if (!rep.ok()) return rep;

  for (Index q = 0; q < q_count; ++q) {
    bool any_vote = false;
    for (Index r = 0; r < n; ++r) {
      const auto v = ds.votes(q, r);
      if (v != kMissingVote && v != 0 && v != 1)
        err(cell(q, r, "vote"), "vote symbol must be A, B or missing");
      if (v != kMissingVote) any_vote = true;

      const double m = ds.predictions(q, r);
      if (!is_missing(m) && (m < 0.0 || m > 1.0))
        err(cell(q, r, "prediction"), "prediction must lie in [0, 1]");

      if (ds.has_confidences()) {
        const double c = ds.confidences(q, r);
        if (!is_missing(c)) {
          if (c < 0.0 || c > 1.0)
            err(cell(q, r, "confidence"), "confidence must lie in [0, 1]");
          else if (v == kMissingVote)
            err(cell(q, r, "confidence"), "confidence present without a vote");
          else if (c < 0.5)
            rep.warnings.push_back(
                {cell(q, r, "confidence"), "confidence below 0.5 (tolerated as voting error)"});
        }
      }
    }
    if (!any_vote) err("question " + std::to_string(q), "needs at least one vote");
    if (ds.has_key() && ds.answer_key[q] != 0 && ds.answer_key[q] != 1)
      err("question " + std::to_string(q) + ", key", "answer key must be A or B");
  }
  return rep;
}

namespace {

ResponseDataset from_json(const json& doc) {
  if (!doc.contains("questions") || !doc["questions"].is_array())
    throw DatasetError("canonical-json: top-level `questions` array missing");
  const auto& questions = doc["questions"];
  const Index q_count = static_cast<Index>(questions.size());
  if (q_count == 0) throw DatasetError("canonical-json: no questions");

  const Index n = static_cast<Index>(questions[0].value("votes", json::array()).size());
  ResponseDataset ds;
  ds.votes.setConstant(q_count, n, kMissingVote);
  ds.predictions.setConstant(q_count, n, std::nan(""));

  const bool any_conf = std::any_of(questions.begin(), questions.end(),
                                    [](const json& j) { return j.contains("confidences"); });
  if (any_conf) ds.confidences.setConstant(q_count, n, std::nan(""));
  const bool any_key = std::any_of(questions.begin(), questions.end(),
                                   [](const json& j) { return j.contains("key"); });

  for (Index q = 0; q < q_count; ++q) {
    const auto& item = questions[q];
    ds.question_ids.push_back(item.value("id", "q" + std::to_string(q)));

    const auto& votes = item.at("votes");
    if (static_cast<Index>(votes.size()) != n)
      throw DatasetError("canonical-json: ragged vote rows at question " + std::to_string(q));
    for (Index r = 0; r < n; ++r) {
      const auto& v = votes[r];
      if (v.is_null()) continue;
      const auto s = v.get<std::string>();
      if (s == "A") ds.votes(q, r) = 1;
      else if (s == "B") ds.votes(q, r) = 0;
      else throw DatasetError("canonical-json: bad vote symbol `" + s + "`");
    }

    if (item.contains("predictions")) {
      const auto& preds = item["predictions"];
      if (static_cast<Index>(preds.size()) != n)
        throw DatasetError("canonical-json: ragged prediction row at question " +
                           std::to_string(q));
      for (Index r = 0; r < n; ++r)
        if (!preds[r].is_null()) ds.predictions(q, r) = preds[r].get<double>();
    }

    if (item.contains("confidences")) {
      const auto& confs = item["confidences"];
      if (static_cast<Index>(confs.size()) != n)
        throw DatasetError("canonical-json: ragged confidence row at question " +
                           std::to_string(q));
      for (Index r = 0; r < n; ++r)
        if (!confs[r].is_null()) ds.confidences(q, r) = confs[r].get<double>();
    }

    if (any_key) {
      if (!item.contains("key"))
        throw DatasetError("canonical-json: answer key present for some questions only");
      const auto k = item["key"].get<std::string>();
      if (k != "A" && k != "B") throw DatasetError("canonical-json: bad key `" + k + "`");
      ds.answer_key.push_back(k == "A" ? 1 : 0);
    }

    ds.reversed.push_back(item.value("reversed", false) ? 1 : 0);
  }
  return ds;
}

json to_json(const ResponseDataset& ds) {
  json questions = json::array();
  for (Index q = 0; q < ds.n_questions(); ++q) {
    json item;
    item["id"] = ds.question_ids[q];
    json votes = json::array();
    json preds = json::array();
    for (Index r = 0; r < ds.n_respondents(); ++r) {
      const auto v = ds.votes(q, r);
      votes.push_back(v == kMissingVote ? json(nullptr) : json(v == 1 ? "A" : "B"));
      const double m = ds.predictions(q, r);
      preds.push_back(is_missing(m) ? json(nullptr) : json(m));
    }
    item["votes"] = std::move(votes);
    item["predictions"] = std::move(preds);
    if (ds.has_confidences()) {
      json confs = json::array();
      for (Index r = 0; r < ds.n_respondents(); ++r) {
        const double c = ds.confidences(q, r);
        confs.push_back(is_missing(c) ? json(nullptr) : json(c));
      }
      item["confidences"] = std::move(confs);
    }
    if (ds.has_key()) item["key"] = ds.answer_key[q] == 1 ? "A" : "B";
    if (!ds.reversed.empty() && ds.reversed[q]) item["reversed"] = true;
    questions.push_back(std::move(item));
  }
  return json{{"questions", std::move(questions)}};
}

std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DatasetError("cannot open " + path.string());
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ls(line);
    while (std::getline(ls, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    rows.push_back(std::move(fields));
  }
  return rows;
}

ResponseDataset from_csv_triple(const std::filesystem::path& stem) {
  const auto vote_rows = read_csv(stem.string() + ".votes.csv");
  if (vote_rows.empty()) throw DatasetError("csv-triple: empty vote file");
  const Index q_count = static_cast<Index>(vote_rows.size());
  const Index n = static_cast<Index>(vote_rows[0].size());

  ResponseDataset ds;
  ds.votes.setConstant(q_count, n, kMissingVote);
  ds.predictions.setConstant(q_count, n, std::nan(""));
  for (Index q = 0; q < q_count; ++q) {
    ds.question_ids.push_back("q" + std::to_string(q));
    ds.reversed.push_back(0);
    if (static_cast<Index>(vote_rows[q].size()) != n)
      throw DatasetError("csv-triple: ragged vote row " + std::to_string(q));
    for (Index r = 0; r < n; ++r) {
      const auto& s = vote_rows[q][r];
      if (s.empty()) continue;
      if (s == "A") ds.votes(q, r) = 1;
      else if (s == "B") ds.votes(q, r) = 0;
      else throw DatasetError("csv-triple: bad vote symbol `" + s + "`");
    }
  }

  auto load_reals = [&](const std::filesystem::path& path, Eigen::MatrixXd& m) {
    const auto rows = read_csv(path);
    if (static_cast<Index>(rows.size()) != q_count)
      throw DatasetError("csv-triple: " + path.string() + " row count mismatch");
    for (Index q = 0; q < q_count; ++q) {
      if (static_cast<Index>(rows[q].size()) != n)
        throw DatasetError("csv-triple: ragged row " + std::to_string(q) + " in " +
                           path.string());
      for (Index r = 0; r < n; ++r)
        if (!rows[q][r].empty()) m(q, r) = std::stod(rows[q][r]);
    }
  };

  load_reals(stem.string() + ".predictions.csv", ds.predictions);
  const std::filesystem::path conf_path = stem.string() + ".confidences.csv";
  if (std::filesystem::exists(conf_path)) {
    ds.confidences.setConstant(q_count, n, std::nan(""));
    load_reals(conf_path, ds.confidences);
  }
  return ds;
}

void write_csv_triple(const ResponseDataset& ds, const std::filesystem::path& stem) {
  auto open = [](const std::filesystem::path& p) {
    std::ofstream out(p);
    if (!out) throw DatasetError("cannot write " + p.string());
    return out;
  };
  auto votes = open(stem.string() + ".votes.csv");
  auto preds = open(stem.string() + ".predictions.csv");
  preds.precision(12);
  for (Index q = 0; q < ds.n_questions(); ++q) {
    for (Index r = 0; r < ds.n_respondents(); ++r) {
      if (r) { votes << ','; preds << ','; }
      const auto v = ds.votes(q, r);
      if (v != kMissingVote) votes << (v == 1 ? 'A' : 'B');
      const double m = ds.predictions(q, r);
      if (!is_missing(m)) preds << m;
    }
    votes << '\n';
    preds << '\n';
  }
  if (ds.has_confidences()) {
    auto confs = open(stem.string() + ".confidences.csv");
    confs.precision(12);
    for (Index q = 0; q < ds.n_questions(); ++q) {
      for (Index r = 0; r < ds.n_respondents(); ++r) {
        if (r) confs << ',';
        const double c = ds.confidences(q, r);
        if (!is_missing(c)) confs << c;
      }
      confs << '\n';
    }
  }
}

}  // namespace

ResponseDataset load_dataset(const std::filesystem::path& path, DatasetFormat format) {
  ResponseDataset ds;
  if (format == DatasetFormat::canonical_json) {
    std::ifstream in(path);
    if (!in) throw DatasetError("cannot open " + path.string());
    json doc;
    try {
      in >> doc;
    } catch (const json::exception& e) {
      throw DatasetError("canonical-json parse failure: " + std::string(e.what()));
    }
    ds = from_json(doc);
  } else {
    ds = from_csv_triple(path);
  }
  auto rep = validate(ds);
  if (!rep.ok()) throw DatasetError("dataset validation failed:\n" + rep.to_string(), rep);
  return ds;
}

void save_dataset(const ResponseDataset& ds, const std::filesystem::path& path,
                  DatasetFormat format) {
  if (format == DatasetFormat::canonical_json) {
    std::ofstream out(path);
    if (!out) throw DatasetError("cannot write " + path.string());
    out << to_json(ds).dump(2) << '\n';
  } else {
    write_csv_triple(ds, path);
  }
}

ResponseDataset reverse_questions(const ResponseDataset& ds, const std::vector<Index>& idx) {
  ResponseDataset out = ds;
  if (out.reversed.empty()) out.reversed.assign(ds.n_questions(), 0);
  for (const Index q : idx) {
    if (q < 0 || q >= ds.n_questions())
      throw std::out_of_range("reverse_questions: question index " + std::to_string(q));
    for (Index r = 0; r < ds.n_respondents(); ++r) {
      if (out.votes(q, r) != kMissingVote) out.votes(q, r) = 1 - out.votes(q, r);
      if (!is_missing(out.predictions(q, r)))
        out.predictions(q, r) = 1.0 - out.predictions(q, r);
    }
    if (out.has_key()) out.answer_key[q] = 1 - out.answer_key[q];
    out.reversed[q] ^= 1;
  }
  return out;
}

ResponseDataset lesion_predictions(const ResponseDataset& ds) {
  ResponseDataset out = ds;
  out.predictions.setConstant(std::nan(""));
  return out;
}

std::vector<Index> split_half_indices(Index n_questions, Half half) {
  const Index cut = (n_questions + 1) / 2;
  std::vector<Index> idx;
  if (half == Half::first)
    for (Index q = 0; q < cut; ++q) idx.push_back(q);
  else
    for (Index q = cut; q < n_questions; ++q) idx.push_back(q);
  return idx;
}

}  // namespace pwm

#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "pwm/types.hpp"

namespace pwm {

// Elicitation data for one study: Q questions by N respondents.
// Votes use kMissingVote for absent cells; predictions/confidences use
// NaN. A zero-sized confidences matrix means the channel was never
// elicited. Datasets are immutable by convention: transforms return
// copies.
struct ResponseDataset {
  std::vector<std::string> question_ids;
  VoteMatrix votes;        // Q x N in {0, 1, kMissingVote}
  Eigen::MatrixXd predictions;  // Q x N, fraction voting A, NaN = missing
  Eigen::MatrixXd confidences;  // Q x N or 0 x 0, NaN = missing
  std::vector<std::int8_t> answer_key;  // empty or size Q of {0, 1}
  std::vector<std::uint8_t> reversed;   // polarity flag per question

  Index n_questions() const { return votes.rows(); }
  Index n_respondents() const { return votes.cols(); }
  bool has_confidences() const { return confidences.size() > 0; }
  bool has_key() const { return !answer_key.empty(); }
};

struct ValidationIssue {
  std::string location;  // e.g. "question 3, respondent 7, prediction"
  std::string rule;
};

struct ValidationReport {
  std::vector<ValidationIssue> errors;
  std::vector<ValidationIssue> warnings;
  bool ok() const { return errors.empty(); }
  std::string to_string() const;
};

class DatasetError : public std::runtime_error {
 public:
  explicit DatasetError(const std::string& what, ValidationReport report = {})
      : std::runtime_error(what), report_(std::move(report)) {}
  const ValidationReport& report() const noexcept { return report_; }

 private:
  ValidationReport report_;
};

enum class DatasetFormat { canonical_json, csv_triple };

// Structural and range checks; warnings for below-0.5 confidences,
// which the model tolerates.
ValidationReport validate(const ResponseDataset& ds);

// Loads and validates. canonical_json expects one file; csv_triple
// expects <path>.votes.csv / <path>.predictions.csv and optionally
// <path>.confidences.csv, question rows by respondent columns, empty
// cell = missing. Throws DatasetError on parse or validation failure.
ResponseDataset load_dataset(const std::filesystem::path& path, DatasetFormat format);

void save_dataset(const ResponseDataset& ds, const std::filesystem::path& path,
                  DatasetFormat format);

// Polarity flip of the selected questions: votes and keys swap A<->B,
// predictions p -> 1-p, confidences untouched, polarity flag toggled.
// An involution for a fixed index set.
ResponseDataset reverse_questions(const ResponseDataset& ds,
                                  const std::vector<Index>& idx);

// Drops the peer-prediction channel (every entry set to missing).
ResponseDataset lesion_predictions(const ResponseDataset& ds);

enum class Half { first, second };

// {0 .. ceil(Q/2)-1} or its complement; the halves partition 0..Q-1
// and an odd Q gives the extra question to the first half.
std::vector<Index> split_half_indices(Index n_questions, Half half);

}  // namespace pwm

#pragma once

#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "gsd/estimation.hpp"
#include "gsd/matrix.hpp"

namespace gsd {

struct ScoreRecord {
  std::string stimulus_id;
  std::string rater_id;  // may be empty
  int score;
};

/// Per-stimulus count samples parsed from a scores CSV, in first-appearance
/// order; a RatingMatrix is assembled when every row carries a rater id.
struct ParsedScores {
  int m_scale;
  std::vector<std::string> stimulus_ids;
  std::vector<CountSample> samples;
  std::vector<std::string> rater_ids;
  std::optional<RatingMatrix> matrix;
};

// Accepts either header. Per-score rows:
//   stimulus_id,rater_id,score        (rater_id may be empty)
// or aggregate rows:
//   stimulus_id,n1,...,nM
// Rows with scores outside {1,...,M} are rejected with their line number.
ParsedScores parse_scores_csv(const std::string& path, int m_scale);
ParsedScores parse_scores_stream(std::istream& in, int m_scale,
                                 const std::string& origin = "<stream>");

// Single-column (optionally headed "p_value") list, for the pp-plot command.
std::vector<double> parse_pvalues_csv(const std::string& path);

}  // namespace gsd

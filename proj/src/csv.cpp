#include "gsd/csv.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace gsd {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::string strip(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

[[noreturn]] void fail(const std::string& origin, std::size_t line,
                       const std::string& what) {
  throw csv_error(origin + ":" + std::to_string(line) + ": " + what);
}

std::int64_t parse_int(const std::string& raw, const std::string& origin,
                       std::size_t line) {
  const std::string s = strip(raw);
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    fail(origin, line, "expected an integer, got '" + raw + "'");
  return value;
}

}  // namespace

ParsedScores parse_scores_stream(std::istream& in, int m_scale,
                                 const std::string& origin) {
  if (m_scale < 3) throw std::domain_error("parse_scores: scale size must be >= 3");

  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) fail(origin, 1, "empty file");
  ++line_no;
  const auto header = split_fields(strip(line));

  const bool per_score = header.size() == 3 && strip(header[0]) == "stimulus_id" &&
                         strip(header[1]) == "rater_id" &&
                         strip(header[2]) == "score";
  bool aggregate = false;
  if (!per_score) {
    aggregate = header.size() == static_cast<std::size_t>(m_scale) + 1 &&
                strip(header[0]) == "stimulus_id";
    for (std::size_t k = 1; aggregate && k < header.size(); ++k)
      aggregate = strip(header[k]) == "n" + std::to_string(k);
    if (!aggregate)
      fail(origin, line_no,
           "expected header 'stimulus_id,rater_id,score' or "
           "'stimulus_id,n1,...,n" +
               std::to_string(m_scale) + "'");
  }

  std::vector<std::string> stimulus_ids;
  std::unordered_map<std::string, std::size_t> stimulus_index;
  std::vector<std::vector<std::int64_t>> counts;
  std::vector<std::string> rater_ids;
  std::unordered_map<std::string, std::size_t> rater_index;
  std::vector<RatingEntry> entries;
  bool all_rows_have_rater = true;
  bool any_row = false;

  const auto stimulus_slot = [&](const std::string& id) {
    const auto [it, fresh] = stimulus_index.try_emplace(id, stimulus_ids.size());
    if (fresh) {
      stimulus_ids.push_back(id);
      counts.emplace_back(m_scale, 0);
    }
    return it->second;
  };

  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = strip(line);
    if (stripped.empty()) continue;
    const auto fields = split_fields(stripped);
    any_row = true;
    if (per_score) {
      if (fields.size() != 3)
        fail(origin, line_no, "expected 3 fields, got " +
                                  std::to_string(fields.size()));
      const std::string stimulus = strip(fields[0]);
      if (stimulus.empty()) fail(origin, line_no, "empty stimulus_id");
      const std::string rater = strip(fields[1]);
      const std::int64_t score = parse_int(fields[2], origin, line_no);
      if (score < 1 || score > m_scale)
        fail(origin, line_no,
             "score " + std::to_string(score) + " outside {1,...," +
                 std::to_string(m_scale) + "}");
      const std::size_t j = stimulus_slot(stimulus);
      ++counts[j][score - 1];
      if (rater.empty()) {
        all_rows_have_rater = false;
      } else {
        const auto [it, fresh] = rater_index.try_emplace(rater, rater_ids.size());
        if (fresh) rater_ids.push_back(rater);
        entries.push_back({static_cast<int>(it->second), static_cast<int>(j),
                           static_cast<int>(score)});
      }
    } else {
      if (fields.size() != static_cast<std::size_t>(m_scale) + 1)
        fail(origin, line_no, "expected " + std::to_string(m_scale + 1) +
                                  " fields, got " +
                                  std::to_string(fields.size()));
      const std::string stimulus = strip(fields[0]);
      if (stimulus.empty()) fail(origin, line_no, "empty stimulus_id");
      const std::size_t j = stimulus_slot(stimulus);
      for (int k = 0; k < m_scale; ++k) {
        const std::int64_t c = parse_int(fields[k + 1], origin, line_no);
        if (c < 0) fail(origin, line_no, "negative count");
        counts[j][k] += c;
      }
      all_rows_have_rater = false;
    }
  }
  if (!any_row) fail(origin, line_no, "no data rows");

  ParsedScores out;
  out.m_scale = m_scale;
  out.stimulus_ids = std::move(stimulus_ids);
  for (std::size_t j = 0; j < counts.size(); ++j) {
    if (std::all_of(counts[j].begin(), counts[j].end(),
                    [](std::int64_t c) { return c == 0; }))
      throw csv_error(origin + ": stimulus '" + out.stimulus_ids[j] +
                      "' has no responses");
    out.samples.emplace_back(counts[j]);
  }
  if (per_score && all_rows_have_rater && !rater_ids.empty()) {
    out.rater_ids = std::move(rater_ids);
    out.matrix = RatingMatrix(static_cast<int>(out.rater_ids.size()),
                              static_cast<int>(out.stimulus_ids.size()), m_scale,
                              std::move(entries));
  }
  return out;
}

ParsedScores parse_scores_csv(const std::string& path, int m_scale) {
  std::ifstream in(path);
  if (!in) throw csv_error(path + ": cannot open file");
  return parse_scores_stream(in, m_scale, path);
}

std::vector<double> parse_pvalues_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw csv_error(path + ": cannot open file");
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string s = strip(line);
    if (s.empty() || (line_no == 1 && s == "p_value")) continue;
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      if (v < 0.0 || v > 1.0)
        fail(path, line_no, "p-value outside [0, 1]");
      values.push_back(v);
    } catch (const std::invalid_argument&) {
      fail(path, line_no, "expected a number, got '" + s + "'");
    }
  }
  if (values.empty()) throw csv_error(path + ": no p-values");
  return values;
}

}  // namespace gsd

#pragma once

// CSV ingestion for funnel statistics and contingent-valuation surveys, plus
// small text helpers shared with the config reader.

#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "heritage/error.hpp"
#include "heritage/funnel.hpp"
#include "heritage/valuation.hpp"

namespace heritage::io {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.emplace_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline bool parse_double(std::string_view s, double& out) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

inline bool parse_long(std::string_view s, long& out) {
  s = trim(s);
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

inline bool parse_bool(std::string_view s, bool& out) {
  const std::string v = lowercase(trim(s));
  if (v == "1" || v == "true" || v == "yes" || v == "synthetic") {
    out = true;
  } else if (v == "0" || v == "false" || v == "no" || v.empty()) {
    out = false;
  } else {
    return false;
  }
  return true;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) fail(ErrorCode::FileNotFound, "file not found: " + path.string());
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::FileNotFound, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Header-indexed CSV table. Rows keep their 1-based file line numbers.
struct CsvTable {
  std::map<std::string, std::size_t> columns;
  struct Row {
    std::size_t line = 0;
    std::vector<std::string> fields;
  };
  std::vector<Row> rows;

  const std::string& at(const Row& row, const std::string& column) const { return row.fields[columns.at(column)]; }
};

inline CsvTable parse_csv(std::string_view text, std::span<const std::string_view> required, const std::string& source) {
  CsvTable table;
  std::size_t line_no = 0;
  bool header_seen = false;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find('\n', start);
    const auto line = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
    start = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;
    if (trim(line).empty()) continue;
    auto fields = split(line, ',');
    if (!header_seen) {
      header_seen = true;
      if (line_no == 1 && !fields.empty() && fields[0].rfind("\xEF\xBB\xBF", 0) == 0) fields[0].erase(0, 3);
      for (std::size_t i = 0; i < fields.size(); ++i) table.columns[fields[i]] = i;
      for (auto col : required)
        if (!table.columns.contains(std::string(col)))
          fail(ErrorCode::MissingColumn, source + ": missing column '" + std::string(col) + "'");
      continue;
    }
    if (fields.size() != table.columns.size())
      fail(ErrorCode::ParseError, source + ":" + std::to_string(line_no) + ": expected " + std::to_string(table.columns.size()) +
                                      " fields, found " + std::to_string(fields.size()));
    table.rows.push_back({line_no, std::move(fields)});
  }
  if (!header_seen) fail(ErrorCode::MissingColumn, source + ": empty file, header row required");
  return table;
}

inline constexpr std::string_view kFunnelColumns[] = {"year", "category", "registered", "submitted_to_court",
                                                      "convicted_persons", "imprisoned_effective", "synthetic_flag"};

inline std::vector<FunnelRecord> parse_funnel_csv(std::string_view text, const std::string& source = "funnel csv") {
  const auto table = parse_csv(text, kFunnelColumns, source);
  std::vector<FunnelRecord> out;
  out.reserve(table.rows.size());
  for (const auto& row : table.rows) {
    const std::string where = source + ":" + std::to_string(row.line);
    auto count = [&](const char* column) {
      long v = 0;
      if (!parse_long(table.at(row, column), v))
        fail(ErrorCode::ParseError, where + ": column " + column + " is not an integer: '" + table.at(row, column) + "'");
      return v;
    };
    FunnelRecord r;
    r.year = static_cast<int>(count("year"));
    try {
      r.category = parse_crime_category(table.at(row, "category"));
    } catch (const Error& e) {
      fail(ErrorCode::ParseError, where + ": " + e.what());
    }
    r.registered = count("registered");
    r.submitted_to_court = count("submitted_to_court");
    r.convicted_persons = count("convicted_persons");
    r.imprisoned_effective = count("imprisoned_effective");
    if (!parse_bool(table.at(row, "synthetic_flag"), r.synthetic))
      fail(ErrorCode::ParseError, where + ": synthetic_flag must be 0 or 1");
    if (const auto why = check_invariants(r); !why.empty()) fail(ErrorCode::InvariantError, where + ": " + why);
    out.push_back(r);
  }
  return out;
}

inline std::vector<FunnelRecord> ingest_funnel_csv(const std::filesystem::path& path) {
  return parse_funnel_csv(read_file(path), path.string());
}

inline constexpr std::string_view kSurveyColumns[] = {"respondent_id", "component", "wtp", "currency", "protest_flag"};

struct SurveyData {
  std::vector<SurveyResponse> responses;
  std::string currency;  // empty when there are no rows
};

inline SurveyData parse_survey_csv(std::string_view text, const std::string& source = "survey csv") {
  const auto table = parse_csv(text, kSurveyColumns, source);
  SurveyData out;
  for (const auto& row : table.rows) {
    const std::string where = source + ":" + std::to_string(row.line);
    SurveyResponse r;
    r.respondent_id = table.at(row, "respondent_id");
    try {
      r.component = parse_non_use_kind(table.at(row, "component"));
    } catch (const Error& e) {
      fail(e.code(), where + ": " + e.what());
    }
    if (!parse_double(table.at(row, "wtp"), r.wtp)) fail(ErrorCode::ParseError, where + ": wtp is not a number");
    if (!(r.wtp >= 0.0)) fail(ErrorCode::InvariantError, where + ": wtp must be >= 0");
    if (!parse_bool(table.at(row, "protest_flag"), r.protest)) fail(ErrorCode::ParseError, where + ": protest_flag must be 0 or 1");
    const auto& currency = table.at(row, "currency");
    if (currency.empty()) fail(ErrorCode::ParseError, where + ": currency is empty");
    if (out.currency.empty()) {
      out.currency = currency;
    } else if (currency != out.currency) {
      fail(ErrorCode::CurrencyMismatch, where + ": currency " + currency + " differs from " + out.currency);
    }
    out.responses.push_back(std::move(r));
  }
  return out;
}

inline SurveyData ingest_survey_csv(const std::filesystem::path& path) {
  return parse_survey_csv(read_file(path), path.string());
}

}  // namespace heritage::io

#pragma once

#include <charconv>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "bibcorpus/text.hpp"

namespace bibcorpus {

enum class Source { SourceA_xml, SourceB_jsonl, SourceC_jsonl };

inline std::string_view to_string(Source s) {
  switch (s) {
    case Source::SourceA_xml: return "source_a";
    case Source::SourceB_jsonl: return "source_b";
    case Source::SourceC_jsonl: return "source_c";
  }
  return "unknown";
}

inline std::optional<Source> parse_source(std::string_view s) {
  if (s == "a" || s == "source_a" || s == "dblp") return Source::SourceA_xml;
  if (s == "b" || s == "source_b" || s == "s2" || s == "semanticscholar") return Source::SourceB_jsonl;
  if (s == "c" || s == "source_c" || s == "aminer") return Source::SourceC_jsonl;
  return std::nullopt;
}

/// One article as read from a single source, before unification.
struct RawRecord {
  Source source = Source::SourceA_xml;
  std::string raw_title;
  std::optional<std::string> abstract;
  std::optional<std::string> raw_venue;
  std::optional<int> year;
  std::optional<std::string> volume;
  std::optional<std::string> doi;
  std::vector<std::string> author_names;
  std::vector<std::string> author_keys;
  std::optional<std::int64_t> n_citations;

  friend bool operator==(const RawRecord&, const RawRecord&) = default;
};

enum class IssueKind {
  MalformedEntry,
  MissingTitle,
  MissingField,
  InvalidYear,
  InvalidCitationCount,
  UnknownElement,
  UndecodableEscape,
};

inline std::string_view to_string(IssueKind k) {
  switch (k) {
    case IssueKind::MalformedEntry: return "MalformedEntry";
    case IssueKind::MissingTitle: return "MissingTitle";
    case IssueKind::MissingField: return "MissingField";
    case IssueKind::InvalidYear: return "InvalidYear";
    case IssueKind::InvalidCitationCount: return "InvalidCitationCount";
    case IssueKind::UnknownElement: return "UnknownElement";
    case IssueKind::UndecodableEscape: return "UndecodableEscape";
  }
  return "Unknown";
}

struct ParseIssue {
  std::string locator;
  IssueKind kind;
  std::string message;
};

/// Per-stream parse accounting. Individual issues are retained up to
/// `max_issues` so a huge dump cannot grow the report without bound; the
/// per-kind counters are always exact.
struct ParseReport {
  std::size_t records_emitted = 0;
  std::size_t records_skipped = 0;
  std::vector<ParseIssue> issues;
  std::map<IssueKind, std::size_t> issue_counts;
  std::size_t issues_dropped = 0;
  std::size_t max_issues = 10000;

  std::size_t entries() const { return records_emitted + records_skipped; }

  void add_issue(std::string locator, IssueKind kind, std::string message) {
    ++issue_counts[kind];
    if (issues.size() < max_issues) {
      issues.push_back({std::move(locator), kind, std::move(message)});
    } else {
      ++issues_dropped;
    }
  }

  std::size_t count(IssueKind kind) const {
    const auto it = issue_counts.find(kind);
    return it == issue_counts.end() ? 0 : it->second;
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["records_emitted"] = records_emitted;
    j["records_skipped"] = records_skipped;
    nlohmann::json counts = nlohmann::json::object();
    for (const auto& [k, n] : issue_counts) counts[std::string(to_string(k))] = n;
    j["issue_counts"] = counts;
    j["issues_dropped"] = issues_dropped;
    auto arr = nlohmann::json::array();
    for (const auto& i : issues) {
      arr.push_back({{"locator", i.locator}, {"kind", to_string(i.kind)}, {"message", i.message}});
    }
    j["issues"] = std::move(arr);
    return j;
  }
};

/// Container-level corruption; the stream cannot be continued.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : std::runtime_error(what), line_(line), column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Accepts "YYYY" and "'YY" (mapped to 19YY). Anything else, or a year
/// outside [1900, 2100], is absent.
inline std::optional<int> normalize_year(std::string_view text) {
  auto s = trim(text);
  int value = 0;
  if (s.size() == 3 && (s[0] == '\'' || s[0] == '`')) {
    const auto* first = s.data() + 1;
    const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    value += 1900;
  } else if (s.size() == 4) {
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  } else {
    return std::nullopt;
  }
  if (value < 1900 || value > 2100) return std::nullopt;
  return value;
}

inline std::optional<int> normalize_year(std::int64_t value) {
  if (value < 1900 || value > 2100) return std::nullopt;
  return static_cast<int>(value);
}

/// Strips resolver prefixes ("https://doi.org/", "doi:") and case-folds.
/// Returns nullopt when no "10." prefix can be found.
inline std::optional<std::string> normalize_doi(std::string_view raw) {
  auto s = trim(raw);
  for (std::string_view prefix : {"doi.org/", "doi:"}) {
    if (const auto p = s.find(prefix); p != std::string_view::npos) {
      s = s.substr(p + prefix.size());
      break;
    }
  }
  s = trim(s);
  if (s.size() < 4 || s.substr(0, 3) != "10.") return std::nullopt;
  return fold_case(s);
}

}  // namespace bibcorpus

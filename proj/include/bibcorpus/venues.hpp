#pragma once

#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <regex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "bibcorpus/text.hpp"

namespace bibcorpus {

struct ExactMatcher {
  std::string text;  // case-folded, whitespace-collapsed
  friend bool operator==(const ExactMatcher&, const ExactMatcher&) = default;
};

struct PatternMatcher {
  std::string expression;
  friend bool operator==(const PatternMatcher&, const PatternMatcher&) = default;
};

/// Maps raw venue strings to a canonical venue abbreviation.
struct VenueRule {
  std::variant<ExactMatcher, PatternMatcher> matcher;
  std::string canonical;
  std::size_t line = 0;  // source line, 0 when built in code

  bool is_exact() const { return std::holds_alternative<ExactMatcher>(matcher); }
  const std::string& matcher_text() const {
    return is_exact() ? std::get<ExactMatcher>(matcher).text : std::get<PatternMatcher>(matcher).expression;
  }

  friend bool operator==(const VenueRule& a, const VenueRule& b) {
    return a.matcher == b.matcher && a.canonical == b.canonical;
  }
};

inline std::string fold_venue(std::string_view raw) { return collapse_whitespace(fold_case(trim(raw))); }

inline VenueRule exact_rule(std::string_view text, std::string canonical) {
  return {ExactMatcher{fold_venue(text)}, std::move(canonical)};
}

inline VenueRule pattern_rule(std::string expression, std::string canonical) {
  return {PatternMatcher{std::move(expression)}, std::move(canonical)};
}

class VenueTableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Ordered rule list, immutable once built. Exact rules are consulted
/// before patterns; within each kind the first rule in file order wins.
class VenueTable {
 public:
  VenueTable() = default;

  explicit VenueTable(std::vector<VenueRule> rules) : rules_(std::move(rules)) {
    std::map<std::pair<bool, std::string>, const VenueRule*> seen;
    for (const auto& rule : rules_) {
      if (trim(rule.canonical).empty()) {
        throw VenueTableError(describe(rule) + ": empty canonical abbreviation");
      }
      const auto key = std::pair{rule.is_exact(), rule.matcher_text()};
      if (const auto it = seen.find(key); it != seen.end()) {
        if (it->second->canonical != rule.canonical) {
          throw VenueTableError("conflicting rules: " + describe(*it->second) + " maps to '" +
                                it->second->canonical + "' but " + describe(rule) + " maps to '" +
                                rule.canonical + "'");
        }
        continue;
      }
      seen.emplace(key, &rule);
      canonical_set_.insert(rule.canonical);
      if (rule.is_exact()) {
        exact_.emplace(rule.matcher_text(), rule.canonical);
      } else {
        try {
          patterns_.push_back({std::regex(rule.matcher_text(), std::regex::ECMAScript | std::regex::icase |
                                                                     std::regex::optimize),
                               rule.canonical});
        } catch (const std::regex_error& e) {
          throw VenueTableError(describe(rule) + ": invalid pattern '" + rule.matcher_text() + "': " + e.what());
        }
      }
    }
  }

  const std::vector<VenueRule>& rules() const { return rules_; }
  const std::set<std::string>& canonical_set() const { return canonical_set_; }
  bool empty() const { return rules_.empty(); }

  friend bool operator==(const VenueTable& a, const VenueTable& b) { return a.rules_ == b.rules_; }

 private:
  friend std::optional<std::string> map_venue(std::string_view raw, const VenueTable& table);

  static std::string describe(const VenueRule& rule) {
    const std::string kind = rule.is_exact() ? "exact" : "pattern";
    const std::string where = rule.line ? "line " + std::to_string(rule.line) + " " : "";
    return where + "(" + kind + " '" + rule.matcher_text() + "')";
  }

  struct CompiledPattern {
    std::regex regex;
    std::string canonical;
  };

  std::vector<VenueRule> rules_;
  std::set<std::string> canonical_set_;
  std::unordered_map<std::string, std::string> exact_;
  std::vector<CompiledPattern> patterns_;
};

/// Canonical abbreviation for `raw`, or nullopt when no rule matches (the
/// caller drops the record).
inline std::optional<std::string> map_venue(std::string_view raw, const VenueTable& table) {
  if (table.empty()) return std::nullopt;
  const auto folded = fold_venue(raw);
  if (folded.empty()) return std::nullopt;
  if (const auto it = table.exact_.find(folded); it != table.exact_.end()) return it->second;
  for (const auto& p : table.patterns_) {
    if (std::regex_search(folded, p.regex)) return p.canonical;
  }
  return std::nullopt;
}

/// Rule file: `exact|pattern <TAB> matcher <TAB> canonical` per line, `#`
/// comments and blank lines ignored.
inline VenueTable parse_venue_table(std::istream& in) {
  std::vector<VenueRule> rules;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty() || trim(line)[0] == '#') continue;
    std::vector<std::string_view> cols;
    std::string_view rest = line;
    while (true) {
      const auto tab = rest.find('\t');
      cols.push_back(rest.substr(0, tab));
      if (tab == std::string_view::npos) break;
      rest = rest.substr(tab + 1);
    }
    if (cols.size() != 3) {
      throw VenueTableError("line " + std::to_string(lineno) + ": expected 3 tab-separated columns, got " +
                            std::to_string(cols.size()));
    }
    const auto kind = trim(cols[0]);
    const auto matcher = trim(cols[1]);
    const auto canonical = std::string(trim(cols[2]));
    if (matcher.empty()) throw VenueTableError("line " + std::to_string(lineno) + ": empty matcher");
    VenueRule rule;
    if (kind == "exact") {
      rule = exact_rule(matcher, canonical);
    } else if (kind == "pattern") {
      rule = pattern_rule(std::string(matcher), canonical);
    } else {
      throw VenueTableError("line " + std::to_string(lineno) + ": unknown rule kind '" + std::string(kind) + "'");
    }
    rule.line = lineno;
    rules.push_back(std::move(rule));
  }
  return VenueTable(std::move(rules));
}

inline VenueTable load_venue_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw VenueTableError("cannot open venue rule file " + path);
  return parse_venue_table(in);
}

inline std::string serialize_venue_table(const VenueTable& table) {
  std::ostringstream out;
  for (const auto& r : table.rules()) {
    out << (r.is_exact() ? "exact" : "pattern") << '\t' << r.matcher_text() << '\t' << r.canonical << '\n';
  }
  return out.str();
}

}  // namespace bibcorpus

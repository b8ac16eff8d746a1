#pragma once

// Per-year keyword rankings and the emerging-keyword detectors.

#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "bibcorpus/corpus.hpp"
#include "bibcorpus/textkit.hpp"

namespace bibcorpus {

struct YearSpan {
  int start = 0;
  int end = 0;

  int length() const { return end - start + 1; }
  bool contains(int y) const { return y >= start && y <= end; }
};

struct YearlyRankings {
  YearSpan span;
  std::size_t top_n = 10;
  std::map<int, KeywordRanking> per_year;  // every year of the span
  std::set<int> empty_years;               // years with no matching documents

  const KeywordRanking& at(int year) const { return per_year.at(year); }
};

/// Ranks each year of `span` independently: the corpus for year y is the set
/// of publications in `pubs` with year y, and every one of them is an
/// interest document. Publications outside the span or without a year are
/// ignored.
inline YearlyRankings keywords_per_year(std::span<const Publication> pubs, YearSpan span, const Preprocessor& pre,
                                        const KeywordOptions& opt) {
  if (span.end < span.start) throw std::invalid_argument("year span is empty");
  std::map<int, std::vector<Publication>> by_year;
  for (const auto& p : pubs) {
    if (p.year && span.contains(*p.year)) by_year[*p.year].push_back(p);
  }
  YearlyRankings out;
  out.span = span;
  out.top_n = opt.top_n;
  for (int y = span.start; y <= span.end; ++y) {
    const auto it = by_year.find(y);
    if (it == by_year.end()) {
      KeywordRanking empty;
      empty.suppressed = opt.suppress;
      empty.truncated = true;
      out.per_year.emplace(y, std::move(empty));
      out.empty_years.insert(y);
      continue;
    }
    out.per_year.emplace(y, rank_keywords(it->second, pre, opt));
  }
  return out;
}

/// Keywords in some top-n list at or after `split_year` and in none before.
inline std::set<std::string> new_keywords(const YearlyRankings& r, int split_year) {
  if (!(split_year > r.span.start && split_year <= r.span.end)) {
    throw std::invalid_argument("split year " + std::to_string(split_year) + " is not inside " +
                                std::to_string(r.span.start) + ".." + std::to_string(r.span.end));
  }
  std::set<std::string> early, late;
  for (const auto& [year, ranking] : r.per_year) {
    auto& target = year < split_year ? early : late;
    for (const auto& e : ranking.entries) target.insert(e.keyword);
  }
  std::set<std::string> out;
  for (const auto& k : late) {
    if (!early.count(k)) out.insert(k);
  }
  return out;
}

/// Keywords present in every year from their first appearance through the
/// end of the span whose rank never gets worse from one year to the next.
/// A keyword appearing only in the final year qualifies.
inline std::set<std::string> rising_keywords(const YearlyRankings& r) {
  if (r.span.length() < 2) throw std::invalid_argument("rising keywords need a span of at least two years");
  std::map<std::string, std::map<int, std::size_t>> ranks;
  for (const auto& [year, ranking] : r.per_year) {
    for (std::size_t i = 0; i < ranking.entries.size(); ++i) ranks[ranking.entries[i].keyword][year] = i + 1;
  }
  std::set<std::string> out;
  for (const auto& [keyword, by_year] : ranks) {
    const int first = by_year.begin()->first;
    bool ok = true;
    std::optional<std::size_t> previous;
    for (int y = first; y <= r.span.end && ok; ++y) {
      const auto it = by_year.find(y);
      if (it == by_year.end()) {
        ok = false;
      } else {
        ok = !previous || it->second <= *previous;
        previous = it->second;
      }
    }
    if (ok) out.insert(keyword);
  }
  return out;
}

struct TrendReport {
  std::set<std::string> new_keywords;
  std::set<std::string> rising_keywords;
  int split_year = 0;
};

inline TrendReport emerging_keywords(const YearlyRankings& r, int split_year) {
  return {new_keywords(r, split_year), rising_keywords(r), split_year};
}

/// Midpoint split: the later half of the span, rounded so that both halves
/// are non-empty.
inline int default_split_year(YearSpan span) { return span.start + span.length() / 2; }

inline std::string to_csv(const YearlyRankings& r) {
  std::string out = "year,rank,keyword,count\n";
  for (const auto& [year, ranking] : r.per_year) {
    for (std::size_t i = 0; i < ranking.entries.size(); ++i) {
      out += std::to_string(year) + "," + std::to_string(i + 1) + "," + ranking.entries[i].keyword + "," +
             std::to_string(ranking.entries[i].count) + "\n";
    }
  }
  return out;
}

inline nlohmann::json to_json(const YearlyRankings& r) {
  auto years = nlohmann::json::object();
  for (const auto& [year, ranking] : r.per_year) years[std::to_string(year)] = to_json(ranking);
  return {{"span", {r.span.start, r.span.end}}, {"top_n", r.top_n}, {"years", years}, {"empty_years", r.empty_years}};
}

inline nlohmann::json to_json(const TrendReport& t) {
  return {{"split_year", t.split_year}, {"new_keywords", t.new_keywords}, {"rising_keywords", t.rising_keywords}};
}

}  // namespace bibcorpus

#pragma once

// Glue between the store and the analysis modules.

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bibcorpus/community.hpp"
#include "bibcorpus/filter.hpp"
#include "bibcorpus/store.hpp"

namespace bibcorpus {

inline std::vector<ScopedPublication> scoped_publications(const Store& store, const std::vector<Publication>& pubs) {
  std::vector<std::int64_t> ids;
  ids.reserve(pubs.size());
  for (const auto& p : pubs) ids.push_back(p.id);
  auto authors = store.authors_by_publication(ids);
  std::vector<ScopedPublication> out;
  out.reserve(pubs.size());
  for (const auto& p : pubs) out.push_back({p.id, p.n_citations, std::move(authors[p.id])});
  return out;
}

/// Year bounds a filter imposes through a top-level range or a range that is
/// a direct conjunct.
inline std::pair<std::optional<int>, std::optional<int>> year_bounds(const Filter& f) {
  if (f.kind == Filter::Kind::YearRange) return {f.year_min, f.year_max};
  std::optional<int> lo, hi;
  if (f.kind == Filter::Kind::And) {
    for (const auto& c : f.children) {
      if (c.kind != Filter::Kind::YearRange) continue;
      if (c.year_min) lo = lo ? std::max(*lo, *c.year_min) : *c.year_min;
      if (c.year_max) hi = hi ? std::min(*hi, *c.year_max) : *c.year_max;
    }
  }
  return {lo, hi};
}

/// Quotes a CSV cell when it contains a separator, quote or line break.
inline std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace bibcorpus

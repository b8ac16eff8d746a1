#pragma once

// The nine named article selections: Q1-Q5 pick topical communities over
// 2009-2018, Q6-Q9 list allocation and provisioning articles by citations
// or recency.

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "bibcorpus/filter.hpp"

namespace bibcorpus {

struct CannedQuery {
  std::string_view name;
  std::string_view description;
  std::string_view expression;  // filter text syntax
  std::string_view sql;         // equivalent SQL over the publications table

  Query query() const { return parse_query(expression); }
};

inline const std::array<CannedQuery, 9>& canned_queries() {
  static const std::array<CannedQuery, 9> kQueries{{
      {"Q1", "workflow scheduling articles, 2009-2018",
       R"(year in 2009..2018 and text ~ "workflow" and text ~ "schedul")",
       "SELECT * FROM publications WHERE year BETWEEN 2009 AND 2018 "
       "AND (lower(title) LIKE '%workflow%' OR lower(abstract) LIKE '%workflow%') "
       "AND (lower(title) LIKE '%schedul%' OR lower(abstract) LIKE '%schedul%')"},
      {"Q2", "workflow formalism and language articles, 2009-2018",
       R"(year in 2009..2018 and text ~ "workflow" and (text ~ "formalism" or text ~ "language"))",
       "SELECT * FROM publications WHERE year BETWEEN 2009 AND 2018 "
       "AND (lower(title) LIKE '%workflow%' OR lower(abstract) LIKE '%workflow%') "
       "AND ((lower(title) LIKE '%formalism%' OR lower(abstract) LIKE '%formalism%') "
       "OR (lower(title) LIKE '%language%' OR lower(abstract) LIKE '%language%'))"},
      {"Q3", "workflow allocation articles, 2009-2018",
       R"(year in 2009..2018 and text ~ "workflow" and (text ~ "schedul" or text ~ "plan" or text ~ "allocat"))",
       "SELECT * FROM publications WHERE year BETWEEN 2009 AND 2018 "
       "AND (lower(title) LIKE '%workflow%' OR lower(abstract) LIKE '%workflow%') "
       "AND (lower(title) LIKE '%schedul%' OR lower(abstract) LIKE '%schedul%' "
       "OR lower(title) LIKE '%plan%' OR lower(abstract) LIKE '%plan%' "
       "OR lower(title) LIKE '%allocat%' OR lower(abstract) LIKE '%allocat%')"},
      {"Q4", "workflow provisioning articles, 2009-2018",
       R"(year in 2009..2018 and text ~ "workflow" and (text ~ "provision" or text ~ "autoscal"))",
       "SELECT * FROM publications WHERE year BETWEEN 2009 AND 2018 "
       "AND (lower(title) LIKE '%workflow%' OR lower(abstract) LIKE '%workflow%') "
       "AND (lower(title) LIKE '%provision%' OR lower(abstract) LIKE '%provision%' "
       "OR lower(title) LIKE '%autoscal%' OR lower(abstract) LIKE '%autoscal%')"},
      {"Q5", "cloud service articles, 2009-2018",
       R"(year in 2009..2018 and text ~ "cloud" and text ~ "service")",
       "SELECT * FROM publications WHERE year BETWEEN 2009 AND 2018 "
       "AND (lower(title) LIKE '%cloud%' OR lower(abstract) LIKE '%cloud%') "
       "AND (lower(title) LIKE '%service%' OR lower(abstract) LIKE '%service%')"},
      {"Q6", "workflow allocation articles, most cited first",
       R"(text ~ "workflow" and (text ~ "allocat" or text ~ "schedul" or text ~ "plan") order by citations)",
       "SELECT * FROM publications "
       "WHERE (lower(title) LIKE '%workflow%' OR lower(abstract) LIKE '%workflow%') "
       "AND ((lower(title) LIKE '%allocat%' OR lower(abstract) LIKE '%allocat%') "
       "OR (lower(title) LIKE '%schedul%' OR lower(abstract) LIKE '%schedul%') "
       "OR (lower(title) LIKE '%plan%' OR lower(abstract) LIKE '%plan%')) "
       "ORDER BY n_citations DESC"},
      {"Q7", "workflow allocation articles, most recent first",
       R"(text ~ "workflow" and (text ~ "allocat" or text ~ "schedul" or text ~ "plan") order by recent)",
       "SELECT * FROM publications "
       "WHERE (lower(title) LIKE '%workflow%' OR lower(abstract) LIKE '%workflow%') "
       "AND ((lower(title) LIKE '%allocat%' OR lower(abstract) LIKE '%allocat%') "
       "OR (lower(title) LIKE '%schedul%' OR lower(abstract) LIKE '%schedul%') "
       "OR (lower(title) LIKE '%plan%' OR lower(abstract) LIKE '%plan%')) "
       "ORDER BY year DESC, n_citations DESC"},
      {"Q8", "workflow provisioning articles, most cited first",
       R"(text ~ "workflow" and (text ~ "provision" or text ~ "autoscal") order by citations)",
       "SELECT * FROM publications "
       "WHERE (lower(title) LIKE '%workflow%' OR lower(abstract) LIKE '%workflow%') "
       "AND (lower(title) LIKE '%provision%' OR lower(abstract) LIKE '%provision%' "
       "OR lower(title) LIKE '%autoscal%' OR lower(abstract) LIKE '%autoscal%') "
       "ORDER BY n_citations DESC"},
      {"Q9", "workflow provisioning articles, most recent first",
       R"(text ~ "workflow" and (text ~ "provision" or text ~ "autoscal") order by recent)",
       "SELECT * FROM publications "
       "WHERE (lower(title) LIKE '%workflow%' OR lower(abstract) LIKE '%workflow%') "
       "AND (lower(title) LIKE '%provision%' OR lower(abstract) LIKE '%provision%' "
       "OR lower(title) LIKE '%autoscal%' OR lower(abstract) LIKE '%autoscal%') "
       "ORDER BY year DESC, n_citations DESC"},
  }};
  return kQueries;
}

/// Case-insensitive lookup by name ("Q4", "q4").
inline const CannedQuery* find_canned_query(std::string_view name) {
  for (const auto& q : canned_queries()) {
    if (name.size() == q.name.size() && (name[0] == 'q' || name[0] == 'Q') && name.substr(1) == q.name.substr(1)) {
      return &q;
    }
  }
  return nullptr;
}

enum class PolicyCategory { Allocation, Provisioning };
enum class PolicyMode { TopCited, Recent };

inline const CannedQuery& policy_query(PolicyCategory category, PolicyMode mode) {
  const char* name = category == PolicyCategory::Allocation ? (mode == PolicyMode::TopCited ? "Q6" : "Q7")
                                                            : (mode == PolicyMode::TopCited ? "Q8" : "Q9");
  return *find_canned_query(name);
}

}  // namespace bibcorpus

#include <gtest/gtest.h>

#include "bibcorpus/analysis.hpp"
#include "bibcorpus/queries.hpp"

using namespace bibcorpus;

TEST(CannedQueries, LookupIsCaseInsensitive) {
  ASSERT_NE(find_canned_query("q4"), nullptr);
  EXPECT_EQ(find_canned_query("q4")->name, "Q4");
  EXPECT_EQ(find_canned_query("Q1"), &canned_queries()[0]);
  EXPECT_EQ(find_canned_query("Q10"), nullptr);
  EXPECT_EQ(find_canned_query("X1"), nullptr);
  EXPECT_EQ(find_canned_query(""), nullptr);
}

TEST(CannedQueries, AllParseAndCommunitiesShareTheDecade) {
  for (const auto& q : canned_queries()) {
    const auto parsed = q.query();
    if (q.name <= "Q5") {
      EXPECT_EQ(year_bounds(parsed.filter), (std::pair<std::optional<int>, std::optional<int>>{2009, 2018})) << q.name;
      EXPECT_EQ(parsed.order, Order::ById);
    } else {
      EXPECT_EQ(year_bounds(parsed.filter), (std::pair<std::optional<int>, std::optional<int>>{}));
    }
  }
}

TEST(CannedQueries, PolicyMapping) {
  EXPECT_EQ(policy_query(PolicyCategory::Allocation, PolicyMode::TopCited).name, "Q6");
  EXPECT_EQ(policy_query(PolicyCategory::Allocation, PolicyMode::Recent).name, "Q7");
  EXPECT_EQ(policy_query(PolicyCategory::Provisioning, PolicyMode::TopCited).name, "Q8");
  EXPECT_EQ(policy_query(PolicyCategory::Provisioning, PolicyMode::Recent).name, "Q9");
  EXPECT_EQ(policy_query(PolicyCategory::Allocation, PolicyMode::TopCited).query().order, Order::CitationsDesc);
  EXPECT_EQ(policy_query(PolicyCategory::Provisioning, PolicyMode::Recent).query().order,
            Order::YearDescCitationsDesc);
}

TEST(Analysis, CsvFieldQuoting) {
  EXPECT_EQ(csv_field("plain"), "plain");
  EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
  EXPECT_EQ(csv_field("two\nlines"), "\"two\nlines\"");
}

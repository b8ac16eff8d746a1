#include <gtest/gtest.h>

#include "bibcorpus/trends.hpp"

using namespace bibcorpus;

namespace {

Publication pub(std::int64_t id, int year, std::string title) {
  Publication p;
  p.id = id;
  p.year = year;
  p.title = std::move(title);
  return p;
}

KeywordRanking ranking(std::vector<std::string> keywords) {
  KeywordRanking r;
  std::size_t count = keywords.size();
  for (auto& k : keywords) r.entries.push_back({std::move(k), count--});
  return r;
}

YearlyRankings rankings(int start, std::vector<std::vector<std::string>> per_year) {
  YearlyRankings r;
  r.span = {start, start + static_cast<int>(per_year.size()) - 1};
  for (std::size_t i = 0; i < per_year.size(); ++i) {
    if (per_year[i].empty()) r.empty_years.insert(start + static_cast<int>(i));
    r.per_year.emplace(start + static_cast<int>(i), ranking(std::move(per_year[i])));
  }
  return r;
}

}  // namespace

TEST(KeywordsPerYear, SingleYearEqualsWholeCorpusRanking) {
  const std::vector<Publication> pubs{pub(1, 2012, "Workflow scheduling in clouds"),
                                      pub(2, 2012, "Energy-aware workflow planning"),
                                      pub(3, 2012, "Grid brokers")};
  const Preprocessor pre;
  KeywordOptions opt;
  opt.top_n = 5;
  const auto yearly = keywords_per_year(pubs, {2012, 2012}, pre, opt);
  EXPECT_EQ(yearly.at(2012).entries, rank_keywords(pubs, pre, opt).entries);
}

TEST(KeywordsPerYear, EachYearIsFitOnItsOwnSlice) {
  const std::vector<Publication> pubs{
      pub(1, 2010, "Grid workflow brokers"), pub(2, 2010, "Grid scheduling"),  pub(3, 2011, "Cloud workflow"),
      pub(4, 2011, "Cloud elasticity"),      pub(5, 2012, "Serverless cost"),  pub(6, 2009, "Outside span"),
      [] {
        Publication p;
        p.id = 7;
        p.title = "No year";
        return p;
      }()};
  const Preprocessor pre;
  KeywordOptions opt;
  opt.top_n = 3;
  const auto yearly = keywords_per_year(pubs, {2010, 2013}, pre, opt);
  for (int y = 2010; y <= 2012; ++y) {
    std::vector<Publication> slice;
    for (const auto& p : pubs) {
      if (p.year == y) slice.push_back(p);
    }
    EXPECT_EQ(yearly.at(y).entries, rank_keywords(slice, pre, opt).entries) << y;
  }
  EXPECT_TRUE(yearly.at(2013).entries.empty());
  EXPECT_EQ(yearly.empty_years, std::set<int>{2013});
  EXPECT_EQ(yearly.per_year.size(), 4u);
  EXPECT_THROW(keywords_per_year(pubs, {2012, 2010}, pre, opt), std::invalid_argument);
}

TEST(NewKeywords, IdenticalYearsGiveNothing) {
  const auto r = rankings(2010, {{"a", "b"}, {"a", "b"}, {"a", "b"}, {"a", "b"}});
  EXPECT_TRUE(new_keywords(r, 2012).empty());
}

TEST(NewKeywords, HandBuiltFixture) {
  const auto r = rankings(2010, {{"grid", "cluster"}, {"grid", "cloud"}, {"cloud", "container"}, {"serverless", "grid"}});
  EXPECT_EQ(new_keywords(r, 2012), (std::set<std::string>{"container", "serverless"}));
  EXPECT_EQ(new_keywords(r, 2011), (std::set<std::string>{"cloud", "container", "serverless"}));
  EXPECT_EQ(new_keywords(r, 2013), (std::set<std::string>{"serverless"}));
}

TEST(NewKeywords, SplitMustLeaveAnEarlyPart) {
  const auto r = rankings(2010, {{"a"}, {"b"}, {"c"}});
  EXPECT_THROW(new_keywords(r, 2010), std::invalid_argument);
  EXPECT_THROW(new_keywords(r, 2013), std::invalid_argument);
  EXPECT_NO_THROW(new_keywords(r, 2012));
}

TEST(RisingKeywords, Cases) {
  const auto r = rankings(2010, {{"top", "x", "y", "z", "dip"},
                                 {"top", "x", "dip", "z", "gap"},
                                 {"top", "dip", "x", "z", "y"},
                                 {"top", "gap", "x", "dip", "last"}});
  const auto rising = rising_keywords(r);
  EXPECT_TRUE(rising.count("top"));   // rank 1 throughout
  EXPECT_TRUE(rising.count("last"));  // final year only
  EXPECT_FALSE(rising.count("dip"));  // 5 -> 3 -> 2 -> 4
  EXPECT_FALSE(rising.count("gap"));  // missing in 2012
  EXPECT_FALSE(rising.count("y"));    // missing in 2011 and 2013
  EXPECT_FALSE(rising.count("z"));    // absent from the final year
  EXPECT_TRUE(rising.count("x") == 0);  // 2 -> 2 -> 3
  EXPECT_EQ(rising, (std::set<std::string>{"last", "top"}));
}

TEST(RisingKeywords, EqualRanksCount) {
  const auto r = rankings(2010, {{"a", "b", "c"}, {"a", "b", "c"}});
  EXPECT_EQ(rising_keywords(r), (std::set<std::string>{"a", "b", "c"}));
  EXPECT_THROW(rising_keywords(rankings(2010, {{"a"}})), std::invalid_argument);
}

TEST(RisingKeywords, WorsensThenRecovers) {
  const auto r = rankings(2010, {{"p", "q", "r", "s", "k"}, {"p", "q", "k", "r", "s"}, {"p", "q", "r", "k", "s"}});
  EXPECT_FALSE(rising_keywords(r).count("k"));  // 5 -> 3 -> 4
}

TEST(Trends, DefaultSplitAndReport) {
  EXPECT_EQ(default_split_year({2009, 2018}), 2014);
  EXPECT_EQ(default_split_year({2010, 2011}), 2011);
  const auto r = rankings(2010, {{"a"}, {"a", "b"}});
  const auto report = emerging_keywords(r, default_split_year(r.span));
  EXPECT_EQ(report.split_year, 2011);
  EXPECT_EQ(report.new_keywords, std::set<std::string>{"b"});
  EXPECT_EQ(report.rising_keywords, (std::set<std::string>{"a", "b"}));
  const auto j = to_json(report);
  EXPECT_EQ(j["new_keywords"], nlohmann::json::array({"b"}));
}

TEST(Trends, CsvHasOneRowPerYearAndRank) {
  const auto r = rankings(2010, {{"a", "b"}, {}, {"c"}});
  EXPECT_EQ(to_csv(r), "year,rank,keyword,count\n2010,1,a,2\n2010,2,b,1\n2012,1,c,1\n");
  EXPECT_EQ(to_json(r)["empty_years"], nlohmann::json::array({2011}));
}

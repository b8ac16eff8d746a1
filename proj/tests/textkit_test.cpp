#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "bibcorpus/textkit.hpp"
#include "oracles.hpp"

using namespace bibcorpus;

namespace {

std::vector<TokenDoc> docs_of(const std::vector<std::vector<std::string>>& tokens) {
  std::vector<TokenDoc> out;
  for (std::size_t i = 0; i < tokens.size(); ++i) out.push_back({static_cast<std::int64_t>(i + 1), tokens[i]});
  return out;
}

std::vector<std::int64_t> ids(std::size_t n) {
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(static_cast<std::int64_t>(i + 1));
  return out;
}

}  // namespace

TEST(Lemmatizer, RegularPlurals) {
  const Lemmatizer lem;
  EXPECT_EQ(lem.lemmatize("workflows"), "workflow");
  EXPECT_EQ(lem.lemmatize("policies"), "policy");
  EXPECT_EQ(lem.lemmatize("classes"), "class");
  EXPECT_EQ(lem.lemmatize("boxes"), "box");
  EXPECT_EQ(lem.lemmatize("approaches"), "approach");
  EXPECT_EQ(lem.lemmatize("meshes"), "mesh");
  EXPECT_EQ(lem.lemmatize("clouds"), "cloud");
  EXPECT_EQ(lem.lemmatize("resources"), "resource");
}

TEST(Lemmatizer, WordsThatOnlyLookPlural) {
  const Lemmatizer lem;
  for (const char* w : {"analysis", "status", "process", "bus", "series", "kubernetes", "news", "bias", "gas"}) {
    EXPECT_EQ(lem.lemmatize(w), w);
  }
  EXPECT_EQ(lem.lemmatize("analyses"), "analysis");
  EXPECT_EQ(lem.lemmatize("caches"), "cache");
  EXPECT_EQ(lem.lemmatize("data"), "data");
  EXPECT_EQ(lem.lemmatize("criteria"), "criterion");
  EXPECT_EQ(lem.lemmatize("vertices"), "vertex");
  EXPECT_EQ(lem.lemmatize("its"), "its");
}

TEST(Lemmatizer, VerbFormsAreLeftAlone) {
  const Lemmatizer lem;
  EXPECT_EQ(lem.lemmatize("scheduling"), "scheduling");
  EXPECT_EQ(lem.lemmatize("modeled"), "modeled");
  EXPECT_EQ(lem.lemmatize("modeling"), "modeling");
}

TEST(Lemmatizer, ExceptionsCanBeExtended) {
  Lemmatizer lem;
  std::istringstream in("# extra\ngpus\tgpu\nran\trun\n");
  lem.add_exceptions(in);
  EXPECT_EQ(lem.lemmatize("ran"), "run");
  EXPECT_EQ(lem.lemmatize("gpus"), "gpu");
}

TEST(Preprocess, DocumentedExamples) {
  EXPECT_EQ(preprocess("Scheduling Workflows!"), (std::vector<std::string>{"scheduling", "workflow"}));
  EXPECT_TRUE(preprocess("the of and").empty());
  EXPECT_EQ(preprocess("snake_case kept"), (std::vector<std::string>{"snake_case", "kept"}));
}

TEST(Preprocess, RemovesCharactersRatherThanSplitting) {
  EXPECT_EQ(preprocess("cost-aware e.g. it's"), (std::vector<std::string>{"costaware"}));
  EXPECT_EQ(preprocess("Large-Scale\tWORKFLOWS\n(2018)"),
            (std::vector<std::string>{"largescale", "workflow", "2018"}));
}

TEST(Preprocess, UnicodeLettersSurvive) {
  EXPECT_EQ(preprocess("Études des caches"), (std::vector<std::string>{"études", "des", "cache"}));
}

TEST(Preprocess, ShippedListsEqualBuiltIns) {
  const auto english = load_word_list(std::string(BIBCORPUS_DATA_DIR) + "/stopwords.english");
  const auto custom = load_word_list(std::string(BIBCORPUS_DATA_DIR) + "/stopwords.custom");
  EXPECT_EQ(english, std::vector<std::string>(english_stopwords().begin(), english_stopwords().end()));
  EXPECT_EQ(custom, std::vector<std::string>(custom_stopwords().begin(), custom_stopwords().end()));
  EXPECT_EQ(english.size(), 179u);
}

TEST(CountMatrix, CutoffBoundaries) {
  std::vector<std::vector<std::string>> tokens(10, std::vector<std::string>{"everywhere"});
  for (int i = 0; i < 8; ++i) tokens[i].push_back("eight");
  tokens[0].push_back("once");
  const auto m = build_count_matrix(docs_of(tokens));
  EXPECT_EQ(m.terms, (std::vector<std::string>{"eight", "once"}));
  EXPECT_EQ(m.doc_freq, (std::vector<std::size_t>{8, 1}));
  const auto strict = build_count_matrix(docs_of(tokens), 0.8);
  EXPECT_EQ(strict.terms, (std::vector<std::string>{"once"}));
  const auto none = build_count_matrix(docs_of(tokens), 1.0);
  EXPECT_EQ(none.terms.size(), 3u);
}

TEST(CountMatrix, LoweringMaxDfNeverAddsTerms) {
  std::mt19937 rng(41);
  std::uniform_int_distribution<int> len(0, 12), vocab(0, 15);
  std::vector<std::vector<std::string>> tokens(20);
  for (auto& d : tokens) {
    for (int i = len(rng); i > 0; --i) d.push_back("v" + std::to_string(vocab(rng)));
  }
  std::vector<std::string> previous;
  for (const double max_df : {1.0, 0.9, 0.75, 0.5, 0.3, 0.1}) {
    const auto m = build_count_matrix(docs_of(tokens), max_df);
    const auto o = oracle::tfidf(tokens, max_df);
    EXPECT_EQ(m.terms, o.vocabulary) << max_df;
    if (!previous.empty()) {
      EXPECT_TRUE(std::includes(previous.begin(), previous.end(), m.terms.begin(), m.terms.end()));
    }
    previous = m.terms;
  }
}

TEST(CountMatrix, Errors) {
  EXPECT_THROW(build_count_matrix({}), std::invalid_argument);
  EXPECT_THROW(build_count_matrix(docs_of({{"a"}}), 0.0), std::invalid_argument);
  EXPECT_THROW(build_count_matrix(docs_of({{"a"}}), 1.5), std::invalid_argument);
}

TEST(Tfidf, ClosedForms) {
  const auto single = build_count_matrix(docs_of({{"a", "a", "b"}}), 1.0);
  const auto w = tfidf(single);
  ASSERT_EQ(w[0].weights.size(), 2u);
  EXPECT_NEAR(w[0].weights[0].weight, 2 / std::sqrt(5.0), 1e-12);
  EXPECT_NEAR(w[0].weights[1].weight, 1 / std::sqrt(5.0), 1e-12);

  const auto three = build_count_matrix(docs_of({{"x", "a"}, {"x"}, {"x", "b"}}), 1.0);
  const auto idf = inverse_document_frequency(three);
  EXPECT_DOUBLE_EQ(idf[three.vocabulary.at("x")], 1.0);
  EXPECT_DOUBLE_EQ(idf[three.vocabulary.at("a")], std::log(4.0 / 2.0) + 1.0);
}

TEST(Tfidf, MatchesOracleOnRandomCorpora) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    std::uniform_int_distribution<int> ndocs(5, 50), len(0, 40), vocab(0, 60);
    std::vector<std::vector<std::string>> tokens(static_cast<std::size_t>(ndocs(rng)));
    for (auto& d : tokens) {
      const int n = len(rng);
      for (int i = 0; i < n; ++i) d.push_back("t" + std::to_string(vocab(rng)));
    }
    const double max_df = trial % 2 ? 0.9 : 1.0;
    const auto m = build_count_matrix(docs_of(tokens), max_df);
    const auto w = tfidf(m);
    const auto o = oracle::tfidf(tokens, max_df);
    ASSERT_EQ(m.terms, o.vocabulary);
    for (std::size_t d = 0; d < tokens.size(); ++d) {
      std::vector<double> dense(m.terms.size(), 0.0);
      for (const auto& tw : w[d].weights) dense[tw.term] = tw.weight;
      for (std::size_t t = 0; t < dense.size(); ++t) ASSERT_NEAR(dense[t], o.weights[d][t], 1e-9);
      ASSERT_EQ(top_terms(m, w[d], 10), oracle::top_k(o, d, 10));
    }
  }
}

TEST(Tfidf, RowsAreUnitLength) {
  const auto m = build_count_matrix(docs_of({{"a", "b", "c", "c"}, {"a"}, {}, {"d", "d"}}), 1.0);
  for (const auto& doc : tfidf(m)) {
    if (doc.weights.empty()) continue;
    double sq = 0;
    for (const auto& tw : doc.weights) sq += tw.weight * tw.weight;
    EXPECT_NEAR(std::sqrt(sq), 1.0, 1e-9);
  }
}

TEST(TopTerms, TiesBrokenByFrequencyThenName) {
  // In one document every term has the same idf, so weight order is tf order;
  // equal tf falls back to the name.
  const auto m = build_count_matrix(docs_of({{"beta", "alpha", "gamma", "gamma"}}), 1.0);
  const auto w = tfidf(m);
  EXPECT_EQ(top_terms(m, w[0], 50), (std::vector<std::string>{"gamma", "alpha", "beta"}));
  EXPECT_EQ(top_terms(m, w[0], 2), (std::vector<std::string>{"gamma", "alpha"}));
}

TEST(TopKeywords, SingleDocumentWithThreeTerms) {
  const auto m = build_count_matrix(docs_of({{"x", "y", "z"}}), 1.0);
  KeywordOptions opt;
  opt.top_n = 10;
  const auto r = top_keywords(m, tfidf(m), ids(1), opt);
  EXPECT_EQ(r.keywords(), (std::vector<std::string>{"x", "y", "z"}));
  EXPECT_TRUE(r.truncated);
}

TEST(TopKeywords, MatchesBruteForceAggregation) {
  std::mt19937 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::vector<std::string>> tokens(5);
    std::uniform_int_distribution<int> len(1, 15), vocab(0, 12);
    for (auto& d : tokens) {
      const int n = len(rng);
      for (int i = 0; i < n; ++i) d.push_back("w" + std::to_string(vocab(rng)));
    }
    const auto o = oracle::tfidf(tokens, 0.9);
    std::map<std::string, std::size_t> counts;
    for (std::size_t d = 0; d < tokens.size(); ++d) {
      for (const auto& t : oracle::top_k(o, d, 3)) ++counts[t];
    }
    std::vector<std::pair<std::string, std::size_t>> expected(counts.begin(), counts.end());
    std::sort(expected.begin(), expected.end(), [](const auto& a, const auto& b) {
      return a.second != b.second ? a.second > b.second : a.first < b.first;
    });
    if (expected.size() > 4) expected.resize(4);

    const auto m = build_count_matrix(docs_of(tokens), 0.9);
    KeywordOptions opt;
    opt.k_per_doc = 3;
    opt.top_n = 4;
    const auto r = top_keywords(m, tfidf(m), ids(5), opt);
    ASSERT_EQ(r.entries.size(), expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
      EXPECT_EQ(r.entries[i].keyword, expected[i].first);
      EXPECT_EQ(r.entries[i].count, expected[i].second);
    }
  }
}

TEST(TopKeywords, SuppressionBackfills) {
  const auto m = build_count_matrix(docs_of({{"a", "a", "a", "b", "b", "c"}}), 1.0);
  KeywordOptions opt;
  opt.top_n = 2;
  opt.suppress = {"a"};
  const auto r = top_keywords(m, tfidf(m), ids(1), opt);
  EXPECT_EQ(r.keywords(), (std::vector<std::string>{"b", "c"}));
  EXPECT_FALSE(r.truncated);
  EXPECT_EQ(r.suppressed, std::set<std::string>{"a"});
}

TEST(TopKeywords, InterestSubsetOfCorpus) {
  const auto m = build_count_matrix(docs_of({{"a", "b"}, {"c"}, {"d"}}), 1.0);
  KeywordOptions opt;
  const std::vector<std::int64_t> interest{2};
  EXPECT_EQ(top_keywords(m, tfidf(m), interest, opt).keywords(), std::vector<std::string>{"c"});
  const std::vector<std::int64_t> outside{99};
  EXPECT_THROW(top_keywords(m, tfidf(m), outside, opt), std::invalid_argument);
  opt.top_n = 0;
  EXPECT_THROW(top_keywords(m, tfidf(m), interest, opt), std::invalid_argument);
}

TEST(TopKeywords, RankingOutputFormats) {
  KeywordRanking r;
  r.entries = {{"workflow", 5}, {"cloud", 3}};
  EXPECT_EQ(to_csv(r), "rank,keyword,count\n1,workflow,5\n2,cloud,3\n");
  const auto j = to_json(r);
  EXPECT_EQ(j["entries"][1]["keyword"], "cloud");
  EXPECT_EQ(j["entries"][1]["rank"], 2);
  EXPECT_EQ(r.rank_of("cloud"), 2u);
  EXPECT_EQ(r.rank_of("grid"), 0u);
}

TEST(RankKeywords, EndToEndOnPublications) {
  std::vector<Publication> pubs(4);
  const char* titles[] = {"Workflow scheduling in clouds", "Deadline-aware workflow scheduling",
                          "Cloud cost models", "Grid workflows"};
  for (std::size_t i = 0; i < pubs.size(); ++i) {
    pubs[i].id = static_cast<std::int64_t>(i + 10);
    pubs[i].title = titles[i];
  }
  pubs[2].abstract = "We model cloud cost.";
  const Preprocessor pre;
  KeywordOptions opt;
  opt.top_n = 3;
  const auto r = rank_keywords(pubs, pre, opt);
  ASSERT_EQ(r.entries.size(), 3u);
  EXPECT_EQ(r.entries[0].keyword, "workflow");
  EXPECT_EQ(r.entries[0].count, 3u);
  for (const auto& e : r.entries) EXPECT_FALSE(pre.is_stopword(e.keyword));
  EXPECT_TRUE(rank_keywords(std::vector<Publication>{}, pre, opt).entries.empty());
}

#include <gtest/gtest.h>

#include "bibcorpus/corpus.hpp"
#include "bibcorpus/record.hpp"
#include "bibcorpus/text.hpp"

using namespace bibcorpus;

TEST(DecodeText, NamedDecimalAndHexReferences) {
  EXPECT_EQ(decode_text("Caf&eacute; &amp; bar"), "Café & bar");
  EXPECT_EQ(decode_text("&#233;&#xE9;&#XE9;"), "ééé");
  EXPECT_EQ(decode_text("a &lt;b&gt; c"), "a <b> c");
  EXPECT_EQ(decode_text("&apos;quoted&apos;"), "'quoted'");
}

TEST(DecodeText, UnicodeEscapesAndSurrogatePairs) {
  EXPECT_EQ(decode_text("caf\\u00e9"), "café");
  EXPECT_EQ(decode_text("\\ud83d\\ude00"), "\xF0\x9F\x98\x80");
}

TEST(DecodeText, RepeatsUntilStable) {
  EXPECT_EQ(decode_text("&amp;amp;eacute;"), "é");
  EXPECT_EQ(decode_text("&amp;#233;"), "é");
}

TEST(DecodeText, LeavesUndecodableVerbatimAndReportsIt) {
  std::vector<std::string> bad;
  EXPECT_EQ(decode_text("x &bogus; y", &bad), "x &bogus; y");
  ASSERT_EQ(bad.size(), 1u);
  EXPECT_EQ(bad[0], "&bogus;");
  bad.clear();
  EXPECT_EQ(decode_text("lone \\ud83d here", &bad), "lone \\ud83d here");
  EXPECT_EQ(bad.size(), 1u);
}

TEST(DecodeText, IsIdempotent) {
  for (const char* s : {"plain", "&amp;lt;", "x &bogus; y", "\\u0026amp;", "&#38;#38;", "100% & more"}) {
    const auto once = decode_text(s);
    EXPECT_EQ(decode_text(once), once) << s;
  }
}

TEST(DecodeText, PlainAmpersandsSurvive) {
  EXPECT_EQ(decode_text("R&D costs & benefits"), "R&D costs & benefits");
}

TEST(FoldCase, AsciiAndLatin) {
  EXPECT_EQ(fold_case("WorkFlow"), "workflow");
  EXPECT_EQ(fold_case("ÉCOLE Ärger"), "école ärger");
}

TEST(NormalizeTitle, DropsTrailingDotAndPunctuation) {
  EXPECT_EQ(normalize_title("Deadline-constrained Workflow Scheduling."), "deadlineconstrained workflow scheduling");
  EXPECT_EQ(normalize_title("  A   survey:  of (things)  "), "a survey of things");
}

TEST(NormalizeTitle, EncodedVariantsAgree) {
  const auto expected = normalize_title("Café workflows");
  EXPECT_EQ(normalize_title("Caf&eacute; workflows."), expected);
  EXPECT_EQ(normalize_title("Caf&#233; workflows"), expected);
  EXPECT_EQ(normalize_title("Caf\\u00e9 workflows"), expected);
  EXPECT_EQ(expected, "cafe workflows");
}

TEST(NormalizeTitle, IsIdempotent) {
  for (const char* s : {"Straße: streaming.", "Naïve Bayes", "x &bogus; y.", "Ünïcödé — dash", "..."}) {
    const auto once = normalize_title(s);
    EXPECT_EQ(normalize_title(once), once) << s;
  }
}

TEST(NormalizeTitle, EmptyWhenNothingSurvives) { EXPECT_EQ(normalize_title(" .!? "), ""); }

TEST(DisplayTitle, DecodesAndDropsOneDot) {
  EXPECT_EQ(display_title("Cost &amp; time.  "), "Cost & time");
  EXPECT_EQ(display_title("Etc.."), "Etc.");
}

TEST(NormalizeYear, AcceptedForms) {
  EXPECT_EQ(normalize_year("2014"), 2014);
  EXPECT_EQ(normalize_year(" 1999 "), 1999);
  EXPECT_EQ(normalize_year("'98"), 1998);
  EXPECT_EQ(normalize_year("`05"), 1905);
  EXPECT_EQ(normalize_year(std::int64_t{2020}), 2020);
}

TEST(NormalizeYear, RejectedForms) {
  EXPECT_FALSE(normalize_year("1899"));
  EXPECT_FALSE(normalize_year("2101"));
  EXPECT_FALSE(normalize_year("20x4"));
  EXPECT_FALSE(normalize_year("14"));
  EXPECT_FALSE(normalize_year(""));
  EXPECT_FALSE(normalize_year(std::int64_t{-3}));
}

TEST(NormalizeDoi, StripsResolverAndFolds) {
  EXPECT_EQ(normalize_doi("https://doi.org/10.1016/J.FUTURE.2015.01.004"), "10.1016/j.future.2015.01.004");
  EXPECT_EQ(normalize_doi("doi:10.1145/ABC"), "10.1145/abc");
  EXPECT_EQ(normalize_doi("10.1/x"), "10.1/x");
  EXPECT_FALSE(normalize_doi("https://example.org/paper.pdf"));
  EXPECT_FALSE(normalize_doi(""));
}

TEST(Utf8, InvalidBytesAreNotWordCharacters) {
  const std::string s = "ab\xFF" "cd";
  EXPECT_EQ(normalize_title(s), "abcd");
}

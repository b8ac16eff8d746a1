#include <gtest/gtest.h>

#include <sstream>

#include "bibcorpus/venues.hpp"

using namespace bibcorpus;

namespace {

VenueTable table(const std::string& text) {
  std::istringstream in(text);
  return parse_venue_table(in);
}

}  // namespace

TEST(VenueTable, ExactMatchIsCaseAndSpaceInsensitive) {
  const auto t = table("exact\tFuture Gener. Comput. Syst.\tFGCS\n");
  EXPECT_EQ(map_venue("future  gener. comput. syst. ", t), "FGCS");
  EXPECT_EQ(map_venue("FUTURE GENER. COMPUT. SYST.", t), "FGCS");
  EXPECT_FALSE(map_venue("Future Generation", t));
}

TEST(VenueTable, PatternsAfterExactInFileOrder) {
  const auto t = table(
      "# comment\n"
      "pattern\tcluster\tCLUSTER\n"
      "exact\tccgrid\tCCGRID\n"
      "pattern\tcluster, cloud\tCCGRID\n");
  EXPECT_EQ(map_venue("CCGrid", t), "CCGRID");
  EXPECT_EQ(map_venue("Symposium on Cluster, Cloud and Grid", t), "CLUSTER");
}

TEST(VenueTable, UnmatchedOrEmptyGivesNothing) {
  const auto t = table("exact\tipdps\tIPDPS\n");
  EXPECT_FALSE(map_venue("", t));
  EXPECT_FALSE(map_venue("Nature", t));
  EXPECT_FALSE(map_venue("IPDPS", VenueTable{}));
}

TEST(VenueTable, ConflictingExactRulesNameBothLines) {
  try {
    table("exact\tx\tA\n\nexact\tX\tB\n");
    FAIL();
  } catch (const VenueTableError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("line 1"), std::string::npos);
    EXPECT_NE(msg.find("line 3"), std::string::npos);
  }
}

TEST(VenueTable, MalformedLines) {
  EXPECT_THROW(table("exact\tonly-two\n"), VenueTableError);
  EXPECT_THROW(table("fuzzy\ta\tB\n"), VenueTableError);
  EXPECT_THROW(table("pattern\t([\tB\n"), VenueTableError);
}

TEST(VenueTable, SerializeRoundTrip) {
  const auto t = table("exact\tipdps\tIPDPS\npattern\t^international parallel\tIPDPS\n");
  const auto again = table(serialize_venue_table(t));
  EXPECT_EQ(again, t);
  EXPECT_EQ(map_venue("International Parallel and Distributed Processing Symposium", again), "IPDPS");
}

TEST(VenueTable, ShippedRulesCoverCommonSpellings) {
  const auto t = load_venue_table(std::string(BIBCORPUS_DATA_DIR) + "/venues.tsv");
  EXPECT_EQ(map_venue("Future Generation Computer Systems", t), "FGCS");
  EXPECT_EQ(map_venue("Future Gener. Comput. Syst.", t), "FGCS");
  EXPECT_EQ(map_venue("2015 15th IEEE/ACM International Symposium on Cluster, Cloud and Grid Computing", t),
            "CCGRID");
  EXPECT_EQ(map_venue("IEEE Transactions on Parallel and Distributed Systems", t), "TPDS");
  EXPECT_EQ(map_venue("ICPE", t), "ICPE");
  EXPECT_FALSE(map_venue("Journal of Irreproducible Results", t));
}

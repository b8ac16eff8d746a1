#pragma once

#include <istream>
#include <ostream>

#include "json.hpp"

#include "bibcorpus/ingest.hpp"
#include "bibcorpus/record.hpp"
#include "bibcorpus/store.hpp"
#include "bibcorpus/venues.hpp"

namespace bibcorpus {

struct IngestOptions {
  const FieldMap* field_map = nullptr;  // defaults per source when null
  SourceAOptions source_a;
  std::ostream* conflicts = nullptr;  // JSON-lines conflict report
};

/// Counts for one ingested dump. `accepted` counts records whose venue was
/// recognized (before de-duplication); `inserted` counts new rows.
struct IngestSummary {
  Source source = Source::SourceA_xml;
  ParseReport report;
  std::size_t accepted = 0;
  std::size_t inserted = 0;
  std::size_t merged = 0;
  std::size_t dropped_no_venue = 0;
  std::size_t rejected = 0;

  nlohmann::json to_json() const {
    return {{"source", to_string(source)},
            {"records_emitted", report.records_emitted},
            {"records_skipped", report.records_skipped},
            {"accepted", accepted},
            {"inserted", inserted},
            {"merged", merged},
            {"dropped_no_venue", dropped_no_venue},
            {"rejected", rejected}};
  }
};

inline nlohmann::json conflict_json(const RawRecord& r, std::string_view venue, const UpsertResult& u) {
  nlohmann::json j{{"source", to_string(r.source)}, {"title", r.raw_title}, {"venue", venue},
                   {"reason", u.conflict}};
  j["year"] = r.year ? nlohmann::json(*r.year) : nlohmann::json(nullptr);
  j["doi"] = r.doi ? nlohmann::json(*r.doi) : nlohmann::json(nullptr);
  j["matched_publication"] =
      u.match.matched() ? nlohmann::json(u.match.publication_id) : nlohmann::json(nullptr);
  return j;
}

/// Parses one dump and upserts every record whose venue maps through
/// `venues`. The whole dump is applied in a single transaction: a
/// container-level ParseError leaves the store untouched.
inline IngestSummary ingest_stream(Store& store, Source source, std::istream& in, const VenueTable& venues,
                                   const IngestOptions& options = {}) {
  IngestSummary summary;
  summary.source = source;
  auto tx = store.begin();
  auto sink = [&](RawRecord&& rec) {
    const auto venue = rec.raw_venue ? map_venue(*rec.raw_venue, venues) : std::nullopt;
    if (!venue) {
      ++summary.dropped_no_venue;
      return;
    }
    ++summary.accepted;
    const auto result = store.upsert_record(rec, *venue);
    switch (result.outcome) {
      case UpsertResult::Outcome::Inserted: ++summary.inserted; break;
      case UpsertResult::Outcome::Merged: ++summary.merged; break;
      case UpsertResult::Outcome::Rejected:
        ++summary.rejected;
        if (options.conflicts) *options.conflicts << conflict_json(rec, *venue, result).dump() << '\n';
        break;
    }
  };
  summary.report = parse_source(source, in, sink, options.field_map, options.source_a);
  tx.commit();
  return summary;
}

}  // namespace bibcorpus

#pragma once

// Streaming parsers for the three dump formats. Each parser pushes RawRecord
// values into a caller-supplied sink as soon as an entry is complete, so
// memory stays bounded by the largest single entry.

#include <array>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <expat.h>

#include "json.hpp"

#include "bibcorpus/record.hpp"
#include "bibcorpus/text.hpp"

namespace bibcorpus {

// ---------------------------------------------------------------------------
// Field maps for the JSON-lines sources
// ---------------------------------------------------------------------------

struct PathSegment {
  enum class Mode { Key, Each, Length };
  std::string key;
  Mode mode = Mode::Key;

  friend bool operator==(const PathSegment&, const PathSegment&) = default;
};

/// A dotted lookup path such as `venue.name`, `authors[].name` or
/// `inCitations[#]`. The `@inverted` suffix marks a word -> positions
/// inverted index that is rebuilt into plain text.
struct FieldPath {
  std::vector<PathSegment> segments;
  bool inverted = false;

  friend bool operator==(const FieldPath&, const FieldPath&) = default;
};

inline FieldPath parse_field_path(std::string_view text) {
  FieldPath path;
  auto s = trim(text);
  if (const auto at = s.find('@'); at != std::string_view::npos) {
    if (s.substr(at) != "@inverted") {
      throw std::invalid_argument("unknown path modifier '" + std::string(s.substr(at)) + "'");
    }
    path.inverted = true;
    s = s.substr(0, at);
  }
  if (s.empty()) throw std::invalid_argument("empty field path");
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto dot = s.find('.', start);
    auto part = s.substr(start, dot == std::string_view::npos ? std::string_view::npos : dot - start);
    PathSegment seg;
    if (part.size() > 2 && part.substr(part.size() - 2) == "[]") {
      seg.mode = PathSegment::Mode::Each;
      part.remove_suffix(2);
    } else if (part.size() > 3 && part.substr(part.size() - 3) == "[#]") {
      seg.mode = PathSegment::Mode::Length;
      part.remove_suffix(3);
    }
    if (part.empty() || part.find_first_of("[]#@ ") != std::string_view::npos) {
      throw std::invalid_argument("malformed path segment in '" + std::string(text) + "'");
    }
    seg.key = std::string(part);
    if (!path.segments.empty() && path.segments.back().mode == PathSegment::Mode::Length) {
      throw std::invalid_argument("'[#]' must be the last segment in '" + std::string(text) + "'");
    }
    path.segments.push_back(std::move(seg));
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return path;
}

inline std::string to_string(const FieldPath& p) {
  std::string out;
  for (const auto& seg : p.segments) {
    if (!out.empty()) out += '.';
    out += seg.key;
    if (seg.mode == PathSegment::Mode::Each) out += "[]";
    if (seg.mode == PathSegment::Mode::Length) out += "[#]";
  }
  if (p.inverted) out += "@inverted";
  return out;
}

/// Ordered candidate paths for each RawRecord field; the first candidate
/// that yields a usable value wins.
struct FieldMap {
  static constexpr std::array<std::string_view, 9> kFields{
      "title", "abstract", "raw_venue", "year", "volume",
      "doi", "author_names", "author_keys", "n_citations"};

  int version = 1;
  std::map<std::string, std::vector<FieldPath>, std::less<>> fields;

  const std::vector<FieldPath>& candidates(std::string_view field) const {
    static const std::vector<FieldPath> kEmpty;
    const auto it = fields.find(field);
    return it == fields.end() ? kEmpty : it->second;
  }

  friend bool operator==(const FieldMap&, const FieldMap&) = default;
};

class FieldMapError : public std::runtime_error {
 public:
  FieldMapError(const std::string& what, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Reads `key = path | path ...` lines; `#` starts a comment.
inline FieldMap parse_field_map(std::istream& in) {
  FieldMap map;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto s = trim(line);
    if (s.empty() || s[0] == '#') continue;
    const auto eq = s.find('=');
    if (eq == std::string_view::npos) throw FieldMapError("expected 'key = value'", lineno);
    const auto key = std::string(trim(s.substr(0, eq)));
    const auto value = trim(s.substr(eq + 1));
    if (key == "version") {
      try {
        map.version = std::stoi(std::string(value));
      } catch (const std::exception&) {
        throw FieldMapError("version must be an integer", lineno);
      }
      continue;
    }
    if (std::find(FieldMap::kFields.begin(), FieldMap::kFields.end(), key) == FieldMap::kFields.end()) {
      throw FieldMapError("unknown field '" + key + "'", lineno);
    }
    std::vector<FieldPath> paths;
    std::size_t start = 0;
    while (true) {
      const auto bar = value.find('|', start);
      const auto part = value.substr(start, bar == std::string_view::npos ? std::string_view::npos : bar - start);
      try {
        paths.push_back(parse_field_path(part));
      } catch (const std::invalid_argument& e) {
        throw FieldMapError(e.what(), lineno);
      }
      if (bar == std::string_view::npos) break;
      start = bar + 1;
    }
    map.fields[key] = std::move(paths);
  }
  if (map.candidates("title").empty()) throw FieldMapError("field map has no 'title' entry", lineno);
  return map;
}

inline FieldMap load_field_map(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open field map " + path);
  return parse_field_map(in);
}

inline std::string serialize_field_map(const FieldMap& map) {
  std::string out = "version = " + std::to_string(map.version) + "\n";
  for (const auto field : FieldMap::kFields) {
    const auto& c = map.candidates(field);
    if (c.empty()) continue;
    out += std::string(field) + " =";
    for (std::size_t i = 0; i < c.size(); ++i) out += (i ? " | " : " ") + to_string(c[i]);
    out += '\n';
  }
  return out;
}

// The shipped defaults; fieldmap/*.map in the repository hold the same text.
inline const FieldMap& default_field_map(Source source) {
  static const FieldMap kSourceB = [] {
    std::istringstream in(
        "version = 1\n"
        "title = title\n"
        "abstract = paperAbstract | abstract\n"
        "raw_venue = venue | journalName | venue.name\n"
        "year = year\n"
        "volume = journalVolume | volume\n"
        "doi = doi | doiUrl\n"
        "author_names = authors[].name | authors[]\n"
        "n_citations = nCitations | numCitedBy | inCitations[#]\n");
    return parse_field_map(in);
  }();
  static const FieldMap kSourceC = [] {
    std::istringstream in(
        "version = 1\n"
        "title = title\n"
        "abstract = abstract | indexed_abstract@inverted\n"
        "raw_venue = venue.name | venue.raw | venue\n"
        "year = year\n"
        "volume = volume\n"
        "doi = doi\n"
        "author_names = authors[].name\n"
        "n_citations = n_citation | n_citations\n");
    return parse_field_map(in);
  }();
  if (source == Source::SourceC_jsonl) return kSourceC;
  return kSourceB;
}

namespace detail {

using json = nlohmann::json;

inline void resolve(const json& node, const std::vector<PathSegment>& segs, std::size_t idx,
                    std::vector<const json*>& out, std::optional<std::size_t>& length) {
  if (idx == segs.size()) {
    out.push_back(&node);
    return;
  }
  if (!node.is_object()) return;
  const auto& seg = segs[idx];
  const auto it = node.find(seg.key);
  if (it == node.end() || it->is_null()) return;
  switch (seg.mode) {
    case PathSegment::Mode::Key:
      resolve(*it, segs, idx + 1, out, length);
      break;
    case PathSegment::Mode::Each:
      if (!it->is_array()) return;
      for (const auto& elem : *it) resolve(elem, segs, idx + 1, out, length);
      break;
    case PathSegment::Mode::Length:
      if (it->is_array()) length = it->size();
      break;
  }
}

// Rebuilds text from {"IndexLength": n, "InvertedIndex": {"word": [pos...]}}.
inline std::optional<std::string> rebuild_inverted(const json& value) {
  const json* idx = &value;
  json parsed;
  if (value.is_string()) {
    parsed = json::parse(value.get_ref<const std::string&>(), nullptr, false);
    if (parsed.is_discarded()) return std::nullopt;
    idx = &parsed;
  }
  if (!idx->is_object()) return std::nullopt;
  const auto inv = idx->find("InvertedIndex");
  if (inv == idx->end() || !inv->is_object()) return std::nullopt;
  std::map<std::int64_t, std::string> words;
  for (const auto& [word, positions] : inv->items()) {
    if (!positions.is_array()) continue;
    for (const auto& p : positions) {
      if (p.is_number_integer() && p.get<std::int64_t>() >= 0) words[p.get<std::int64_t>()] = word;
    }
  }
  if (words.empty()) return std::nullopt;
  std::string out;
  for (const auto& [pos, w] : words) {
    if (!out.empty()) out += ' ';
    out += w;
  }
  return out;
}

inline std::optional<std::string> clean_text(std::string_view raw,
                                             std::vector<std::string>* undecodable) {
  auto text = collapse_whitespace(decode_text(trim(raw), undecodable));
  if (text.empty()) return std::nullopt;
  return text;
}

}  // namespace detail

/// Extracts one RawRecord from a parsed JSON object using `map`. Returns
/// nullopt (with an issue logged) when no title can be found.
inline std::optional<RawRecord> extract_record(const nlohmann::json& obj, Source source,
                                               const FieldMap& map, const std::string& locator,
                                               ParseReport& report) {
  using json = nlohmann::json;
  std::vector<std::string> undecodable;
  RawRecord rec;
  rec.source = source;

  auto text_field = [&](std::string_view field, bool numbers_ok) -> std::optional<std::string> {
    for (const auto& path : map.candidates(field)) {
      std::vector<const json*> values;
      std::optional<std::size_t> length;
      detail::resolve(obj, path.segments, 0, values, length);
      for (const auto* v : values) {
        if (path.inverted) {
          if (auto rebuilt = detail::rebuild_inverted(*v)) {
            if (auto t = detail::clean_text(*rebuilt, &undecodable)) return t;
          }
          continue;
        }
        if (v->is_string()) {
          if (auto t = detail::clean_text(v->get_ref<const std::string&>(), &undecodable)) return t;
        } else if (numbers_ok && v->is_number_integer()) {
          return std::to_string(v->get<std::int64_t>());
        }
      }
    }
    return std::nullopt;
  };

  auto title = text_field("title", false);
  if (!title) {
    report.add_issue(locator, IssueKind::MissingTitle, "entry has no title");
    return std::nullopt;
  }
  rec.raw_title = std::move(*title);
  rec.abstract = text_field("abstract", false);
  rec.raw_venue = text_field("raw_venue", false);
  rec.volume = text_field("volume", true);
  if (auto doi = text_field("doi", false)) rec.doi = normalize_doi(*doi);

  for (const auto& path : map.candidates("year")) {
    std::vector<const json*> values;
    std::optional<std::size_t> length;
    detail::resolve(obj, path.segments, 0, values, length);
    if (values.empty()) continue;
    const auto* v = values.front();
    if (v->is_number_integer()) {
      rec.year = normalize_year(v->get<std::int64_t>());
    } else if (v->is_string()) {
      rec.year = normalize_year(v->get_ref<const std::string&>());
    } else {
      continue;
    }
    if (!rec.year) report.add_issue(locator, IssueKind::InvalidYear, "unusable year " + v->dump());
    break;
  }

  for (const auto& path : map.candidates("n_citations")) {
    std::vector<const json*> values;
    std::optional<std::size_t> length;
    detail::resolve(obj, path.segments, 0, values, length);
    std::optional<std::int64_t> n;
    bool present = false;
    if (length) {
      n = static_cast<std::int64_t>(*length);
      present = true;
    } else if (!values.empty()) {
      const auto* v = values.front();
      present = true;
      if (v->is_number_integer()) {
        n = v->get<std::int64_t>();
      } else if (v->is_number_float() && v->get<double>() == std::floor(v->get<double>())) {
        n = static_cast<std::int64_t>(v->get<double>());
      } else if (v->is_string()) {
        const auto& s = v->get_ref<const std::string&>();
        std::int64_t parsed = 0;
        const auto t = trim(s);
        const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), parsed);
        if (ec == std::errc{} && ptr == t.data() + t.size()) n = parsed;
      }
    }
    if (!present) continue;
    if (n && *n >= 0) {
      rec.n_citations = n;
    } else {
      report.add_issue(locator, IssueKind::InvalidCitationCount,
                       "unusable citation count" + (n ? " " + std::to_string(*n) : std::string()));
    }
    break;
  }

  auto list_field = [&](std::string_view field) {
    std::vector<std::string> out;
    for (const auto& path : map.candidates(field)) {
      std::vector<const json*> values;
      std::optional<std::size_t> length;
      detail::resolve(obj, path.segments, 0, values, length);
      for (const auto* v : values) {
        if (v->is_string()) {
          if (auto t = detail::clean_text(v->get_ref<const std::string&>(), &undecodable)) {
            out.push_back(std::move(*t));
          }
        } else if (v->is_number_integer()) {
          out.push_back(std::to_string(v->get<std::int64_t>()));
        }
      }
      if (!out.empty()) break;
    }
    return out;
  };
  rec.author_names = list_field("author_names");
  rec.author_keys = list_field("author_keys");

  if (!undecodable.empty()) {
    report.add_issue(locator, IssueKind::UndecodableEscape, "left verbatim: " + undecodable.front());
  }
  return rec;
}

/// Newline-delimited JSON. Malformed lines are skipped and reported; the
/// stream is never aborted for a per-line problem.
template <class Sink>
ParseReport parse_json_lines(std::istream& in, Source source, const FieldMap& map, Sink&& sink) {
  ParseReport report;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto locator = "line " + std::to_string(lineno);
    auto obj = nlohmann::json::parse(line, nullptr, false);
    if (obj.is_discarded() || !obj.is_object()) {
      ++report.records_skipped;
      report.add_issue(locator, IssueKind::MalformedEntry,
                       obj.is_discarded() ? "not valid JSON" : "not a JSON object");
      continue;
    }
    auto rec = extract_record(obj, source, map, locator, report);
    if (!rec) {
      ++report.records_skipped;
      continue;
    }
    ++report.records_emitted;
    sink(std::move(*rec));
  }
  if (in.bad()) throw ParseError("read error", lineno, 0);
  return report;
}

template <class Sink>
ParseReport parse_source_b(std::istream& in, Sink&& sink,
                           const FieldMap& map = default_field_map(Source::SourceB_jsonl)) {
  return parse_json_lines(in, Source::SourceB_jsonl, map, std::forward<Sink>(sink));
}

template <class Sink>
ParseReport parse_source_c(std::istream& in, Sink&& sink,
                           const FieldMap& map = default_field_map(Source::SourceC_jsonl)) {
  return parse_json_lines(in, Source::SourceC_jsonl, map, std::forward<Sink>(sink));
}

// ---------------------------------------------------------------------------
// Source A: XML dump
// ---------------------------------------------------------------------------

struct SourceAOptions {
  std::set<std::string, std::less<>> kinds{"article", "inproceedings", "proceedings", "incollection"};
};

namespace detail {

inline const std::set<std::string_view>& known_source_a_fields() {
  static const std::set<std::string_view> kFields{
      "author", "editor", "title", "booktitle", "pages", "year", "address",
      "journal", "volume", "number", "month", "url", "ee", "cdrom", "cite",
      "publisher", "note", "crossref", "isbn", "series", "school", "chapter",
      "publnr", "stream", "rel"};
  return kFields;
}

template <class Sink>
class SourceAParser {
 public:
  SourceAParser(Sink& sink, const SourceAOptions& options) : sink_(sink), options_(options) {
    parser_ = XML_ParserCreate(nullptr);
    if (!parser_) throw std::bad_alloc();
    XML_SetUserData(parser_, this);
    XML_SetElementHandler(parser_, &SourceAParser::on_start, &SourceAParser::on_end);
    XML_SetCharacterDataHandler(parser_, &SourceAParser::on_text);
    XML_SetSkippedEntityHandler(parser_, &SourceAParser::on_skipped_entity);
  }
  ~SourceAParser() { XML_ParserFree(parser_); }
  SourceAParser(const SourceAParser&) = delete;
  SourceAParser& operator=(const SourceAParser&) = delete;

  ParseReport run(std::istream& in) {
    std::array<char, 1 << 16> buf{};
    while (true) {
      in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
      const auto n = in.gcount();
      if (in.bad()) throw ParseError("read error", XML_GetCurrentLineNumber(parser_), 0);
      const bool last = n < static_cast<std::streamsize>(buf.size());
      if (XML_Parse(parser_, buf.data(), static_cast<int>(n), last) == XML_STATUS_ERROR) {
        throw ParseError(std::string("XML error: ") + XML_ErrorString(XML_GetErrorCode(parser_)),
                         XML_GetCurrentLineNumber(parser_), XML_GetCurrentColumnNumber(parser_) + 1);
      }
      if (last) break;
    }
    return std::move(report_);
  }

 private:
  static void on_start(void* ud, const XML_Char* name, const XML_Char** attrs) {
    static_cast<SourceAParser*>(ud)->start(name, attrs);
  }
  static void on_end(void* ud, const XML_Char* name) { static_cast<SourceAParser*>(ud)->end(name); }
  static void on_text(void* ud, const XML_Char* s, int len) {
    auto* self = static_cast<SourceAParser*>(ud);
    if (self->field_depth_ > 0) self->text_.append(s, static_cast<std::size_t>(len));
  }
  static void on_skipped_entity(void* ud, const XML_Char* name, int is_parameter) {
    auto* self = static_cast<SourceAParser*>(ud);
    if (is_parameter || self->field_depth_ == 0) return;
    if (const auto cp = lookup_entity(name)) {
      utf8::append(self->text_, *cp);
    } else {
      self->text_ += std::string("&") + name + ";";
      self->undecodable_.push_back(std::string("&") + name + ";");
    }
  }

  void start(const XML_Char* name, const XML_Char** attrs) {
    ++depth_;
    if (depth_ == 2 && options_.kinds.count(std::string_view(name))) {
      in_entry_ = true;
      record_ = RawRecord{};
      record_.source = Source::SourceA_xml;
      locator_ = "line " + std::to_string(XML_GetCurrentLineNumber(parser_));
      for (auto a = attrs; *a; a += 2) {
        if (std::string_view(a[0]) == "key") locator_ += " key=" + std::string(a[1]);
      }
      saw_year_ = false;
      undecodable_.clear();
      return;
    }
    if (!in_entry_) return;
    if (depth_ == 3) {
      field_ = name;
      field_depth_ = 1;
      text_.clear();
      author_key_.reset();
      if (field_ == "author") {
        for (auto a = attrs; *a; a += 2) {
          if (std::string_view(a[0]) == "key") author_key_ = a[1];
        }
      }
      if (!known_source_a_fields().count(field_)) {
        report_.add_issue(locator_, IssueKind::UnknownElement, "unknown element <" + field_ + ">");
      }
    } else if (field_depth_ > 0) {
      ++field_depth_;
    }
  }

  void end(const XML_Char* /*name*/) {
    if (in_entry_ && depth_ == 3) finish_field();
    if (in_entry_ && depth_ > 3 && field_depth_ > 0) --field_depth_;
    if (in_entry_ && depth_ == 2) finish_entry();
    --depth_;
  }

  void finish_field() {
    field_depth_ = 0;
    auto value = clean_text(text_, &undecodable_);
    if (field_ == "title") {
      if (value) record_.raw_title = std::move(*value);
    } else if (field_ == "author") {
      if (value) {
        record_.author_keys.push_back(author_key_ ? *author_key_ : *value);
        record_.author_names.push_back(std::move(*value));
      }
    } else if (field_ == "year") {
      saw_year_ = true;
      if (value) record_.year = normalize_year(*value);
      if (!record_.year) {
        report_.add_issue(locator_, IssueKind::InvalidYear, "unusable year '" + value.value_or("") + "'");
      }
    } else if (field_ == "volume") {
      record_.volume = std::move(value);
    } else if (field_ == "ee") {
      if (value && !record_.doi) record_.doi = normalize_doi(*value);
    } else if (field_ == "booktitle" || field_ == "journal") {
      if (value && !record_.raw_venue) record_.raw_venue = std::move(value);
    }
  }

  void finish_entry() {
    in_entry_ = false;
    if (!undecodable_.empty()) {
      report_.add_issue(locator_, IssueKind::UndecodableEscape, "left verbatim: " + undecodable_.front());
    }
    if (trim(record_.raw_title).empty()) {
      ++report_.records_skipped;
      report_.add_issue(locator_, IssueKind::MissingTitle, "entry has no title");
      return;
    }
    if (!saw_year_) report_.add_issue(locator_, IssueKind::MissingField, "entry has no year");
    ++report_.records_emitted;
    sink_(std::move(record_));
  }

  Sink& sink_;
  const SourceAOptions& options_;
  XML_Parser parser_ = nullptr;
  ParseReport report_;
  int depth_ = 0;
  bool in_entry_ = false;
  int field_depth_ = 0;
  std::string field_;
  std::string text_;
  std::optional<std::string> author_key_;
  RawRecord record_;
  std::string locator_;
  bool saw_year_ = false;
  std::vector<std::string> undecodable_;
};

}  // namespace detail

/// XML dump with publication elements directly under the root element.
/// Undeclared entities from an external DTD are resolved against the HTML
/// entity table. Throws ParseError on structural XML errors.
template <class Sink>
ParseReport parse_source_a(std::istream& in, Sink&& sink, const SourceAOptions& options = {}) {
  detail::SourceAParser<std::remove_reference_t<Sink>> parser(sink, options);
  return parser.run(in);
}

/// Dispatches on `source`; `map` is ignored for the XML source.
template <class Sink>
ParseReport parse_source(Source source, std::istream& in, Sink&& sink, const FieldMap* map = nullptr,
                         const SourceAOptions& options = {}) {
  switch (source) {
    case Source::SourceA_xml:
      return parse_source_a(in, std::forward<Sink>(sink), options);
    case Source::SourceB_jsonl:
    case Source::SourceC_jsonl:
      return parse_json_lines(in, source, map ? *map : default_field_map(source), std::forward<Sink>(sink));
  }
  return {};
}

}  // namespace bibcorpus

// bibcorpus: ingest bibliographic dumps into one store and run the keyword,
// trend and community analyses over named or ad-hoc article selections.
//
// Exit codes:
//   0  success
//   1  I/O or internal error
//   2  a dump could not be parsed (the store is left unchanged)
//   3  the selection matched no publications (outputs are still written)
//   4  usage or configuration error (bad flag, unknown query, bad rule file)
//   5  clique enumeration exceeded --clique-limit

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "bibcorpus/bibcorpus.hpp"

#ifndef BIBCORPUS_DATA_DIR
#define BIBCORPUS_DATA_DIR "data"
#endif

namespace fs = std::filesystem;
using namespace bibcorpus;
using nlohmann::json;

namespace {

enum Exit : int { kOk = 0, kFailure = 1, kParseFailure = 2, kEmpty = 3, kUsage = 4, kCliqueLimit = 5 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Selection {
  std::string query;
  std::string filter;
  std::string raw_sql;
  int from_year = 0;
  int to_year = 0;
  CLI::Option* from_opt = nullptr;
  CLI::Option* to_opt = nullptr;

  std::optional<int> from() const { return from_opt && from_opt->count() ? std::optional(from_year) : std::nullopt; }
  std::optional<int> to() const { return to_opt && to_opt->count() ? std::optional(to_year) : std::nullopt; }
};

struct Output {
  std::string format = "csv";
  std::string out;
};

struct TextOptions {
  std::string stopwords;
  std::string custom_stopwords;
  std::string suppress = std::string(BIBCORPUS_DATA_DIR) + "/suppress.txt";
  std::size_t top = 10;
  std::size_t kper_doc = 50;
  double max_df = 0.9;
};

struct Resolved {
  std::vector<Publication> pubs;
  Filter filter;  // year bounds are read from here
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const Output& o, const std::string& text) {
  if (o.out.empty() || o.out == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + o.out);
  f << text;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
}

Store open_read_only(const std::string& db) {
  if (!fs::exists(db)) throw UsageError("store '" + db + "' does not exist; run 'ingest' first");
  return Store(db, Store::Mode::ReadOnly);
}

std::string raw_sql_text(const std::string& arg) {
  if (const auto* q = find_canned_query(arg)) return std::string(q->sql);
  return arg;
}

Resolved resolve(const Store& store, const Selection& sel) {
  const int given = !sel.query.empty() + !sel.filter.empty() + !sel.raw_sql.empty();
  if (given != 1) throw UsageError("give exactly one of --query, --filter or --raw-sql");
  Resolved r;
  if (!sel.raw_sql.empty()) {
    r.pubs = store.raw_query_publications(raw_sql_text(sel.raw_sql));
    if (const auto* q = find_canned_query(sel.raw_sql)) r.filter = q->query().filter;
    if (sel.from() || sel.to()) {
      const auto range = Filter::years(sel.from(), sel.to());
      std::erase_if(r.pubs, [&](const Publication& p) { return !matches(range, p); });
      r.filter = Filter::all_of({r.filter, range});
    }
    return r;
  }
  Query q;
  try {
    if (!sel.filter.empty()) {
      q = parse_query(sel.filter);
    } else if (const auto* canned = find_canned_query(sel.query)) {
      q = canned->query();
    } else if (fs::is_regular_file(sel.query)) {
      q = parse_query(read_file(sel.query));
    } else {
      throw UsageError("unknown query '" + sel.query + "' (expected Q1..Q9 or a filter file)");
    }
  } catch (const FilterParseError& e) {
    throw UsageError(std::string("invalid filter ") + e.what());
  }
  if (sel.from() || sel.to()) q.filter = Filter::all_of({q.filter, Filter::years(sel.from(), sel.to())});
  r.pubs = store.query(q);
  r.filter = q.filter;
  return r;
}

Preprocessor make_preprocessor(const TextOptions& t) {
  std::vector<std::string> words;
  if (t.stopwords.empty()) {
    for (const auto w : english_stopwords()) words.emplace_back(w);
  } else {
    words = load_word_list(t.stopwords);
  }
  if (t.custom_stopwords.empty()) {
    for (const auto w : custom_stopwords()) words.emplace_back(w);
  } else {
    const auto extra = load_word_list(t.custom_stopwords);
    words.insert(words.end(), extra.begin(), extra.end());
  }
  return Preprocessor(std::move(words));
}

KeywordOptions keyword_options(const TextOptions& t) {
  if (!(t.max_df > 0.0 && t.max_df <= 1.0)) throw UsageError("--max-df must be in (0, 1]");
  if (t.top < 1) throw UsageError("--top must be at least 1");
  if (t.kper_doc < 1) throw UsageError("--kper-doc must be at least 1");
  KeywordOptions opt;
  opt.top_n = t.top;
  opt.k_per_doc = t.kper_doc;
  opt.max_df = t.max_df;
  if (!t.suppress.empty() && fs::exists(t.suppress)) {
    for (auto& w : load_word_list(t.suppress)) opt.suppress.insert(std::move(w));
  }
  return opt;
}

void check_format(const Output& o) {
  if (o.format != "csv" && o.format != "json") throw UsageError("--format must be csv or json");
}

YearSpan span_for(const Resolved& r, const Selection& sel) {
  auto [lo, hi] = year_bounds(r.filter);
  if (sel.from()) lo = sel.from();
  if (sel.to()) hi = sel.to();
  std::optional<int> first, last;
  for (const auto& p : r.pubs) {
    if (!p.year) continue;
    first = first ? std::min(*first, *p.year) : *p.year;
    last = last ? std::max(*last, *p.year) : *p.year;
  }
  if (!lo) lo = first;
  if (!hi) hi = last;
  if (!lo || !hi) throw UsageError("cannot determine a year span; pass --from-year and --to-year");
  if (*hi < *lo) throw UsageError("year span is empty");
  return {*lo, *hi};
}

std::string publications_csv(const std::vector<Publication>& pubs) {
  std::string out = "id,title,venue,year,n_citations\n";
  for (const auto& p : pubs) {
    out += std::to_string(p.id) + "," + csv_field(p.title) + "," + csv_field(p.venue) + "," +
           (p.year ? std::to_string(*p.year) : "") + "," + (p.n_citations ? std::to_string(*p.n_citations) : "") +
           "\n";
  }
  return out;
}

json publications_json(const std::vector<Publication>& pubs) {
  auto arr = json::array();
  for (const auto& p : pubs) {
    json j{{"id", p.id}, {"title", p.title}, {"venue", p.venue}};
    j["year"] = p.year ? json(*p.year) : json(nullptr);
    j["n_citations"] = p.n_citations ? json(*p.n_citations) : json(nullptr);
    j["doi"] = p.doi ? json(*p.doi) : json(nullptr);
    arr.push_back(std::move(j));
  }
  return arr;
}

// ---------------------------------------------------------------------------

struct IngestArgs {
  std::string db = "bibcorpus.db";
  std::string source;
  std::string input;
  std::string venues = std::string(BIBCORPUS_DATA_DIR) + "/venues.tsv";
  std::string fieldmap;
  std::string report;
  std::string conflicts;
  std::vector<std::string> kinds;
  std::string format = "text";
};

int cmd_ingest(const IngestArgs& a) {
  const auto source = parse_source(a.source);
  if (!source) throw UsageError("unknown source '" + a.source + "' (expected a, b or c)");
  if (a.format != "text" && a.format != "json") throw UsageError("--format must be text or json");
  VenueTable venues;
  std::optional<FieldMap> map;
  try {
    venues = load_venue_table(a.venues);
    if (!a.fieldmap.empty()) map = load_field_map(a.fieldmap);
  } catch (const VenueTableError& e) {
    throw UsageError(e.what());
  } catch (const FieldMapError& e) {
    throw UsageError(std::string("field map ") + e.what());
  }
  IngestOptions options;
  if (map) options.field_map = &*map;
  if (!a.kinds.empty()) options.source_a.kinds = {a.kinds.begin(), a.kinds.end()};
  std::ofstream conflicts;
  if (!a.conflicts.empty()) {
    conflicts.open(a.conflicts, std::ios::binary);
    if (!conflicts) throw std::runtime_error("cannot write " + a.conflicts);
    options.conflicts = &conflicts;
  }
  std::ifstream file;
  std::istream* in = &std::cin;
  if (a.input != "-") {
    file.open(a.input, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open " + a.input);
    in = &file;
  }
  Store store(a.db);
  IngestSummary summary;
  try {
    summary = ingest_stream(store, *source, *in, venues, options);
  } catch (const ParseError& e) {
    std::cerr << "bibcorpus: " << a.input << ": " << e.what() << " (nothing was stored)\n";
    return kParseFailure;
  }
  if (!a.report.empty()) {
    auto j = summary.to_json();
    j["parse_report"] = summary.report.to_json();
    write_file(a.report, j.dump(2) + "\n");
  }
  if (a.format == "json") {
    std::cout << summary.to_json().dump(2) << "\n";
  } else {
    std::cout << "source " << to_string(summary.source) << "\n"
              << "records " << summary.report.records_emitted << "\n"
              << "skipped " << summary.report.records_skipped << "\n"
              << "inserted " << summary.inserted << "\n"
              << "merged " << summary.merged << "\n"
              << "dropped_no_venue " << summary.dropped_no_venue << "\n"
              << "rejected " << summary.rejected << "\n";
  }
  return kOk;
}

int cmd_query(const std::string& db, const Selection& sel, const Output& out, int limit, CLI::Option* limit_opt) {
  check_format(out);
  const auto store = open_read_only(db);
  if (!sel.raw_sql.empty() && sel.query.empty() && sel.filter.empty() && !sel.from() && !sel.to() &&
      !find_canned_query(sel.raw_sql)) {
    // Arbitrary read-only SQL: print whatever it returns.
    const auto res = store.raw_sql(sel.raw_sql);
    if (out.format == "json") {
      auto rows = json::array();
      for (const auto& row : res.rows) {
        json obj = json::object();
        for (std::size_t c = 0; c < res.columns.size(); ++c) {
          obj[res.columns[c]] = row[c] ? json(*row[c]) : json(nullptr);
        }
        rows.push_back(std::move(obj));
      }
      write_output(out, rows.dump(2) + "\n");
    } else {
      std::string text;
      for (std::size_t c = 0; c < res.columns.size(); ++c) text += (c ? "," : "") + csv_field(res.columns[c]);
      text += "\n";
      for (const auto& row : res.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) text += (c ? "," : "") + csv_field(row[c].value_or(""));
        text += "\n";
      }
      write_output(out, text);
    }
    return res.rows.empty() ? kEmpty : kOk;
  }
  auto r = resolve(store, sel);
  if (limit_opt->count() && r.pubs.size() > static_cast<std::size_t>(limit)) r.pubs.resize(static_cast<std::size_t>(limit));
  write_output(out, out.format == "json" ? publications_json(r.pubs).dump(2) + "\n" : publications_csv(r.pubs));
  return r.pubs.empty() ? kEmpty : kOk;
}

int cmd_keywords(const std::string& db, const Selection& sel, const Selection& corpus_sel, const Output& out,
                 const TextOptions& t) {
  check_format(out);
  const auto opt = keyword_options(t);
  const auto pre = make_preprocessor(t);
  const auto store = open_read_only(db);
  const auto r = resolve(store, sel);
  KeywordRanking ranking;
  if (corpus_sel.query.empty() && corpus_sel.filter.empty()) {
    ranking = rank_keywords(r.pubs, pre, opt);
  } else {
    const auto corpus = resolve(store, corpus_sel);
    std::set<std::int64_t> in_corpus;
    for (const auto& p : corpus.pubs) in_corpus.insert(p.id);
    std::vector<std::int64_t> interest;
    for (const auto& p : r.pubs) {
      if (!in_corpus.count(p.id)) {
        throw UsageError("article " + std::to_string(p.id) + " is selected but not part of the corpus");
      }
      interest.push_back(p.id);
    }
    ranking = rank_keywords(corpus.pubs, interest, pre, opt);
  }
  write_output(out, out.format == "json" ? to_json(ranking).dump(2) + "\n" : to_csv(ranking));
  return r.pubs.empty() ? kEmpty : kOk;
}

int cmd_trends(const std::string& db, const Selection& sel, const Output& out, const TextOptions& t,
               std::optional<int> split_year) {
  check_format(out);
  const auto opt = keyword_options(t);
  const auto pre = make_preprocessor(t);
  const auto store = open_read_only(db);
  const auto r = resolve(store, sel);
  if (r.pubs.empty()) {
    if (split_year || out.format == "json") {
      write_output(out, json{{"new_keywords", json::array()}, {"rising_keywords", json::array()}}.dump(2) + "\n");
    } else {
      write_output(out, "year,rank,keyword,count\n");
    }
    return kEmpty;
  }
  const auto span = span_for(r, sel);
  const auto rankings = keywords_per_year(r.pubs, span, pre, opt);
  if (!split_year) {
    write_output(out, out.format == "json" ? to_json(rankings).dump(2) + "\n" : to_csv(rankings));
    return kOk;
  }
  if (span.length() < 2) throw UsageError("emerging keywords need a span of at least two years");
  const int split = *split_year != 0 ? *split_year : default_split_year(span);
  if (!(split > span.start && split <= span.end)) {
    throw UsageError("--split-year must lie in " + std::to_string(span.start + 1) + ".." + std::to_string(span.end));
  }
  const auto report = emerging_keywords(rankings, split);
  if (out.format == "csv") {
    std::string text = "kind,keyword\n";
    for (const auto& k : report.new_keywords) text += "new," + k + "\n";
    for (const auto& k : report.rising_keywords) text += "rising," + k + "\n";
    write_output(out, text);
  } else {
    auto j = to_json(report);
    j["span"] = {span.start, span.end};
    j["rankings"] = to_json(rankings);
    write_output(out, j.dump(2) + "\n");
  }
  return kOk;
}

struct CommunityArgs {
  std::string out_dir;
  std::size_t min_component_size = 5;
  std::size_t clique_limit = kDefaultCliqueLimit;
  bool global_citations = false;
};

int cmd_community(const std::string& db, const Selection& sel, const Output& out, const CommunityArgs& a) {
  check_format(out);
  const auto store = open_read_only(db);
  const auto r = resolve(store, sel);
  const auto scoped = scoped_publications(store, r.pubs);
  CommunityOptions opt;
  opt.min_component_size = a.min_component_size;
  opt.clique_limit = a.clique_limit;
  CitationIndex global;
  if (a.global_citations) {
    global = store.global_author_citations();
    opt.citations = &global;
  }
  CommunityReport report;
  try {
    report = analyze_community(scoped, opt);
  } catch (const CliqueLimitError& e) {
    std::cerr << "bibcorpus: " << e.what() << "\n";
    return kCliqueLimit;
  }
  const auto& s = report.summary;
  const auto fraction = report.one_time_fraction ? std::to_string(*report.one_time_fraction) : std::string();
  if (out.format == "json") {
    auto j = to_json(s);
    j["one_time_fraction"] = report.one_time_fraction ? json(*report.one_time_fraction) : json(nullptr);
    write_output(out, j.dump(2) + "\n");
  } else {
    write_output(out, "articles,authors,coauthorship_relations,unique_relations,cliques,largest_clique,"
                      "one_time_fraction\n" +
                          std::to_string(s.articles) + "," + std::to_string(s.authors) + "," +
                          std::to_string(s.coauthorship_relations) + "," + std::to_string(s.unique_relations) + "," +
                          std::to_string(s.cliques) + "," + std::to_string(s.largest_clique) + "," + fraction + "\n");
  }
  if (!a.out_dir.empty()) {
    const fs::path dir(a.out_dir);
    fs::create_directories(dir);
    write_file(dir / "community.json", to_json(report).dump(2) + "\n");
    write_file(dir / "edges.txt", to_edge_list(report.graph));
    std::map<AuthorId, std::string> labels;
    for (const auto& author : store.authors()) labels.emplace(author.id, author.display_name);
    write_file(dir / "coauthors.dot", to_dot(report.graph, &labels));
    std::string stats = "clique,clique_size,avg_author_citations,max_author_citations\n";
    for (std::size_t i = 0; i < report.clique_stats.size(); ++i) {
      const auto& c = report.clique_stats[i];
      std::ostringstream avg;
      avg << c.avg_author_citations;
      stats += std::to_string(i + 1) + "," + std::to_string(c.clique_size) + "," + avg.str() + "," +
               std::to_string(c.max_author_citations) + "\n";
    }
    write_file(dir / "clique_stats.csv", stats);
    std::string sizes = "size,cliques,authors\n";
    for (const auto& [size, n] : report.cliques_by_size) {
      sizes += std::to_string(size) + "," + std::to_string(n) + "," +
               std::to_string(report.authors_by_clique_size.at(size)) + "\n";
    }
    write_file(dir / "clique_sizes.csv", sizes);
    std::string cdf = "article_count,cumulative_fraction\n";
    for (const auto& p : report.articles_per_author) {
      std::ostringstream f;
      f.precision(17);
      f << p.cumulative_fraction;
      cdf += std::to_string(p.article_count) + "," + f.str() + "\n";
    }
    write_file(dir / "articles_per_author_cdf.csv", cdf);
    std::string comps = "component,size,authors\n";
    for (std::size_t i = 0; i < report.components.size(); ++i) {
      std::string members;
      for (const auto a_id : report.components[i]) members += (members.empty() ? "" : " ") + std::to_string(a_id);
      comps += std::to_string(i + 1) + "," + std::to_string(report.components[i].size()) + "," + members + "\n";
    }
    write_file(dir / "components.csv", comps);
  }
  return r.pubs.empty() ? kEmpty : kOk;
}

int cmd_policies(const std::string& db, const std::string& category, const std::string& mode, std::size_t limit,
                 const Output& out) {
  check_format(out);
  PolicyCategory cat;
  if (category == "allocation") {
    cat = PolicyCategory::Allocation;
  } else if (category == "provisioning") {
    cat = PolicyCategory::Provisioning;
  } else {
    throw UsageError("--category must be allocation or provisioning");
  }
  PolicyMode m;
  if (mode == "top_cited" || mode == "top-cited") {
    m = PolicyMode::TopCited;
  } else if (mode == "recent") {
    m = PolicyMode::Recent;
  } else {
    throw UsageError("--mode must be top_cited or recent");
  }
  const auto store = open_read_only(db);
  auto q = policy_query(cat, m).query();
  q.limit = limit;
  const auto pubs = store.query(q);
  std::string text;
  if (out.format == "json") {
    text = publications_json(pubs).dump(2) + "\n";
  } else {
    text = "title,year,n_citations,venue,id\n";
    for (const auto& p : pubs) {
      text += csv_field(p.title) + "," + (p.year ? std::to_string(*p.year) : "") + "," +
              (p.n_citations ? std::to_string(*p.n_citations) : "") + "," + csv_field(p.venue) + "," +
              std::to_string(p.id) + "\n";
    }
  }
  write_output(out, text);
  return pubs.empty() && limit > 0 ? kEmpty : kOk;
}

int cmd_stats(const std::string& db, bool check) {
  const auto store = open_read_only(db);
  const auto c = store.coverage_stats();
  const auto problems = store.check_invariants();
  json j{{"publications", c.total_publications},
         {"authors", store.count("authors")},
         {"authorships", store.count("authorships")},
         {"with_citations", c.with_citations},
         {"with_authors", c.with_authors},
         {"invariant_violations", problems}};
  j["pct_with_citations"] = c.pct_with_citations ? json(*c.pct_with_citations) : json(nullptr);
  j["pct_with_authors"] = c.pct_with_authors ? json(*c.pct_with_authors) : json(nullptr);
  std::cout << j.dump(2) << "\n";
  return check && !problems.empty() ? kFailure : kOk;
}

void add_selection(CLI::App* cmd, Selection& sel) {
  cmd->add_option("query,--query,-q", sel.query, "Q1..Q9 or a file holding a filter expression");
  cmd->add_option("--filter,-f", sel.filter, "inline filter expression");
  cmd->add_option("--raw-sql", sel.raw_sql,
                  "read-only SQL returning an id column, or Q1..Q9 to run that query's SQL verbatim");
  sel.from_opt = cmd->add_option("--from-year", sel.from_year, "first year in scope");
  sel.to_opt = cmd->add_option("--to-year", sel.to_year, "last year in scope");
}

void add_output(CLI::App* cmd, Output& out) {
  cmd->add_option("--format", out.format, "csv or json")->capture_default_str();
  cmd->add_option("--out,-o", out.out, "output file (default: standard output)");
}

void add_text(CLI::App* cmd, TextOptions& t) {
  cmd->add_option("--top,-n", t.top, "keywords to report")->capture_default_str();
  cmd->add_option("--kper-doc", t.kper_doc, "top terms taken from each article")->capture_default_str();
  cmd->add_option("--max-df", t.max_df, "drop terms in at least this fraction of articles (1 keeps all)")
      ->capture_default_str();
  cmd->add_option("--stopwords", t.stopwords, "replace the built-in English stop word list");
  cmd->add_option("--custom-stopwords", t.custom_stopwords, "replace the built-in domain stop word list");
  cmd->add_option("--suppress", t.suppress, "keywords removed from rankings")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unify bibliographic dumps into one store and analyse article selections"};
  app.set_config("--config", "", "TOML/INI file with option defaults; flags override it");
  app.require_subcommand(1);
  app.fallthrough();

  std::string db = "bibcorpus.db";
  app.add_option("--db", db, "store file")->capture_default_str();

  IngestArgs ingest;
  auto* ingest_cmd = app.add_subcommand("ingest", "parse one dump and merge it into the store");
  ingest_cmd->add_option("--source,-s", ingest.source, "a (XML), b or c (JSON lines)")->required();
  ingest_cmd->add_option("input", ingest.input, "dump file, or - for standard input")->required();
  ingest_cmd->add_option("--venues", ingest.venues, "venue rule file")->capture_default_str();
  ingest_cmd->add_option("--fieldmap", ingest.fieldmap, "field map for JSON-lines sources");
  ingest_cmd->add_option("--kinds", ingest.kinds, "XML entry kinds to read")->delimiter(',');
  ingest_cmd->add_option("--report", ingest.report, "write summary and parse report as JSON");
  ingest_cmd->add_option("--conflicts", ingest.conflicts, "write rejected merges as JSON lines");
  ingest_cmd->add_option("--format", ingest.format, "text or json")->capture_default_str();

  Selection query_sel;
  Output query_out;
  int query_limit = 0;
  auto* query_cmd = app.add_subcommand("query", "list the publications a selection matches");
  add_selection(query_cmd, query_sel);
  add_output(query_cmd, query_out);
  auto* limit_opt = query_cmd->add_option("--limit", query_limit, "maximum rows")->check(CLI::NonNegativeNumber);

  Selection kw_sel;
  Selection kw_corpus;
  Output kw_out;
  TextOptions kw_text;
  auto* kw_cmd = app.add_subcommand("keywords", "top keywords of a selection");
  add_selection(kw_cmd, kw_sel);
  add_output(kw_cmd, kw_out);
  add_text(kw_cmd, kw_text);
  kw_cmd->add_option("--corpus", kw_corpus.query, "fit TF-IDF on this query (Q1..Q9 or filter file) instead");
  kw_cmd->add_option("--corpus-filter", kw_corpus.filter, "fit TF-IDF on this inline filter instead");

  Selection tr_sel;
  Output tr_out;
  TextOptions tr_text;
  auto* tr_cmd = app.add_subcommand("trends", "top keywords per year");
  add_selection(tr_cmd, tr_sel);
  add_output(tr_cmd, tr_out);
  add_text(tr_cmd, tr_text);

  Selection em_sel;
  Output em_out;
  em_out.format = "json";
  TextOptions em_text;
  int split_year = 0;
  auto* em_cmd = app.add_subcommand("emerging", "new and rising keywords");
  add_selection(em_cmd, em_sel);
  add_output(em_cmd, em_out);
  add_text(em_cmd, em_text);
  em_cmd->add_option("--split-year,--split", split_year, "first year of the late half (default: midpoint)");

  Selection co_sel;
  Output co_out;
  CommunityArgs co_args;
  auto* co_cmd = app.add_subcommand("community", "co-authorship analysis of a selection");
  add_selection(co_cmd, co_sel);
  add_output(co_cmd, co_out);
  co_cmd->add_option("--out-dir", co_args.out_dir, "write graph exports, cliques, components and distributions here");
  co_cmd->add_option("--min-component-size", co_args.min_component_size, "smallest component reported")
      ->capture_default_str();
  co_cmd->add_option("--clique-limit", co_args.clique_limit, "abort after this many maximal cliques")
      ->capture_default_str();
  co_cmd->add_flag("--global-citations", co_args.global_citations,
                   "sum author citations over the whole store instead of the selection");

  std::string category = "allocation", mode = "top_cited";
  std::size_t policy_limit = 10;
  Output pol_out;
  auto* pol_cmd = app.add_subcommand("policies", "most cited or most recent allocation/provisioning articles");
  pol_cmd->add_option("--category", category, "allocation or provisioning")->capture_default_str();
  pol_cmd->add_option("--mode", mode, "top_cited or recent")->capture_default_str();
  pol_cmd->add_option("--limit", policy_limit, "maximum rows")->capture_default_str();
  add_output(pol_cmd, pol_out);

  bool check = false;
  auto* stats_cmd = app.add_subcommand("stats", "store counts, coverage and invariant check");
  stats_cmd->add_flag("--check", check, "exit 1 when an invariant is violated");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*ingest_cmd) {
      ingest.db = db;
      return cmd_ingest(ingest);
    }
    if (*query_cmd) return cmd_query(db, query_sel, query_out, query_limit, limit_opt);
    if (*kw_cmd) return cmd_keywords(db, kw_sel, kw_corpus, kw_out, kw_text);
    if (*tr_cmd) return cmd_trends(db, tr_sel, tr_out, tr_text, std::nullopt);
    if (*em_cmd) return cmd_trends(db, em_sel, em_out, em_text, split_year);
    if (*co_cmd) return cmd_community(db, co_sel, co_out, co_args);
    if (*pol_cmd) return cmd_policies(db, category, mode, policy_limit, pol_out);
    if (*stats_cmd) return cmd_stats(db, check);
  } catch (const UsageError& e) {
    std::cerr << "bibcorpus: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "bibcorpus: " << e.what() << "\n";
    return kFailure;
  }
  return kUsage;
}

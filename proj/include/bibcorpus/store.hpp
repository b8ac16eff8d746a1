#pragma once

// Single-file relational store for the unified corpus, backed by SQLite.
//
// Tables:
//   publications(id, title, normalized_title, abstract, venue, year, volume, doi, n_citations)
//   authors(id, source_key, name)
//   authorships(author_id, publication_id)
//
// Matching order for an incoming record: DOI, then normalized title within
// the same venue (and the same year when both sides carry one), else a new
// row is inserted.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <sqlite3.h>

#include "bibcorpus/corpus.hpp"
#include "bibcorpus/filter.hpp"
#include "bibcorpus/record.hpp"

namespace bibcorpus {

class StoreError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MatchResult {
  enum class Outcome { NoMatch, MatchedByDoi, MatchedByTitle };
  Outcome outcome = Outcome::NoMatch;
  std::int64_t publication_id = 0;

  bool matched() const { return outcome != Outcome::NoMatch; }
  friend bool operator==(const MatchResult&, const MatchResult&) = default;
};

struct UpsertResult {
  enum class Outcome { Inserted, Merged, Rejected };
  Outcome outcome = Outcome::Inserted;
  std::optional<std::int64_t> publication_id;
  MatchResult match;
  std::string conflict;  // set when rejected
};

struct CoverageStats {
  std::size_t total_publications = 0;
  std::size_t with_citations = 0;
  std::size_t with_authors = 0;
  std::optional<double> pct_with_citations;  // absent for an empty store
  std::optional<double> pct_with_authors;
};

/// Result of a pass-through SQL statement; NULL cells are nullopt.
struct RawResult {
  std::vector<std::string> columns;
  std::vector<std::vector<std::optional<std::string>>> rows;
};

namespace detail {

struct DbCloser {
  void operator()(sqlite3* db) const { sqlite3_close_v2(db); }
};
struct StmtFinalizer {
  void operator()(sqlite3_stmt* s) const { sqlite3_finalize(s); }
};

// Thin RAII wrapper over a prepared statement.
class Statement {
 public:
  Statement() = default;
  Statement(sqlite3* db, std::string_view sql) : db_(db) {
    sqlite3_stmt* raw = nullptr;
    if (sqlite3_prepare_v2(db, sql.data(), static_cast<int>(sql.size()), &raw, nullptr) != SQLITE_OK) {
      throw StoreError(std::string("SQL prepare failed: ") + sqlite3_errmsg(db) + " in: " + std::string(sql));
    }
    stmt_.reset(raw);
  }

  Statement& reset() {
    sqlite3_reset(stmt_.get());
    sqlite3_clear_bindings(stmt_.get());
    next_ = 1;
    return *this;
  }

  Statement& bind(std::int64_t v) {
    sqlite3_bind_int64(stmt_.get(), next_++, v);
    return *this;
  }
  Statement& bind(std::string_view v) {
    sqlite3_bind_text(stmt_.get(), next_++, v.data(), static_cast<int>(v.size()), SQLITE_TRANSIENT);
    return *this;
  }
  template <class T>
  Statement& bind(const std::optional<T>& v) {
    if (v) return bind(*v);
    sqlite3_bind_null(stmt_.get(), next_++);
    return *this;
  }
  Statement& bind(const SqlParam& p) {
    if (const auto* s = std::get_if<std::string>(&p)) return bind(std::string_view(*s));
    return bind(std::get<std::int64_t>(p));
  }
  Statement& bind(int v) { return bind(std::int64_t{v}); }
  Statement& bind(const std::string& v) { return bind(std::string_view(v)); }
  Statement& bind(const char* v) { return bind(std::string_view(v)); }

  /// Returns true while rows are available.
  bool step() {
    const int rc = sqlite3_step(stmt_.get());
    if (rc == SQLITE_ROW) return true;
    if (rc == SQLITE_DONE) return false;
    throw StoreError(std::string("SQL step failed: ") + sqlite3_errmsg(db_));
  }

  /// Like step() but reports constraint violations instead of throwing.
  int execute_raw() { return sqlite3_step(stmt_.get()); }

  bool is_null(int col) const { return sqlite3_column_type(stmt_.get(), col) == SQLITE_NULL; }
  std::int64_t int64(int col) const { return sqlite3_column_int64(stmt_.get(), col); }
  std::string text(int col) const {
    const auto* p = sqlite3_column_text(stmt_.get(), col);
    return p ? std::string(reinterpret_cast<const char*>(p),
                           static_cast<std::size_t>(sqlite3_column_bytes(stmt_.get(), col)))
             : std::string();
  }
  std::optional<std::string> opt_text(int col) const {
    if (is_null(col)) return std::nullopt;
    return text(col);
  }
  std::optional<std::int64_t> opt_int64(int col) const {
    if (is_null(col)) return std::nullopt;
    return int64(col);
  }
  int columns() const { return sqlite3_column_count(stmt_.get()); }
  std::string column_name(int col) const { return sqlite3_column_name(stmt_.get(), col); }
  bool readonly() const { return sqlite3_stmt_readonly(stmt_.get()) != 0; }

 private:
  sqlite3* db_ = nullptr;
  std::unique_ptr<sqlite3_stmt, StmtFinalizer> stmt_;
  int next_ = 1;
};

inline void fold_sql_function(sqlite3_context* ctx, int, sqlite3_value** argv) {
  if (sqlite3_value_type(argv[0]) == SQLITE_NULL) {
    sqlite3_result_null(ctx);
    return;
  }
  const auto* p = reinterpret_cast<const char*>(sqlite3_value_text(argv[0]));
  const auto n = static_cast<std::size_t>(sqlite3_value_bytes(argv[0]));
  const auto folded = fold_case(std::string_view(p, n));
  sqlite3_result_text(ctx, folded.data(), static_cast<int>(folded.size()), SQLITE_TRANSIENT);
}

constexpr std::string_view kPublicationColumns =
    "id, title, normalized_title, abstract, venue, year, volume, doi, n_citations";

inline Publication read_publication(const Statement& s) {
  Publication p;
  p.id = s.int64(0);
  p.title = s.text(1);
  p.normalized_title = s.text(2);
  p.abstract = s.opt_text(3);
  p.venue = s.text(4);
  if (!s.is_null(5)) p.year = static_cast<int>(s.int64(5));
  p.volume = s.opt_text(6);
  p.doi = s.opt_text(7);
  p.n_citations = s.opt_int64(8);
  return p;
}

}  // namespace detail

class Store {
 public:
  enum class Mode { ReadWrite, ReadOnly };

  /// Opens (creating when writable) the store file. ":memory:" gives a
  /// private in-memory store.
  explicit Store(const std::string& path, Mode mode = Mode::ReadWrite) : mode_(mode) {
    sqlite3* raw = nullptr;
    const int flags = mode == Mode::ReadOnly ? SQLITE_OPEN_READONLY
                                             : (SQLITE_OPEN_READWRITE | SQLITE_OPEN_CREATE);
    const int rc = sqlite3_open_v2(path.c_str(), &raw, flags, nullptr);
    db_.reset(raw);
    if (rc != SQLITE_OK) {
      throw StoreError("cannot open store '" + path + "': " + (raw ? sqlite3_errmsg(raw) : "out of memory"));
    }
    sqlite3_busy_timeout(raw, 5000);
    sqlite3_create_function_v2(raw, "bc_fold", 1, SQLITE_UTF8 | SQLITE_DETERMINISTIC, nullptr,
                               &detail::fold_sql_function, nullptr, nullptr, nullptr);
    exec("PRAGMA foreign_keys = ON");
    if (mode == Mode::ReadWrite) {
      create_schema();
    } else if (!has_table("publications")) {
      throw StoreError("'" + path + "' has no publications table");
    }
  }

  Store(Store&&) noexcept = default;
  Store& operator=(Store&&) noexcept = default;

  bool read_only() const { return mode_ == Mode::ReadOnly; }

  /// RAII transaction; rolls back unless commit() was called.
  class Transaction {
   public:
    explicit Transaction(Store& store) : store_(&store) { store_->exec("BEGIN IMMEDIATE"); }
    Transaction(const Transaction&) = delete;
    Transaction& operator=(const Transaction&) = delete;
    ~Transaction() {
      if (store_) sqlite3_exec(store_->db_.get(), "ROLLBACK", nullptr, nullptr, nullptr);
    }
    void commit() {
      store_->exec("COMMIT");
      store_ = nullptr;
    }

   private:
    Store* store_;
  };

  Transaction begin() { return Transaction(*this); }

  MatchResult match_record(const RawRecord& r, std::string_view venue) {
    if (r.doi) {
      if (const auto doi = normalize_doi(*r.doi)) {
        auto& s = stmt(find_by_doi_, "SELECT id FROM publications WHERE doi = ?").reset().bind(*doi);
        if (s.step()) return {MatchResult::Outcome::MatchedByDoi, s.int64(0)};
      }
    }
    const auto key = normalize_title(r.raw_title);
    if (key.empty()) return {};
    auto& s = stmt(find_by_title_,
                   "SELECT id, year FROM publications WHERE normalized_title = ? AND venue = ? ORDER BY id")
                  .reset()
                  .bind(key)
                  .bind(venue);
    // An exact year agreement beats a row that merely lacks a year.
    std::optional<std::int64_t> fallback;
    while (s.step()) {
      if (r.year && !s.is_null(1) && s.int64(1) == *r.year) {
        return {MatchResult::Outcome::MatchedByTitle, s.int64(0)};
      }
      if (!fallback && (!r.year || s.is_null(1))) fallback = s.int64(0);
    }
    if (fallback) return {MatchResult::Outcome::MatchedByTitle, *fallback};
    return {};
  }

  /// Inserts or merges `r`, whose venue has already been canonicalized.
  UpsertResult upsert_record(const RawRecord& r, std::string_view venue) {
    require_writable();
    UpsertResult result;
    result.match = match_record(r, venue);
    const auto doi = r.doi ? normalize_doi(*r.doi) : std::nullopt;
    const auto incoming_citations = (r.n_citations && *r.n_citations >= 0) ? r.n_citations : std::nullopt;

    if (!result.match.matched()) {
      const auto title = display_title(r.raw_title);
      auto& ins = stmt(insert_pub_,
                       "INSERT INTO publications(title, normalized_title, abstract, venue, year, volume, doi, "
                       "n_citations) VALUES (?, ?, ?, ?, ?, ?, ?, ?)");
      ins.reset()
          .bind(title)
          .bind(normalize_title(title))
          .bind(r.abstract)
          .bind(venue)
          .bind(r.year ? std::optional<std::int64_t>(*r.year) : std::nullopt)
          .bind(r.volume)
          .bind(doi)
          .bind(incoming_citations);
      if (const int rc = ins.execute_raw(); rc != SQLITE_DONE) {
        return reject(std::move(result), std::string("insert failed: ") + sqlite3_errmsg(db_.get()));
      }
      result.outcome = UpsertResult::Outcome::Inserted;
      result.publication_id = sqlite3_last_insert_rowid(db_.get());
    } else {
      auto existing = *publication(result.match.publication_id);
      if (result.match.outcome == MatchResult::Outcome::MatchedByTitle && doi && existing.doi &&
          *existing.doi != *doi) {
        return reject(std::move(result), "title matched publication " + std::to_string(existing.id) +
                                             " but DOIs differ (" + *existing.doi + " vs " + *doi + ")");
      }
      auto merged = existing;
      if (!merged.abstract) merged.abstract = r.abstract;
      if (!merged.doi) merged.doi = doi;
      if (!merged.volume) merged.volume = r.volume;
      if (!merged.year && r.year) merged.year = r.year;
      if (incoming_citations && (!merged.n_citations || *incoming_citations > *merged.n_citations)) {
        merged.n_citations = incoming_citations;
      }
      if (r.source == Source::SourceA_xml) {
        merged.title = display_title(r.raw_title);
        merged.normalized_title = normalize_title(merged.title);
      }
      if (merged.normalized_title != existing.normalized_title || merged.year != existing.year) {
        auto& k = stmt(key_collision_,
                       "SELECT id FROM publications WHERE normalized_title = ? AND venue = ? AND year IS ? "
                       "AND id != ?")
                      .reset()
                      .bind(merged.normalized_title)
                      .bind(merged.venue)
                      .bind(merged.year ? std::optional<std::int64_t>(*merged.year) : std::nullopt)
                      .bind(merged.id);
        if (k.step()) {
          return reject(std::move(result), "merge into publication " + std::to_string(existing.id) +
                                               " would duplicate publication " + std::to_string(k.int64(0)));
        }
      }
      if (!(merged == existing)) {
        auto& up = stmt(update_pub_,
                        "UPDATE publications SET title = ?, normalized_title = ?, abstract = ?, year = ?, "
                        "volume = ?, doi = ?, n_citations = ? WHERE id = ?");
        up.reset()
            .bind(merged.title)
            .bind(merged.normalized_title)
            .bind(merged.abstract)
            .bind(merged.year ? std::optional<std::int64_t>(*merged.year) : std::nullopt)
            .bind(merged.volume)
            .bind(merged.doi)
            .bind(merged.n_citations)
            .bind(merged.id);
        if (const int rc = up.execute_raw(); rc != SQLITE_DONE) {
          return reject(std::move(result), std::string("update failed: ") + sqlite3_errmsg(db_.get()));
        }
      }
      result.outcome = UpsertResult::Outcome::Merged;
      result.publication_id = existing.id;
    }

    if (r.source == Source::SourceA_xml && !r.author_keys.empty()) {
      for (std::size_t i = 0; i < r.author_keys.size(); ++i) {
        const auto& key = r.author_keys[i];
        const auto& name = i < r.author_names.size() ? r.author_names[i] : key;
        stmt(insert_author_, "INSERT OR IGNORE INTO authors(source_key, name) VALUES (?, ?)")
            .reset()
            .bind(key)
            .bind(name)
            .step();
        auto& sel = stmt(select_author_, "SELECT id FROM authors WHERE source_key = ?").reset().bind(key);
        if (!sel.step()) throw StoreError("author row vanished for key " + key);
        const auto author_id = sel.int64(0);
        stmt(insert_authorship_, "INSERT OR IGNORE INTO authorships(author_id, publication_id) VALUES (?, ?)")
            .reset()
            .bind(author_id)
            .bind(*result.publication_id)
            .step();
      }
    }
    return result;
  }

  std::optional<Publication> publication(std::int64_t id) {
    auto& s = stmt(select_pub_,
                   "SELECT " + std::string(detail::kPublicationColumns) + " FROM publications WHERE id = ?")
                  .reset()
                  .bind(id);
    if (!s.step()) return std::nullopt;
    return detail::read_publication(s);
  }

  std::vector<Publication> query(const Query& q) const {
    std::vector<SqlParam> params;
    std::string sql = "SELECT " + std::string(detail::kPublicationColumns) + " FROM publications WHERE " +
                      to_sql(q.filter, params);
    switch (q.order) {
      case Order::ById: sql += " ORDER BY id"; break;
      case Order::CitationsDesc: sql += " ORDER BY n_citations IS NULL, n_citations DESC, id"; break;
      case Order::YearDescCitationsDesc:
        sql += " ORDER BY year IS NULL, year DESC, n_citations IS NULL, n_citations DESC, id";
        break;
    }
    if (q.limit) {
      sql += " LIMIT ?";
      params.emplace_back(static_cast<std::int64_t>(*q.limit));
    }
    detail::Statement s(db_.get(), sql);
    for (const auto& p : params) s.bind(p);
    std::vector<Publication> out;
    while (s.step()) out.push_back(detail::read_publication(s));
    return out;
  }

  std::vector<Publication> query(const Filter& f) const { return query(Query{f, Order::ById, std::nullopt}); }

  /// Runs a read-only statement verbatim.
  RawResult raw_sql(std::string_view sql) const {
    detail::Statement s(db_.get(), sql);
    if (!s.readonly()) throw StoreError("pass-through SQL must be read-only");
    RawResult out;
    for (int c = 0; c < s.columns(); ++c) out.columns.push_back(s.column_name(c));
    while (s.step()) {
      auto& row = out.rows.emplace_back();
      for (int c = 0; c < s.columns(); ++c) row.push_back(s.opt_text(c));
    }
    return out;
  }

  /// Publications whose ids are returned (in order) by a read-only
  /// statement with an `id` column, e.g. "SELECT * FROM publications WHERE ...".
  std::vector<Publication> raw_query_publications(std::string_view sql) const {
    const auto res = raw_sql(sql);
    const auto it = std::find(res.columns.begin(), res.columns.end(), "id");
    if (it == res.columns.end()) throw StoreError("pass-through SQL must return an 'id' column");
    const auto col = static_cast<std::size_t>(it - res.columns.begin());
    std::vector<std::int64_t> ids;
    for (const auto& row : res.rows) {
      if (row[col]) ids.push_back(std::stoll(*row[col]));
    }
    return publications(ids);
  }

  std::vector<Publication> publications(const std::vector<std::int64_t>& ids) const {
    detail::Statement s(db_.get(),
                        "SELECT " + std::string(detail::kPublicationColumns) + " FROM publications WHERE id = ?");
    std::vector<Publication> out;
    out.reserve(ids.size());
    for (const auto id : ids) {
      s.reset().bind(id);
      if (s.step()) out.push_back(detail::read_publication(s));
    }
    return out;
  }

  /// Author ids per publication, restricted to `pub_ids`, each list sorted.
  std::map<std::int64_t, std::vector<std::int64_t>> authors_by_publication(
      const std::vector<std::int64_t>& pub_ids) const {
    std::map<std::int64_t, std::vector<std::int64_t>> out;
    detail::Statement s(db_.get(),
                        "SELECT author_id FROM authorships WHERE publication_id = ? ORDER BY author_id");
    for (const auto id : pub_ids) {
      s.reset().bind(id);
      std::vector<std::int64_t> authors;
      while (s.step()) authors.push_back(s.int64(0));
      out[id] = std::move(authors);
    }
    return out;
  }

  std::vector<Author> authors() const {
    detail::Statement s(db_.get(), "SELECT id, source_key, name FROM authors ORDER BY id");
    std::vector<Author> out;
    while (s.step()) out.push_back({s.int64(0), s.text(1), s.text(2)});
    return out;
  }

  std::vector<Authorship> authorships() const {
    detail::Statement s(db_.get(),
                        "SELECT author_id, publication_id FROM authorships ORDER BY author_id, publication_id");
    std::vector<Authorship> out;
    while (s.step()) out.push_back({s.int64(0), s.int64(1)});
    return out;
  }

  /// Sum of citation counts per author over every publication in the store.
  std::unordered_map<std::int64_t, std::optional<std::int64_t>> global_author_citations() const {
    detail::Statement s(db_.get(),
                        "SELECT a.author_id, SUM(p.n_citations) FROM authorships a "
                        "JOIN publications p ON p.id = a.publication_id GROUP BY a.author_id");
    std::unordered_map<std::int64_t, std::optional<std::int64_t>> out;
    while (s.step()) out[s.int64(0)] = s.opt_int64(1);
    return out;
  }

  std::size_t count(std::string_view table) const {
    detail::Statement s(db_.get(), "SELECT COUNT(*) FROM " + std::string(table));
    s.step();
    return static_cast<std::size_t>(s.int64(0));
  }

  CoverageStats coverage_stats() const {
    CoverageStats c;
    detail::Statement s(db_.get(),
                        "SELECT COUNT(*), COUNT(n_citations), "
                        "(SELECT COUNT(DISTINCT publication_id) FROM authorships) FROM publications");
    s.step();
    c.total_publications = static_cast<std::size_t>(s.int64(0));
    c.with_citations = static_cast<std::size_t>(s.int64(1));
    c.with_authors = static_cast<std::size_t>(s.int64(2));
    if (c.total_publications > 0) {
      const auto total = static_cast<double>(c.total_publications);
      c.pct_with_citations = 100.0 * static_cast<double>(c.with_citations) / total;
      c.pct_with_authors = 100.0 * static_cast<double>(c.with_authors) / total;
    }
    return c;
  }

  /// Re-checks every store invariant; returns human-readable violations.
  std::vector<std::string> check_invariants() const {
    std::vector<std::string> problems;
    {
      detail::Statement s(db_.get(), "SELECT id, title, normalized_title, doi, n_citations FROM publications");
      while (s.step()) {
        const auto id = std::to_string(s.int64(0));
        if (normalize_title(s.text(1)) != s.text(2)) problems.push_back("publication " + id + ": stale normalized_title");
        if (auto doi = s.opt_text(3); doi && fold_case(*doi) != *doi) {
          problems.push_back("publication " + id + ": DOI not case-folded");
        }
        if (auto n = s.opt_int64(4); n && *n < 0) problems.push_back("publication " + id + ": negative citations");
      }
    }
    auto scalar = [&](const char* sql) {
      detail::Statement s(db_.get(), sql);
      s.step();
      return s.int64(0);
    };
    if (const auto n = scalar("SELECT COUNT(*) FROM (SELECT doi FROM publications WHERE doi IS NOT NULL "
                              "GROUP BY doi HAVING COUNT(*) > 1)")) {
      problems.push_back(std::to_string(n) + " duplicated DOIs");
    }
    if (const auto n = scalar("SELECT COUNT(*) FROM (SELECT 1 FROM publications GROUP BY normalized_title, venue, "
                              "year HAVING COUNT(*) > 1 AND year IS NOT NULL)")) {
      problems.push_back(std::to_string(n) + " duplicated (title, venue, year) keys");
    }
    if (const auto n = scalar("SELECT COUNT(*) FROM authorships a LEFT JOIN authors u ON u.id = a.author_id "
                              "LEFT JOIN publications p ON p.id = a.publication_id "
                              "WHERE u.id IS NULL OR p.id IS NULL")) {
      problems.push_back(std::to_string(n) + " dangling authorships");
    }
    if (const auto n = scalar("SELECT COUNT(*) FROM (SELECT source_key FROM authors GROUP BY source_key "
                              "HAVING COUNT(*) > 1)")) {
      problems.push_back(std::to_string(n) + " duplicated author keys");
    }
    return problems;
  }

  /// Sorted textual rows of every table; equal snapshots mean equal
  /// logical content.
  std::vector<std::string> logical_snapshot() const {
    std::vector<std::string> rows;
    auto dump = [&](const std::string& prefix, const std::string& sql) {
      detail::Statement s(db_.get(), sql);
      while (s.step()) {
        std::string line = prefix;
        for (int c = 0; c < s.columns(); ++c) {
          line += '\x1f';
          line += s.is_null(c) ? std::string("\\N") : s.text(c);
        }
        rows.push_back(std::move(line));
      }
    };
    dump("P", "SELECT " + std::string(detail::kPublicationColumns) + " FROM publications");
    dump("A", "SELECT id, source_key, name FROM authors");
    dump("W", "SELECT author_id, publication_id FROM authorships");
    std::sort(rows.begin(), rows.end());
    return rows;
  }

 private:
  void exec(const std::string& sql) {
    char* err = nullptr;
    if (sqlite3_exec(db_.get(), sql.c_str(), nullptr, nullptr, &err) != SQLITE_OK) {
      std::string msg = err ? err : "unknown error";
      sqlite3_free(err);
      throw StoreError("SQL failed: " + msg + " in: " + sql);
    }
  }

  bool has_table(std::string_view name) const {
    detail::Statement s(db_.get(), "SELECT 1 FROM sqlite_master WHERE type = 'table' AND name = ?");
    s.bind(name);
    return s.step();
  }

  void create_schema() {
    exec(
        "CREATE TABLE IF NOT EXISTS publications("
        " id INTEGER PRIMARY KEY,"
        " title TEXT NOT NULL,"
        " normalized_title TEXT NOT NULL,"
        " abstract TEXT,"
        " venue TEXT NOT NULL,"
        " year INTEGER,"
        " volume TEXT,"
        " doi TEXT,"
        " n_citations INTEGER CHECK (n_citations IS NULL OR n_citations >= 0));"
        "CREATE UNIQUE INDEX IF NOT EXISTS publications_doi ON publications(doi) WHERE doi IS NOT NULL;"
        "CREATE UNIQUE INDEX IF NOT EXISTS publications_key ON publications(normalized_title, venue, year);"
        "CREATE TABLE IF NOT EXISTS authors("
        " id INTEGER PRIMARY KEY,"
        " source_key TEXT NOT NULL UNIQUE,"
        " name TEXT NOT NULL);"
        "CREATE TABLE IF NOT EXISTS authorships("
        " author_id INTEGER NOT NULL REFERENCES authors(id),"
        " publication_id INTEGER NOT NULL REFERENCES publications(id),"
        " PRIMARY KEY (author_id, publication_id)) WITHOUT ROWID;"
        "CREATE INDEX IF NOT EXISTS authorships_publication ON authorships(publication_id);"
        "PRAGMA user_version = 1;");
  }

  void require_writable() const {
    if (mode_ == Mode::ReadOnly) throw StoreError("store opened read-only");
  }

  detail::Statement& stmt(std::unique_ptr<detail::Statement>& slot, const std::string& sql) {
    if (!slot) slot = std::make_unique<detail::Statement>(db_.get(), sql);
    return *slot;
  }

  UpsertResult reject(UpsertResult r, std::string why) {
    r.outcome = UpsertResult::Outcome::Rejected;
    r.conflict = std::move(why);
    return r;
  }

  std::unique_ptr<sqlite3, detail::DbCloser> db_;
  Mode mode_;
  std::unique_ptr<detail::Statement> find_by_doi_, find_by_title_, insert_pub_, update_pub_, select_pub_,
      key_collision_, insert_author_, select_author_, insert_authorship_;
};

}  // namespace bibcorpus

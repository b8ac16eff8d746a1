#pragma once

// Boolean filter trees over publications, with a small text syntax:
//
//   year in 2009..2018 and text ~ "workflow" and (title ~ "schedul" or not abstract ~ "grid")
//   order by citations limit 10
//
// Predicates: `title ~ S`, `abstract ~ S`, `text ~ S` (title or abstract),
// `year in A..B`, `year >= N` (also <=, =, >, <) and `all`. Substring tests
// are case-insensitive. A missing abstract or year makes its predicate
// unknown, with SQL three-valued semantics, so it never matches.

#include <cctype>
#include <charconv>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "bibcorpus/corpus.hpp"
#include "bibcorpus/text.hpp"

namespace bibcorpus {

struct Filter {
  enum class Kind { All, TitleContains, AbstractContains, TextContains, YearRange, And, Or, Not };

  Kind kind = Kind::All;
  std::string needle;  // case-folded
  std::optional<int> year_min;
  std::optional<int> year_max;
  std::vector<Filter> children;

  static Filter all() { return {}; }
  static Filter title(std::string_view s) { return contains(Kind::TitleContains, s); }
  static Filter abstract(std::string_view s) { return contains(Kind::AbstractContains, s); }
  static Filter text(std::string_view s) { return contains(Kind::TextContains, s); }
  static Filter years(std::optional<int> lo, std::optional<int> hi) {
    Filter f;
    f.kind = Kind::YearRange;
    f.year_min = lo;
    f.year_max = hi;
    return f;
  }
  static Filter year(int y) { return years(y, y); }
  static Filter all_of(std::vector<Filter> parts) { return combine(Kind::And, std::move(parts)); }
  static Filter any_of(std::vector<Filter> parts) { return combine(Kind::Or, std::move(parts)); }
  static Filter negate(Filter f) {
    Filter n;
    n.kind = Kind::Not;
    n.children.push_back(std::move(f));
    return n;
  }

  friend bool operator==(const Filter&, const Filter&) = default;

 private:
  static Filter contains(Kind k, std::string_view s) {
    Filter f;
    f.kind = k;
    f.needle = fold_case(s);
    return f;
  }
  static Filter combine(Kind k, std::vector<Filter> parts) {
    if (parts.size() == 1) return std::move(parts.front());
    Filter f;
    f.kind = k;
    f.children = std::move(parts);
    return f;
  }
};

enum class Order { ById, CitationsDesc, YearDescCitationsDesc };

struct Query {
  Filter filter;
  Order order = Order::ById;
  std::optional<std::size_t> limit;

  friend bool operator==(const Query&, const Query&) = default;
};

class FilterParseError : public std::runtime_error {
 public:
  FilterParseError(const std::string& what, std::size_t position)
      : std::runtime_error("at position " + std::to_string(position) + ": " + what), position_(position) {}
  /// 1-based character offset into the expression.
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

namespace detail {

class FilterParser {
 public:
  explicit FilterParser(std::string_view src) : src_(src) {}

  Query parse_query() {
    Query q;
    skip_ws();
    if (at_end()) throw error("empty filter expression");
    q.filter = parse_or();
    if (accept_keyword("order")) {
      expect_keyword("by");
      if (accept_keyword("citations")) q.order = Order::CitationsDesc;
      else if (accept_keyword("recent")) q.order = Order::YearDescCitationsDesc;
      else if (accept_keyword("id")) q.order = Order::ById;
      else throw error("expected 'citations', 'recent' or 'id'");
    }
    if (accept_keyword("limit")) {
      const auto n = parse_int();
      if (n < 0) throw error("limit must be non-negative");
      q.limit = static_cast<std::size_t>(n);
    }
    skip_ws();
    if (!at_end()) throw error("unexpected trailing input");
    return q;
  }

 private:
  Filter parse_or() {
    std::vector<Filter> parts{parse_and()};
    while (accept_keyword("or")) parts.push_back(parse_and());
    return Filter::any_of(std::move(parts));
  }

  Filter parse_and() {
    std::vector<Filter> parts{parse_unary()};
    while (accept_keyword("and")) parts.push_back(parse_unary());
    return Filter::all_of(std::move(parts));
  }

  Filter parse_unary() {
    skip_ws();
    if (accept_keyword("not")) return Filter::negate(parse_unary());
    if (accept('(')) {
      auto inner = parse_or();
      if (!accept(')')) throw error("expected ')'");
      return inner;
    }
    if (accept_keyword("all")) return Filter::all();
    if (accept_keyword("title")) return contains(&Filter::title);
    if (accept_keyword("abstract")) return contains(&Filter::abstract);
    if (accept_keyword("text")) return contains(&Filter::text);
    if (accept_keyword("year")) return year_predicate();
    throw error("expected a predicate");
  }

  Filter contains(Filter (*make)(std::string_view)) {
    if (!accept('~')) throw error("expected '~'");
    const auto needle = parse_string();
    if (needle.empty()) throw error("empty search string");
    return make(needle);
  }

  Filter year_predicate() {
    if (accept_keyword("in")) {
      const auto lo = parse_int();
      skip_ws();
      if (src_.substr(pos_, 2) != "..") throw error("expected '..'");
      pos_ += 2;
      const auto hi = parse_int();
      if (hi < lo) throw error("empty year range");
      return Filter::years(lo, hi);
    }
    skip_ws();
    for (std::string_view op : {">=", "<=", "=", ">", "<"}) {
      if (src_.substr(pos_, op.size()) == op) {
        pos_ += op.size();
        const auto n = parse_int();
        if (op == ">=") return Filter::years(n, std::nullopt);
        if (op == "<=") return Filter::years(std::nullopt, n);
        if (op == ">") return Filter::years(n + 1, std::nullopt);
        if (op == "<") return Filter::years(std::nullopt, n - 1);
        return Filter::year(n);
      }
    }
    throw error("expected 'in' or a comparison after 'year'");
  }

  int parse_int() {
    skip_ws();
    const auto start = pos_;
    if (pos_ < src_.size() && src_[pos_] == '-') ++pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    int v = 0;
    const auto [ptr, ec] = std::from_chars(src_.data() + start, src_.data() + pos_, v);
    if (ec != std::errc{} || ptr != src_.data() + pos_) {
      pos_ = start;
      throw error("expected an integer");
    }
    return v;
  }

  std::string parse_string() {
    skip_ws();
    if (at_end()) throw error("expected a string");
    std::string out;
    if (src_[pos_] == '"') {
      ++pos_;
      while (true) {
        if (at_end()) throw error("unterminated string");
        const char c = src_[pos_++];
        if (c == '"') break;
        if (c == '\\') {
          if (at_end()) throw error("unterminated escape");
          out.push_back(src_[pos_++]);
        } else {
          out.push_back(c);
        }
      }
      return out;
    }
    while (!at_end() && is_bare(src_[pos_])) out.push_back(src_[pos_++]);
    if (out.empty()) throw error("expected a string");
    return out;
  }

  static bool is_bare(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' ||
           static_cast<unsigned char>(c) >= 0x80;
  }

  bool accept(char c) {
    skip_ws();
    if (!at_end() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool accept_keyword(std::string_view kw) {
    skip_ws();
    if (src_.size() - pos_ < kw.size()) return false;
    for (std::size_t i = 0; i < kw.size(); ++i) {
      if (std::tolower(static_cast<unsigned char>(src_[pos_ + i])) != kw[i]) return false;
    }
    const auto end = pos_ + kw.size();
    if (end < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[end])) || src_[end] == '_')) {
      return false;
    }
    pos_ = end;
    return true;
  }

  void expect_keyword(std::string_view kw) {
    if (!accept_keyword(kw)) throw error("expected '" + std::string(kw) + "'");
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }
  bool at_end() const { return pos_ >= src_.size(); }
  FilterParseError error(const std::string& what) const { return FilterParseError(what, pos_ + 1); }

  std::string_view src_;
  std::size_t pos_ = 0;
};

inline std::string quote(std::string_view s) {
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace detail

inline Query parse_query(std::string_view text) { return detail::FilterParser(text).parse_query(); }

inline Filter parse_filter(std::string_view text) {
  auto q = parse_query(text);
  if (q.order != Order::ById || q.limit) throw FilterParseError("ordering not allowed here", 1);
  return std::move(q.filter);
}

inline std::string to_string(const Filter& f) {
  using K = Filter::Kind;
  switch (f.kind) {
    case K::All: return "all";
    case K::TitleContains: return "title ~ " + detail::quote(f.needle);
    case K::AbstractContains: return "abstract ~ " + detail::quote(f.needle);
    case K::TextContains: return "text ~ " + detail::quote(f.needle);
    case K::YearRange:
      if (f.year_min && f.year_max) {
        return "year in " + std::to_string(*f.year_min) + ".." + std::to_string(*f.year_max);
      }
      if (f.year_min) return "year >= " + std::to_string(*f.year_min);
      if (f.year_max) return "year <= " + std::to_string(*f.year_max);
      return "all";
    case K::Not: return "not (" + to_string(f.children.front()) + ")";
    case K::And:
    case K::Or: {
      if (f.children.empty()) return f.kind == K::And ? "all" : "not all";
      std::string out;
      for (const auto& c : f.children) {
        if (!out.empty()) out += f.kind == K::And ? " and " : " or ";
        out += "(" + to_string(c) + ")";
      }
      return out;
    }
  }
  return "all";
}

inline std::string to_string(const Query& q) {
  auto out = to_string(q.filter);
  if (q.order == Order::CitationsDesc) out += " order by citations";
  if (q.order == Order::YearDescCitationsDesc) out += " order by recent";
  if (q.limit) out += " limit " + std::to_string(*q.limit);
  return out;
}

/// Three-valued evaluation: nullopt is SQL's UNKNOWN.
inline std::optional<bool> evaluate(const Filter& f, const Publication& p) {
  using K = Filter::Kind;
  switch (f.kind) {
    case K::All: return true;
    case K::TitleContains: return fold_case(p.title).find(f.needle) != std::string::npos;
    case K::AbstractContains:
      if (!p.abstract) return std::nullopt;
      return fold_case(*p.abstract).find(f.needle) != std::string::npos;
    case K::TextContains: {
      if (fold_case(p.title).find(f.needle) != std::string::npos) return true;
      if (!p.abstract) return std::nullopt;
      return fold_case(*p.abstract).find(f.needle) != std::string::npos;
    }
    case K::YearRange:
      if (!f.year_min && !f.year_max) return true;
      if (!p.year) return std::nullopt;
      return (!f.year_min || *p.year >= *f.year_min) && (!f.year_max || *p.year <= *f.year_max);
    case K::Not: {
      const auto v = evaluate(f.children.front(), p);
      if (!v) return std::nullopt;
      return !*v;
    }
    case K::And: {
      bool unknown = false;
      for (const auto& c : f.children) {
        const auto v = evaluate(c, p);
        if (v && !*v) return false;
        if (!v) unknown = true;
      }
      if (unknown) return std::nullopt;
      return true;
    }
    case K::Or: {
      bool unknown = false;
      for (const auto& c : f.children) {
        const auto v = evaluate(c, p);
        if (v && *v) return true;
        if (!v) unknown = true;
      }
      if (unknown) return std::nullopt;
      return false;
    }
  }
  return false;
}

inline bool matches(const Filter& f, const Publication& p) { return evaluate(f, p).value_or(false); }

using SqlParam = std::variant<std::string, std::int64_t>;

/// Renders `f` as an SQL boolean expression over the publications table.
/// Substring tests call the `bc_fold` function registered by Store.
inline std::string to_sql(const Filter& f, std::vector<SqlParam>& params) {
  using K = Filter::Kind;
  switch (f.kind) {
    case K::All: return "1";
    case K::TitleContains:
      params.emplace_back(f.needle);
      return "(instr(bc_fold(title), ?) > 0)";
    case K::AbstractContains:
      params.emplace_back(f.needle);
      return "(instr(bc_fold(abstract), ?) > 0)";
    case K::TextContains:
      params.emplace_back(f.needle);
      params.emplace_back(f.needle);
      return "(instr(bc_fold(title), ?) > 0 OR instr(bc_fold(abstract), ?) > 0)";
    case K::YearRange: {
      if (!f.year_min && !f.year_max) return "1";
      std::string out = "(";
      if (f.year_min) {
        params.emplace_back(std::int64_t{*f.year_min});
        out += "year >= ?";
      }
      if (f.year_max) {
        params.emplace_back(std::int64_t{*f.year_max});
        out += f.year_min ? " AND year <= ?" : "year <= ?";
      }
      return out + ")";
    }
    case K::Not: return "(NOT " + to_sql(f.children.front(), params) + ")";
    case K::And:
    case K::Or: {
      if (f.children.empty()) return f.kind == K::And ? "1" : "0";
      std::string out = "(";
      for (std::size_t i = 0; i < f.children.size(); ++i) {
        if (i) out += f.kind == K::And ? " AND " : " OR ";
        out += to_sql(f.children[i], params);
      }
      return out + ")";
    }
  }
  return "1";
}

}  // namespace bibcorpus

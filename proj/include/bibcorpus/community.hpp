#pragma once

// Co-authorship graph over a publication set: components, maximal cliques,
// per-clique citation statistics, the articles-per-author distribution and
// the summary numbers.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "json.hpp"

namespace bibcorpus {

using AuthorId = std::int64_t;
using NodeSet = std::vector<AuthorId>;  // sorted ascending

/// A publication as seen by the community analysis.
struct ScopedPublication {
  std::int64_t id = 0;
  std::optional<std::int64_t> n_citations;
  std::vector<AuthorId> authors;
};

struct Edge {
  AuthorId a = 0;  // a < b
  AuthorId b = 0;
  std::size_t weight = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Immutable undirected graph. Nodes are every author of an in-scope
/// publication; an edge joins two authors who share at least one of them.
class CoauthorGraph {
 public:
  CoauthorGraph() = default;

  static CoauthorGraph build(std::span<const ScopedPublication> pubs) {
    CoauthorGraph g;
    std::set<AuthorId> nodes;
    std::map<std::pair<AuthorId, AuthorId>, std::size_t> weights;
    for (const auto& p : pubs) {
      g.scope_.push_back(p.id);
      NodeSet authors = p.authors;
      std::sort(authors.begin(), authors.end());
      authors.erase(std::unique(authors.begin(), authors.end()), authors.end());
      nodes.insert(authors.begin(), authors.end());
      for (std::size_t i = 0; i < authors.size(); ++i) {
        for (std::size_t j = i + 1; j < authors.size(); ++j) ++weights[{authors[i], authors[j]}];
      }
      g.relations_ += authors.size() * (authors.size() - (authors.empty() ? 0 : 1)) / 2;
    }
    std::sort(g.scope_.begin(), g.scope_.end());
    g.nodes_.assign(nodes.begin(), nodes.end());
    for (std::size_t i = 0; i < g.nodes_.size(); ++i) g.index_.emplace(g.nodes_[i], i);
    g.adjacency_.resize(g.nodes_.size());
    for (const auto& [pair, w] : weights) {
      g.edges_.push_back({pair.first, pair.second, w});
      const auto u = g.index_.at(pair.first), v = g.index_.at(pair.second);
      g.adjacency_[u].push_back(v);
      g.adjacency_[v].push_back(u);
    }
    for (auto& adj : g.adjacency_) std::sort(adj.begin(), adj.end());
    return g;
  }

  const NodeSet& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::int64_t>& scope() const { return scope_; }
  std::size_t node_count() const { return nodes_.size(); }

  /// Author pairs counted once per shared publication.
  std::size_t relation_occurrences() const { return relations_; }

  std::size_t index_of(AuthorId a) const { return index_.at(a); }
  AuthorId node_at(std::size_t i) const { return nodes_[i]; }
  /// Neighbour indices of node index `i`, ascending.
  const std::vector<std::size_t>& neighbours(std::size_t i) const { return adjacency_[i]; }

  bool has_edge(AuthorId a, AuthorId b) const {
    const auto ia = index_.find(a), ib = index_.find(b);
    if (ia == index_.end() || ib == index_.end()) return false;
    const auto& adj = adjacency_[ia->second];
    return std::binary_search(adj.begin(), adj.end(), ib->second);
  }

  std::size_t weight(AuthorId a, AuthorId b) const {
    if (a > b) std::swap(a, b);
    const auto it = std::lower_bound(edges_.begin(), edges_.end(), std::pair{a, b}, [](const Edge& e, const auto& key) {
      return std::pair{e.a, e.b} < key;
    });
    return it != edges_.end() && it->a == a && it->b == b ? it->weight : 0;
  }

 private:
  NodeSet nodes_;
  std::unordered_map<AuthorId, std::size_t> index_;
  std::vector<std::vector<std::size_t>> adjacency_;
  std::vector<Edge> edges_;  // sorted by (a, b)
  std::vector<std::int64_t> scope_;
  std::size_t relations_ = 0;
};

/// Larger sets first, equal sizes in lexicographic order of their ids.
inline void sort_node_sets(std::vector<NodeSet>& sets) {
  std::sort(sets.begin(), sets.end(), [](const NodeSet& x, const NodeSet& y) {
    if (x.size() != y.size()) return x.size() > y.size();
    return x < y;
  });
}

inline std::vector<NodeSet> connected_components(const CoauthorGraph& g, std::size_t min_size = 5) {
  const auto n = g.node_count();
  std::vector<bool> seen(n, false);
  std::vector<NodeSet> out;
  std::vector<std::size_t> stack;
  for (std::size_t start = 0; start < n; ++start) {
    if (seen[start]) continue;
    NodeSet component;
    seen[start] = true;
    stack.push_back(start);
    while (!stack.empty()) {
      const auto u = stack.back();
      stack.pop_back();
      component.push_back(g.node_at(u));
      for (const auto v : g.neighbours(u)) {
        if (!seen[v]) {
          seen[v] = true;
          stack.push_back(v);
        }
      }
    }
    if (component.size() >= min_size) {
      std::sort(component.begin(), component.end());
      out.push_back(std::move(component));
    }
  }
  sort_node_sets(out);
  return out;
}

class CliqueLimitError : public std::runtime_error {
 public:
  explicit CliqueLimitError(std::size_t limit)
      : std::runtime_error("more than " + std::to_string(limit) +
                           " maximal cliques; narrow the query scope or raise the clique limit"),
        limit_(limit) {}
  std::size_t limit() const { return limit_; }

 private:
  std::size_t limit_;
};

namespace detail {

using Indices = std::vector<std::size_t>;

inline Indices intersect(const Indices& a, const Indices& b) {
  Indices out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline std::size_t intersection_size(const Indices& a, const Indices& b) {
  std::size_t n = 0;
  for (std::size_t i = 0, j = 0; i < a.size() && j < b.size();) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      ++n, ++i, ++j;
    }
  }
  return n;
}

class CliqueEnumerator {
 public:
  CliqueEnumerator(const CoauthorGraph& g, std::size_t min_size, std::size_t limit)
      : g_(g), min_size_(min_size), limit_(limit) {}

  // Tomita pivoting inside a degeneracy-ordered outer loop.
  std::vector<NodeSet> run() {
    const auto order = degeneracy_order();
    std::vector<std::size_t> position(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) position[order[i]] = i;
    for (const auto v : order) {
      Indices p, x;
      for (const auto w : g_.neighbours(v)) (position[w] > position[v] ? p : x).push_back(w);
      Indices r{v};
      expand(r, std::move(p), std::move(x));
    }
    return std::move(found_);
  }

 private:
  std::vector<std::size_t> degeneracy_order() const {
    const auto n = g_.node_count();
    std::vector<std::size_t> degree(n);
    std::size_t max_degree = 0;
    for (std::size_t i = 0; i < n; ++i) max_degree = std::max(max_degree, degree[i] = g_.neighbours(i).size());
    std::vector<std::vector<std::size_t>> buckets(max_degree + 1);
    for (std::size_t i = 0; i < n; ++i) buckets[degree[i]].push_back(i);
    std::vector<bool> removed(n, false);
    std::vector<std::size_t> order;
    order.reserve(n);
    std::size_t d = 0;
    while (order.size() < n) {
      d = std::min(d, max_degree);
      while (buckets[d].empty()) ++d;
      const auto v = buckets[d].back();
      buckets[d].pop_back();
      if (removed[v] || degree[v] != d) continue;
      removed[v] = true;
      order.push_back(v);
      for (const auto w : g_.neighbours(v)) {
        if (!removed[w]) buckets[--degree[w]].push_back(w);
      }
      if (d > 0) --d;
    }
    return order;
  }

  void expand(Indices& r, Indices p, Indices x) {
    if (p.empty()) {
      if (x.empty()) report(r);
      return;
    }
    std::size_t pivot = p.front(), best = 0;
    bool first = true;
    for (const auto* side : {&p, &x}) {
      for (const auto u : *side) {
        const auto k = intersection_size(p, g_.neighbours(u));
        if (first || k > best) pivot = u, best = k, first = false;
      }
    }
    const auto& pivot_adj = g_.neighbours(pivot);
    Indices candidates;
    std::set_difference(p.begin(), p.end(), pivot_adj.begin(), pivot_adj.end(), std::back_inserter(candidates));
    for (const auto v : candidates) {
      const auto& adj = g_.neighbours(v);
      r.push_back(v);
      expand(r, intersect(p, adj), intersect(x, adj));
      r.pop_back();
      p.erase(std::lower_bound(p.begin(), p.end(), v));
      x.insert(std::lower_bound(x.begin(), x.end(), v), v);
    }
  }

  void report(const Indices& r) {
    if (r.size() < min_size_) return;
    if (found_.size() >= limit_) throw CliqueLimitError(limit_);
    NodeSet clique;
    clique.reserve(r.size());
    for (const auto i : r) clique.push_back(g_.node_at(i));
    std::sort(clique.begin(), clique.end());
    found_.push_back(std::move(clique));
  }

  const CoauthorGraph& g_;
  std::size_t min_size_;
  std::size_t limit_;
  std::vector<NodeSet> found_;
};

}  // namespace detail

inline constexpr std::size_t kDefaultCliqueLimit = 5'000'000;

/// Every maximal clique with at least `min_size` members (isolated authors
/// are maximal cliques of size 1).
inline std::vector<NodeSet> maximal_cliques(const CoauthorGraph& g, std::size_t limit = kDefaultCliqueLimit,
                                            std::size_t min_size = 2) {
  auto cliques = detail::CliqueEnumerator(g, min_size, limit).run();
  sort_node_sets(cliques);
  return cliques;
}

// ---------------------------------------------------------------------------
// Citation statistics
// ---------------------------------------------------------------------------

/// Author -> citation sum; nullopt when none of the author's publications
/// carries a citation count.
using CitationIndex = std::unordered_map<AuthorId, std::optional<std::int64_t>>;

inline CitationIndex in_scope_citations(std::span<const ScopedPublication> pubs) {
  CitationIndex index;
  for (const auto& p : pubs) {
    NodeSet authors = p.authors;
    std::sort(authors.begin(), authors.end());
    authors.erase(std::unique(authors.begin(), authors.end()), authors.end());
    for (const auto a : authors) {
      auto& slot = index[a];
      if (p.n_citations) slot = slot.value_or(0) + *p.n_citations;
    }
  }
  return index;
}

struct CliqueStat {
  NodeSet members;
  std::size_t clique_size = 0;
  double avg_author_citations = 0.0;
  std::int64_t max_author_citations = 0;
  NodeSet without_citation_data;
};

inline std::vector<CliqueStat> clique_stats(const std::vector<NodeSet>& cliques, const CitationIndex& citations) {
  std::vector<CliqueStat> out;
  out.reserve(cliques.size());
  for (const auto& clique : cliques) {
    CliqueStat s;
    s.members = clique;
    s.clique_size = clique.size();
    std::int64_t total = 0;
    for (const auto a : clique) {
      const auto it = citations.find(a);
      std::int64_t c = 0;
      if (it == citations.end() || !it->second) {
        s.without_citation_data.push_back(a);
      } else {
        c = *it->second;
      }
      total += c;
      s.max_author_citations = std::max(s.max_author_citations, c);
    }
    if (!clique.empty()) s.avg_author_citations = static_cast<double>(total) / static_cast<double>(clique.size());
    out.push_back(std::move(s));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Distributions and summary
// ---------------------------------------------------------------------------

struct CdfPoint {
  std::size_t article_count = 0;
  double cumulative_fraction = 0.0;
  friend bool operator==(const CdfPoint&, const CdfPoint&) = default;
};

/// Empirical CDF of the number of in-scope articles per author.
inline std::vector<CdfPoint> articles_per_author_cdf(std::span<const ScopedPublication> pubs) {
  std::map<AuthorId, std::size_t> per_author;
  for (const auto& p : pubs) {
    NodeSet authors = p.authors;
    std::sort(authors.begin(), authors.end());
    authors.erase(std::unique(authors.begin(), authors.end()), authors.end());
    for (const auto a : authors) ++per_author[a];
  }
  std::map<std::size_t, std::size_t> histogram;
  for (const auto& [_, n] : per_author) ++histogram[n];
  std::vector<CdfPoint> out;
  std::size_t cumulative = 0;
  const auto total = per_author.size();
  for (const auto& [count, authors] : histogram) {
    cumulative += authors;
    out.push_back({count, cumulative == total ? 1.0 : static_cast<double>(cumulative) / static_cast<double>(total)});
  }
  return out;
}

struct CommunitySummary {
  std::size_t articles = 0;
  std::size_t authors = 0;
  std::size_t coauthorship_relations = 0;
  std::size_t unique_relations = 0;
  std::size_t cliques = 0;
  std::size_t largest_clique = 0;

  friend bool operator==(const CommunitySummary&, const CommunitySummary&) = default;
};

/// `maximal` must hold every maximal clique of size >= 2. The largest clique
/// is 1 when authors exist but no two of them share a publication.
inline CommunitySummary community_summary(const CoauthorGraph& g, const std::vector<NodeSet>& maximal) {
  CommunitySummary s;
  s.articles = g.scope().size();
  s.authors = g.node_count();
  s.coauthorship_relations = g.relation_occurrences();
  s.unique_relations = g.edges().size();
  s.cliques = maximal.size();
  s.largest_clique = s.authors == 0 ? 0 : 1;
  for (const auto& c : maximal) s.largest_clique = std::max(s.largest_clique, c.size());
  return s;
}

inline CommunitySummary community_summary(std::span<const ScopedPublication> pubs,
                                          std::size_t clique_limit = kDefaultCliqueLimit) {
  const auto g = CoauthorGraph::build(pubs);
  return community_summary(g, maximal_cliques(g, clique_limit));
}

/// Distinct pairs over pair occurrences; absent when there are no pairs.
inline std::optional<double> one_time_fraction(const CommunitySummary& s) {
  if (s.coauthorship_relations == 0) return std::nullopt;
  return static_cast<double>(s.unique_relations) / static_cast<double>(s.coauthorship_relations);
}

inline std::optional<double> one_time_fraction(std::span<const ScopedPublication> pubs) {
  const auto g = CoauthorGraph::build(pubs);
  if (g.relation_occurrences() == 0) return std::nullopt;
  return static_cast<double>(g.edges().size()) / static_cast<double>(g.relation_occurrences());
}

/// size -> number of maximal cliques of that size.
inline std::map<std::size_t, std::size_t> cliques_by_size(const std::vector<NodeSet>& cliques) {
  std::map<std::size_t, std::size_t> out;
  for (const auto& c : cliques) ++out[c.size()];
  return out;
}

/// size -> number of distinct authors belonging to some clique of that size.
inline std::map<std::size_t, std::size_t> authors_by_clique_size(const std::vector<NodeSet>& cliques) {
  std::map<std::size_t, std::set<AuthorId>> members;
  for (const auto& c : cliques) members[c.size()].insert(c.begin(), c.end());
  std::map<std::size_t, std::size_t> out;
  for (const auto& [size, authors] : members) out[size] = authors.size();
  return out;
}

// ---------------------------------------------------------------------------
// Full analysis and export
// ---------------------------------------------------------------------------

struct CommunityOptions {
  std::size_t min_component_size = 5;
  std::size_t clique_limit = kDefaultCliqueLimit;
  /// Replaces in-scope citation sums when set.
  const CitationIndex* citations = nullptr;
};

struct CommunityReport {
  CoauthorGraph graph;
  CommunitySummary summary;
  std::optional<double> one_time_fraction;
  std::vector<NodeSet> components;
  std::vector<NodeSet> cliques;
  std::vector<CliqueStat> clique_stats;
  std::map<std::size_t, std::size_t> cliques_by_size;
  std::map<std::size_t, std::size_t> authors_by_clique_size;
  std::vector<CdfPoint> articles_per_author;
  bool global_citations = false;
};

inline CommunityReport analyze_community(std::span<const ScopedPublication> pubs, const CommunityOptions& opt = {}) {
  CommunityReport r;
  r.graph = CoauthorGraph::build(pubs);
  r.cliques = maximal_cliques(r.graph, opt.clique_limit);
  r.summary = community_summary(r.graph, r.cliques);
  r.one_time_fraction = one_time_fraction(r.summary);
  r.components = connected_components(r.graph, opt.min_component_size);
  r.global_citations = opt.citations != nullptr;
  r.clique_stats = clique_stats(r.cliques, opt.citations ? *opt.citations : in_scope_citations(pubs));
  r.cliques_by_size = cliques_by_size(r.cliques);
  r.authors_by_clique_size = authors_by_clique_size(r.cliques);
  r.articles_per_author = articles_per_author_cdf(pubs);
  return r;
}

/// One `author_id author_id weight` line per edge.
inline std::string to_edge_list(const CoauthorGraph& g) {
  std::string out;
  for (const auto& e : g.edges()) {
    out += std::to_string(e.a) + " " + std::to_string(e.b) + " " + std::to_string(e.weight) + "\n";
  }
  return out;
}

/// Graphviz DOT; authors without co-authors appear as lone nodes.
inline std::string to_dot(const CoauthorGraph& g, const std::map<AuthorId, std::string>* labels = nullptr) {
  std::string out = "graph coauthors {\n";
  for (const auto a : g.nodes()) {
    out += "  " + std::to_string(a);
    if (labels) {
      if (const auto it = labels->find(a); it != labels->end()) {
        std::string escaped;
        for (const char c : it->second) {
          if (c == '"' || c == '\\') escaped.push_back('\\');
          escaped.push_back(c);
        }
        out += " [label=\"" + escaped + "\"]";
      }
    }
    out += ";\n";
  }
  for (const auto& e : g.edges()) {
    out += "  " + std::to_string(e.a) + " -- " + std::to_string(e.b) + " [weight=" + std::to_string(e.weight) + "];\n";
  }
  out += "}\n";
  return out;
}

inline nlohmann::json to_json(const CommunitySummary& s) {
  return {{"articles", s.articles},
          {"authors", s.authors},
          {"coauthorship_relations", s.coauthorship_relations},
          {"unique_relations", s.unique_relations},
          {"cliques", s.cliques},
          {"largest_clique", s.largest_clique}};
}

inline nlohmann::json to_json(const CommunityReport& r) {
  auto series = [](const std::map<std::size_t, std::size_t>& m) {
    auto a = nlohmann::json::array();
    for (const auto& [size, n] : m) a.push_back({{"size", size}, {"count", n}});
    return a;
  };
  auto stats = nlohmann::json::array();
  std::set<AuthorId> missing;
  for (const auto& s : r.clique_stats) {
    stats.push_back({{"members", s.members},
                     {"clique_size", s.clique_size},
                     {"avg_author_citations", s.avg_author_citations},
                     {"max_author_citations", s.max_author_citations}});
    missing.insert(s.without_citation_data.begin(), s.without_citation_data.end());
  }
  auto cdf = nlohmann::json::array();
  for (const auto& p : r.articles_per_author) {
    cdf.push_back({{"article_count", p.article_count}, {"cumulative_fraction", p.cumulative_fraction}});
  }
  nlohmann::json j{{"summary", to_json(r.summary)},
                   {"components", r.components},
                   {"cliques", r.cliques},
                   {"clique_stats", stats},
                   {"citation_scope", r.global_citations ? "global" : "in_scope"},
                   {"authors_without_citation_data", missing},
                   {"cliques_by_size", series(r.cliques_by_size)},
                   {"authors_by_clique_size", series(r.authors_by_clique_size)},
                   {"articles_per_author_cdf", cdf}};
  j["one_time_fraction"] = r.one_time_fraction ? nlohmann::json(*r.one_time_fraction) : nlohmann::json(nullptr);
  return j;
}

}  // namespace bibcorpus

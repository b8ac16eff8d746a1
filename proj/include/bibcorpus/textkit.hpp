#pragma once

// Keyword pipeline: preprocessing, document-term counts with a
// document-frequency cutoff, smoothed TF-IDF and per-article top-k
// aggregation into a ranking.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "json.hpp"

#include "bibcorpus/corpus.hpp"
#include "bibcorpus/stopwords.hpp"
#include "bibcorpus/text.hpp"

namespace bibcorpus {

// ---------------------------------------------------------------------------
// Lemmatization
// ---------------------------------------------------------------------------

/// Rule-based noun lemmatizer: regular English plurals are reduced to the
/// singular, irregular forms come from an exception table. Verb forms are
/// left alone ("scheduling", "modeled" stay as they are).
class Lemmatizer {
 public:
  Lemmatizer() {
    static constexpr std::pair<std::string_view, std::string_view> kIrregular[] = {
        {"analyses", "analysis"}, {"appendices", "appendix"}, {"axes", "axis"},
        {"bases", "basis"}, {"children", "child"}, {"corpora", "corpus"},
        {"crises", "crisis"}, {"criteria", "criterion"}, {"curricula", "curriculum"},
        {"diagnoses", "diagnosis"}, {"feet", "foot"}, {"foci", "focus"},
        {"formulae", "formula"}, {"geese", "goose"}, {"halves", "half"},
        {"hypotheses", "hypothesis"}, {"indices", "index"}, {"knives", "knife"},
        {"leaves", "leaf"}, {"lives", "life"}, {"loci", "locus"},
        {"matrices", "matrix"}, {"maxima", "maximum"}, {"media", "medium"},
        {"men", "man"}, {"mice", "mouse"}, {"minima", "minimum"},
        {"nuclei", "nucleus"}, {"optima", "optimum"}, {"phenomena", "phenomenon"},
        {"quanta", "quantum"}, {"radii", "radius"}, {"schemata", "schema"},
        {"selves", "self"}, {"spectra", "spectrum"}, {"stimuli", "stimulus"},
        {"strata", "stratum"}, {"syntheses", "synthesis"}, {"teeth", "tooth"},
        {"theses", "thesis"}, {"vertices", "vertex"}, {"wives", "wife"},
        {"women", "woman"}, {"wolves", "wolf"},
        // Words that look plural but are not (or whose plural rule misfires).
        {"always", "always"}, {"atlas", "atlas"}, {"alias", "alias"},
        {"avalanches", "avalanche"}, {"bias", "bias"}, {"biases", "bias"},
        {"caches", "cache"}, {"canvas", "canvas"}, {"chaos", "chaos"},
        {"does", "does"}, {"gas", "gas"}, {"headaches", "headache"},
        {"kubernetes", "kubernetes"}, {"lens", "lens"}, {"means", "means"},
        {"news", "news"}, {"niches", "niche"}, {"ourselves", "ourselves"},
        {"perhaps", "perhaps"}, {"series", "series"}, {"species", "species"},
        {"themselves", "themselves"}, {"whereas", "whereas"}, {"yourselves", "yourselves"},
        {"saas", "saas"}, {"paas", "paas"}, {"iaas", "iaas"}, {"faas", "faas"},
        {"daas", "daas"}, {"mathematics", "mathematics"}, {"physics", "physics"},
        {"economics", "economics"}, {"ethics", "ethics"}, {"cookies", "cookie"},
        {"movies", "movie"}, {"thus", "thus"}, {"plus", "plus"}, {"versus", "versus"},
    };
    for (const auto& [from, to] : kIrregular) exceptions_.emplace(from, to);
  }

  /// Adds or overrides `word <TAB> lemma` pairs, one per line.
  void add_exceptions(std::istream& in) {
    std::string line;
    while (std::getline(in, line)) {
      const auto s = trim(line);
      if (s.empty() || s[0] == '#') continue;
      const auto tab = s.find('\t');
      if (tab == std::string_view::npos) continue;
      exceptions_[std::string(trim(s.substr(0, tab)))] = std::string(trim(s.substr(tab + 1)));
    }
  }

  void add_exception(std::string word, std::string lemma) { exceptions_[std::move(word)] = std::move(lemma); }

  std::string lemmatize(std::string_view word) const {
    if (const auto it = exceptions_.find(std::string(word)); it != exceptions_.end()) return it->second;
    if (word.size() <= 3) return std::string(word);
    if (!std::all_of(word.begin(), word.end(), [](char c) { return c >= 'a' && c <= 'z'; })) {
      return std::string(word);
    }
    auto ends = [&](std::string_view suffix) {
      return word.size() > suffix.size() && word.substr(word.size() - suffix.size()) == suffix;
    };
    auto cut = [&](std::size_t n, std::string_view add = {}) {
      return std::string(word.substr(0, word.size() - n)) + std::string(add);
    };
    if (!ends("s")) return std::string(word);
    if (ends("ss") || ends("us") || ends("is") || ends("'s")) return std::string(word);
    if (ends("ies") && word.size() > 4) return cut(3, "y");
    if (ends("sses")) return cut(2);
    if (ends("xes") || ends("ches") || ends("shes")) return cut(2);
    return cut(1);
  }

 private:
  std::unordered_map<std::string, std::string> exceptions_;
};

// ---------------------------------------------------------------------------
// Preprocessing
// ---------------------------------------------------------------------------

inline std::vector<std::string> read_word_list(std::istream& in) {
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    const auto s = trim(line);
    if (s.empty() || s[0] == '#') continue;
    words.emplace_back(s);
  }
  return words;
}

inline std::vector<std::string> load_word_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open word list " + path);
  return read_word_list(in);
}

/// lowercase -> drop characters other than word characters and whitespace
/// -> split on whitespace -> lemmatize -> drop stop words.
class Preprocessor {
 public:
  /// English plus custom built-in stop words.
  Preprocessor() {
    for (const auto w : english_stopwords()) stopwords_.emplace(w);
    for (const auto w : custom_stopwords()) stopwords_.emplace(w);
  }

  explicit Preprocessor(std::vector<std::string> stopwords, Lemmatizer lemmatizer = {})
      : lemmatizer_(std::move(lemmatizer)) {
    stopwords_.insert(stopwords.begin(), stopwords.end());
  }

  const std::unordered_set<std::string>& stopwords() const { return stopwords_; }
  bool is_stopword(const std::string& w) const { return stopwords_.count(w) != 0; }

  std::vector<std::string> operator()(std::string_view text) const {
    const auto lower = fold_case(text);
    std::vector<std::string> tokens;
    std::string current;
    auto flush = [&] {
      if (current.empty()) return;
      auto lemma = lemmatizer_.lemmatize(current);
      if (!lemma.empty() && !stopwords_.count(lemma)) tokens.push_back(std::move(lemma));
      current.clear();
    };
    for (std::size_t i = 0; i < lower.size();) {
      const auto cp = utf8::next(lower, i);
      if (cp.valid && is_space_code_point(cp.value)) {
        flush();
      } else if (cp.valid && is_word_code_point(cp.value)) {
        current.append(lower, i, cp.length);
      }
      i += cp.length;
    }
    flush();
    return tokens;
  }

 private:
  Lemmatizer lemmatizer_;
  std::unordered_set<std::string> stopwords_;
};

inline std::vector<std::string> preprocess(std::string_view text) {
  static const Preprocessor kDefault;
  return kDefault(text);
}

/// Title and abstract joined with one space.
inline std::string article_text(const Publication& p) {
  return p.abstract ? p.title + " " + *p.abstract : p.title;
}

// ---------------------------------------------------------------------------
// Count matrix and TF-IDF
// ---------------------------------------------------------------------------

struct TokenDoc {
  std::int64_t publication_id = 0;
  std::vector<std::string> tokens;
};

struct TermCount {
  std::size_t term = 0;
  std::uint32_t count = 0;
  friend bool operator==(const TermCount&, const TermCount&) = default;
};

/// Sparse document-term counts over the kept vocabulary. Terms are indexed
/// in lexicographic order.
struct CountMatrix {
  std::vector<std::string> terms;
  std::unordered_map<std::string, std::size_t> vocabulary;
  std::vector<std::int64_t> doc_ids;
  std::vector<std::vector<TermCount>> doc_counts;  // sorted by term index
  std::vector<std::size_t> doc_freq;
  std::size_t n_docs = 0;
  double max_df = 0.9;

  std::size_t row_of(std::int64_t publication_id) const {
    const auto it = std::find(doc_ids.begin(), doc_ids.end(), publication_id);
    if (it == doc_ids.end()) {
      throw std::invalid_argument("publication " + std::to_string(publication_id) + " is not in the corpus");
    }
    return static_cast<std::size_t>(it - doc_ids.begin());
  }
};

/// A term is dropped when it occurs in a fraction of documents >= max_df.
/// max_df == 1 disables the cutoff.
inline bool exceeds_max_df(std::size_t df, std::size_t n_docs, double max_df) {
  if (max_df >= 1.0) return false;
  return static_cast<double>(df) / static_cast<double>(n_docs) >= max_df;
}

inline CountMatrix build_count_matrix(std::span<const TokenDoc> docs, double max_df = 0.9) {
  if (docs.empty()) throw std::invalid_argument("cannot build a count matrix from an empty corpus");
  if (!(max_df > 0.0 && max_df <= 1.0)) throw std::invalid_argument("max_df must be in (0, 1]");

  std::map<std::string, std::size_t> df;
  std::vector<std::map<std::string, std::uint32_t>> raw(docs.size());
  for (std::size_t d = 0; d < docs.size(); ++d) {
    for (const auto& t : docs[d].tokens) ++raw[d][t];
    for (const auto& [t, _] : raw[d]) ++df[t];
  }

  CountMatrix m;
  m.n_docs = docs.size();
  m.max_df = max_df;
  for (const auto& [term, freq] : df) {
    if (exceeds_max_df(freq, m.n_docs, max_df)) continue;
    m.vocabulary.emplace(term, m.terms.size());
    m.terms.push_back(term);
    m.doc_freq.push_back(freq);
  }
  m.doc_ids.reserve(docs.size());
  m.doc_counts.resize(docs.size());
  for (std::size_t d = 0; d < docs.size(); ++d) {
    m.doc_ids.push_back(docs[d].publication_id);
    for (const auto& [t, c] : raw[d]) {
      if (const auto it = m.vocabulary.find(t); it != m.vocabulary.end()) {
        m.doc_counts[d].push_back({it->second, c});
      }
    }
  }
  return m;
}

struct TermWeight {
  std::size_t term = 0;
  std::uint32_t tf = 0;
  double weight = 0.0;
};

struct TfidfDoc {
  std::int64_t publication_id = 0;
  std::vector<TermWeight> weights;  // sorted by term index
};

/// ln((1 + N) / (1 + df)) + 1 per vocabulary term.
inline std::vector<double> inverse_document_frequency(const CountMatrix& m) {
  std::vector<double> idf(m.terms.size());
  const double n = static_cast<double>(m.n_docs);
  for (std::size_t t = 0; t < idf.size(); ++t) {
    idf[t] = std::log((1.0 + n) / (1.0 + static_cast<double>(m.doc_freq[t]))) + 1.0;
  }
  return idf;
}

/// tf * idf per document, each document vector scaled to unit L2 norm.
inline std::vector<TfidfDoc> tfidf(const CountMatrix& m) {
  const auto idf = inverse_document_frequency(m);
  std::vector<TfidfDoc> out(m.doc_counts.size());
  for (std::size_t d = 0; d < m.doc_counts.size(); ++d) {
    auto& doc = out[d];
    doc.publication_id = m.doc_ids[d];
    double sq = 0.0;
    for (const auto& tc : m.doc_counts[d]) {
      const double w = static_cast<double>(tc.count) * idf[tc.term];
      doc.weights.push_back({tc.term, tc.count, w});
      sq += w * w;
    }
    if (sq > 0.0) {
      const double norm = std::sqrt(sq);
      for (auto& tw : doc.weights) tw.weight /= norm;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Rankings
// ---------------------------------------------------------------------------

/// The `k` highest-weighted terms of one document: weight descending, then
/// raw term frequency descending, then term ascending.
inline std::vector<std::string> top_terms(const CountMatrix& m, const TfidfDoc& doc, std::size_t k) {
  std::vector<const TermWeight*> order;
  order.reserve(doc.weights.size());
  for (const auto& tw : doc.weights) {
    if (tw.weight > 0.0) order.push_back(&tw);
  }
  const auto better = [&](const TermWeight* a, const TermWeight* b) {
    if (a->weight != b->weight) return a->weight > b->weight;
    if (a->tf != b->tf) return a->tf > b->tf;
    return m.terms[a->term] < m.terms[b->term];
  };
  const auto take = std::min(k, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(take), order.end(), better);
  std::vector<std::string> out;
  out.reserve(take);
  for (std::size_t i = 0; i < take; ++i) out.push_back(m.terms[order[i]->term]);
  return out;
}

struct KeywordCount {
  std::string keyword;
  std::size_t count = 0;
  friend bool operator==(const KeywordCount&, const KeywordCount&) = default;
};

/// Keywords by aggregated count descending, then keyword ascending.
struct KeywordRanking {
  std::vector<KeywordCount> entries;
  std::set<std::string> suppressed;
  bool truncated = false;  // fewer than the requested number were available
  std::size_t documents = 0;

  /// 1-based rank of `keyword`, or 0 when absent.
  std::size_t rank_of(std::string_view keyword) const {
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (entries[i].keyword == keyword) return i + 1;
    }
    return 0;
  }
  std::vector<std::string> keywords() const {
    std::vector<std::string> out;
    for (const auto& e : entries) out.push_back(e.keyword);
    return out;
  }
};

struct KeywordOptions {
  std::size_t k_per_doc = 50;
  std::size_t top_n = 10;
  double max_df = 0.9;
  std::set<std::string> suppress;
};

/// Counts, over the interest documents, how often each term lands in a
/// document's top-`k_per_doc` list, then returns the `top_n` most frequent
/// terms not in `suppress`.
inline KeywordRanking top_keywords(const CountMatrix& m, const std::vector<TfidfDoc>& weights,
                                   std::span<const std::int64_t> interest_ids, const KeywordOptions& opt) {
  if (opt.top_n == 0) throw std::invalid_argument("top_n must be at least 1");
  std::unordered_map<std::int64_t, std::size_t> row;
  for (std::size_t i = 0; i < m.doc_ids.size(); ++i) row.emplace(m.doc_ids[i], i);
  std::map<std::string, std::size_t> counts;
  for (const auto id : interest_ids) {
    const auto it = row.find(id);
    if (it == row.end()) {
      throw std::invalid_argument("interest publication " + std::to_string(id) + " is not in the corpus");
    }
    for (auto& term : top_terms(m, weights[it->second], opt.k_per_doc)) ++counts[term];
  }
  std::vector<KeywordCount> all;
  for (auto& [term, count] : counts) {
    if (!opt.suppress.count(term)) all.push_back({term, count});
  }
  std::stable_sort(all.begin(), all.end(), [](const KeywordCount& a, const KeywordCount& b) {
    if (a.count != b.count) return a.count > b.count;
    return a.keyword < b.keyword;
  });
  KeywordRanking ranking;
  ranking.suppressed = opt.suppress;
  ranking.documents = interest_ids.size();
  ranking.truncated = all.size() < opt.top_n;
  if (all.size() > opt.top_n) all.resize(opt.top_n);
  ranking.entries = std::move(all);
  return ranking;
}

inline std::vector<TokenDoc> tokenize_publications(std::span<const Publication> pubs, const Preprocessor& pre) {
  std::vector<TokenDoc> docs;
  docs.reserve(pubs.size());
  for (const auto& p : pubs) docs.push_back({p.id, pre(article_text(p))});
  return docs;
}

/// Fits the corpus, then ranks the interest subset. An empty interest set
/// (or corpus) yields an empty, truncated ranking.
inline KeywordRanking rank_keywords(std::span<const Publication> corpus, std::span<const std::int64_t> interest,
                                    const Preprocessor& pre, const KeywordOptions& opt) {
  if (opt.top_n == 0) throw std::invalid_argument("top_n must be at least 1");
  if (corpus.empty() || interest.empty()) {
    KeywordRanking empty;
    empty.suppressed = opt.suppress;
    empty.truncated = true;
    return empty;
  }
  const auto docs = tokenize_publications(corpus, pre);
  const auto matrix = build_count_matrix(docs, opt.max_df);
  return top_keywords(matrix, tfidf(matrix), interest, opt);
}

/// Corpus and interest set are the same publications.
inline KeywordRanking rank_keywords(std::span<const Publication> pubs, const Preprocessor& pre,
                                    const KeywordOptions& opt) {
  std::vector<std::int64_t> ids;
  ids.reserve(pubs.size());
  for (const auto& p : pubs) ids.push_back(p.id);
  return rank_keywords(pubs, ids, pre, opt);
}

inline std::string to_csv(const KeywordRanking& r) {
  std::string out = "rank,keyword,count\n";
  for (std::size_t i = 0; i < r.entries.size(); ++i) {
    out += std::to_string(i + 1) + "," + r.entries[i].keyword + "," + std::to_string(r.entries[i].count) + "\n";
  }
  return out;
}

inline nlohmann::json to_json(const KeywordRanking& r) {
  auto entries = nlohmann::json::array();
  for (std::size_t i = 0; i < r.entries.size(); ++i) {
    entries.push_back({{"rank", i + 1}, {"keyword", r.entries[i].keyword}, {"count", r.entries[i].count}});
  }
  return {{"entries", entries},
          {"suppressed", r.suppressed},
          {"truncated", r.truncated},
          {"documents", r.documents}};
}

}  // namespace bibcorpus

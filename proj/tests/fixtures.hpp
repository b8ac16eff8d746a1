#pragma once

// Generated test inputs: the three-source duplicate fixture, temporary
// directories and the large JSON-lines dump.

#include <unistd.h>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bibcorpus/corpus.hpp"

namespace fixtures {

namespace fs = std::filesystem;

class TempDir {
 public:
  TempDir() {
    std::string pattern = (fs::temp_directory_path() / "bibcorpus-XXXXXX").string();
    if (!mkdtemp(pattern.data())) throw std::runtime_error("mkdtemp failed");
    path_ = pattern;
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const fs::path& path() const { return path_; }
  std::string file(const std::string& name) const { return (path_ / name).string(); }
  std::string write(const std::string& name, const std::string& content) const {
    std::ofstream(file(name), std::ios::binary) << content;
    return file(name);
  }

 private:
  fs::path path_;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---------------------------------------------------------------------------
// The same 20 papers in three dumps. Source A (XML) ends titles with a dot,
// uses XML/HTML entities and carries author keys; Source B and Source C
// spell titles without the dot, encode characters differently, use other
// venue spellings and author spellings, and disagree on citation counts.
// ---------------------------------------------------------------------------

struct ExpectedPaper {
  std::string normalized_title;
  std::string venue;
  int year = 0;
  std::optional<std::int64_t> n_citations;
  std::vector<std::string> author_keys;
};

struct DuplicateFixture {
  std::string source_a;
  std::string source_b;
  std::string source_c;
  std::vector<ExpectedPaper> expected;
};

inline std::string json_escape(const std::string& s) {
  std::string out;
  for (const char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

inline DuplicateFixture duplicate_fixture() {
  // {plain title, title as Source A writes it, as Source B, as Source C}
  struct Title {
    std::string plain, a, b, c;
  };
  const std::vector<Title> titles{
      {"Deadline-constrained workflow scheduling in clouds", "Deadline-constrained workflow scheduling in clouds.",
       "Deadline-constrained workflow scheduling in clouds", "Deadline-constrained workflow scheduling in clouds"},
      {"Café workflows: elastic provisioning", "Caf&eacute; workflows: elastic provisioning.",
       "Caf\\u00e9 workflows: elastic provisioning", "Caf&#233; workflows: elastic provisioning"},
      {"Cost & time trade-offs for scientific workflows", "Cost &amp; time trade-offs for scientific workflows.",
       "Cost &amp; time trade-offs for scientific workflows", "Cost & time trade-offs for scientific workflows"},
      {"Scheduling <DAG> tasks on heterogeneous clusters", "Scheduling &lt;DAG&gt; tasks on heterogeneous clusters.",
       "Scheduling &lt;DAG&gt; tasks on heterogeneous clusters", "Scheduling <DAG> tasks on heterogeneous clusters"},
      {"Energy-aware allocation for data centers", "Energy-aware allocation for data centers.",
       "Energy-aware allocation for data centers", "Energy-aware allocation for data centers."},
      {"Autoscaling policies – an empirical study", "Autoscaling policies &#8211; an empirical study.",
       "Autoscaling policies \\u2013 an empirical study", "Autoscaling policies &ndash; an empirical study"},
      {"Naïve Bayes meets workflow planning", "Na&iuml;ve Bayes meets workflow planning.",
       "Na\\u00efve Bayes meets workflow planning", "Na&#xEF;ve Bayes meets workflow planning"},
      {"Serverless workflows at scale", "Serverless workflows at scale.", "Serverless workflows at scale",
       "Serverless  workflows at scale"},
      {"Reliability of workflow engines", "Reliability of workflow engines.", "Reliability of Workflow Engines",
       "reliability of workflow engines"},
      {"Portfolio scheduling for data centers", "Portfolio scheduling for data centers.",
       "Portfolio scheduling for data centers", "Portfolio scheduling for data centers"},
      {"Elastic resource provisioning for scientific workflows",
       "Elastic resource provisioning for scientific workflows.",
       "Elastic resource provisioning for scientific workflows",
       "Elastic resource provisioning for scientific workflows"},
      {"A survey of workflow formalisms", "A survey of workflow formalisms.", "A survey of workflow formalisms",
       "A survey of workflow formalisms"},
      {"Multi-objective workflow scheduling with genetic algorithms",
       "Multi-objective workflow scheduling with genetic algorithms.",
       "Multi-objective workflow scheduling with genetic algorithms",
       "Multi-objective workflow scheduling with genetic algorithms"},
      {"Budget-aware workflow execution", "Budget-aware workflow execution.", "Budget-aware workflow execution",
       "Budget-aware workflow execution"},
      {"Workflow-as-a-service in the cloud", "Workflow-as-a-service in the cloud.",
       "Workflow-as-a-service in the cloud", "Workflow-as-a-service in the cloud"},
      {"Predicting task runtimes for workflow scheduling", "Predicting task runtimes for workflow scheduling.",
       "Predicting task runtimes for workflow scheduling", "Predicting task runtimes for workflow scheduling"},
      {"Data-aware placement of workflow tasks", "Data-aware placement of workflow tasks.",
       "Data-aware placement of workflow tasks", "Data-aware placement of workflow tasks"},
      {"Fairness in multi-tenant workflow systems", "Fairness in multi-tenant workflow systems.",
       "Fairness in multi-tenant workflow systems", "Fairness in multi-tenant workflow systems"},
      {"Provisioning GPUs for deep learning workflows", "Provisioning GPUs for deep learning workflows.",
       "Provisioning GPUs for deep learning workflows", "Provisioning GPUs for deep learning workflows"},
      {"Straße: streaming workflow runtime", "Stra&szlig;e: streaming workflow runtime.",
       "Stra\\u00dfe: streaming workflow runtime", "Stra&szlig;e: streaming workflow runtime"},
  };

  DuplicateFixture f;
  std::ostringstream a, b, c;
  a << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<!DOCTYPE dblp SYSTEM \"dblp.dtd\">\n<dblp>\n";
  for (std::size_t i = 0; i < titles.size(); ++i) {
    const int year = 2009 + static_cast<int>(i % 10);
    const bool journal = i % 2 == 0;
    const bool has_doi = i % 3 == 0;
    const std::string doi = "10.1016/j.future." + std::to_string(year) + "." + std::to_string(100 + i);
    const std::vector<std::string> keys{"Author " + std::to_string(i) + " A", "Author " + std::to_string(i + 1) + " B",
                                        "Shared Author " + std::to_string(i % 4)};
    const std::optional<std::int64_t> cites_b = static_cast<std::int64_t>((i * 7) % 23);
    std::optional<std::int64_t> cites_c;
    if (i % 5 != 4) cites_c = static_cast<std::int64_t>((i * 5) % 19);

    // Source A
    a << "<" << (journal ? "article" : "inproceedings") << " key=\"" << (journal ? "journals/fgcs/P" : "conf/ccgrid/P")
      << i << "\" mdate=\"2020-01-01\">\n";
    for (std::size_t k = 0; k < keys.size(); ++k) {
      a << "<author>" << keys[k] << "</author>\n";
    }
    a << "<title>" << titles[i].a << "</title>\n";
    a << "<year>" << year << "</year>\n";
    a << (journal ? "<journal>Future Gener. Comput. Syst.</journal>\n" : "<booktitle>CCGrid</booktitle>\n");
    if (has_doi) a << "<ee>https://doi.org/" << doi << "</ee>\n";
    a << "</" << (journal ? "article" : "inproceedings") << ">\n";

    // Source B: venue in full, upper-case DOI, different author spellings.
    b << "{\"title\": \"" << titles[i].b << "\", \"year\": " << year << ", \"venue\": \""
      << (journal ? "Future Generation Computer Systems"
                  : "2015 15th IEEE/ACM International Symposium on Cluster, Cloud and Grid Computing")
      << "\", \"paperAbstract\": \"Abstract " << i << " about workflow scheduling.\"";
    if (has_doi) {
      std::string upper = doi;
      for (auto& ch : upper) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
      b << ", \"doi\": \"" << upper << "\"";
    }
    b << ", \"authors\": [{\"name\": \"B. Person" << i << "\"}], \"nCitations\": " << *cites_b << "}\n";

    // Source C: venue object, inverted abstract, optional citations.
    c << "{\"title\": \"" << json_escape(titles[i].c) << "\", \"year\": " << year << ", \"venue\": {\"raw\": \""
      << (journal ? "Future Gener. Comput. Syst." : "CCGRID") << "\"}"
      << ", \"indexed_abstract\": {\"IndexLength\": 3, \"InvertedIndex\": {\"Paper\": [0], \"number\": [1], \""
      << i << "\": [2]}}";
    c << ", \"authors\": [{\"name\": \"C. Someone" << i << "\"}]";
    if (cites_c) c << ", \"n_citation\": " << *cites_c;
    c << "}\n";

    ExpectedPaper e;
    e.normalized_title = bibcorpus::normalize_title(titles[i].plain);
    e.venue = journal ? "FGCS" : "CCGRID";
    e.year = year;
    e.n_citations = cites_c ? std::max(*cites_b, *cites_c) : *cites_b;
    e.author_keys = keys;
    f.expected.push_back(std::move(e));
  }
  a << "</dblp>\n";
  f.source_a = a.str();
  f.source_b = b.str();
  f.source_c = c.str();
  return f;
}

// ---------------------------------------------------------------------------
// Large JSON-lines dump: every 100th line is malformed.
// ---------------------------------------------------------------------------

struct LargeDumpStats {
  std::size_t lines = 0;
  std::size_t valid = 0;
  std::size_t malformed = 0;
};

inline LargeDumpStats write_large_dump(const std::string& path, std::size_t lines, std::uint32_t seed = 7) {
  std::ofstream out(path, std::ios::binary);
  std::mt19937 rng(seed);
  static const char* kWords[] = {"workflow", "cloud", "scheduling", "resource", "energy", "graph", "task",
                                 "deadline", "cost", "data", "stream", "edge", "serverless", "cluster"};
  std::uniform_int_distribution<int> word(0, 13), year(2000, 2019), cites(0, 500);
  LargeDumpStats s;
  std::string line;
  for (std::size_t i = 0; i < lines; ++i) {
    ++s.lines;
    if (i % 100 == 37) {
      ++s.malformed;
      switch (i % 3) {
        case 0: out << "{\"title\": \"truncated record " << i << "\", \"year\": 20\n"; break;
        case 1: out << "not json at all " << i << "\n"; break;
        default: out << "[\"an\", \"array\", " << i << "]\n"; break;
      }
      continue;
    }
    ++s.valid;
    line = "{\"title\": \"Paper ";
    line += std::to_string(i);
    line += " on ";
    line += kWords[word(rng)];
    line += " ";
    line += kWords[word(rng)];
    line += "\", \"year\": ";
    line += std::to_string(year(rng));
    line += ", \"venue\": \"";
    line += i % 2 ? "Future Generation Computer Systems" : "IPDPS";
    line += "\", \"paperAbstract\": \"We study ";
    line += kWords[word(rng)];
    line += " and ";
    line += kWords[word(rng)];
    line += ".\", \"authors\": [{\"name\": \"Writer ";
    line += std::to_string(i % 5000);
    line += "\"}], \"nCitations\": ";
    line += std::to_string(cites(rng));
    line += "}\n";
    out << line;
  }
  return s;
}

}  // namespace fixtures

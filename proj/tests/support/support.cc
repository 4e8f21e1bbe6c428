#include "support.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <queue>
#include <sstream>

#include "galaxy/error.h"
#include "galaxy/wikitext_links.h"

namespace galaxy::testing {

namespace fs = std::filesystem;
using nlohmann::json;

fs::path DataDir() { return fs::path(GALAXY_TEST_DATA_DIR); }

fs::path FixtureDir(const std::string &name) { return DataDir() / "fixtures" / name; }

std::shared_ptr<const FixtureCorpus> LoadFixture(const std::string &name) {
  return std::make_shared<FixtureCorpus>(FixtureCorpus::LoadDirectory(FixtureDir(name)));
}

std::shared_ptr<ArticleSource> FixtureSource(const std::string &name) {
  return std::make_shared<ArticleSource>(std::make_shared<FixtureBackend>(LoadFixture(name)),
                                         std::make_shared<Store>());
}

std::string ReadFile(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

TempDir::TempDir() {
  std::string pattern = (fs::temp_directory_path() / "galaxy-test-XXXXXX").string();
  if (mkdtemp(pattern.data()) == nullptr) throw std::runtime_error("mkdtemp failed");
  path_ = pattern;
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

// ---------------------------------------------------------------------------

CountingBackend::CountingBackend(std::shared_ptr<const FixtureCorpus> corpus)
    : inner_(corpus), corpus_(std::move(corpus)) {}

std::vector<std::string> CountingBackend::Search(std::string_view term, size_t limit) {
  ++calls_;
  return inner_.Search(term, limit);
}

PageInfo CountingBackend::FetchPageInfo(const std::string &title) {
  ++calls_;
  return inner_.FetchPageInfo(title);
}

std::string CountingBackend::FetchRevisionText(const std::string &title, int64_t rev_id) {
  ++calls_;
  ++text_calls_;
  std::string text = inner_.FetchRevisionText(title, rev_id);
  for (const auto &rev : corpus_->Find(title)->revisions) {
    if (rev.rev_id != rev_id) continue;
    std::lock_guard lock(mu_);
    if (!newest_text_ || *newest_text_ < rev.timestamp) newest_text_ = rev.timestamp;
  }
  return text;
}

uint64_t CountingBackend::FetchBacklinkCount(const std::string &title) {
  ++calls_;
  return inner_.FetchBacklinkCount(title);
}

Timestamp CountingBackend::ReferenceTime() { return inner_.ReferenceTime(); }

std::optional<Timestamp> CountingBackend::newest_text() const {
  std::lock_guard lock(mu_);
  return newest_text_;
}

void CountingBackend::Reset() {
  calls_ = 0;
  text_calls_ = 0;
  std::lock_guard lock(mu_);
  newest_text_.reset();
}

// ---------------------------------------------------------------------------

Clock::TimePoint ManualClock::Now() {
  std::lock_guard lock(mu_);
  return now_;
}

void ManualClock::SleepUntil(TimePoint t) {
  std::lock_guard lock(mu_);
  if (t > now_) {
    sleeps_.push_back(t - now_);
    now_ = t;
  } else {
    sleeps_.push_back(Duration::zero());
  }
}

std::vector<Clock::Duration> ManualClock::sleeps() const {
  std::lock_guard lock(mu_);
  return sleeps_;
}

// ---------------------------------------------------------------------------

namespace {

std::string Decode(std::string_view s) {
  std::string out;
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '+') {
      out.push_back(' ');
    } else if (s[i] == '%' && i + 2 < s.size()) {
      out.push_back(static_cast<char>(std::stoi(std::string(s.substr(i + 1, 2)), nullptr, 16)));
      i += 2;
    } else {
      out.push_back(s[i]);
    }
  }
  return out;
}

}  // namespace

std::map<std::string, std::string> ParseQueryString(const std::string &path_and_query) {
  std::map<std::string, std::string> params;
  auto q = path_and_query.find('?');
  if (q == std::string::npos) return params;
  std::string_view rest(path_and_query);
  rest.remove_prefix(q + 1);
  while (!rest.empty()) {
    auto amp = rest.find('&');
    std::string_view pair = rest.substr(0, amp);
    auto eq = pair.find('=');
    if (eq == std::string_view::npos) {
      params[Decode(pair)] = "";
    } else {
      params[Decode(pair.substr(0, eq))] = Decode(pair.substr(eq + 1));
    }
    if (amp == std::string_view::npos) break;
    rest.remove_prefix(amp + 1);
  }
  return params;
}

FakeMediaWiki::FakeMediaWiki(std::shared_ptr<const FixtureCorpus> corpus, size_t page_size,
                             Clock *clock)
    : corpus_(corpus), search_(corpus), page_size_(page_size), clock_(clock) {}

void FakeMediaWiki::FailNext(int status, int count) {
  std::lock_guard lock(mu_);
  fail_status_ = status;
  fail_count_ = count;
}

std::vector<std::string> FakeMediaWiki::requests() const {
  std::lock_guard lock(mu_);
  return requests_;
}

std::vector<Clock::TimePoint> FakeMediaWiki::request_times() const {
  std::lock_guard lock(mu_);
  return times_;
}

HttpResponse FakeMediaWiki::Get(const std::string &path_and_query) {
  {
    std::lock_guard lock(mu_);
    requests_.push_back(path_and_query);
    if (clock_ != nullptr) times_.push_back(clock_->Now());
    if (fail_count_ > 0) {
      --fail_count_;
      if (fail_status_ < 0) throw Error(ErrorCode::kBackendUnavailable, "connection reset");
      return {fail_status_, "{}"};
    }
  }
  if (path_and_query.rfind("/w/api.php?", 0) != 0) return {404, "not found"};
  return {200, Answer(ParseQueryString(path_and_query)).dump()};
}

json FakeMediaWiki::Answer(const std::map<std::string, std::string> &params) {
  auto get = [&](const std::string &key) {
    auto it = params.find(key);
    return it == params.end() ? std::string() : it->second;
  };
  if (get("action") != "query" || get("format") != "json" || get("formatversion") != "2") {
    return {{"error", {{"code", "badparams"}, {"info", "unsupported request"}}}};
  }
  auto missing = [](const std::string &title) {
    return json{{"query", {{"pages", json::array({{{"ns", 0}, {"title", title}, {"missing", true}}})}}}};
  };

  if (get("list") == "search") {
    json hits = json::array();
    for (const auto &title : search_.Search(get("srsearch"), std::stoul(get("srlimit")))) {
      hits.push_back({{"ns", 0}, {"title", title}});
    }
    return {{"batchcomplete", true}, {"query", {{"search", hits}}}};
  }

  if (!get("revids").empty()) {
    int64_t rev_id = std::stoll(get("revids"));
    for (const auto &article : corpus_->articles()) {
      for (const auto &rev : article.revisions) {
        if (rev.rev_id != rev_id) continue;
        json revision = {{"revid", rev.rev_id},
                         {"slots", {{"main", {{"contentmodel", "wikitext"},
                                              {"content", rev.wikitext}}}}}};
        json page = {{"pageid", article.page_id},
                     {"ns", 0},
                     {"title", article.title},
                     {"revisions", json::array({revision})}};
        return {{"query", {{"pages", json::array({page})}}}};
      }
    }
    return {{"query", {{"badrevids", {{get("revids"), {{"revid", rev_id}, {"missing", true}}}}}}}};
  }

  const std::string title = get("titles");
  const FixtureArticle *article = corpus_->Find(title);

  if (get("prop") == "revisions|pageassessments") {
    if (article == nullptr) return missing(title);
    size_t start = get("rvcontinue").empty() ? 0 : std::stoul(get("rvcontinue"));
    json revisions = json::array();
    size_t end = std::min(article->revisions.size(), start + page_size_);
    for (size_t i = start; i < end; ++i) {
      const auto &rev = article->revisions[i];
      revisions.push_back({{"revid", rev.rev_id},
                           {"timestamp", FormatTimestamp(rev.timestamp)},
                           {"size", rev.wikitext.size()}});
    }
    json page = {{"pageid", article->page_id},
                 {"ns", 0},
                 {"title", article->title},
                 {"revisions", revisions}};
    if (start == 0) {
      // A second, unassessed project must not lower the rating.
      const auto &a = article->assessment;
      page["pageassessments"] = {
          {"Main", {{"class", a.quality == QualityClass::kUnrated ? "" : QualityName(a.quality)},
                    {"importance",
                     a.importance == ImportanceClass::kUnrated ? "" : ImportanceName(a.importance)}}},
          {"Other", {{"class", ""}, {"importance", "Unknown"}}}};
    }
    json doc = {{"query", {{"pages", json::array({page})}}}};
    if (end < article->revisions.size()) {
      doc["continue"] = {{"rvcontinue", std::to_string(end)}, {"continue", "||"}};
    }
    return doc;
  }

  if (get("prop") == "info" && get("list") == "backlinks") {
    if (article == nullptr) return missing(title);
    std::vector<const FixtureArticle *> linking;
    for (const auto &other : corpus_->articles()) {
      if (other.revisions.empty() || other.title == title) continue;
      auto links = ExtractInternalLinks(other.revisions.back().wikitext);
      if (std::find(links.begin(), links.end(), title) != links.end()) linking.push_back(&other);
    }
    size_t start = get("blcontinue").empty() ? 0 : std::stoul(get("blcontinue"));
    size_t end = std::min(linking.size(), start + page_size_);
    json backlinks = json::array();
    for (size_t i = start; i < end; ++i) {
      backlinks.push_back({{"pageid", linking[i]->page_id}, {"ns", 0}, {"title", linking[i]->title}});
    }
    json page = {{"pageid", article->page_id}, {"ns", 0}, {"title", article->title}};
    json doc = {{"query", {{"pages", json::array({page})}, {"backlinks", backlinks}}}};
    if (end < linking.size()) {
      doc["continue"] = {{"blcontinue", std::to_string(end)}, {"continue", "-||"}};
    }
    return doc;
  }

  return {{"error", {{"code", "unknown"}, {"info", "unsupported query"}}}};
}

// ---------------------------------------------------------------------------

std::vector<ArticleRecord> SyntheticRecords(size_t n, uint32_t seed) {
  std::mt19937 rng(seed);
  auto title = [](size_t i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "Topic %04zu", i);
    return std::string(buf);
  };
  std::vector<ArticleRecord> records;
  records.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    ArticleRecord r;
    r.title = title(i);
    r.page_id = static_cast<int64_t>(i + 1);
    r.as_of = ParseTimestamp("2011-07-15T00:00:00Z");
    r.assessment.quality = static_cast<QualityClass>(i % 10);
    r.assessment.importance = static_cast<ImportanceClass>(i % 5);
    std::set<size_t> targets = {(i + 1) % n, (i + 7) % n, (i * 3 + 1) % n};
    std::uniform_int_distribution<size_t> any(0, n - 1);
    for (int j = 0; j < 2; ++j) targets.insert(any(rng));
    targets.erase(i);
    for (size_t t : targets) r.outlinks.push_back(title(t));
    if (i % 5 == 0) {
      r.extlinks.push_back("http://site" + std::to_string(i % 40) + ".example.org/page" +
                           std::to_string(i));
    }
    records.push_back(std::move(r));
  }
  return records;
}

SemanticGraph RandomLinkGraph(std::mt19937 &rng, int n, double p) {
  std::bernoulli_distribution coin(p);
  SemanticGraph g;
  std::vector<NodeId> ids;
  for (int i = 0; i < n; ++i) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "n%02d", i);
    ids.push_back(NodeId::Article(buf));
    g.AddNode(ids.back());
  }
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (a != b && coin(rng)) g.AddEdge(ids[a], ids[b], Layer::kLink);
    }
  }
  return g;
}

std::map<NodeId, double> BruteForceBetweenness(const SemanticGraph &graph, bool directed) {
  std::vector<NodeId> ids;
  std::map<NodeId, int> index;
  for (const auto &[id, data] : graph.nodes()) {
    index[id] = static_cast<int>(ids.size());
    ids.push_back(id);
  }
  const int n = static_cast<int>(ids.size());
  std::vector<std::set<int>> adj(n);
  for (const auto &[key, weight] : graph.edges()) {
    adj[index[key.src]].insert(index[key.dst]);
    if (!directed) adj[index[key.dst]].insert(index[key.src]);
  }
  const int kInf = 1 << 20;
  std::vector<std::vector<int>> dist(n, std::vector<int>(n, kInf));
  for (int s = 0; s < n; ++s) {
    dist[s][s] = 0;
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int w : adj[u]) {
        if (dist[s][w] == kInf) {
          dist[s][w] = dist[s][u] + 1;
          q.push(w);
        }
      }
    }
  }

  std::vector<double> total(n, 0.0);
  for (int s = 0; s < n; ++s) {
    for (int t = 0; t < n; ++t) {
      if (s == t || dist[s][t] == kInf) continue;
      // Every shortest s-t path, spelled out.
      std::vector<std::vector<int>> paths;
      std::vector<int> path = {s};
      std::function<void(int)> walk = [&](int u) {
        if (u == t) {
          paths.push_back(path);
          return;
        }
        for (int w : adj[u]) {
          if (dist[s][w] == dist[s][u] + 1 && dist[w][t] == dist[s][t] - dist[s][w]) {
            path.push_back(w);
            walk(w);
            path.pop_back();
          }
        }
      };
      walk(s);
      std::vector<int> through(n, 0);
      for (const auto &p : paths) {
        for (size_t i = 1; i + 1 < p.size(); ++i) ++through[p[i]];
      }
      for (int v = 0; v < n; ++v) {
        if (through[v] > 0) total[v] += static_cast<double>(through[v]) / paths.size();
      }
    }
  }
  std::map<NodeId, double> out;
  for (int v = 0; v < n; ++v) out[ids[v]] = total[v];
  return out;
}

double OracleNdcg(const std::vector<int> &ratings, int n_hr, int n_r, int k, double base) {
  auto discount = [base](int position) { return std::log(1.0 + position) / std::log(base); };
  std::vector<int> ideal;
  for (int i = 0; i < n_hr; ++i) ideal.push_back(2);
  for (int i = 0; i < n_r; ++i) ideal.push_back(1);
  double dcg = 0, idcg = 0;
  for (int p = 1; p <= k; ++p) {
    int got = p <= static_cast<int>(ratings.size()) ? ratings[p - 1] : 0;
    int best = p <= static_cast<int>(ideal.size()) ? ideal[p - 1] : 0;
    dcg += (std::pow(2.0, got) - 1) / discount(p);
    idcg += (std::pow(2.0, best) - 1) / discount(p);
  }
  return dcg / idcg;
}

}  // namespace galaxy::testing

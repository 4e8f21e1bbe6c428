#include "galaxy/centrality.h"

#include <algorithm>
#include <deque>
#include <sstream>
#include <thread>

#include "galaxy/error.h"

namespace galaxy {
namespace {

// Dense adjacency over a view, nodes indexed in NodeId order.
struct Adjacency {
  std::vector<NodeId> ids;
  std::vector<std::vector<int>> out;
  std::vector<std::vector<int>> in;
};

Adjacency BuildAdjacency(const GraphView &view, Direction direction) {
  Adjacency adj;
  std::map<NodeId, int> index;
  for (const auto &[node, data] : view.nodes()) {
    index.emplace(node, static_cast<int>(adj.ids.size()));
    adj.ids.push_back(node);
  }
  adj.out.resize(adj.ids.size());
  adj.in.resize(adj.ids.size());
  for (const auto &[key, weight] : view.edges()) {
    int s = index.at(key.src);
    int t = index.at(key.dst);
    adj.out[s].push_back(t);
    adj.in[t].push_back(s);
    if (direction == Direction::kUndirectedProjection) {
      adj.out[t].push_back(s);
      adj.in[s].push_back(t);
    }
  }
  for (auto *lists : {&adj.out, &adj.in}) {
    for (auto &list : *lists) {
      std::sort(list.begin(), list.end());
      list.erase(std::unique(list.begin(), list.end()), list.end());
    }
  }
  return adj;
}

// Brandes dependency accumulation for sources [begin, end).
void AccumulateBetweenness(const Adjacency &adj, size_t begin, size_t end,
                           std::vector<double> &result) {
  const size_t n = adj.ids.size();
  std::vector<double> sigma(n), delta(n);
  std::vector<int> dist(n);
  std::vector<std::vector<int>> preds(n);
  std::vector<int> order;
  order.reserve(n);
  std::deque<int> queue;
  for (size_t s = begin; s < end; ++s) {
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(delta.begin(), delta.end(), 0.0);
    std::fill(dist.begin(), dist.end(), -1);
    for (auto &p : preds) p.clear();
    order.clear();
    sigma[s] = 1.0;
    dist[s] = 0;
    queue.push_back(static_cast<int>(s));
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      order.push_back(v);
      for (int w : adj.out[v]) {
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          queue.push_back(w);
        }
        if (dist[w] == dist[v] + 1) {
          sigma[w] += sigma[v];
          preds[w].push_back(v);
        }
      }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      int w = *it;
      for (int v : preds[w]) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
      if (w != static_cast<int>(s)) result[w] += delta[w];
    }
  }
}

}  // namespace

std::string_view MetricName(Metric metric) {
  return metric == Metric::kDegree ? "degree" : "betweenness";
}

CentralityReport DegreeCentrality(const GraphView &view, Direction direction) {
  Adjacency adj = BuildAdjacency(view, direction);
  CentralityReport report{Metric::kDegree, direction, {}};
  for (size_t i = 0; i < adj.ids.size(); ++i) {
    double degree = direction == Direction::kDirected
                        ? static_cast<double>(adj.out[i].size() + adj.in[i].size())
                        : static_cast<double>(adj.out[i].size());
    report.values.emplace(adj.ids[i], degree);
  }
  return report;
}

CentralityReport BetweennessCentrality(const GraphView &view, Direction direction) {
  Adjacency adj = BuildAdjacency(view, direction);
  const size_t n = adj.ids.size();
  constexpr size_t kChunks = 4;
  const size_t chunks = std::min(kChunks, std::max<size_t>(n, 1));
  std::vector<std::vector<double>> partial(chunks, std::vector<double>(n, 0.0));
  {
    std::vector<std::jthread> workers;
    for (size_t c = 0; c < chunks; ++c) {
      size_t begin = n * c / chunks;
      size_t end = n * (c + 1) / chunks;
      workers.emplace_back([&adj, &partial, begin, end, c] {
        AccumulateBetweenness(adj, begin, end, partial[c]);
      });
    }
  }
  CentralityReport report{Metric::kBetweenness, direction, {}};
  for (size_t i = 0; i < n; ++i) {
    double total = 0.0;
    for (size_t c = 0; c < chunks; ++c) total += partial[c][i];
    report.values.emplace(adj.ids[i], total);
  }
  return report;
}

std::vector<std::pair<NodeId, double>> TopK(const CentralityReport &report, size_t k,
                                            std::optional<NodeKind> kind_filter) {
  if (k == 0) throw Error(ErrorCode::kInvalidArgument, "k must be at least 1");
  std::vector<std::pair<NodeId, double>> entries;
  for (const auto &[node, value] : report.values) {
    if (!kind_filter || node.kind == *kind_filter) entries.emplace_back(node, value);
  }
  std::stable_sort(entries.begin(), entries.end(), [](const auto &a, const auto &b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (entries.size() > k) entries.resize(k);
  return entries;
}

std::string ReportsToTsv(const std::vector<CentralityReport> &reports) {
  std::ostringstream out;
  out << "node\tkind\tmetric\tvalue\n";
  for (const auto &report : reports) {
    for (const auto &[node, value] : report.values) {
      out << node.key << '\t' << NodeKindName(node.kind) << '\t' << MetricName(report.metric)
          << '\t' << value << '\n';
    }
  }
  return out.str();
}

SemanticGraph WikimapFilter(const SemanticGraph &graph, const std::set<std::string> &seeds,
                            size_t max_nodes, FilterOrder order) {
  if (max_nodes == 0) throw Error(ErrorCode::kInvalidArgument, "max_nodes must be positive");
  if (seeds.empty()) throw Error(ErrorCode::kInvalidArgument, "at least one seed is required");
  if (seeds.size() > max_nodes) {
    throw Error(ErrorCode::kInvalidArgument, "more seeds than max_nodes");
  }
  Adjacency adj = BuildAdjacency(graph, Direction::kUndirectedProjection);
  std::map<NodeId, int> index;
  for (size_t i = 0; i < adj.ids.size(); ++i) index.emplace(adj.ids[i], static_cast<int>(i));

  std::vector<int> dist(adj.ids.size(), -1);
  std::deque<int> queue;
  std::set<NodeId> keep;
  for (const auto &title : seeds) {
    auto it = index.find(NodeId::Article(title));
    if (it == index.end()) {
      throw Error(ErrorCode::kSeedNotInGraph, "seed '" + title + "' is not in the graph");
    }
    dist[it->second] = 0;
    queue.push_back(it->second);
    keep.insert(it->first);
  }
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int w : adj.out[v]) {
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }

  const auto indegrees = graph.InDegrees();
  struct Candidate {
    int dist;
    size_t indegree;
    const NodeId *node;
  };
  std::vector<Candidate> candidates;
  for (size_t i = 0; i < adj.ids.size(); ++i) {
    if (dist[i] > 0) candidates.push_back({dist[i], indegrees.at(adj.ids[i]), &adj.ids[i]});
  }
  std::sort(candidates.begin(), candidates.end(), [order](const Candidate &a, const Candidate &b) {
    if (order == FilterOrder::kDistanceFirst) {
      if (a.dist != b.dist) return a.dist < b.dist;
      if (a.indegree != b.indegree) return a.indegree > b.indegree;
    } else {
      if (a.indegree != b.indegree) return a.indegree > b.indegree;
      if (a.dist != b.dist) return a.dist < b.dist;
    }
    return *a.node < *b.node;
  });
  for (const Candidate &c : candidates) {
    if (keep.size() >= max_nodes) break;
    keep.insert(*c.node);
  }
  return InducedSubgraph(graph, keep);
}

}  // namespace galaxy

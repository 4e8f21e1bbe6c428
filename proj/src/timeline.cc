#include "galaxy/timeline.h"

#include <algorithm>
#include <future>

#include "galaxy/error.h"

namespace galaxy {

void FilterConfig::Validate() const {
  if (max_nodes == 0) throw Error(ErrorCode::kInvalidConfig, "max_nodes must be positive");
  if (frontier_depth < 0 || frontier_depth > 2) {
    throw Error(ErrorCode::kInvalidConfig, "frontier depth must be 0, 1 or 2");
  }
}

std::vector<ArticleRecord> CollectCandidates(ArticleSource &source,
                                             const std::set<std::string> &seeds,
                                             std::optional<Timestamp> at, int depth) {
  if (seeds.empty()) throw Error(ErrorCode::kInvalidArgument, "at least one seed is required");
  std::map<std::string, ArticleRecord> records;
  std::set<std::string> visited(seeds.begin(), seeds.end());
  std::vector<std::string> level(seeds.begin(), seeds.end());
  for (const auto &seed : seeds) {
    try {
      records.emplace(seed, source.FetchArticle(seed, at));
    } catch (const Error &e) {
      if (e.code() == ErrorCode::kArticleNotFound) {
        throw Error(ErrorCode::kSeedNotFound, "seed '" + seed + "' does not exist");
      }
      throw;
    }
  }
  for (int hop = 0; hop < depth; ++hop) {
    std::vector<std::string> next;
    for (const auto &title : level) {
      auto it = records.find(title);
      if (it == records.end()) continue;
      for (const auto &target : it->second.outlinks) {
        if (visited.insert(target).second) next.push_back(target);
      }
    }
    std::sort(next.begin(), next.end());
    for (const auto &title : next) {
      try {
        records.emplace(title, source.FetchArticle(title, at));
      } catch (const Error &e) {
        if (e.code() != ErrorCode::kArticleNotFound && e.code() != ErrorCode::kNoRevisionBefore) {
          throw;
        }
      }
    }
    level = std::move(next);
  }
  std::vector<ArticleRecord> out;
  out.reserve(records.size());
  for (auto &[title, record] : records) out.push_back(std::move(record));
  return out;
}

SemanticGraph BuildTopicMap(ArticleSource &source, const std::set<std::string> &seeds,
                            std::optional<Timestamp> at, const FilterConfig &cfg) {
  cfg.Validate();
  auto records = CollectCandidates(source, seeds, at, cfg.frontier_depth);
  SemanticGraph candidates = BuildGraph(records, cfg.scope);
  return WikimapFilter(candidates, seeds, cfg.max_nodes, cfg.order);
}

Snapshot BuildSnapshot(ArticleSource &source, const std::set<std::string> &seeds, Timestamp at,
                       const FilterConfig &cfg) {
  return Snapshot{at, BuildTopicMap(source, seeds, at, cfg), seeds};
}

SnapshotSeries BuildSeries(ArticleSource &source, const std::set<std::string> &seeds,
                           const std::vector<Timestamp> &timestamps, const FilterConfig &cfg) {
  if (timestamps.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "a series needs at least one timestamp");
  }
  for (size_t i = 1; i < timestamps.size(); ++i) {
    if (!(timestamps[i - 1] < timestamps[i])) {
      throw Error(ErrorCode::kInvalidArgument, "series timestamps must be strictly increasing");
    }
  }
  cfg.Validate();
  std::vector<std::future<Snapshot>> pending;
  for (Timestamp at : timestamps) {
    pending.push_back(std::async(std::launch::async, [&source, &seeds, &cfg, at] {
      return BuildSnapshot(source, seeds, at, cfg);
    }));
  }
  SnapshotSeries series{seeds, {}};
  for (size_t i = 0; i < pending.size(); ++i) {
    try {
      series.snapshots.push_back(pending[i].get());
    } catch (const Error &e) {
      for (size_t j = i + 1; j < pending.size(); ++j) pending[j].wait();
      throw Error(e.code(), "at " + FormatTimestamp(timestamps[i]) + ": " + e.message());
    }
  }
  return series;
}

GraphDelta DiffGraphs(const SemanticGraph &a, const SemanticGraph &b) {
  GraphDelta delta;
  for (const auto &[node, data] : b.nodes()) {
    if (!a.HasNode(node)) delta.nodes_added.insert(node);
  }
  for (const auto &[node, data] : a.nodes()) {
    if (!b.HasNode(node)) delta.nodes_removed.insert(node);
  }
  for (const auto &[key, weight] : b.edges()) {
    auto it = a.edges().find(key);
    if (it == a.edges().end() || it->second != weight) delta.edges_added.emplace(key, weight);
  }
  for (const auto &[key, weight] : a.edges()) {
    auto it = b.edges().find(key);
    if (it == b.edges().end() || it->second != weight) delta.edges_removed.emplace(key, weight);
  }
  return delta;
}

GraphDelta DiffSnapshots(const Snapshot &a, const Snapshot &b) {
  if (a.seeds != b.seeds) {
    throw Error(ErrorCode::kSeedMismatch, "snapshots were built from different seeds");
  }
  return DiffGraphs(a.graph, b.graph);
}

SemanticGraph ApplyDelta(const SemanticGraph &graph, const GraphDelta &delta) {
  SemanticGraph out = graph;
  for (const auto &[key, weight] : delta.edges_removed) out.RemoveEdge(key);
  for (const NodeId &node : delta.nodes_removed) out.RemoveNode(node);
  for (const NodeId &node : delta.nodes_added) out.AddNode(node);
  for (const auto &[key, weight] : delta.edges_added) {
    out.AddEdge(key.src, key.dst, key.layer, weight);
  }
  return out;
}

nlohmann::json ExportSeries(const SnapshotSeries &series) {
  nlohmann::json frames = nlohmann::json::array();
  for (const Snapshot &snapshot : series.snapshots) {
    frames.push_back({{"at", FormatTimestamp(snapshot.at)}, {"graph", GraphToJson(snapshot.graph)}});
  }
  return {{"schema", kSeriesSchema},
          {"seeds", std::vector<std::string>(series.seeds.begin(), series.seeds.end())},
          {"frames", std::move(frames)}};
}

}  // namespace galaxy

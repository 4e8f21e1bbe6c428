#ifndef GALAXY_TIMELINE_H_
#define GALAXY_TIMELINE_H_

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "galaxy/centrality.h"
#include "galaxy/graph.h"
#include "galaxy/source.h"

namespace galaxy {

struct FilterConfig {
  size_t max_nodes = 50;
  // Outlink hops collected around the seeds before filtering (1 or 2).
  int frontier_depth = 1;
  FilterOrder order = FilterOrder::kDistanceFirst;
  GraphScope scope = GraphScope::kCandidateSetOnly;

  void Validate() const;
};

// Seeds plus everything reachable through outlinks within `depth` hops, each
// read as of `at` (latest revision when absent). Missing seeds throw
// kSeedNotFound; frontier articles that do not exist (red links) or did not
// exist yet at `at` are skipped. Records come back sorted by title.
std::vector<ArticleRecord> CollectCandidates(ArticleSource &source,
                                             const std::set<std::string> &seeds,
                                             std::optional<Timestamp> at, int depth);

// Candidate collection followed by WikimapFilter.
SemanticGraph BuildTopicMap(ArticleSource &source, const std::set<std::string> &seeds,
                            std::optional<Timestamp> at, const FilterConfig &cfg);

struct Snapshot {
  Timestamp at;
  SemanticGraph graph;
  std::set<std::string> seeds;

  bool operator==(const Snapshot &) const = default;
};

struct SnapshotSeries {
  std::set<std::string> seeds;
  std::vector<Snapshot> snapshots;  // strictly increasing `at`
};

Snapshot BuildSnapshot(ArticleSource &source, const std::set<std::string> &seeds, Timestamp at,
                       const FilterConfig &cfg);

// One snapshot per timestamp; timestamps must be strictly increasing.
// Snapshots are built concurrently and share the source's caches. A failing
// snapshot rethrows its error with the timestamp prepended.
SnapshotSeries BuildSeries(ArticleSource &source, const std::set<std::string> &seeds,
                           const std::vector<Timestamp> &timestamps, const FilterConfig &cfg);

using WeightedEdge = std::pair<EdgeKey, double>;

struct GraphDelta {
  std::set<NodeId> nodes_added;
  std::set<NodeId> nodes_removed;
  std::set<WeightedEdge> edges_added;
  std::set<WeightedEdge> edges_removed;

  bool empty() const {
    return nodes_added.empty() && nodes_removed.empty() && edges_added.empty() &&
           edges_removed.empty();
  }
};

// Exact node and edge set differences from a to b. Throws kSeedMismatch.
GraphDelta DiffSnapshots(const Snapshot &a, const Snapshot &b);
GraphDelta DiffGraphs(const SemanticGraph &a, const SemanticGraph &b);

// Applies a delta's node and edge changes (scores are not part of a delta).
SemanticGraph ApplyDelta(const SemanticGraph &graph, const GraphDelta &delta);

inline constexpr char kSeriesSchema[] = "galaxysearch.series/1";

// {"schema", "seeds": [...], "frames": [{"at", "graph": <graph export>}]}.
// Node ids are their keys, so persistent nodes keep their id across frames.
nlohmann::json ExportSeries(const SnapshotSeries &series);

}  // namespace galaxy

#endif  // GALAXY_TIMELINE_H_

#ifndef GALAXY_CENTRALITY_H_
#define GALAXY_CENTRALITY_H_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "galaxy/graph.h"

namespace galaxy {

enum class Metric { kDegree, kBetweenness };
enum class Direction { kDirected, kUndirectedProjection };

std::string_view MetricName(Metric metric);

// One value per node of the analysed view. Edge layers are collapsed: two
// nodes are adjacent if any layer connects them.
struct CentralityReport {
  Metric metric = Metric::kDegree;
  Direction direction = Direction::kUndirectedProjection;
  std::map<NodeId, double> values;
};

// Directed: in-neighbours + out-neighbours. Undirected: distinct neighbours.
CentralityReport DegreeCentrality(const GraphView &view,
                                  Direction direction = Direction::kUndirectedProjection);

// Raw betweenness over ordered (s, t) pairs with unit edge lengths, computed
// with Brandes' dependency accumulation in O(V * E). Sources are split into a
// fixed number of chunks that run on separate threads and are reduced in
// chunk order, so results do not depend on scheduling.
CentralityReport BetweennessCentrality(const GraphView &view,
                                       Direction direction = Direction::kUndirectedProjection);

// Highest values first, ties by node key; at most k entries. Throws
// kInvalidArgument for k == 0.
std::vector<std::pair<NodeId, double>> TopK(const CentralityReport &report, size_t k,
                                            std::optional<NodeKind> kind_filter = std::nullopt);

// Tab-separated "node\tkind\tmetric\tvalue" lines, one per node per report.
std::string ReportsToTsv(const std::vector<CentralityReport> &reports);

enum class FilterOrder {
  kDistanceFirst,  // hop distance to the nearest seed, then indegree
  kIndegreeFirst,  // indegree, then hop distance
};

// Reduces a candidate graph to at most `max_nodes` nodes around the seeds.
// Seeds are always kept; other nodes reachable from a seed (undirected hops)
// are ranked by `order` with the node key as the final tie break and added
// until the budget is spent. Throws kSeedNotInGraph for unknown seeds and
// kInvalidArgument when the seeds alone exceed the budget.
SemanticGraph WikimapFilter(const SemanticGraph &graph, const std::set<std::string> &seeds,
                            size_t max_nodes = 50,
                            FilterOrder order = FilterOrder::kDistanceFirst);

}  // namespace galaxy

#endif  // GALAXY_CENTRALITY_H_

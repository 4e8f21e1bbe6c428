#ifndef GALAXY_GRAPH_H_
#define GALAXY_GRAPH_H_

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "galaxy/article.h"
#include "json.hpp"

namespace galaxy {

enum class NodeKind { kArticle, kWeb };

std::string_view NodeKindName(NodeKind kind);
NodeKind ParseNodeKind(std::string_view name);

// A Wikipedia article (key = canonical title) or an external page (key =
// normalized URL). Ordered by key first so that "lexicographic by key" tie
// breaks fall out of the natural order.
struct NodeId {
  NodeKind kind = NodeKind::kArticle;
  std::string key;

  static NodeId Article(std::string title) { return {NodeKind::kArticle, std::move(title)}; }
  static NodeId Web(std::string url) { return {NodeKind::kWeb, std::move(url)}; }

  bool operator==(const NodeId &) const = default;
  std::strong_ordering operator<=>(const NodeId &other) const {
    if (auto c = key <=> other.key; c != 0) return c;
    return kind <=> other.kind;
  }
};

// kLink holds the raw article->article hyperlinks; kMention the article->URL
// citations. The other four are the ranking layers.
enum class Layer { kLink, kBidirectional, kImportance, kQuality, kActuality, kMention };

inline constexpr Layer kAllLayers[] = {Layer::kLink,    Layer::kBidirectional,
                                       Layer::kImportance, Layer::kQuality,
                                       Layer::kActuality, Layer::kMention};
inline constexpr Layer kRankingLayers[] = {Layer::kBidirectional, Layer::kImportance,
                                           Layer::kQuality, Layer::kActuality};

std::string_view LayerName(Layer layer);
Layer ParseLayer(std::string_view name);

struct EdgeKey {
  NodeId src;
  NodeId dst;
  Layer layer = Layer::kLink;

  bool operator==(const EdgeKey &) const = default;
  auto operator<=>(const EdgeKey &other) const {
    return std::tie(src, dst, layer) <=> std::tie(other.src, other.dst, other.layer);
  }
};

struct Edge {
  EdgeKey key;
  double weight = 1.0;
};

struct NodeData {
  std::map<Layer, double> scores;

  bool operator==(const NodeData &) const = default;
};

// Multi-layer directed graph over article and web nodes. At most one edge per
// (src, dst, layer). Value type: operations that transform a graph return a
// new one.
class SemanticGraph {
 public:
  void AddNode(const NodeId &node);
  bool HasNode(const NodeId &node) const { return nodes_.count(node) > 0; }
  // Removes the node and every incident edge.
  void RemoveNode(const NodeId &node);

  void SetScore(const NodeId &node, Layer layer, double value);
  std::optional<double> Score(const NodeId &node, Layer layer) const;
  double ScoreOrZero(const NodeId &node, Layer layer) const;

  // Both endpoints must exist and differ. Re-adding an edge updates its weight.
  void AddEdge(const NodeId &src, const NodeId &dst, Layer layer, double weight = 1.0);
  bool HasEdge(const NodeId &src, const NodeId &dst, Layer layer) const;
  void RemoveEdge(const EdgeKey &key);
  void RemoveLayer(Layer layer);

  const std::map<NodeId, NodeData> &nodes() const { return nodes_; }
  const std::map<EdgeKey, double> &edges() const { return edges_; }
  size_t node_count() const { return nodes_.size(); }
  size_t edge_count() const { return edges_.size(); }

  // Number of distinct nodes with at least one edge (any layer) into `node`.
  size_t InDegree(const NodeId &node) const;
  std::map<NodeId, size_t> InDegrees() const;

  std::vector<NodeId> NodesOfKind(NodeKind kind) const;

  bool operator==(const SemanticGraph &) const = default;

 private:
  std::map<NodeId, NodeData> nodes_;
  std::map<EdgeKey, double> edges_;
};

// Subgraphs share the representation and invariants of the full graph.
using GraphView = SemanticGraph;

// Structural invariants; returns one message per violation.
//  - every web node has an incoming mention edge from an article
//  - web nodes have no outgoing edges; mention edges go article -> web;
//    every other layer connects two articles
//  - no self loops
std::vector<std::string> Validate(const SemanticGraph &graph);

// Drops web nodes that lost all incoming mention edges.
void PruneOrphanWebNodes(SemanticGraph &graph);

// Node subset induced by `keep`, orphaned web nodes removed.
SemanticGraph InducedSubgraph(const SemanticGraph &graph, const std::set<NodeId> &keep);

enum class GraphScope { kCandidateSetOnly, kIncludeWebNodes };

// One article node per record, link edges for outlinks whose target is also a
// record, and with kIncludeWebNodes one web node per distinct URL with a
// mention edge from every citing article. Throws kDuplicateTitle.
SemanticGraph BuildGraph(const std::vector<ArticleRecord> &records, GraphScope scope);

// Keeps nodes of `kinds` and edges of `layers`; web nodes survive only with a
// surviving mention edge. Throws kInvalidArgument for an empty layer set.
GraphView Project(const SemanticGraph &graph, const std::set<Layer> &layers,
                  const std::set<NodeKind> &kinds);

inline constexpr char kGraphSchema[] = "galaxysearch.graph/1";

// Export document:
//   {"schema": ..., "nodes": [{"id", "kind", "scores": {layer: value},
//    "indegree"}], "edges": [{"src", "dst", "layer", "weight"}]}
// Nodes and edges appear in a stable order.
nlohmann::json GraphToJson(const SemanticGraph &graph);
SemanticGraph GraphFromJson(const nlohmann::json &doc);

}  // namespace galaxy

#endif  // GALAXY_GRAPH_H_

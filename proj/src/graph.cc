#include "galaxy/graph.h"

#include "galaxy/error.h"

namespace galaxy {

using nlohmann::json;

std::string_view NodeKindName(NodeKind kind) {
  return kind == NodeKind::kArticle ? "article" : "web";
}

NodeKind ParseNodeKind(std::string_view name) {
  if (name == "article") return NodeKind::kArticle;
  if (name == "web") return NodeKind::kWeb;
  throw Error(ErrorCode::kInvalidArgument, "unknown node kind '" + std::string(name) + "'");
}

std::string_view LayerName(Layer layer) {
  switch (layer) {
    case Layer::kLink: return "link";
    case Layer::kBidirectional: return "bidirectional";
    case Layer::kImportance: return "importance";
    case Layer::kQuality: return "quality";
    case Layer::kActuality: return "actuality";
    case Layer::kMention: return "mention";
  }
  return "?";
}

Layer ParseLayer(std::string_view name) {
  for (Layer layer : kAllLayers) {
    if (LayerName(layer) == name) return layer;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown layer '" + std::string(name) + "'");
}

void SemanticGraph::AddNode(const NodeId &node) { nodes_.try_emplace(node); }

void SemanticGraph::RemoveNode(const NodeId &node) {
  if (nodes_.erase(node) == 0) return;
  std::erase_if(edges_, [&](const auto &entry) {
    return entry.first.src == node || entry.first.dst == node;
  });
}

void SemanticGraph::SetScore(const NodeId &node, Layer layer, double value) {
  auto it = nodes_.find(node);
  if (it == nodes_.end()) {
    throw Error(ErrorCode::kInvalidArgument, "no node '" + node.key + "'");
  }
  it->second.scores[layer] = value;
}

std::optional<double> SemanticGraph::Score(const NodeId &node, Layer layer) const {
  auto it = nodes_.find(node);
  if (it == nodes_.end()) return std::nullopt;
  auto score = it->second.scores.find(layer);
  if (score == it->second.scores.end()) return std::nullopt;
  return score->second;
}

double SemanticGraph::ScoreOrZero(const NodeId &node, Layer layer) const {
  return Score(node, layer).value_or(0.0);
}

void SemanticGraph::AddEdge(const NodeId &src, const NodeId &dst, Layer layer, double weight) {
  if (src == dst) {
    throw Error(ErrorCode::kInvalidArgument, "self loop on '" + src.key + "'");
  }
  if (!HasNode(src) || !HasNode(dst)) {
    throw Error(ErrorCode::kInvalidArgument,
                "edge '" + src.key + "' -> '" + dst.key + "' has a missing endpoint");
  }
  if (!(weight >= 0)) {
    throw Error(ErrorCode::kInvalidArgument, "edge weight must be non-negative");
  }
  edges_[EdgeKey{src, dst, layer}] = weight;
}

bool SemanticGraph::HasEdge(const NodeId &src, const NodeId &dst, Layer layer) const {
  return edges_.count(EdgeKey{src, dst, layer}) > 0;
}

void SemanticGraph::RemoveEdge(const EdgeKey &key) { edges_.erase(key); }

void SemanticGraph::RemoveLayer(Layer layer) {
  std::erase_if(edges_, [&](const auto &entry) { return entry.first.layer == layer; });
}

size_t SemanticGraph::InDegree(const NodeId &node) const {
  std::set<NodeId> sources;
  for (const auto &[key, weight] : edges_) {
    if (key.dst == node) sources.insert(key.src);
  }
  return sources.size();
}

std::map<NodeId, size_t> SemanticGraph::InDegrees() const {
  std::map<NodeId, std::set<const NodeId *>> sources;
  for (const auto &[key, weight] : edges_) sources[key.dst].insert(&nodes_.find(key.src)->first);
  std::map<NodeId, size_t> out;
  for (const auto &[node, data] : nodes_) {
    auto it = sources.find(node);
    out.emplace(node, it == sources.end() ? 0 : it->second.size());
  }
  return out;
}

std::vector<NodeId> SemanticGraph::NodesOfKind(NodeKind kind) const {
  std::vector<NodeId> out;
  for (const auto &[node, data] : nodes_) {
    if (node.kind == kind) out.push_back(node);
  }
  return out;
}

std::vector<std::string> Validate(const SemanticGraph &graph) {
  std::vector<std::string> problems;
  std::set<NodeId> cited;
  for (const auto &[key, weight] : graph.edges()) {
    const std::string label = "'" + key.src.key + "' -> '" + key.dst.key + "' [" +
                              std::string(LayerName(key.layer)) + "]";
    if (key.src == key.dst) problems.push_back("self loop " + label);
    if (!graph.HasNode(key.src) || !graph.HasNode(key.dst)) {
      problems.push_back("dangling edge " + label);
    }
    if (key.src.kind == NodeKind::kWeb) problems.push_back("edge leaves a web node " + label);
    if (key.layer == Layer::kMention) {
      if (key.src.kind != NodeKind::kArticle || key.dst.kind != NodeKind::kWeb) {
        problems.push_back("mention edge must go article -> web " + label);
      } else {
        cited.insert(key.dst);
      }
    } else if (key.dst.kind != NodeKind::kArticle) {
      problems.push_back("non-mention edge into a web node " + label);
    }
    if (!(weight >= 0)) problems.push_back("negative weight " + label);
  }
  for (const auto &[node, data] : graph.nodes()) {
    if (node.kind == NodeKind::kWeb && !cited.count(node)) {
      problems.push_back("web node '" + node.key + "' has no citing article");
    }
  }
  return problems;
}

void PruneOrphanWebNodes(SemanticGraph &graph) {
  std::set<NodeId> cited;
  for (const auto &[key, weight] : graph.edges()) {
    if (key.layer == Layer::kMention && key.src.kind == NodeKind::kArticle) cited.insert(key.dst);
  }
  for (const NodeId &web : graph.NodesOfKind(NodeKind::kWeb)) {
    if (!cited.count(web)) graph.RemoveNode(web);
  }
}

SemanticGraph InducedSubgraph(const SemanticGraph &graph, const std::set<NodeId> &keep) {
  SemanticGraph out;
  for (const auto &[node, data] : graph.nodes()) {
    if (!keep.count(node)) continue;
    out.AddNode(node);
    for (const auto &[layer, value] : data.scores) out.SetScore(node, layer, value);
  }
  for (const auto &[key, weight] : graph.edges()) {
    if (keep.count(key.src) && keep.count(key.dst)) {
      out.AddEdge(key.src, key.dst, key.layer, weight);
    }
  }
  PruneOrphanWebNodes(out);
  return out;
}

SemanticGraph BuildGraph(const std::vector<ArticleRecord> &records, GraphScope scope) {
  if (records.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "cannot build a graph from no records");
  }
  SemanticGraph graph;
  for (const auto &record : records) {
    NodeId node = NodeId::Article(record.title);
    if (graph.HasNode(node)) {
      throw Error(ErrorCode::kDuplicateTitle, "record '" + record.title + "' appears twice");
    }
    graph.AddNode(node);
  }
  for (const auto &record : records) {
    NodeId src = NodeId::Article(record.title);
    for (const auto &target : record.outlinks) {
      NodeId dst = NodeId::Article(target);
      if (dst != src && graph.HasNode(dst)) graph.AddEdge(src, dst, Layer::kLink);
    }
    if (scope == GraphScope::kIncludeWebNodes) {
      for (const auto &url : record.extlinks) {
        NodeId web = NodeId::Web(url);
        graph.AddNode(web);
        graph.AddEdge(src, web, Layer::kMention);
      }
    }
  }
  return graph;
}

GraphView Project(const SemanticGraph &graph, const std::set<Layer> &layers,
                  const std::set<NodeKind> &kinds) {
  if (layers.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "projection needs at least one layer");
  }
  SemanticGraph out;
  for (const auto &[node, data] : graph.nodes()) {
    if (!kinds.count(node.kind)) continue;
    out.AddNode(node);
    for (const auto &[layer, value] : data.scores) out.SetScore(node, layer, value);
  }
  for (const auto &[key, weight] : graph.edges()) {
    if (layers.count(key.layer) && out.HasNode(key.src) && out.HasNode(key.dst)) {
      out.AddEdge(key.src, key.dst, key.layer, weight);
    }
  }
  PruneOrphanWebNodes(out);
  return out;
}

json GraphToJson(const SemanticGraph &graph) {
  const auto indegrees = graph.InDegrees();
  json nodes = json::array();
  for (const auto &[node, data] : graph.nodes()) {
    json scores = json::object();
    for (const auto &[layer, value] : data.scores) scores[std::string(LayerName(layer))] = value;
    nodes.push_back({{"id", node.key},
                     {"kind", NodeKindName(node.kind)},
                     {"scores", std::move(scores)},
                     {"indegree", indegrees.at(node)}});
  }
  json edges = json::array();
  for (const auto &[key, weight] : graph.edges()) {
    edges.push_back({{"src", key.src.key},
                     {"dst", key.dst.key},
                     {"layer", LayerName(key.layer)},
                     {"weight", weight}});
  }
  return {{"schema", kGraphSchema}, {"nodes", std::move(nodes)}, {"edges", std::move(edges)}};
}

SemanticGraph GraphFromJson(const json &doc) {
  SemanticGraph graph;
  std::map<std::string, NodeId> by_id;
  try {
    if (doc.at("schema").get<std::string>() != kGraphSchema) {
      throw Error(ErrorCode::kInvalidArgument, "unsupported graph schema");
    }
    for (const json &n : doc.at("nodes")) {
      NodeId node{ParseNodeKind(n.at("kind").get<std::string>()), n.at("id").get<std::string>()};
      graph.AddNode(node);
      by_id.emplace(node.key, node);
      for (const auto &[layer, value] : n.at("scores").items()) {
        graph.SetScore(node, ParseLayer(layer), value.get<double>());
      }
    }
    for (const json &e : doc.at("edges")) {
      auto src = by_id.find(e.at("src").get<std::string>());
      auto dst = by_id.find(e.at("dst").get<std::string>());
      if (src == by_id.end() || dst == by_id.end()) {
        throw Error(ErrorCode::kInvalidArgument, "edge references an unknown node");
      }
      graph.AddEdge(src->second, dst->second, ParseLayer(e.at("layer").get<std::string>()),
                    e.at("weight").get<double>());
    }
  } catch (const json::exception &e) {
    throw Error(ErrorCode::kInvalidArgument, std::string("malformed graph document: ") + e.what());
  }
  return graph;
}

}  // namespace galaxy

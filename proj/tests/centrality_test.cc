#include <random>

#include "doctest.h"
#include "galaxy/centrality.h"
#include "galaxy/error.h"
#include "support.h"

using namespace galaxy;
using galaxy::testing::BruteForceBetweenness;
using galaxy::testing::RandomLinkGraph;

namespace {

NodeId N(const std::string &key) { return NodeId::Article(key); }

SemanticGraph Undirected(std::initializer_list<const char *> nodes,
                         std::initializer_list<std::pair<const char *, const char *>> links) {
  SemanticGraph g;
  for (const char *n : nodes) g.AddNode(N(n));
  for (const auto &[a, b] : links) g.AddEdge(N(a), N(b), Layer::kLink);
  return g;
}

}  // namespace

TEST_CASE("degree examples") {
  auto triangle = Undirected({"A", "B", "C"}, {{"A", "B"}, {"B", "C"}, {"C", "A"}});
  for (const auto &[node, value] : DegreeCentrality(triangle).values) CHECK(value == 2);
  auto isolated = Undirected({"A", "B", "Z"}, {{"A", "B"}});
  CHECK(DegreeCentrality(isolated).values.at(N("Z")) == 0);

  SemanticGraph cited = Undirected({"A", "B"}, {{"A", "B"}});
  NodeId u = NodeId::Web("http://u.org");
  cited.AddNode(u);
  cited.AddEdge(N("A"), u, Layer::kMention);
  CHECK(DegreeCentrality(cited).values.at(u) == 1);
  CHECK(BetweennessCentrality(cited).values.at(u) == 0);
}

TEST_CASE("degree: mutual links and parallel layers count one neighbour") {
  SemanticGraph g = Undirected({"A", "B"}, {{"A", "B"}, {"B", "A"}});
  g.AddEdge(N("A"), N("B"), Layer::kQuality, 5);
  CHECK(DegreeCentrality(g).values.at(N("A")) == 1);
  CHECK(DegreeCentrality(g, Direction::kDirected).values.at(N("A")) == 2);
}

TEST_CASE("degree sum is twice the undirected edge count") {
  std::mt19937 rng(1);
  for (int i = 0; i < 50; ++i) {
    SemanticGraph g = RandomLinkGraph(rng, 3 + i % 12, 0.3);
    std::set<std::pair<NodeId, NodeId>> undirected;
    for (const auto &[key, w] : g.edges()) {
      undirected.insert(std::minmax(key.src, key.dst));
    }
    double sum = 0;
    for (const auto &[node, value] : DegreeCentrality(g).values) sum += value;
    CHECK(sum == 2.0 * undirected.size());
  }
}

TEST_CASE("betweenness hand cases") {
  auto path = Undirected({"A", "B", "C"}, {{"A", "B"}, {"B", "C"}});
  auto b = BetweennessCentrality(path).values;
  CHECK(b.at(N("B")) == 2);
  CHECK(b.at(N("A")) == 0);
  CHECK(b.at(N("C")) == 0);

  auto star = Undirected({"Hub", "L1", "L2", "L3"}, {{"Hub", "L1"}, {"L2", "Hub"}, {"Hub", "L3"}});
  auto s = BetweennessCentrality(star).values;
  CHECK(s.at(N("Hub")) == 6);
  CHECK(s.at(N("L1")) == 0);

  // Two equal shortest paths share the credit.
  auto square = Undirected({"A", "B", "C", "D"}, {{"A", "B"}, {"B", "C"}, {"C", "D"}, {"D", "A"}});
  for (const auto &[node, value] : BetweennessCentrality(square).values) CHECK(value == 1.0);

  CHECK(BetweennessCentrality(SemanticGraph{}).values.empty());
}

TEST_CASE("betweenness matches the brute-force oracle") {
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> size(1, 12);
  for (int trial = 0; trial < 100; ++trial) {
    SemanticGraph g = RandomLinkGraph(rng, size(rng), 0.3);
    for (bool directed : {false, true}) {
      auto got = BetweennessCentrality(g, directed ? Direction::kDirected
                                                   : Direction::kUndirectedProjection);
      auto want = BruteForceBetweenness(g, directed);
      REQUIRE(got.values.size() == want.size());
      for (const auto &[node, value] : want) {
        CHECK(std::abs(got.values.at(node) - value) <= 1e-9);
      }
    }
  }
}

TEST_CASE("betweenness is reproducible across runs") {
  auto records = galaxy::testing::SyntheticRecords(400, 3);
  SemanticGraph g = BuildGraph(records, GraphScope::kIncludeWebNodes);
  auto first = BetweennessCentrality(g);
  for (int i = 0; i < 3; ++i) CHECK(BetweennessCentrality(g).values == first.values);
}

TEST_CASE("leaves have betweenness zero") {
  auto records = galaxy::testing::SyntheticRecords(300, 8);
  SemanticGraph g = BuildGraph(records, GraphScope::kIncludeWebNodes);
  auto degree = DegreeCentrality(g);
  auto between = BetweennessCentrality(g);
  size_t leaves = 0;
  for (const auto &[node, d] : degree.values) {
    if (d == 1) {
      ++leaves;
      CHECK(between.values.at(node) == 0);
    }
  }
  CHECK(leaves > 0);
}

TEST_CASE("top k") {
  CentralityReport r{Metric::kBetweenness, Direction::kUndirectedProjection,
                     {{N("b"), 1}, {N("a"), 1}, {N("c"), 5}, {NodeId::Web("http://w.org"), 9}}};
  auto all = TopK(r, 10);
  REQUIRE(all.size() == 4);
  CHECK(all[0].first == NodeId::Web("http://w.org"));
  CHECK(all[1].first == N("c"));
  CHECK(all[2].first == N("a"));
  CHECK(all[3].first == N("b"));
  auto articles = TopK(r, 2, NodeKind::kArticle);
  CHECK(articles.size() == 2);
  CHECK(articles[0].first == N("c"));
  CHECK_THROWS_AS(TopK(r, 0), Error);
}

TEST_CASE("centrality tsv") {
  auto g = Undirected({"A", "B", "C"}, {{"A", "B"}, {"B", "C"}});
  std::string tsv = ReportsToTsv({DegreeCentrality(g), BetweennessCentrality(g)});
  CHECK(tsv ==
        "node\tkind\tmetric\tvalue\n"
        "A\tarticle\tdegree\t1\nB\tarticle\tdegree\t2\nC\tarticle\tdegree\t1\n"
        "A\tarticle\tbetweenness\t0\nB\tarticle\tbetweenness\t2\nC\tarticle\tbetweenness\t0\n");
}

TEST_CASE("wikimap filter: small graphs") {
  SemanticGraph g;
  for (int i = 0; i < 10; ++i) g.AddNode(N("n" + std::to_string(i)));
  for (int i = 0; i + 1 < 8; ++i) g.AddEdge(N("n" + std::to_string(i)), N("n" + std::to_string(i + 1)), Layer::kLink);
  // n8 and n9 are only linked to each other.
  g.AddEdge(N("n8"), N("n9"), Layer::kLink);
  g.AddEdge(N("n9"), N("n8"), Layer::kLink);

  SemanticGraph all = WikimapFilter(g, {"n0"}, 10);
  CHECK(all.node_count() == 8);
  CHECK_FALSE(all.HasNode(N("n8")));

  SemanticGraph three = WikimapFilter(g, {"n3"}, 3);
  CHECK(three.node_count() == 3);
  CHECK(three.HasNode(N("n2")));
  CHECK(three.HasNode(N("n4")));

  CHECK_THROWS_AS(WikimapFilter(g, {"nowhere"}, 5), Error);
  try {
    WikimapFilter(g, {"nowhere"}, 5);
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::kSeedNotInGraph);
  }
  CHECK_THROWS_AS(WikimapFilter(g, {"n0", "n1"}, 1), Error);
}

TEST_CASE("wikimap filter: order switch") {
  // Seed S links to a; a links to far; far is cited by many others.
  SemanticGraph g;
  for (const char *n : {"S", "a", "b", "far", "x1", "x2", "x3"}) g.AddNode(N(n));
  g.AddEdge(N("S"), N("a"), Layer::kLink);
  g.AddEdge(N("S"), N("b"), Layer::kLink);
  g.AddEdge(N("a"), N("far"), Layer::kLink);
  for (const char *x : {"x1", "x2", "x3"}) g.AddEdge(N(x), N("far"), Layer::kLink);
  auto distance = WikimapFilter(g, {"S"}, 3, FilterOrder::kDistanceFirst);
  CHECK(distance.HasNode(N("a")));
  CHECK(distance.HasNode(N("b")));
  auto indegree = WikimapFilter(g, {"S"}, 3, FilterOrder::kIndegreeFirst);
  CHECK(indegree.HasNode(N("far")));
  CHECK(indegree.HasNode(N("a")));
}

TEST_CASE("wikimap filter: synthetic corpus at pre-filter scale") {
  auto records = galaxy::testing::SyntheticRecords(1500, 42);
  SemanticGraph g = BuildGraph(records, GraphScope::kCandidateSetOnly);
  REQUIRE(g.node_count() == 1500);
  std::set<std::string> seeds = {"Topic 0000", "Topic 0750"};
  SemanticGraph out = WikimapFilter(g, seeds, 50);
  CHECK(out.node_count() <= 50);
  for (const auto &s : seeds) CHECK(out.HasNode(N(s)));
  CHECK(WikimapFilter(g, seeds, 50) == out);
  CHECK(Validate(out).empty());
}

#include <doctest.h>

#include <sstream>

#include "oracles.hpp"
#include "rulingsim/errors.hpp"
#include "rulingsim/generators.hpp"
#include "rulingsim/graph.hpp"
#include "rulingsim/rng.hpp"

using namespace rulingsim;

namespace {

Graph petersen() {
  std::vector<Edge> e;
  for (NodeId i = 0; i < 5; ++i) {
    e.emplace_back(i, (i + 1) % 5);          // outer cycle
    e.emplace_back(i, i + 5);                // spokes
    e.emplace_back(i + 5, (i + 2) % 5 + 5);  // inner pentagram
  }
  return Graph::from_edges(10, e);
}

NodeMask all_alive(const Graph& g) { return NodeMask(g.node_count(), 1); }

}  // namespace

TEST_CASE("graph construction rejects malformed edge sets") {
  const std::vector<Edge> loop{{1, 1}};
  const std::vector<Edge> dup{{0, 1}, {1, 0}};
  const std::vector<Edge> range{{0, 3}};
  CHECK_THROWS_AS(Graph::from_edges(3, loop), InputError);
  CHECK_THROWS_AS(Graph::from_edges(3, dup), InputError);
  CHECK_THROWS_AS(Graph::from_edges(3, range), InputError);
}

TEST_CASE("neighbors are sorted and edges are canonical") {
  const std::vector<Edge> e{{3, 0}, {0, 1}, {2, 0}};
  const Graph g = Graph::from_edges(4, e);
  const auto nb = g.neighbors(0);
  CHECK(std::vector<NodeId>(nb.begin(), nb.end()) == std::vector<NodeId>{1, 2, 3});
  CHECK(g.edges() == std::vector<Edge>{{0, 1}, {0, 2}, {0, 3}});
  CHECK(g.max_degree() == 3);
  CHECK(g.has_edge(2, 0));
  CHECK_FALSE(g.has_edge(1, 2));
}

TEST_CASE("girth examples") {
  CHECK(girth(cycle_graph(7)) == 7u);
  CHECK_FALSE(girth(uniform_random_tree(50, 3)).has_value());
  CHECK_FALSE(girth(path_graph(1)).has_value());
  const Graph p = petersen();
  REQUIRE(oracle::girth_by_edge_deletion(p) == 5);
  CHECK(girth(p) == 5u);
  CHECK(girth_at_least(p, 5));
  CHECK_FALSE(girth_at_least(p, 6));
}

TEST_CASE("girth agrees with the edge-deletion oracle on random chordal graphs") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Rng rng(seed);
    const Graph t = uniform_random_tree(40, seed);
    auto edges = t.edges();
    for (int extra = 0; extra < 3; ++extra) {
      const auto u = static_cast<NodeId>(rng.uniform_below(40));
      const auto v = static_cast<NodeId>(rng.uniform_below(40));
      if (u != v && !t.has_edge(u, v) &&
          std::find(edges.begin(), edges.end(), Edge{std::min(u, v), std::max(u, v)}) == edges.end())
        edges.emplace_back(std::min(u, v), std::max(u, v));
    }
    const Graph g = Graph::from_edges(40, edges);
    const auto expected = oracle::girth_by_edge_deletion(g);
    const auto got = girth(g);
    REQUIRE(got.has_value() == expected.has_value());
    if (got) CHECK(*got == static_cast<std::size_t>(*expected));
    CHECK(is_forest(g) == !expected.has_value());
  }
}

TEST_CASE("k-hop neighborhood examples") {
  const Graph p3 = path_graph(3);
  NodeMask alive = all_alive(p3);
  CHECK(k_hop_neighborhood(p3, 0, 2, alive) == std::vector<NodeId>{1, 2});
  alive[1] = 0;
  CHECK(k_hop_neighborhood(p3, 0, 2, alive).empty());
  CHECK_THROWS_AS(k_hop_neighborhood(p3, 1, 2, alive), std::invalid_argument);

  const Graph star = star_graph(6);
  CHECK(k_hop_neighborhood(star, 0, 1, all_alive(star)) == std::vector<NodeId>{1, 2, 3, 4, 5});
}

TEST_CASE("k-hop neighborhood agrees with brute-force BFS") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const Graph g = seed % 2 ? uniform_random_tree(200, seed) : high_girth_regularish(200, 3, seed);
    Rng rng(seed + 100);
    NodeMask alive(g.node_count(), 1);
    if (seed >= 4) {
      for (auto& a : alive) a = rng.uniform_below(5) != 0;
    }
    for (NodeId v = 0; v < g.node_count(); ++v) {
      if (!alive[v]) continue;
      const auto dist = oracle::bfs(g, v, alive);
      for (std::size_t k = 0; k <= 4; ++k) {
        std::vector<NodeId> expected;
        for (NodeId u = 0; u < g.node_count(); ++u)
          if (u != v && dist[u] <= static_cast<int>(k)) expected.push_back(u);
        REQUIRE(k_hop_neighborhood(g, v, k, alive) == expected);
      }
    }
  }
}

TEST_CASE("connected components examples") {
  const Graph p5 = path_graph(5);
  const std::vector<NodeId> subset{4, 0, 1};
  CHECK(connected_components(p5, subset) == std::vector<std::vector<NodeId>>{{0, 1}, {4}});
  CHECK(connected_components(p5, std::vector<NodeId>{}).empty());
  const Graph t = uniform_random_tree(300, 9);
  std::vector<NodeId> all(300);
  std::iota(all.begin(), all.end(), 0);
  CHECK(connected_components(t, all).size() == 1);
}

TEST_CASE("multi-source distances match Floyd-Warshall") {
  const Graph g = high_girth_regularish(120, 3, 4);
  const auto d = oracle::floyd_warshall(g);
  const std::vector<NodeId> sources{3, 50, 77};
  const auto got = multi_source_distances(g, sources);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    int best = oracle::kInf;
    for (NodeId s : sources) best = std::min(best, d[v][s]);
    if (best == oracle::kInf) CHECK(got[v] == kUnreachable);
    else CHECK(got[v] == static_cast<std::size_t>(best));
  }
}

TEST_CASE("edge list format") {
  const std::vector<Edge> tri{{1, 2}, {0, 2}, {0, 1}};
  std::ostringstream out;
  save_edge_list(Graph::from_edges(3, tri), out);
  CHECK(out.str() == "3 3\n0 1\n0 2\n1 2\n");

  std::istringstream ok("2 1\n0 1\n");
  const Graph g = load_edge_list(ok);
  CHECK(g.node_count() == 2);
  CHECK(g.edge_count() == 1);

  std::istringstream bad("2 1\n0 2\n");
  try {
    load_edge_list(bad);
    FAIL("expected an error");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }

  auto rejects_at = [](const std::string& text, const std::string& where) {
    std::istringstream in(text);
    try {
      load_edge_list(in);
    } catch (const InputError& e) {
      return std::string(e.what()).find(where) != std::string::npos;
    }
    return false;
  };
  CHECK(rejects_at("3 2\n0 1\n1 1\n", "line 3"));
  CHECK(rejects_at("3 2\n0 1\n1 0\n", "line 3"));
  CHECK(rejects_at("3 2\n0 1\nx y\n", "line 3"));
  CHECK(rejects_at("3 2\n0 1\n", "declares 2 edges"));
  CHECK(rejects_at("3\n", "line 1"));
}

TEST_CASE("edge list round trip") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Graph g = high_girth_regularish(500, 4, seed);
    std::stringstream buf;
    save_edge_list(g, buf);
    CHECK(load_edge_list(buf) == g);
  }
}

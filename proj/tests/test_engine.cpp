#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "rulingsim/algorithms.hpp"
#include "rulingsim/engine.hpp"
#include "rulingsim/generators.hpp"

using namespace rulingsim;

namespace {

std::vector<NodeId> all_nodes(const Graph& g) {
  std::vector<NodeId> v(g.node_count());
  std::iota(v.begin(), v.end(), 0);
  return v;
}

std::vector<std::uint64_t> draws_of(const SimState& s) {
  std::vector<std::uint64_t> d;
  for (NodeId v = 0; v < s.node_count(); ++v) d.push_back(s.draw(v));
  return d;
}

}  // namespace

TEST_CASE("fresh draws") {
  const Graph g = uniform_random_tree(50, 1);
  SimState a(g, 42), b(g, 42);
  const auto before = draws_of(a);
  a.fresh_draws(std::vector<NodeId>{});
  CHECK(draws_of(a) == before);
  CHECK(a.rounds() == 0);

  a.fresh_draws(all_nodes(g));
  b.fresh_draws(all_nodes(g));
  CHECK(draws_of(a) == draws_of(b));

  const std::vector<NodeId> part{3, 7};
  const auto old = draws_of(a);
  a.fresh_draws(part);
  for (NodeId v = 0; v < 50; ++v) {
    if (v == 3 || v == 7) CHECK(a.draw(v) != old[v]);
    else CHECK(a.draw(v) == old[v]);
  }
}

TEST_CASE("draws of disjoint subsets drawn one after the other are uncorrelated") {
  const Graph g = path_graph(2);
  SimState s(g, 5);
  const std::size_t trials = 100000;
  double sx = 0, sy = 0, sxy = 0, sxx = 0, syy = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    s.fresh_draws(std::vector<NodeId>{0});
    s.fresh_draws(std::vector<NodeId>{1});
    const double x = std::ldexp(static_cast<double>(s.draw(0)), -64);
    const double y = std::ldexp(static_cast<double>(s.draw(1)), -64);
    sx += x, sy += y, sxy += x * y, sxx += x * x, syy += y * y;
  }
  const double n = static_cast<double>(trials);
  const double cov = sxy / n - (sx / n) * (sy / n);
  const double corr = cov / std::sqrt((sxx / n - (sx / n) * (sx / n)) * (syy / n - (sy / n) * (sy / n)));
  // Under independence the sample correlation has standard deviation ~ 1/sqrt(n).
  CHECK(std::abs(corr) <= 3.0 / std::sqrt(n));
}

TEST_CASE("local minimum examples") {
  const Graph iso = path_graph(1);
  SimState s1(iso, 1);
  CHECK(s1.is_local_minimum(0, NodeMask{1}));

  const Graph edge = path_graph(2);
  SimState s2(edge, 2);
  s2.fresh_draws(all_nodes(edge));
  const NodeMask both{1, 1};
  const NodeId smaller = s2.draw(0) < s2.draw(1) ? 0 : 1;
  CHECK(s2.is_local_minimum(smaller, both));
  CHECK_FALSE(s2.is_local_minimum(1 - smaller, both));

  const Graph star = star_graph(11);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    SimState s(star, seed);
    s.fresh_draws(all_nodes(star));
    const NodeMask all(11, 1);
    bool center_smallest = true;
    for (NodeId leaf = 1; leaf <= 10; ++leaf) center_smallest = center_smallest && s.draw(0) < s.draw(leaf);
    CHECK(s.is_local_minimum(0, all) == center_smallest);
    if (center_smallest) {
      for (NodeId leaf = 1; leaf <= 10; ++leaf) CHECK_FALSE(s.is_local_minimum(leaf, all));
    }
  }
}

TEST_CASE("remove_covered examples") {
  const Graph p5 = path_graph(5);
  SimState s(p5, 1);
  CHECK(s.remove_covered(std::vector<NodeId>{}, 2) == 0);
  CHECK(s.rounds() == 2);  // the propagation rounds are charged regardless
  CHECK(s.remove_covered(std::vector<NodeId>{2}, 2) == 5);
  CHECK(s.alive_count() == 0);
  CHECK(s.in_set(2));
  CHECK_FALSE(s.in_set(0));
  CHECK(s.rounds() == 4);

  const Graph sos = star_of_stars(3, 2);
  SimState t(sos, 1);
  CHECK(t.remove_covered(std::vector<NodeId>{0}, 2) == 10);
  CHECK(t.alive_count() == 0);

  // Paths through dead nodes do not cover.
  SimState u(p5, 1);
  u.retire(std::vector<NodeId>{3});
  u.remove_covered(std::vector<NodeId>{2}, 2);
  CHECK(u.alive(4));
  CHECK_FALSE(u.alive(0));
}

TEST_CASE("removal kills exactly the pre-removal radius-2 alive ball") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = uniform_random_tree(300, seed);
    SimState s(g, seed);
    Rng rng(seed);
    std::vector<NodeId> dead;
    for (NodeId v = 0; v < 300; ++v)
      if (rng.uniform_below(6) == 0) dead.push_back(v);
    s.retire(dead);
    const NodeMask before = s.alive_mask();
    std::vector<NodeId> chosen;
    for (NodeId v = 0; v < 300; ++v) {
      if (!before[v] || rng.uniform_below(20) != 0) continue;
      bool clash = false;
      for (NodeId c : chosen) clash = clash || g.has_edge(c, v);
      if (!clash) chosen.push_back(v);
    }
    std::set<NodeId> expected(chosen.begin(), chosen.end());
    for (NodeId c : chosen)
      for (NodeId x : k_hop_neighborhood(g, c, 2, before)) expected.insert(x);
    CHECK(s.remove_covered(chosen, 2) == expected.size());
    for (NodeId v = 0; v < 300; ++v) CHECK(s.alive(v) == (before[v] && !expected.count(v)));
  }
}

TEST_CASE("alive degree") {
  const Graph star = star_graph(6);
  SimState s(star, 1);
  CHECK(s.alive_degree(0) == 5);
  s.retire(std::vector<NodeId>{1, 2});
  CHECK(s.alive_degree(0) == 3);

  const Graph t = uniform_random_tree(2000, 3);
  SimState r(t, 3);
  const NodeMask everyone(2000, 1);
  r.remove_covered(local_minima_join(r, everyone), 2);
  r.put_aside(std::vector<NodeId>{r.alive_nodes().front()});
  std::size_t max_deg = 0;
  for (NodeId v = 0; v < 2000; ++v) {
    if (!r.alive(v)) continue;
    std::size_t d = 0;
    for (NodeId u : t.neighbors(v)) d += r.alive(u);
    CHECK(r.alive_degree(v) == d);
    max_deg = std::max(max_deg, d);
  }
  CHECK(r.max_alive_degree() == max_deg);
}

TEST_CASE("round accounting") {
  const Graph t = uniform_random_tree(500, 1);
  SimState s(t, 1);
  const NodeMask everyone(500, 1);
  for (int k = 1; k <= 5; ++k) {
    s.remove_covered(local_minima_join(s, everyone), 2);
    CHECK(s.rounds() == static_cast<std::size_t>(4 * k));
  }
  CHECK(RoundCost{}.lmj_with_removal(2) == 4);
  CHECK_THROWS_AS(SimState(t, 1, RoundCost{0, 1, 1, 1}), std::invalid_argument);
}

TEST_CASE("set members are dead and dead nodes stay dead") {
  const Graph t = uniform_random_tree(1000, 8);
  SimState s(t, 8);
  NodeMask dead_before(1000, 0);
  const NodeMask everyone(1000, 1);
  for (int it = 0; it < 3; ++it) {
    s.remove_covered(local_minima_join(s, everyone), 2);
    for (NodeId v = 0; v < 1000; ++v) {
      if (s.in_set(v)) CHECK_FALSE(s.alive(v));
      if (dead_before[v]) CHECK_FALSE(s.alive(v));
      dead_before[v] = !s.alive(v);
    }
  }
  NodeId dead = 0;
  while (s.alive(dead)) ++dead;
  CHECK_THROWS_AS(s.remove_covered(std::vector<NodeId>{dead}, 2), std::logic_error);
}

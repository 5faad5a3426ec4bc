#include "rulingsim/generators.hpp"

#include <algorithm>

#include "rulingsim/errors.hpp"
#include "rulingsim/rng.hpp"

namespace rulingsim {

namespace {

void require_positive(std::size_t n, const char* what) {
  if (n == 0) throw InputError(std::string(what) + ": n must be positive");
}

}  // namespace

Graph uniform_random_tree(std::size_t n, std::uint64_t seed) {
  require_positive(n, "uniform_random_tree");
  std::vector<Edge> edges;
  if (n == 2) edges.emplace_back(0, 1);
  if (n <= 2) return Graph::from_edges(n, edges);

  Rng rng(seed);
  std::vector<NodeId> code(n - 2);
  for (auto& x : code) x = static_cast<NodeId>(rng.uniform_below(n));

  // Linear-time Prüfer decoding.
  std::vector<std::size_t> degree(n, 1);
  for (NodeId x : code) ++degree[x];
  std::size_t ptr = 0;
  while (degree[ptr] != 1) ++ptr;
  std::size_t leaf = ptr;
  edges.reserve(n - 1);
  for (NodeId v : code) {
    edges.emplace_back(static_cast<NodeId>(leaf), v);
    if (--degree[v] == 1 && v < ptr) {
      leaf = v;
    } else {
      ++ptr;
      while (degree[ptr] != 1) ++ptr;
      leaf = ptr;
    }
  }
  edges.emplace_back(static_cast<NodeId>(leaf), static_cast<NodeId>(n - 1));
  return Graph::from_edges(n, edges);
}

Graph preferential_tree(std::size_t n, std::uint64_t seed) {
  require_positive(n, "preferential_tree");
  Rng rng(seed);
  std::vector<Edge> edges;
  edges.reserve(n - 1);
  // Every edge endpoint is one ticket, so picking a ticket picks a node
  // with probability proportional to its degree.
  std::vector<NodeId> tickets;
  tickets.reserve(2 * n);
  for (std::size_t i = 1; i < n; ++i) {
    NodeId parent = tickets.empty() ? 0 : tickets[rng.uniform_below(tickets.size())];
    edges.emplace_back(parent, static_cast<NodeId>(i));
    tickets.push_back(parent);
    tickets.push_back(static_cast<NodeId>(i));
  }
  return Graph::from_edges(n, edges);
}

Graph path_graph(std::size_t n) {
  require_positive(n, "path");
  std::vector<Edge> edges;
  for (std::size_t i = 1; i < n; ++i) edges.emplace_back(static_cast<NodeId>(i - 1), static_cast<NodeId>(i));
  return Graph::from_edges(n, edges);
}

Graph cycle_graph(std::size_t n) {
  if (n < 3) throw InputError("cycle: n must be at least 3");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) edges.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>((i + 1) % n));
  return Graph::from_edges(n, edges);
}

Graph star_graph(std::size_t n) {
  require_positive(n, "star");
  std::vector<Edge> edges;
  for (std::size_t i = 1; i < n; ++i) edges.emplace_back(0, static_cast<NodeId>(i));
  return Graph::from_edges(n, edges);
}

Graph layered_tree(const std::vector<std::size_t>& branching) {
  std::size_t total = 1, level = 1;
  for (std::size_t b : branching) {
    if (b == 0) throw InputError("layered_tree: branching factors must be positive");
    level *= b;
    total += level;
    if (total > (1u << 30)) throw InputError("layered_tree: too many nodes");
  }
  std::vector<Edge> edges;
  edges.reserve(total - 1);
  std::size_t level_begin = 0, level_end = 1, next = 1;
  for (std::size_t b : branching) {
    for (std::size_t p = level_begin; p < level_end; ++p) {
      for (std::size_t j = 0; j < b; ++j) edges.emplace_back(static_cast<NodeId>(p), static_cast<NodeId>(next++));
    }
    level_begin = level_end;
    level_end = next;
  }
  return Graph::from_edges(total, edges);
}

Graph star_of_stars(std::size_t d1, std::size_t d2) {
  if (d1 == 0 || d2 == 0) throw InputError("star_of_stars: d1 and d2 must be positive");
  return layered_tree({d1, d2});
}

namespace {

// True iff dist(u, v) >= 6 in the graph given by adj. Marks the radius-2
// ball of v, then searches radius 3 from u; any hit means dist <= 5.
class FarEnoughProbe {
 public:
  explicit FarEnoughProbe(std::size_t n) : mark_(n, 0), seen_(n, 0) {}

  bool operator()(const std::vector<std::vector<NodeId>>& adj, NodeId u, NodeId v) {
    ++epoch_;
    ball_.assign({v});
    mark_[v] = epoch_;
    for (std::size_t depth = 0, begin = 0; depth < 2; ++depth) {
      const std::size_t end = ball_.size();
      for (std::size_t i = begin; i < end; ++i) {
        for (NodeId w : adj[ball_[i]]) {
          if (mark_[w] != epoch_) {
            mark_[w] = epoch_;
            ball_.push_back(w);
          }
        }
      }
      begin = end;
    }
    if (mark_[u] == epoch_) return false;
    frontier_.assign({u});
    seen_[u] = epoch_;
    for (std::size_t depth = 0, begin = 0; depth < 3; ++depth) {
      const std::size_t end = frontier_.size();
      for (std::size_t i = begin; i < end; ++i) {
        for (NodeId w : adj[frontier_[i]]) {
          if (seen_[w] == epoch_) continue;
          if (mark_[w] == epoch_) return false;
          seen_[w] = epoch_;
          frontier_.push_back(w);
        }
      }
      begin = end;
    }
    return true;
  }

 private:
  std::vector<std::uint32_t> mark_, seen_;
  std::vector<NodeId> ball_, frontier_;
  std::uint32_t epoch_ = 0;
};

}  // namespace

Graph high_girth_regularish(std::size_t n, std::size_t target_degree, std::uint64_t seed, BaseTree base) {
  require_positive(n, "high_girth_regularish");
  if (target_degree < 3) throw InputError("high_girth_regularish: target degree must be at least 3");
  Rng rng(seed);
  const std::uint64_t tree_seed = rng.next_u64();
  Graph tree = base == BaseTree::uniform ? uniform_random_tree(n, tree_seed) : preferential_tree(n, tree_seed);

  std::vector<std::vector<NodeId>> adj(n);
  std::vector<Edge> edges = tree.edges();
  for (const auto& [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<NodeId> open;
  std::vector<std::size_t> slot(n, SIZE_MAX);
  for (std::size_t v = 0; v < n; ++v) {
    if (adj[v].size() < target_degree) {
      slot[v] = open.size();
      open.push_back(static_cast<NodeId>(v));
    }
  }
  auto close_if_full = [&](NodeId v) {
    if (adj[v].size() < target_degree || slot[v] == SIZE_MAX) return;
    const NodeId last = open.back();
    open[slot[v]] = last;
    slot[last] = slot[v];
    open.pop_back();
    slot[v] = SIZE_MAX;
  };

  FarEnoughProbe far_enough(n);
  const double goal = 0.9 * static_cast<double>(target_degree) * static_cast<double>(n) / 2.0;
  while (static_cast<double>(edges.size()) < goal) {
    bool placed = false;
    for (int attempt = 0; attempt < 100 && !placed; ++attempt) {
      if (open.size() < 2) break;
      NodeId u = open[rng.uniform_below(open.size())];
      NodeId v = open[rng.uniform_below(open.size())];
      if (u == v || !far_enough(adj, u, v)) continue;
      adj[u].push_back(v);
      adj[v].push_back(u);
      edges.emplace_back(u, v);
      close_if_full(u);
      close_if_full(v);
      placed = true;
    }
    if (!placed) {
      throw GenerationError("high_girth_regularish(n=" + std::to_string(n) + ", target_degree=" +
                            std::to_string(target_degree) + "): no chord at distance >= 6 found in 100 attempts after " +
                            std::to_string(edges.size()) + " edges");
    }
  }
  return Graph::from_edges(n, edges);
}

Graph generate(const GraphFamilySpec& spec) {
  switch (spec.family) {
    case Family::uniform_random_tree: return uniform_random_tree(spec.n, spec.seed);
    case Family::preferential_tree: return preferential_tree(spec.n, spec.seed);
    case Family::path: return path_graph(spec.n);
    case Family::cycle: return cycle_graph(spec.n);
    case Family::star: return star_graph(spec.n);
    case Family::star_of_stars: return star_of_stars(spec.d1, spec.d2);
    case Family::layered_tree: return layered_tree(spec.branching);
    case Family::high_girth_regularish:
      return high_girth_regularish(spec.n, spec.target_degree, spec.seed, spec.base);
    case Family::explicit_file: return load_edge_list_file(spec.file);
  }
  throw InputError("unknown graph family");
}

}  // namespace rulingsim

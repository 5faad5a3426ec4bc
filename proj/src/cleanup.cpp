#include "rulingsim/cleanup.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "rulingsim/verify.hpp"

namespace rulingsim {

namespace {

// G[nodes] with local indices 0..k-1 (position in the sorted node list).
struct LocalGraph {
  std::vector<NodeId> nodes;
  std::vector<std::vector<std::uint32_t>> adj;
  std::size_t edge_count = 0;
};

LocalGraph induce(const Graph& g, std::span<const NodeId> subset) {
  LocalGraph lg;
  lg.nodes.assign(subset.begin(), subset.end());
  std::sort(lg.nodes.begin(), lg.nodes.end());
  lg.nodes.erase(std::unique(lg.nodes.begin(), lg.nodes.end()), lg.nodes.end());
  std::unordered_map<NodeId, std::uint32_t> local;
  local.reserve(lg.nodes.size() * 2);
  for (std::size_t i = 0; i < lg.nodes.size(); ++i) local.emplace(lg.nodes[i], static_cast<std::uint32_t>(i));
  lg.adj.resize(lg.nodes.size());
  for (std::size_t i = 0; i < lg.nodes.size(); ++i) {
    for (NodeId w : g.neighbors(lg.nodes[i])) {
      if (auto it = local.find(w); it != local.end()) lg.adj[i].push_back(it->second);
    }
    lg.edge_count += lg.adj[i].size();
  }
  lg.edge_count /= 2;
  return lg;
}

// BFS inside the local nodes flagged by `allowed`; returns distances.
std::vector<std::size_t> local_bfs(const LocalGraph& lg, std::uint32_t source, const std::vector<std::uint8_t>& allowed) {
  std::vector<std::size_t> dist(lg.nodes.size(), kUnreachable);
  std::vector<std::uint32_t> queue{source};
  dist[source] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::uint32_t u = queue[head];
    for (std::uint32_t w : lg.adj[u]) {
      if (allowed[w] && dist[w] == kUnreachable) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

std::size_t eccentricity(const std::vector<std::size_t>& dist, std::uint32_t* far = nullptr) {
  std::size_t best = 0;
  for (std::uint32_t i = 0; i < dist.size(); ++i) {
    if (dist[i] != kUnreachable && dist[i] >= best) {
      best = dist[i];
      if (far) *far = i;
    }
  }
  return best;
}

bool is_acyclic(const LocalGraph& lg) {
  std::vector<std::uint32_t> parent(lg.nodes.size());
  for (std::uint32_t i = 0; i < parent.size(); ++i) parent[i] = i;
  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::uint32_t u = 0; u < lg.adj.size(); ++u) {
    for (std::uint32_t w : lg.adj[u]) {
      if (u >= w) continue;
      const std::uint32_t a = find(u), b = find(w);
      if (a == b) return false;
      parent[a] = b;
    }
  }
  return true;
}

// Greedy MIS of the local nodes flagged in `eligible`, lowest id first,
// skipping nodes adjacent to an already chosen node.
void greedy_mis_local(const LocalGraph& lg, const std::vector<std::uint32_t>& members,
                      std::vector<std::uint8_t>& chosen) {
  for (std::uint32_t u : members) {
    bool blocked = false;
    for (std::uint32_t w : lg.adj[u]) blocked = blocked || chosen[w];
    if (!blocked) chosen[u] = 1;
  }
}

}  // namespace

std::size_t rake_compress_schedule(std::size_t s) {
  if (s <= 1) return 7;
  return static_cast<std::size_t>(std::ceil(3.0 * std::log2(static_cast<double>(s)))) + 7;
}

std::size_t rake_compress_diameter_bound(std::size_t iterations) {
  return std::max<std::size_t>(4 * iterations, 4) - 1;
}

std::size_t NetworkDecomposition::max_diameter(std::uint8_t c) const {
  std::size_t best = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (color[i] == c) best = std::max(best, cluster_diameter[cluster_id[i]]);
  }
  return best;
}

NetworkDecomposition rake_compress_decomposition(const Graph& host, std::span<const NodeId> component) {
  const LocalGraph lg = induce(host, component);
  if (!is_acyclic(lg)) throw std::invalid_argument("rake_compress_decomposition: component contains a cycle");
  const std::size_t k = lg.nodes.size();

  NetworkDecomposition nd;
  nd.nodes = lg.nodes;
  nd.color.assign(k, 0);
  nd.dominating_set_size = greedy_distance_dominating_set(host, lg.nodes, 7).size();
  nd.scheduled_iterations = rake_compress_schedule(nd.dominating_set_size);

  std::vector<std::uint8_t> removed(k, 0);
  std::vector<std::size_t> degree(k);
  for (std::size_t i = 0; i < k; ++i) degree[i] = lg.adj[i].size();
  std::size_t remaining = k;
  auto remove_all = [&](const std::vector<std::uint32_t>& batch) {
    for (std::uint32_t u : batch) removed[u] = 1;
    for (std::uint32_t u : batch) {
      for (std::uint32_t w : lg.adj[u]) {
        if (!removed[w]) --degree[w];
      }
    }
    remaining -= batch.size();
  };

  std::vector<std::uint8_t> on_chain(k, 0);
  while (remaining > 0) {
    ++nd.iterations;
    std::vector<std::uint32_t> batch;
    for (std::uint32_t u = 0; u < k; ++u) {
      if (!removed[u] && degree[u] <= 1) {
        batch.push_back(u);
        nd.color[u] = 1;
      }
    }
    remove_all(batch);

    batch.clear();
    for (std::uint32_t start = 0; start < k; ++start) {
      if (removed[start] || degree[start] != 2 || on_chain[start]) continue;
      // Walk to one end of the maximal degree-2 chain through `start`, then
      // collect it in order.
      auto next_on_chain = [&](std::uint32_t cur, std::uint32_t prev) -> std::int64_t {
        for (std::uint32_t w : lg.adj[cur]) {
          if (!removed[w] && w != prev && degree[w] == 2) return w;
        }
        return -1;
      };
      std::uint32_t end = start, prev = start;
      for (std::int64_t nx; (nx = next_on_chain(end, prev)) >= 0 && static_cast<std::uint32_t>(nx) != start;) {
        prev = end;
        end = static_cast<std::uint32_t>(nx);
      }
      std::vector<std::uint32_t> chain{end};
      on_chain[end] = 1;
      prev = end;
      for (std::uint32_t cur = end;;) {
        const std::int64_t nx = next_on_chain(cur, prev);
        if (nx < 0 || on_chain[nx]) break;
        prev = cur;
        cur = static_cast<std::uint32_t>(nx);
        chain.push_back(cur);
        on_chain[cur] = 1;
      }
      const std::size_t len = chain.size();
      if (len < 3) continue;
      for (std::size_t pos = 0; pos < len; ++pos) {
        const bool splitter = pos == 0 || pos == len - 1 || (pos % 4 == 0 && pos + 3 <= len);
        nd.color[chain[pos]] = splitter ? 1 : 2;
        batch.push_back(chain[pos]);
      }
    }
    remove_all(batch);
    for (std::uint32_t u = 0; u < k; ++u) on_chain[u] = 0;
  }

  // Clusters: connected components of each color class. Clusters are
  // subtrees, so a double BFS sweep gives the exact diameter.
  constexpr std::uint32_t kNoCluster = UINT32_MAX;
  nd.cluster_id.assign(k, kNoCluster);
  std::vector<std::size_t> dist(k, kUnreachable);
  std::vector<std::uint32_t> queue;
  auto sweep = [&](std::uint32_t source) {
    queue.assign({source});
    dist[source] = 0;
    std::uint32_t far = source;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const std::uint32_t u = queue[head];
      if (dist[u] > dist[far]) far = u;
      for (std::uint32_t w : lg.adj[u]) {
        if (nd.color[w] == nd.color[source] && dist[w] == kUnreachable) {
          dist[w] = dist[u] + 1;
          queue.push_back(w);
        }
      }
    }
    const std::size_t ecc = dist[far];
    for (std::uint32_t u : queue) dist[u] = kUnreachable;
    return std::pair{far, ecc};
  };
  for (std::uint32_t s = 0; s < k; ++s) {
    if (nd.cluster_id[s] != kNoCluster) continue;
    const auto id = static_cast<std::uint32_t>(nd.cluster_diameter.size());
    const std::uint32_t far = sweep(s).first;
    for (std::uint32_t u : queue) nd.cluster_id[u] = id;
    nd.cluster_diameter.push_back(sweep(far).second);
  }
  nd.cluster_diameter_bound = rake_compress_diameter_bound(nd.scheduled_iterations);
  nd.rounds = nd.iterations * kRoundsPerRakeCompressIteration;
  return nd;
}

namespace {

std::vector<NodeId> union_checked(const Graph& g, const std::vector<std::vector<NodeId>>& w_sets) {
  std::unordered_map<NodeId, std::size_t> owner;
  std::vector<NodeId> all;
  for (std::size_t i = 0; i < w_sets.size(); ++i) {
    for (NodeId v : w_sets[i]) {
      if (!owner.emplace(v, i).second) throw std::logic_error("clean_up: node in two put-aside sets");
      all.push_back(v);
    }
  }
  for (NodeId v : all) {
    for (NodeId w : g.neighbors(v)) {
      auto it = owner.find(w);
      if (it != owner.end() && it->second != owner[v]) {
        throw std::logic_error("clean_up: put-aside sets W_" + std::to_string(owner[v] + 1) + " and W_" +
                               std::to_string(it->second + 1) + " are adjacent");
      }
    }
  }
  std::sort(all.begin(), all.end());
  return all;
}

}  // namespace

CleanupResult clean_up(SimState& state, const std::vector<std::vector<NodeId>>& w_sets) {
  const Graph& g = state.graph();
  CleanupResult result;
  const std::vector<NodeId> all = union_checked(g, w_sets);
  if (all.empty()) return result;

  std::size_t decomposition_rounds = 0, diameter1 = 0, diameter2 = 0;
  for (const auto& comp : connected_components(g, all)) {
    ++result.components;
    const NetworkDecomposition nd = rake_compress_decomposition(g, comp);
    result.schedule_overrun = result.schedule_overrun || nd.iterations > nd.scheduled_iterations;
    decomposition_rounds = std::max(decomposition_rounds, nd.rounds);
    diameter1 = std::max(diameter1, nd.max_diameter(1));
    diameter2 = std::max(diameter2, nd.max_diameter(2));

    const LocalGraph lg = induce(g, comp);
    std::vector<std::uint8_t> chosen(lg.nodes.size(), 0);
    for (std::uint8_t c : {std::uint8_t{1}, std::uint8_t{2}}) {
      // Clusters of one color are pairwise non-adjacent, so solving them all
      // greedily in id order is the same as solving each cluster on its own.
      std::vector<std::uint32_t> members;
      for (std::uint32_t i = 0; i < lg.nodes.size(); ++i) {
        if (nd.color[i] == c) members.push_back(i);
      }
      greedy_mis_local(lg, members, chosen);
    }
    for (std::uint32_t i = 0; i < lg.nodes.size(); ++i) {
      if (chosen[i]) result.z.push_back(lg.nodes[i]);
    }
  }
  std::sort(result.z.begin(), result.z.end());
  result.max_cluster_diameter = std::max(diameter1, diameter2);
  result.rounds = decomposition_rounds + (2 * diameter1 + 2) + (2 * diameter2 + 2);
  state.join_set(result.z);
  state.charge_rounds(result.rounds);
  return result;
}

std::vector<NodeId> greedy_ruling_in(const Graph& g, std::span<const NodeId> component, std::size_t k) {
  const LocalGraph lg = induce(g, component);
  std::vector<std::uint8_t> covered(lg.nodes.size(), 0);
  std::vector<std::size_t> dist(lg.nodes.size(), kUnreachable);
  std::vector<std::uint32_t> queue;
  std::vector<NodeId> picks;
  for (std::uint32_t s = 0; s < lg.nodes.size(); ++s) {
    if (covered[s]) continue;
    picks.push_back(lg.nodes[s]);
    queue.assign({s});
    dist[s] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const std::uint32_t u = queue[head];
      covered[u] = 1;
      if (dist[u] == k) continue;
      for (std::uint32_t w : lg.adj[u]) {
        if (dist[w] == kUnreachable) {
          dist[w] = dist[u] + 1;
          queue.push_back(w);
        }
      }
    }
    for (std::uint32_t u : queue) dist[u] = kUnreachable;
  }
  return picks;
}

std::size_t induced_diameter(const Graph& g, std::span<const NodeId> nodes) {
  const LocalGraph lg = induce(g, nodes);
  const std::vector<std::uint8_t> allowed(lg.nodes.size(), 1);
  std::size_t best = 0;
  for (std::uint32_t s = 0; s < lg.nodes.size(); ++s) best = std::max(best, eccentricity(local_bfs(lg, s, allowed)));
  return best;
}

CleanupResult clean_up_gather(SimState& state, const std::vector<std::vector<NodeId>>& w_sets, CleanupMode mode) {
  const Graph& g = state.graph();
  CleanupResult result;
  const std::vector<NodeId> all = union_checked(g, w_sets);
  if (all.empty()) return result;

  std::size_t worst_rounds = 0;
  for (const auto& comp : connected_components(g, all)) {
    ++result.components;
    std::size_t diameter;
    if (comp.size() <= 4096) {
      diameter = induced_diameter(g, comp);
    } else {
      const LocalGraph lg = induce(g, comp);
      diameter = 2 * eccentricity(local_bfs(lg, 0, std::vector<std::uint8_t>(lg.nodes.size(), 1)));
    }
    result.max_cluster_diameter = std::max(result.max_cluster_diameter, diameter);
    worst_rounds = std::max(worst_rounds, 2 * diameter + 2);
    std::size_t k = 1;
    if (mode == CleanupMode::relaxed_ruling) {
      const double size = static_cast<double>(std::max<std::size_t>(4, comp.size()));
      k = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(std::log2(std::log2(size)))));
    }
    result.ruling_radius = std::max(result.ruling_radius, k);
    const auto picks = greedy_ruling_in(g, comp, k);
    result.z.insert(result.z.end(), picks.begin(), picks.end());
  }
  std::sort(result.z.begin(), result.z.end());
  result.rounds = worst_rounds;
  state.join_set(result.z);
  state.charge_rounds(result.rounds);
  return result;
}

}  // namespace rulingsim

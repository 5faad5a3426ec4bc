#include "rulingsim/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <unordered_set>

#include "rulingsim/errors.hpp"

namespace rulingsim {

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges) {
  if (n >= static_cast<std::size_t>(UINT32_MAX)) throw InputError("graph too large");
  Graph g;
  g.offsets_.assign(n + 1, 0);
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) {
      throw InputError("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                       ") references a node id >= " + std::to_string(n));
    }
    if (u == v) throw InputError("self-loop at node " + std::to_string(u));
    ++g.offsets_[u + 1];
    ++g.offsets_[v + 1];
  }
  for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] += g.offsets_[i];
  g.adjacency_.resize(g.offsets_[n]);
  std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& [u, v] : edges) {
    g.adjacency_[fill[u]++] = v;
    g.adjacency_[fill[v]++] = u;
  }
  for (std::size_t v = 0; v < n; ++v) {
    auto first = g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]);
    auto last = g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]);
    std::sort(first, last);
    if (auto dup = std::adjacent_find(first, last); dup != last) {
      throw InputError("duplicate edge (" + std::to_string(std::min<std::size_t>(v, *dup)) + ", " +
                       std::to_string(std::max<std::size_t>(v, *dup)) + ")");
    }
  }
  return g;
}

std::size_t Graph::max_degree() const {
  std::size_t best = 0;
  for (std::size_t v = 0; v < node_count(); ++v) best = std::max(best, degree(static_cast<NodeId>(v)));
  return best;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (std::size_t u = 0; u < node_count(); ++u) {
    for (NodeId v : neighbors(static_cast<NodeId>(u))) {
      if (u < v) out.emplace_back(static_cast<NodeId>(u), v);
    }
  }
  return out;
}

namespace {

// Smallest cycle length strictly below `cap`, or `cap` if there is none.
std::size_t shortest_cycle_below(const Graph& g, std::size_t cap) {
  const std::size_t n = g.node_count();
  std::vector<std::size_t> dist(n, kUnreachable);
  std::vector<NodeId> parent(n, 0);
  std::vector<NodeId> touched;
  std::vector<NodeId> queue;
  std::size_t best = cap;
  for (std::size_t root = 0; root < n; ++root) {
    queue.clear();
    queue.push_back(static_cast<NodeId>(root));
    dist[root] = 0;
    parent[root] = static_cast<NodeId>(root);
    touched.push_back(static_cast<NodeId>(root));
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const NodeId u = queue[head];
      if (2 * dist[u] + 1 >= best) break;
      for (NodeId w : g.neighbors(u)) {
        if (dist[w] == kUnreachable) {
          dist[w] = dist[u] + 1;
          parent[w] = u;
          touched.push_back(w);
          queue.push_back(w);
        } else if (w != parent[u]) {
          best = std::min(best, dist[u] + dist[w] + 1);
        }
      }
    }
    for (NodeId t : touched) dist[t] = kUnreachable;
    touched.clear();
  }
  return best;
}

}  // namespace

bool is_forest(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<NodeId> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<NodeId>(i);
  auto find = [&](NodeId x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (const auto& [u, v] : g.edges()) {
    NodeId a = find(u), b = find(v);
    if (a == b) return false;
    parent[a] = b;
  }
  return true;
}

std::optional<std::size_t> girth(const Graph& g) {
  if (is_forest(g)) return std::nullopt;
  return shortest_cycle_below(g, kUnreachable);
}

bool girth_at_least(const Graph& g, std::size_t k) {
  if (k <= 3) return true;
  return shortest_cycle_below(g, k) >= k;
}

std::vector<NodeId> k_hop_neighborhood(const Graph& g, NodeId v, std::size_t k,
                                       std::span<const std::uint8_t> alive) {
  if (v >= g.node_count() || !alive[v]) throw std::invalid_argument("k_hop_neighborhood: query node is not alive");
  std::unordered_set<NodeId> seen{v};
  std::vector<NodeId> frontier{v};
  std::vector<NodeId> out;
  for (std::size_t depth = 0; depth < k && !frontier.empty(); ++depth) {
    std::vector<NodeId> next;
    for (NodeId u : frontier) {
      for (NodeId w : g.neighbors(u)) {
        if (alive[w] && seen.insert(w).second) next.push_back(w);
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<NodeId>> connected_components(const Graph& g, std::span<const NodeId> subset) {
  std::vector<std::uint8_t> in_subset(g.node_count(), 0), seen(g.node_count(), 0);
  for (NodeId v : subset) in_subset[v] = 1;
  std::vector<NodeId> sorted(subset.begin(), subset.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::vector<NodeId>> components;
  for (NodeId start : sorted) {
    if (seen[start]) continue;
    std::vector<NodeId> comp{start};
    seen[start] = 1;
    for (std::size_t head = 0; head < comp.size(); ++head) {
      for (NodeId w : g.neighbors(comp[head])) {
        if (in_subset[w] && !seen[w]) {
          seen[w] = 1;
          comp.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    components.push_back(std::move(comp));
  }
  return components;
}

std::vector<std::size_t> multi_source_distances(const Graph& g, std::span<const NodeId> sources) {
  std::vector<std::size_t> dist(g.node_count(), kUnreachable);
  std::vector<NodeId> queue;
  for (NodeId s : sources) {
    if (dist[s] != 0) {
      dist[s] = 0;
      queue.push_back(s);
    }
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const NodeId u = queue[head];
    for (NodeId w : g.neighbors(u)) {
      if (dist[w] == kUnreachable) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

void save_edge_list(const Graph& g, std::ostream& out) {
  out << g.node_count() << ' ' << g.edge_count() << '\n';
  for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

namespace {

// Parses exactly "<a> <b>" (ASCII decimal, one space). Returns false otherwise.
bool parse_pair(std::string_view line, std::uint64_t& a, std::uint64_t& b) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  const auto space = line.find(' ');
  if (space == std::string_view::npos || space == 0 || space + 1 >= line.size()) return false;
  auto parse = [](std::string_view s, std::uint64_t& out) {
    if (s.empty() || s.front() < '0' || s.front() > '9') return false;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
  };
  return parse(line.substr(0, space), a) && parse(line.substr(space + 1), b);
}

[[noreturn]] void fail_at(std::size_t line_no, const std::string& what) {
  throw InputError("edge list line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

Graph load_edge_list(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) fail_at(line_no, "missing header \"<n> <m>\"");
  std::uint64_t n = 0, m = 0;
  if (!parse_pair(line, n, m)) fail_at(line_no, "malformed header \"" + line + "\"");
  if (n >= UINT32_MAX) fail_at(line_no, "node count too large");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(m, 1u << 24)));
  std::vector<std::pair<Edge, std::size_t>> keyed;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") {
      // Only trailing blank lines are tolerated.
      std::string rest;
      while (std::getline(in, rest)) {
        ++line_no;
        if (!rest.empty() && rest != "\r") fail_at(line_no, "unexpected content after blank line");
      }
      break;
    }
    std::uint64_t u = 0, v = 0;
    if (!parse_pair(line, u, v)) fail_at(line_no, "malformed edge \"" + line + "\"");
    if (u >= n || v >= n) fail_at(line_no, "id out of range (n = " + std::to_string(n) + ")");
    if (u == v) fail_at(line_no, "self-loop");
    if (edges.size() == m) fail_at(line_no, "more edges than declared m = " + std::to_string(m));
    Edge e{static_cast<NodeId>(std::min(u, v)), static_cast<NodeId>(std::max(u, v))};
    edges.push_back(e);
    keyed.emplace_back(e, line_no);
  }
  if (edges.size() != m) {
    throw InputError("edge list: header declares " + std::to_string(m) + " edges, found " +
                     std::to_string(edges.size()));
  }
  std::sort(keyed.begin(), keyed.end());
  for (std::size_t i = 1; i < keyed.size(); ++i) {
    if (keyed[i].first == keyed[i - 1].first) {
      fail_at(std::max(keyed[i].second, keyed[i - 1].second), "duplicate edge");
    }
  }
  return Graph::from_edges(static_cast<std::size_t>(n), edges);
}

void save_edge_list_file(const Graph& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open " + path + " for writing");
  save_edge_list(g, out);
  if (!out) throw InputError("write failed: " + path);
}

Graph load_edge_list_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  return load_edge_list(in);
}

}  // namespace rulingsim

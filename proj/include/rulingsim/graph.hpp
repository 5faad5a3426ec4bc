#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace rulingsim {

using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;

/// Per-node flag vector. uint8_t instead of vector<bool> so spans work.
using NodeMask = std::vector<std::uint8_t>;

/// Static undirected simple graph in compressed adjacency form. Neighbor
/// lists are sorted; symmetry, no self-loops and no duplicates are enforced
/// on construction.
class Graph {
 public:
  Graph() = default;

  /// Builds a graph from an undirected edge list (either orientation).
  /// Throws InputError on self-loops, duplicate edges or ids >= n.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges);

  std::size_t node_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const { return adjacency_.size() / 2; }

  std::span<const NodeId> neighbors(NodeId v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  std::size_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }
  std::size_t max_degree() const;
  bool has_edge(NodeId u, NodeId v) const;

  /// All edges with u < v, sorted lexicographically.
  std::vector<Edge> edges() const;

  bool operator==(const Graph&) const = default;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> adjacency_;
};

/// Length of the shortest cycle; nullopt means infinite (forest).
std::optional<std::size_t> girth(const Graph& g);

/// True iff g has no cycle of length < k. Bounded BFS; cheap for small k.
bool girth_at_least(const Graph& g, std::size_t k);

bool is_forest(const Graph& g);

/// Alive nodes at distance 1..k from v, where paths may only use alive
/// nodes. Sorted; excludes v. Throws std::invalid_argument if v is dead.
std::vector<NodeId> k_hop_neighborhood(const Graph& g, NodeId v, std::size_t k,
                                       std::span<const std::uint8_t> alive);

/// Connected components of the subgraph induced by `subset`. Each component
/// is sorted; components are ordered by their smallest id.
std::vector<std::vector<NodeId>> connected_components(const Graph& g,
                                                      std::span<const NodeId> subset);

/// Hop distance from the nearest source, or kUnreachable.
inline constexpr std::size_t kUnreachable = static_cast<std::size_t>(-1);
std::vector<std::size_t> multi_source_distances(const Graph& g, std::span<const NodeId> sources);

/// Edge-list text format: "<n> <m>\n" then m lines "<u> <v>\n" with u < v.
void save_edge_list(const Graph& g, std::ostream& out);
Graph load_edge_list(std::istream& in);
void save_edge_list_file(const Graph& g, const std::string& path);
Graph load_edge_list_file(const std::string& path);

}  // namespace rulingsim

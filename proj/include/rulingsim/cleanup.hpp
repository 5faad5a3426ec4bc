#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rulingsim/engine.hpp"
#include "rulingsim/graph.hpp"

namespace rulingsim {

/// Rounds charged per rake & compress iteration: one to learn remaining
/// degrees (rake), one to identify degree-2 chains, one to announce the
/// chain splitters.
inline constexpr std::size_t kRoundsPerRakeCompressIteration = 3;

/// Scheduled iteration count for a component whose greedy 7-distance
/// dominating set has size s: ceil(3 log2 s) + 7.
std::size_t rake_compress_schedule(std::size_t s);

/// Cluster diameter bound after `iterations` rake & compress iterations:
/// color-1 clusters are within 4I-1, color-2 clusters (chain segments of at
/// most 4 nodes) within 3.
std::size_t rake_compress_diameter_bound(std::size_t iterations);

/// Two-colored clustering of one tree component. Arrays are parallel to
/// `nodes` (sorted). Clusters of one color are the connected components of
/// that color class.
struct NetworkDecomposition {
  std::vector<NodeId> nodes;
  std::vector<std::uint8_t> color;        // 1 or 2
  std::vector<std::uint32_t> cluster_id;  // global over both colors
  std::vector<std::size_t> cluster_diameter;
  std::size_t dominating_set_size = 0;
  std::size_t scheduled_iterations = 0;
  std::size_t iterations = 0;  // actual; > scheduled means the schedule overran
  std::size_t cluster_diameter_bound = 0;
  std::size_t rounds = 0;

  std::size_t max_diameter(std::uint8_t c) const;
};

/// Rake & compress on T[component]. Each iteration removes every remaining
/// node of remaining degree <= 1 (rake), then every maximal chain of >= 3
/// remaining degree-2 nodes (compress). Chain splitters sit at both ends and
/// every 4th position; raked nodes and splitters get color 1, the chain
/// pieces between splitters color 2. Throws std::invalid_argument if
/// T[component] has a cycle.
NetworkDecomposition rake_compress_decomposition(const Graph& host, std::span<const NodeId> component);

struct CleanupResult {
  std::vector<NodeId> z;          // sorted
  std::size_t rounds = 0;
  std::size_t max_cluster_diameter = 0;
  std::size_t components = 0;
  bool schedule_overrun = false;
  std::size_t ruling_radius = 1;  // every node of the W union is within this distance of z
};

/// Parallel clean-up for trees: MIS of G[union of w_sets] through a rake &
/// compress decomposition of each component; color classes are processed
/// one after the other, clusters of a class concurrently, each cluster
/// gathered and solved greedily. w_sets must be pairwise non-adjacent
/// (std::logic_error otherwise). Adds z to the state's output set and
/// charges max-over-components decomposition rounds plus 2D+2 per color.
CleanupResult clean_up(SimState& state, const std::vector<std::vector<NodeId>>& w_sets);

enum class CleanupMode { exact_mis, relaxed_ruling };

/// Gather-based clean-up for components of G[union of w_sets]: every
/// component is collected at its lowest id, solved centrally and the answer
/// broadcast back, charging 2D+2 rounds (D = component diameter, exact up to
/// 4096 nodes, 2 * eccentricity of the leader above that). exact_mis returns
/// a greedy MIS; relaxed_ruling returns a greedy maximal set whose members
/// are pairwise more than k apart inside the component, with
/// k = max(1, ceil(log2 log2 max(4, |C|))).
CleanupResult clean_up_gather(SimState& state, const std::vector<std::vector<NodeId>>& w_sets, CleanupMode mode);

/// Greedy ruling set inside G[component]: lowest id first, each pick covers
/// its radius-k ball inside the component. k = 1 gives a greedy MIS.
std::vector<NodeId> greedy_ruling_in(const Graph& g, std::span<const NodeId> component, std::size_t k);

/// Exact diameter of G[nodes] (all-pairs BFS). Assumes connected.
std::size_t induced_diameter(const Graph& g, std::span<const NodeId> nodes);

}  // namespace rulingsim

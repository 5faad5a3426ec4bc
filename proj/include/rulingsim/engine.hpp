#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rulingsim/graph.hpp"
#include "rulingsim/rng.hpp"

namespace rulingsim {

/// Rounds charged for the primitive steps. With the defaults one LMJ call
/// followed by a radius-2 removal costs 4 rounds.
struct RoundCost {
  std::size_t draw_exchange = 1;  // neighbors learn each other's draws
  std::size_t announce = 1;       // local minima announce membership
  std::size_t per_hop = 1;        // one hop of removal propagation
  std::size_t put_aside = 1;      // W tells N(W) to retire

  std::size_t lmj() const { return draw_exchange + announce; }
  std::size_t lmj_with_removal(std::size_t radius) const { return lmj() + radius * per_hop; }
};

struct PhaseRecord {
  std::string phase;
  std::size_t rounds = 0;
  std::size_t s_size = 0;
  std::size_t w_size = 0;
  std::size_t max_alive_degree = 0;

  bool operator==(const PhaseRecord&) const = default;
};

/// State of one simulated LOCAL execution. Nodes only die; a node that joins
/// the output set is dead from then on. Alive degrees are maintained
/// incrementally.
class SimState {
 public:
  SimState(const Graph& g, std::uint64_t seed, RoundCost cost = {});

  const Graph& graph() const { return *graph_; }
  std::size_t node_count() const { return graph_->node_count(); }
  const RoundCost& cost() const { return cost_; }
  Rng& rng() { return rng_; }

  bool alive(NodeId v) const { return alive_[v] != 0; }
  bool in_set(NodeId v) const { return in_set_[v] != 0; }
  const NodeMask& alive_mask() const { return alive_; }
  const NodeMask& in_set_mask() const { return in_set_; }
  std::uint64_t draw(NodeId v) const { return draws_[v]; }
  std::size_t alive_degree(NodeId v) const { return alive_degree_[v]; }
  std::size_t alive_count() const { return alive_count_; }
  std::size_t max_alive_degree() const;
  std::vector<NodeId> alive_nodes() const;
  std::size_t rounds() const { return rounds_; }

  /// New independent 64-bit draws for `subset`, in the given order. 0 rounds.
  void fresh_draws(std::span<const NodeId> subset);

  /// True iff (draw, id) of v is smaller than that of every alive neighbor
  /// flagged in candidate_mask.
  bool is_local_minimum(NodeId v, const NodeMask& candidate_mask) const;

  /// Adds s_new to the output set and kills every alive node reachable from
  /// s_new within `radius` hops through alive nodes. Charges radius * per_hop
  /// rounds, also when s_new is empty. Returns the number of nodes killed
  /// including s_new.
  std::size_t remove_covered(std::span<const NodeId> s_new, std::size_t radius);

  /// Kills W and its alive neighbors without adding anything to the output
  /// set. Charges cost().put_aside rounds. Returns the number killed.
  std::size_t put_aside(std::span<const NodeId> w);

  /// Adds nodes to the output set without charging rounds; alive ones are
  /// killed. Clean-up uses it for put-aside nodes, which are already dead.
  void join_set(std::span<const NodeId> nodes);

  /// Kills alive nodes without adding them to the output set. 0 rounds.
  void retire(std::span<const NodeId> nodes);

  void charge_rounds(std::size_t k) { rounds_ += k; }

  /// Appends a trace record for a phase that started at round `start_round`.
  void record_phase(std::string phase, std::size_t start_round, std::size_t s_size, std::size_t w_size);
  const std::vector<PhaseRecord>& trace() const { return trace_; }

 private:
  void kill(NodeId v);

  const Graph* graph_;
  RoundCost cost_;
  Rng rng_;
  NodeMask alive_;
  NodeMask in_set_;
  std::vector<std::uint64_t> draws_;
  std::vector<std::uint32_t> alive_degree_;
  std::size_t alive_count_ = 0;
  std::size_t rounds_ = 0;
  std::vector<PhaseRecord> trace_;
  std::vector<NodeId> bfs_queue_;
  std::vector<std::uint32_t> bfs_mark_;
  std::uint32_t bfs_epoch_ = 0;
};

}  // namespace rulingsim

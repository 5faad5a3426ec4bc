#include "rulingsim/engine.hpp"

#include <algorithm>
#include <stdexcept>

namespace rulingsim {

SimState::SimState(const Graph& g, std::uint64_t seed, RoundCost cost)
    : graph_(&g),
      cost_(cost),
      rng_(seed),
      alive_(g.node_count(), 1),
      in_set_(g.node_count(), 0),
      draws_(g.node_count(), 0),
      alive_degree_(g.node_count(), 0),
      alive_count_(g.node_count()),
      bfs_mark_(g.node_count(), 0) {
  if (cost.draw_exchange == 0 || cost.announce == 0 || cost.per_hop == 0 || cost.put_aside == 0) {
    throw std::invalid_argument("RoundCost entries must be positive");
  }
  for (std::size_t v = 0; v < g.node_count(); ++v) {
    alive_degree_[v] = static_cast<std::uint32_t>(g.degree(static_cast<NodeId>(v)));
  }
}

std::size_t SimState::max_alive_degree() const {
  std::size_t best = 0;
  for (std::size_t v = 0; v < node_count(); ++v) {
    if (alive_[v]) best = std::max<std::size_t>(best, alive_degree_[v]);
  }
  return best;
}

std::vector<NodeId> SimState::alive_nodes() const {
  std::vector<NodeId> out;
  out.reserve(alive_count_);
  for (std::size_t v = 0; v < node_count(); ++v) {
    if (alive_[v]) out.push_back(static_cast<NodeId>(v));
  }
  return out;
}

void SimState::fresh_draws(std::span<const NodeId> subset) {
  for (NodeId v : subset) draws_[v] = rng_.next_u64();
}

bool SimState::is_local_minimum(NodeId v, const NodeMask& candidate_mask) const {
  const std::uint64_t rv = draws_[v];
  for (NodeId w : graph_->neighbors(v)) {
    if (!alive_[w] || !candidate_mask[w]) continue;
    if (draws_[w] < rv || (draws_[w] == rv && w < v)) return false;
  }
  return true;
}

void SimState::kill(NodeId v) {
  alive_[v] = 0;
  --alive_count_;
  for (NodeId w : graph_->neighbors(v)) {
    if (alive_[w]) --alive_degree_[w];
  }
}

std::size_t SimState::remove_covered(std::span<const NodeId> s_new, std::size_t radius) {
  rounds_ += radius * cost_.per_hop;
  if (s_new.empty()) return 0;
  if (++bfs_epoch_ == 0) {
    std::fill(bfs_mark_.begin(), bfs_mark_.end(), 0);
    bfs_epoch_ = 1;
  }
  bfs_queue_.clear();
  for (NodeId s : s_new) {
    if (!alive_[s]) throw std::logic_error("remove_covered: node " + std::to_string(s) + " is not alive");
    if (bfs_mark_[s] == bfs_epoch_) continue;
    bfs_mark_[s] = bfs_epoch_;
    bfs_queue_.push_back(s);
  }
  // Level-synchronous BFS over the alive subgraph; nodes are killed only
  // after the search so distances use the pre-removal alive set.
  std::size_t level_begin = 0;
  for (std::size_t depth = 0; depth < radius; ++depth) {
    const std::size_t level_end = bfs_queue_.size();
    for (std::size_t i = level_begin; i < level_end; ++i) {
      for (NodeId w : graph_->neighbors(bfs_queue_[i])) {
        if (alive_[w] && bfs_mark_[w] != bfs_epoch_) {
          bfs_mark_[w] = bfs_epoch_;
          bfs_queue_.push_back(w);
        }
      }
    }
    level_begin = level_end;
  }
  for (NodeId s : s_new) in_set_[s] = 1;
  for (NodeId v : bfs_queue_) kill(v);
  return bfs_queue_.size();
}

std::size_t SimState::put_aside(std::span<const NodeId> w) {
  rounds_ += cost_.put_aside;
  std::vector<NodeId> doomed;
  for (NodeId v : w) {
    if (!alive_[v]) throw std::logic_error("put_aside: node " + std::to_string(v) + " is not alive");
    doomed.push_back(v);
    for (NodeId u : graph_->neighbors(v)) {
      if (alive_[u]) doomed.push_back(u);
    }
  }
  std::sort(doomed.begin(), doomed.end());
  doomed.erase(std::unique(doomed.begin(), doomed.end()), doomed.end());
  for (NodeId v : doomed) kill(v);
  return doomed.size();
}

void SimState::join_set(std::span<const NodeId> nodes) {
  for (NodeId v : nodes) {
    in_set_[v] = 1;
    if (alive_[v]) kill(v);
  }
}

void SimState::retire(std::span<const NodeId> nodes) {
  for (NodeId v : nodes) {
    if (alive_[v]) kill(v);
  }
}

void SimState::record_phase(std::string phase, std::size_t start_round, std::size_t s_size, std::size_t w_size) {
  trace_.push_back({std::move(phase), rounds_ - start_round, s_size, w_size, max_alive_degree()});
}

}  // namespace rulingsim

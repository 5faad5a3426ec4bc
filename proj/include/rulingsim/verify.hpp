#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "rulingsim/graph.hpp"

namespace rulingsim {

struct Violation {
  std::vector<NodeId> nodes;
  std::string description;
};

struct VerificationReport {
  explicit VerificationReport(std::string name = {}) : check_name(std::move(name)) {}

  std::string check_name;
  bool pass = true;
  std::vector<Violation> violations;
  std::map<std::string, double> measured;

  void add_violation(std::vector<NodeId> nodes, std::string description);
};

nlohmann::ordered_json to_json(const VerificationReport& report, std::size_t max_violations = 100);

/// One violation per edge with both endpoints in S.
VerificationReport check_independent(const Graph& g, std::span<const NodeId> s);

/// One violation per node farther than beta from S. measured["beta_measured"]
/// is the true maximum distance (-1 if some node is unreachable from S).
VerificationReport check_domination(const Graph& g, std::span<const NodeId> s, std::size_t beta);

/// m independent within G[subset] and every subset node in m or adjacent to m.
VerificationReport check_mis(const Graph& g, std::span<const NodeId> subset, std::span<const NodeId> m);

/// Greedy cover of `component` in the host metric: repeatedly take the
/// lowest-id uncovered node and cover its host ball of radius d-1. The
/// result is (d-1)-independent and every component node is within d-1 of it.
std::vector<NodeId> greedy_distance_dominating_set(const Graph& host, std::span<const NodeId> component, std::size_t d);

enum class ShatteringMode { tree, girth };

/// Tree mode: every component of G[W_i] has a greedy 7-distance dominating
/// set of size <= log_{delta_i} n. Girth mode: every component of G[W_i] has
/// at most delta_small^6 * log2 n nodes. Report only.
VerificationReport check_shattering(const Graph& g, const std::vector<std::vector<NodeId>>& w_sets,
                                    std::span<const std::size_t> delta_per_iter, std::size_t n,
                                    ShatteringMode mode, std::size_t delta_small = 0);

/// Items of the parallel clean-up precondition: no edge between W_i and W_j
/// for i != j, and no edge between any W_i and S.
VerificationReport check_parallel_cleanup(const Graph& g, const std::vector<std::vector<NodeId>>& w_sets,
                                          std::span<const NodeId> s);

/// Degree-Drop contract on the alive subgraph before the call: (a) S is
/// independent, (b) no S-W edge, (c) every node alive afterwards and not in
/// W has at most delta_star alive neighbors outside W. Degrees are
/// recomputed from the masks, not taken from the engine.
VerificationReport check_degree_drop(const Graph& g, const NodeMask& alive_before, const NodeMask& alive_after,
                                     std::span<const NodeId> s, std::span<const NodeId> w, std::size_t delta_star);

}  // namespace rulingsim

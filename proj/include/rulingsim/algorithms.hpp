#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rulingsim/cleanup.hpp"
#include "rulingsim/engine.hpp"
#include "rulingsim/graph.hpp"

namespace rulingsim {

/// Largest degree the constant-degree MIS accepts; also the last Degree-Drop
/// threshold (Degree-Drop needs degree >= 18 to be useful).
inline constexpr std::size_t kConstantDegree = 18;

enum class Algorithm { tree2rs, girth2rs, girth_relaxed_rs, fast_delta_tree2rs };
enum class Phase2Cutoff { sqrt_delta, delta_star_34 };

struct RunConfig {
  Algorithm algorithm = Algorithm::tree2rs;
  std::uint64_t seed = 0;
  std::size_t c = 1;        // Degree-Drop runs 16c LMJ iterations
  std::size_t c_tilde = 8;  // LMJ-Sampling iterations per Degree-Drop-Sampling
  std::string delta_small = "log^3";
  Phase2Cutoff phase2_cutoff = Phase2Cutoff::sqrt_delta;
  CleanupMode cleanup = CleanupMode::exact_mis;  // girth2rs only
  RoundCost cost;
};

std::string to_string(Algorithm a);
std::string to_string(Phase2Cutoff p);
std::string to_string(CleanupMode m);
std::optional<Algorithm> parse_algorithm(const std::string& s);
std::optional<Phase2Cutoff> parse_phase2_cutoff(const std::string& s);
std::optional<CleanupMode> parse_cleanup_mode(const std::string& s);

/// Evaluates a Delta_small expression for n nodes: "log^K" means
/// ceil(log2(n)^K), a plain integer is taken literally. Result is >= 2.
/// Throws InputError on malformed input.
std::size_t evaluate_delta_small(const std::string& expr, std::size_t n);

struct RulingSetResult {
  std::string algorithm;
  std::uint64_t seed = 0;
  std::size_t node_count = 0;
  std::vector<NodeId> set;                            // sorted
  std::vector<std::vector<NodeId>> sampling_sets;     // S_i of the sampling phase
  std::vector<std::vector<NodeId>> degree_drop_sets;  // S_i (trees) / P_i (high girth)
  std::vector<std::vector<NodeId>> put_aside_sets;    // W_i
  std::vector<std::vector<NodeId>> cleanup_sets;      // Z_i = Z restricted to W_i
  std::vector<NodeId> final_mis;
  std::vector<std::size_t> sampling_thresholds;       // Delta*_i of the sampling phase
  std::vector<std::size_t> delta_per_iter;            // degree bound entering Degree-Drop i
  std::vector<std::size_t> thresholds;                // Delta*_i of Degree-Drop i
  std::size_t delta_small = 0;
  std::size_t beta_target = 2;
  std::int64_t beta_measured = 0;                     // -1 if some node is not dominated
  std::size_t rounds_total = 0;
  bool cleanup_schedule_overrun = false;
  std::vector<PhaseRecord> phases;
};

/// Fresh draws for the alive candidates (ascending id) and returns those
/// that are local minima among alive candidate neighbors. Nobody is removed.
/// Charges cost().lmj() rounds.
std::vector<NodeId> local_minima_join(SimState& state, const NodeMask& candidate_mask);

struct DegreeDropParams {
  std::size_t delta_star = kConstantDegree;
  std::size_t c = 1;
  std::size_t iterations = 0;  // LMJ iterations; 0 means 16c
};

struct DegreeDropOutput {
  std::vector<NodeId> s;  // sorted
  std::vector<NodeId> w;  // sorted; still alive on return
};

/// 16c rounds (or params.iterations if set) of {LMJ on all alive nodes;
/// remove S and its radius-2 neighborhood}; then W = alive nodes with more than delta_star alive
/// neighbors.
DegreeDropOutput degree_drop(SimState& state, const DegreeDropParams& params);

/// Phase 1: every alive node is active with probability 1/2, LMJ among the
/// active nodes, removal at radius 2. Phase 2: active = alive nodes with at
/// most phase2_cutoff alive neighbors, LMJ, removal. Returns both joins.
std::vector<NodeId> lmj_sampling(SimState& state, std::size_t phase2_cutoff);

/// c_tilde repetitions of lmj_sampling. Returns the accumulated set, sorted.
std::vector<NodeId> degree_drop_sampling(SimState& state, std::size_t c_tilde, std::size_t phase2_cutoff);

struct MisRounds {
  std::size_t linial_steps = 0;
  std::size_t block_phases = 0;
  std::size_t final_colors = 0;
  std::size_t rounds = 0;
};

/// Deterministic MIS of the alive subgraph: polynomial (Linial) color
/// reduction from ids down to O(18^2) colors, block-wise reduction to 19
/// colors, then one round per color class. All alive nodes are dead on
/// return. Throws std::logic_error if some
/// alive node has more than 18 alive neighbors.
std::vector<NodeId> mis_constant_degree(SimState& state, MisRounds* rounds = nullptr);

struct DegreeDropEvent {
  std::size_t iteration = 0;  // 1-based
  std::size_t delta_star = 0;
  const NodeMask* alive_before = nullptr;
  const NodeMask* alive_after = nullptr;
  const std::vector<NodeId>* s = nullptr;
  const std::vector<NodeId>* w = nullptr;
};
using DegreeDropObserver = std::function<void(const DegreeDropEvent&)>;

/// 2-ruling set of a forest. Throws InputError if g has a cycle.
RulingSetResult ruling_set_tree(const Graph& g, const RunConfig& cfg, const DegreeDropObserver& observer = {});

/// Ruling set of a graph with girth >= 7 (checked; InputError otherwise).
/// cfg.cleanup selects exact MIS (2-ruling) or the relaxed ruling clean-up.
RulingSetResult ruling_set_high_girth(const Graph& g, const RunConfig& cfg, const DegreeDropObserver& observer = {});

/// Forest variant of the high-girth pipeline with exact gather clean-up.
RulingSetResult ruling_set_tree_fast_delta(const Graph& g, const RunConfig& cfg,
                                           const DegreeDropObserver& observer = {});

/// Dispatches on cfg.algorithm (girth_relaxed_rs forces relaxed clean-up).
RulingSetResult run_algorithm(const Graph& g, const RunConfig& cfg, const DegreeDropObserver& observer = {});

/// Sum of phase rounds whose name starts with `prefix`.
std::size_t rounds_with_prefix(const RulingSetResult& r, const std::string& prefix);

}  // namespace rulingsim

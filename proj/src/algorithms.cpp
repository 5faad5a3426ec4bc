#include "rulingsim/algorithms.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "rulingsim/errors.hpp"

namespace rulingsim {

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::tree2rs: return "tree2rs";
    case Algorithm::girth2rs: return "girth2rs";
    case Algorithm::girth_relaxed_rs: return "girth_relaxed_rs";
    case Algorithm::fast_delta_tree2rs: return "fast_delta_tree2rs";
  }
  return "?";
}

std::string to_string(Phase2Cutoff p) { return p == Phase2Cutoff::sqrt_delta ? "sqrt_delta" : "delta_star_34"; }
std::string to_string(CleanupMode m) { return m == CleanupMode::exact_mis ? "exact_mis" : "relaxed_ruling"; }

std::optional<Algorithm> parse_algorithm(const std::string& s) {
  for (Algorithm a : {Algorithm::tree2rs, Algorithm::girth2rs, Algorithm::girth_relaxed_rs, Algorithm::fast_delta_tree2rs}) {
    if (to_string(a) == s) return a;
  }
  return std::nullopt;
}

std::optional<Phase2Cutoff> parse_phase2_cutoff(const std::string& s) {
  if (s == "sqrt_delta") return Phase2Cutoff::sqrt_delta;
  if (s == "delta_star_34") return Phase2Cutoff::delta_star_34;
  return std::nullopt;
}

std::optional<CleanupMode> parse_cleanup_mode(const std::string& s) {
  if (s == "exact_mis") return CleanupMode::exact_mis;
  if (s == "relaxed_ruling") return CleanupMode::relaxed_ruling;
  return std::nullopt;
}

std::size_t evaluate_delta_small(const std::string& expr, std::size_t n) {
  auto parse_uint = [&](std::string_view text) {
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
      throw InputError("bad Delta_small expression \"" + expr + "\" (expected log^K or an integer)");
    }
    return value;
  };
  std::size_t value;
  if (expr.rfind("log^", 0) == 0) {
    const std::size_t k = parse_uint(std::string_view(expr).substr(4));
    const double lg = std::log2(static_cast<double>(std::max<std::size_t>(n, 2)));
    value = static_cast<std::size_t>(std::ceil(std::pow(lg, static_cast<double>(k)) - 1e-9));
  } else {
    value = parse_uint(expr);
  }
  if (value < 2) throw InputError("Delta_small must be at least 2 (got " + std::to_string(value) + ")");
  return value;
}

std::vector<NodeId> local_minima_join(SimState& state, const NodeMask& candidate_mask) {
  std::vector<NodeId> candidates;
  for (std::size_t v = 0; v < state.node_count(); ++v) {
    if (state.alive(static_cast<NodeId>(v)) && candidate_mask[v]) candidates.push_back(static_cast<NodeId>(v));
  }
  state.fresh_draws(candidates);
  std::vector<NodeId> minima;
  for (NodeId v : candidates) {
    if (state.is_local_minimum(v, candidate_mask)) minima.push_back(v);
  }
  state.charge_rounds(state.cost().lmj());
  return minima;
}

DegreeDropOutput degree_drop(SimState& state, const DegreeDropParams& params) {
  if (params.c == 0) throw std::invalid_argument("degree_drop: c must be positive");
  DegreeDropOutput out;
  const NodeMask everyone(state.node_count(), 1);
  const std::size_t iterations = params.iterations ? params.iterations : 16 * params.c;
  for (std::size_t j = 0; j < iterations; ++j) {
    const auto joined = local_minima_join(state, everyone);
    state.remove_covered(joined, 2);
    out.s.insert(out.s.end(), joined.begin(), joined.end());
  }
  std::sort(out.s.begin(), out.s.end());
  for (std::size_t v = 0; v < state.node_count(); ++v) {
    const auto id = static_cast<NodeId>(v);
    if (state.alive(id) && state.alive_degree(id) > params.delta_star) out.w.push_back(id);
  }
  return out;
}

std::vector<NodeId> lmj_sampling(SimState& state, std::size_t phase2_cutoff) {
  const std::size_t n = state.node_count();
  NodeMask active(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    if (state.alive(static_cast<NodeId>(v))) active[v] = state.rng().coin();
  }
  std::vector<NodeId> joined = local_minima_join(state, active);
  state.remove_covered(joined, 2);

  for (std::size_t v = 0; v < n; ++v) {
    const auto id = static_cast<NodeId>(v);
    active[v] = state.alive(id) && state.alive_degree(id) <= phase2_cutoff;
  }
  const auto second = local_minima_join(state, active);
  state.remove_covered(second, 2);
  joined.insert(joined.end(), second.begin(), second.end());
  return joined;
}

std::vector<NodeId> degree_drop_sampling(SimState& state, std::size_t c_tilde, std::size_t phase2_cutoff) {
  std::vector<NodeId> s;
  for (std::size_t j = 0; j < c_tilde; ++j) {
    const auto joined = lmj_sampling(state, phase2_cutoff);
    s.insert(s.end(), joined.begin(), joined.end());
  }
  std::sort(s.begin(), s.end());
  return s;
}

namespace {

// floor(base^(0.75^i)) with a little slack against rounding.
std::size_t shrink(double base, std::size_t i) {
  return static_cast<std::size_t>(std::floor(std::pow(base, std::pow(0.75, static_cast<double>(i))) + 1e-9));
}

RulingSetResult start_result(const Graph& g, const RunConfig& cfg, Algorithm algorithm) {
  RulingSetResult r;
  r.algorithm = to_string(algorithm);
  r.seed = cfg.seed;
  r.node_count = g.node_count();
  return r;
}

void finish(RulingSetResult& r, const SimState& state) {
  const Graph& g = state.graph();
  r.set.clear();
  for (std::size_t v = 0; v < g.node_count(); ++v) {
    if (state.in_set(static_cast<NodeId>(v))) r.set.push_back(static_cast<NodeId>(v));
  }
  std::size_t worst = 0;
  r.beta_measured = 0;
  for (std::size_t d : multi_source_distances(g, r.set)) {
    if (d == kUnreachable) {
      r.beta_measured = -1;
      break;
    }
    worst = std::max(worst, d);
  }
  if (r.beta_measured == 0) r.beta_measured = static_cast<std::int64_t>(worst);
  r.rounds_total = state.rounds();
  r.phases = state.trace();
}

// Degree-Drop iterations with put-aside, thresholds floor(start^(3/4)^i)
// clamped at 18, until a threshold of 18 has been applied. If start <= 18
// but the graph still has larger degrees (force_final), one threshold-18
// iteration is run so the constant-degree MIS precondition always holds.
void run_degree_drops(SimState& state, RulingSetResult& r, std::size_t start, std::size_t c, bool force_final,
                      const DegreeDropObserver& observer) {
  std::vector<std::size_t> schedule;
  for (std::size_t i = 1, prev = start; prev > kConstantDegree; ++i) {
    prev = std::max(kConstantDegree, shrink(static_cast<double>(start), i));
    schedule.push_back(prev);
  }
  if (schedule.empty() && force_final) schedule.push_back(kConstantDegree);

  std::size_t entering = std::max(start, kConstantDegree);
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    const std::size_t begin = state.rounds();
    NodeMask before;
    if (observer) before = state.alive_mask();
    DegreeDropOutput dd = degree_drop(state, {schedule[i], c});
    if (observer) observer({i + 1, schedule[i], &before, &state.alive_mask(), &dd.s, &dd.w});
    state.put_aside(dd.w);
    state.record_phase("degree_drop." + std::to_string(i + 1), begin, dd.s.size(), dd.w.size());
    r.delta_per_iter.push_back(entering);
    r.thresholds.push_back(schedule[i]);
    r.degree_drop_sets.push_back(std::move(dd.s));
    r.put_aside_sets.push_back(std::move(dd.w));
    entering = schedule[i];
  }
}

void split_cleanup(RulingSetResult& r, const std::vector<NodeId>& z, std::size_t n) {
  std::vector<std::size_t> owner(n, SIZE_MAX);
  for (std::size_t i = 0; i < r.put_aside_sets.size(); ++i) {
    for (NodeId v : r.put_aside_sets[i]) owner[v] = i;
  }
  r.cleanup_sets.assign(r.put_aside_sets.size(), {});
  for (NodeId v : z) r.cleanup_sets[owner[v]].push_back(v);
}

void run_final_mis(SimState& state, RulingSetResult& r) {
  const std::size_t begin = state.rounds();
  r.final_mis = mis_constant_degree(state);
  state.record_phase("final_mis", begin, r.final_mis.size(), 0);
}

RulingSetResult sampling_pipeline(const Graph& g, const RunConfig& cfg, Algorithm algorithm, CleanupMode mode,
                                  const DegreeDropObserver& observer) {
  RulingSetResult r = start_result(g, cfg, algorithm);
  const std::size_t n = g.node_count();
  if (n == 0) return r;
  SimState state(g, cfg.seed, cfg.cost);
  r.delta_small = evaluate_delta_small(cfg.delta_small, n);
  r.beta_target = 2;
  if (n == 1) {
    const NodeId only = 0;
    state.join_set({&only, 1});
    r.final_mis = {0};
    finish(r, state);
    return r;
  }
  const std::size_t delta_max = g.max_degree();

  // Sampling phase: thresholds Delta_max^(3/4)^i while the previous one is
  // above Delta_small.
  for (std::size_t i = 1; std::pow(static_cast<double>(delta_max), std::pow(0.75, static_cast<double>(i - 1))) >
                          static_cast<double>(r.delta_small);
       ++i) {
    const double entering = std::pow(static_cast<double>(delta_max), std::pow(0.75, static_cast<double>(i - 1)));
    const std::size_t delta_star = shrink(static_cast<double>(delta_max), i);
    const std::size_t cutoff =
        cfg.phase2_cutoff == Phase2Cutoff::sqrt_delta
            ? static_cast<std::size_t>(std::floor(std::sqrt(entering) + 1e-9))
            : static_cast<std::size_t>(std::floor(std::pow(static_cast<double>(delta_star), 0.75) + 1e-9));
    const std::size_t begin = state.rounds();
    auto s = degree_drop_sampling(state, cfg.c_tilde, cutoff);
    state.record_phase("sampling." + std::to_string(i), begin, s.size(), 0);
    r.sampling_thresholds.push_back(delta_star);
    r.sampling_sets.push_back(std::move(s));
  }

  run_degree_drops(state, r, std::min(r.delta_small, delta_max), cfg.c, delta_max > kConstantDegree, observer);
  run_final_mis(state, r);

  const std::size_t begin = state.rounds();
  const CleanupResult cr = clean_up_gather(state, r.put_aside_sets, mode);
  state.record_phase("cleanup", begin, cr.z.size(), 0);
  split_cleanup(r, cr.z, n);
  if (mode == CleanupMode::relaxed_ruling) r.beta_target = std::max<std::size_t>(2, cr.ruling_radius + 1);
  finish(r, state);
  return r;
}

}  // namespace

RulingSetResult ruling_set_tree(const Graph& g, const RunConfig& cfg, const DegreeDropObserver& observer) {
  if (!is_forest(g)) throw InputError("tree2rs requires a forest; the input graph has a cycle");
  RulingSetResult r = start_result(g, cfg, Algorithm::tree2rs);
  const std::size_t n = g.node_count();
  if (n == 0) return r;
  SimState state(g, cfg.seed, cfg.cost);
  if (n == 1) {
    const NodeId only = 0;
    state.join_set({&only, 1});
    r.final_mis = {0};
    finish(r, state);
    return r;
  }
  run_degree_drops(state, r, g.max_degree(), cfg.c, false, observer);

  const std::size_t begin = state.rounds();
  const CleanupResult cr = clean_up(state, r.put_aside_sets);
  state.record_phase("cleanup", begin, cr.z.size(), 0);
  split_cleanup(r, cr.z, n);
  r.cleanup_schedule_overrun = cr.schedule_overrun;

  run_final_mis(state, r);
  finish(r, state);
  return r;
}

RulingSetResult ruling_set_high_girth(const Graph& g, const RunConfig& cfg, const DegreeDropObserver& observer) {
  if (!girth_at_least(g, 7)) throw InputError("girth2rs requires girth >= 7; the input has a shorter cycle");
  const Algorithm a = cfg.cleanup == CleanupMode::exact_mis ? Algorithm::girth2rs : Algorithm::girth_relaxed_rs;
  return sampling_pipeline(g, cfg, a, cfg.cleanup, observer);
}

RulingSetResult ruling_set_tree_fast_delta(const Graph& g, const RunConfig& cfg, const DegreeDropObserver& observer) {
  if (!is_forest(g)) throw InputError("fast_delta_tree2rs requires a forest; the input graph has a cycle");
  return sampling_pipeline(g, cfg, Algorithm::fast_delta_tree2rs, CleanupMode::exact_mis, observer);
}

RulingSetResult run_algorithm(const Graph& g, const RunConfig& cfg, const DegreeDropObserver& observer) {
  switch (cfg.algorithm) {
    case Algorithm::tree2rs: return ruling_set_tree(g, cfg, observer);
    case Algorithm::fast_delta_tree2rs: return ruling_set_tree_fast_delta(g, cfg, observer);
    case Algorithm::girth2rs: {
      RunConfig exact = cfg;
      exact.cleanup = CleanupMode::exact_mis;
      return ruling_set_high_girth(g, exact, observer);
    }
    case Algorithm::girth_relaxed_rs: {
      RunConfig relaxed = cfg;
      relaxed.cleanup = CleanupMode::relaxed_ruling;
      return ruling_set_high_girth(g, relaxed, observer);
    }
  }
  throw std::invalid_argument("unknown algorithm");
}

std::size_t rounds_with_prefix(const RulingSetResult& r, const std::string& prefix) {
  std::size_t total = 0;
  for (const auto& p : r.phases) {
    if (p.phase.rfind(prefix, 0) == 0) total += p.rounds;
  }
  return total;
}

}  // namespace rulingsim

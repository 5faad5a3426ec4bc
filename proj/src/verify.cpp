#include "rulingsim/verify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rulingsim {

void VerificationReport::add_violation(std::vector<NodeId> nodes, std::string description) {
  violations.push_back({std::move(nodes), std::move(description)});
  pass = false;
}

nlohmann::ordered_json to_json(const VerificationReport& report, std::size_t max_violations) {
  nlohmann::ordered_json j;
  j["check"] = report.check_name;
  j["pass"] = report.pass;
  j["violation_count"] = report.violations.size();
  auto& list = j["violations"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < report.violations.size() && i < max_violations; ++i) {
    list.push_back({{"nodes", report.violations[i].nodes}, {"description", report.violations[i].description}});
  }
  auto& measured = j["measured"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : report.measured) measured[key] = value;
  return j;
}

namespace {

NodeMask mask_of(std::size_t n, std::span<const NodeId> nodes) {
  NodeMask mask(n, 0);
  for (NodeId v : nodes) mask[v] = 1;
  return mask;
}

}  // namespace

VerificationReport check_independent(const Graph& g, std::span<const NodeId> s) {
  VerificationReport report{"independent"};
  const NodeMask in_s = mask_of(g.node_count(), s);
  for (const auto& [u, v] : g.edges()) {
    if (in_s[u] && in_s[v]) report.add_violation({u, v}, "adjacent members");
  }
  report.measured["set_size"] = static_cast<double>(s.size());
  return report;
}

VerificationReport check_domination(const Graph& g, std::span<const NodeId> s, std::size_t beta) {
  VerificationReport report{"domination"};
  const auto dist = multi_source_distances(g, s);
  std::size_t worst = 0;
  bool unreachable = false;
  for (std::size_t v = 0; v < g.node_count(); ++v) {
    if (dist[v] == kUnreachable) {
      unreachable = true;
      report.add_violation({static_cast<NodeId>(v)}, "no set member reachable");
    } else {
      worst = std::max(worst, dist[v]);
      if (dist[v] > beta) {
        report.add_violation({static_cast<NodeId>(v)}, "distance " + std::to_string(dist[v]) + " > " + std::to_string(beta));
      }
    }
  }
  report.measured["beta"] = static_cast<double>(beta);
  report.measured["beta_measured"] = unreachable ? -1.0 : static_cast<double>(worst);
  return report;
}

VerificationReport check_mis(const Graph& g, std::span<const NodeId> subset, std::span<const NodeId> m) {
  VerificationReport report{"mis"};
  const NodeMask in_subset = mask_of(g.node_count(), subset);
  const NodeMask in_m = mask_of(g.node_count(), m);
  for (NodeId v : m) {
    if (!in_subset[v]) report.add_violation({v}, "member outside the subset");
  }
  for (NodeId v : subset) {
    bool dominated = in_m[v] != 0;
    for (NodeId w : g.neighbors(v)) {
      if (!in_subset[w] || !in_m[w]) continue;
      if (in_m[v] && v < w) report.add_violation({v, w}, "adjacent members");
      dominated = true;
    }
    if (!dominated) report.add_violation({v}, "not dominated (set is not maximal)");
  }
  report.measured["subset_size"] = static_cast<double>(subset.size());
  report.measured["set_size"] = static_cast<double>(m.size());
  return report;
}

std::vector<NodeId> greedy_distance_dominating_set(const Graph& host, std::span<const NodeId> component, std::size_t d) {
  std::vector<NodeId> order(component.begin(), component.end());
  std::sort(order.begin(), order.end());
  NodeMask in_comp = mask_of(host.node_count(), order), covered(host.node_count(), 0);
  const std::size_t radius = d == 0 ? 0 : d - 1;
  std::vector<std::size_t> dist(host.node_count(), kUnreachable);
  std::vector<NodeId> queue;
  std::vector<NodeId> picks;
  for (NodeId v : order) {
    if (covered[v]) continue;
    picks.push_back(v);
    queue.assign({v});
    dist[v] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const NodeId u = queue[head];
      if (in_comp[u]) covered[u] = 1;
      if (dist[u] == radius) continue;
      for (NodeId w : host.neighbors(u)) {
        if (dist[w] == kUnreachable) {
          dist[w] = dist[u] + 1;
          queue.push_back(w);
        }
      }
    }
    for (NodeId u : queue) dist[u] = kUnreachable;
  }
  return picks;
}

VerificationReport check_shattering(const Graph& g, const std::vector<std::vector<NodeId>>& w_sets,
                                    std::span<const std::size_t> delta_per_iter, std::size_t n,
                                    ShatteringMode mode, std::size_t delta_small) {
  VerificationReport report{mode == ShatteringMode::tree ? "shattering_tree" : "shattering_girth"};
  std::size_t max_component = 0, max_domset = 0, components = 0;
  const double log2n = std::log2(static_cast<double>(std::max<std::size_t>(n, 2)));
  if (mode == ShatteringMode::tree && delta_per_iter.size() < w_sets.size()) {
    throw std::invalid_argument("check_shattering: one degree bound per put-aside set required");
  }
  const double size_bound = std::pow(static_cast<double>(delta_small), 6.0) * log2n;
  for (std::size_t i = 0; i < w_sets.size(); ++i) {
    const double delta = mode == ShatteringMode::tree ? static_cast<double>(delta_per_iter[i]) : 0.0;
    const double domset_bound = delta > 1.0 ? std::log(static_cast<double>(n)) / std::log(delta) : 0.0;
    for (const auto& comp : connected_components(g, w_sets[i])) {
      ++components;
      max_component = std::max(max_component, comp.size());
      if (mode == ShatteringMode::tree) {
        const std::size_t size = greedy_distance_dominating_set(g, comp, 7).size();
        max_domset = std::max(max_domset, size);
        if (static_cast<double>(size) > domset_bound) {
          report.add_violation({comp.front()}, "W_" + std::to_string(i + 1) + " component dominating set " +
                                                   std::to_string(size) + " > log_" + std::to_string(delta_per_iter[i]) +
                                                   "(n) = " + std::to_string(domset_bound));
        }
      } else if (static_cast<double>(comp.size()) > size_bound) {
        report.add_violation({comp.front()}, "W_" + std::to_string(i + 1) + " component of size " +
                                                 std::to_string(comp.size()) + " > " + std::to_string(size_bound));
      }
    }
  }
  report.measured["components"] = static_cast<double>(components);
  report.measured["max_component_size"] = static_cast<double>(max_component);
  if (mode == ShatteringMode::tree) {
    report.measured["max_dominating_set_size"] = static_cast<double>(max_domset);
  } else {
    report.measured["component_size_bound"] = size_bound;
  }
  return report;
}

VerificationReport check_parallel_cleanup(const Graph& g, const std::vector<std::vector<NodeId>>& w_sets,
                                          std::span<const NodeId> s) {
  VerificationReport report{"parallel_cleanup"};
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> owner(g.node_count(), kNone);
  for (std::size_t i = 0; i < w_sets.size(); ++i) {
    for (NodeId v : w_sets[i]) {
      if (owner[v] != kNone) report.add_violation({v}, "node in two put-aside sets");
      owner[v] = i;
    }
  }
  const NodeMask in_s = mask_of(g.node_count(), s);
  for (const auto& [u, v] : g.edges()) {
    if (owner[u] != kNone && owner[v] != kNone && owner[u] != owner[v]) {
      report.add_violation({u, v}, "edge between W_" + std::to_string(owner[u] + 1) + " and W_" +
                                       std::to_string(owner[v] + 1));
    }
    if ((owner[u] != kNone && in_s[v]) || (owner[v] != kNone && in_s[u])) {
      report.add_violation({u, v}, "edge between a put-aside set and S");
    }
  }
  return report;
}

VerificationReport check_degree_drop(const Graph& g, const NodeMask& alive_before, const NodeMask& alive_after,
                                     std::span<const NodeId> s, std::span<const NodeId> w, std::size_t delta_star) {
  VerificationReport report{"degree_drop"};
  const std::size_t n = g.node_count();
  const NodeMask in_s = mask_of(n, s), in_w = mask_of(n, w);
  for (NodeId v : s) {
    if (!alive_before[v]) report.add_violation({v}, "S member was not alive at the start");
    if (alive_after[v]) report.add_violation({v}, "S member still alive");
    if (in_w[v]) report.add_violation({v}, "node in both S and W");
  }
  for (NodeId v : w) {
    if (!alive_after[v]) report.add_violation({v}, "W member is not alive");
  }
  for (const auto& [u, v] : g.edges()) {
    if (in_s[u] && in_s[v]) report.add_violation({u, v}, "(a) S not independent");
    if ((in_s[u] && in_w[v]) || (in_w[u] && in_s[v])) report.add_violation({u, v}, "(b) S-W edge");
  }
  std::size_t residual_max = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (!alive_after[v] || in_w[v]) continue;
    std::size_t deg = 0;
    for (NodeId x : g.neighbors(static_cast<NodeId>(v))) deg += alive_after[x] && !in_w[x];
    residual_max = std::max(residual_max, deg);
    if (deg > delta_star) {
      report.add_violation({static_cast<NodeId>(v)}, "(c) residual degree " + std::to_string(deg) + " > " +
                                                         std::to_string(delta_star));
    }
  }
  report.measured["s_size"] = static_cast<double>(s.size());
  report.measured["w_size"] = static_cast<double>(w.size());
  report.measured["residual_max_degree"] = static_cast<double>(residual_max);
  report.measured["delta_star"] = static_cast<double>(delta_star);
  return report;
}

}  // namespace rulingsim

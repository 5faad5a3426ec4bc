#include "rulingsim/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "rulingsim/engine.hpp"
#include "rulingsim/rng.hpp"
#include "rulingsim/verify.hpp"

namespace rulingsim {

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

void parallel_for(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)>& fn) {
  jobs = std::max<std::size_t>(1, std::min(jobs, count));
  if (jobs == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < jobs; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i; !failed && (i = next.fetch_add(1)) < count;) {
        try {
          fn(i);
        } catch (...) {
          if (!failed.exchange(true)) error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

KsResult mc_min_cdf(std::size_t k, std::size_t samples, std::uint64_t seed) {
  if (k == 0 || samples == 0) throw std::invalid_argument("mc_min_cdf: k and samples must be positive");
  Rng rng(seed);
  std::vector<double> xs(samples);
  for (auto& x : xs) {
    double m = 1.0;
    for (std::size_t i = 0; i < k; ++i) m = std::min(m, rng.uniform01());
    x = m;
  }
  std::sort(xs.begin(), xs.end());
  KsResult res{k, samples};
  const double n = static_cast<double>(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    const double f = 1.0 - std::pow(1.0 - xs[i], static_cast<double>(k));
    res.statistic = std::max({res.statistic, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
  }
  res.critical = 1.63 / std::sqrt(n);
  return res;
}

double ProportionResult::sigma() const {
  return samples ? std::sqrt(expected * (1.0 - expected) / static_cast<double>(samples)) : 0.0;
}

bool ProportionResult::within(double z) const { return std::abs(estimate() - expected) <= z * sigma(); }

namespace {

// Inverse CDF of density k(1-x)^(k-1) on [0,1].
double sample_min_of_k(Rng& rng, std::size_t k) {
  return 1.0 - std::pow(1.0 - rng.uniform01(), 1.0 / static_cast<double>(k));
}

}  // namespace

ProportionResult mc_conditional_prob(std::size_t k, std::size_t l, std::size_t samples, std::uint64_t seed) {
  if (k == 0 || l == 0) throw std::invalid_argument("mc_conditional_prob: k and l must be positive");
  Rng rng(seed);
  ProportionResult res;
  res.samples = samples;
  res.expected = 1.0 / static_cast<double>(k * l + 1);
  for (std::size_t s = 0; s < samples; ++s) {
    const double r = rng.uniform01();
    double m = 1.0;
    for (std::size_t i = 0; i < l; ++i) m = std::min(m, sample_min_of_k(rng, k));
    res.hits += r < m;
  }
  return res;
}

MeanResult mc_sampler_mean(std::size_t k, std::size_t samples, std::uint64_t seed) {
  if (k == 0 || samples < 2) throw std::invalid_argument("mc_sampler_mean: k >= 1 and samples >= 2 required");
  Rng rng(seed);
  double sum = 0, sum_sq = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    const double x = sample_min_of_k(rng, k);
    sum += x;
    sum_sq += x * x;
  }
  const double n = static_cast<double>(samples);
  MeanResult res;
  res.samples = samples;
  res.mean = sum / n;
  res.expected = 1.0 / static_cast<double>(k + 1);
  const double var = (sum_sq - n * res.mean * res.mean) / (n - 1);
  res.sigma = std::sqrt(std::max(var, 0.0) / n);
  return res;
}

double conditional_density_mass(std::size_t k, double a, double b) {
  const double e = static_cast<double>(k + 1);
  return std::pow(1.0 - a, e) - std::pow(1.0 - b, e);
}

DensityResult mc_conditional_density(std::size_t k, std::size_t accepted, std::uint64_t seed, std::size_t bins) {
  if (accepted == 0 || bins == 0) throw std::invalid_argument("mc_conditional_density: samples and bins must be positive");
  Rng rng(seed);
  DensityResult res;
  res.k = k;
  std::vector<std::size_t> counts(bins, 0);
  while (res.accepted < accepted) {
    ++res.proposals;
    const double r = rng.uniform01();
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < k; ++i) m = std::min(m, rng.uniform01());
    if (!(r < m)) continue;
    ++res.accepted;
    ++counts[std::min(bins - 1, static_cast<std::size_t>(r * static_cast<double>(bins)))];
  }
  for (std::size_t b = 0; b < bins; ++b) {
    const double lo = static_cast<double>(b) / static_cast<double>(bins);
    const double hi = static_cast<double>(b + 1) / static_cast<double>(bins);
    res.empirical_mass.push_back(static_cast<double>(counts[b]) / static_cast<double>(accepted));
    res.expected_mass.push_back(conditional_density_mass(k, lo, hi));
    res.l1 += std::abs(res.empirical_mass.back() - res.expected_mass.back());
  }
  return res;
}

double UncoveredResult::sigma() const {
  const double p = estimate();
  return trials ? std::sqrt(p * (1.0 - p) / static_cast<double>(trials)) : 0.0;
}

UncoveredResult mc_uncovered_probability(const Graph& g, NodeId v, std::size_t trials, std::uint64_t seed,
                                         std::size_t jobs) {
  if (v >= g.node_count()) throw std::invalid_argument("mc_uncovered_probability: designated node out of range");
  UncoveredResult res;
  res.max_degree = g.max_degree();
  res.degree_of_v = g.degree(v);
  res.trials = trials;
  res.bound = res.max_degree > 0 ? std::pow(1.0 / static_cast<double>(res.max_degree), 1.0 / 16.0) : 1.0;
  std::vector<std::uint8_t> uncovered(trials, 0);
  parallel_for(trials, jobs, [&](std::size_t t) {
    SimState state(g, derive_seed(seed, t));
    const NodeMask everyone(g.node_count(), 1);
    const auto joined = local_minima_join(state, everyone);
    state.remove_covered(joined, 2);
    uncovered[t] = state.alive(v);
  });
  for (auto u : uncovered) res.uncovered += u;
  return res;
}

Graph uncovered_instance(const std::string& family, std::size_t delta) {
  auto root = [&](double e) { return static_cast<std::size_t>(std::ceil(std::pow(static_cast<double>(delta), e) - 1e-9)); };
  if (family == "star") return star_graph(delta + 1);
  if (family == "star_of_stars") return star_of_stars(root(0.8), root(0.5));
  if (family == "layered") return layered_tree({root(0.75), root(0.25), root(0.25)});
  throw std::invalid_argument("uncovered_instance: unknown family " + family);
}

std::uint64_t scaling_trial_seed(std::uint64_t master, std::size_t n, std::size_t trial) {
  return derive_seed(derive_seed(master, n), trial);
}

std::vector<ScalingRow> scaling_experiment(const ScalingConfig& cfg) {
  for (std::size_t i = 1; i < cfg.n_grid.size(); ++i) {
    if (cfg.n_grid[i] <= cfg.n_grid[i - 1]) throw std::invalid_argument("scaling_experiment: n grid must increase");
  }
  const std::size_t total = cfg.n_grid.size() * cfg.trials;
  std::vector<ScalingRow> rows(total);
  parallel_for(total, cfg.jobs, [&](std::size_t idx) {
    const std::size_t n = cfg.n_grid[idx / cfg.trials], trial = idx % cfg.trials;
    const std::uint64_t seed = scaling_trial_seed(cfg.seed, n, trial);
    GraphFamilySpec spec = cfg.family;
    spec.n = n;
    spec.seed = mix64(seed ^ 0xA5A5A5A5A5A5A5A5ULL);
    const Graph g = generate(spec);
    RunConfig run = cfg.run;
    run.seed = seed;
    const RulingSetResult r = run_algorithm(g, run);
    ScalingRow& row = rows[idx];
    row.n = n;
    row.family = cfg.family_name;
    row.algorithm = r.algorithm;
    row.trial = trial;
    row.seed = seed;
    row.max_degree = g.max_degree();
    row.rounds_total = r.rounds_total;
    row.rounds_sampling = rounds_with_prefix(r, "sampling");
    row.rounds_degree_drop = rounds_with_prefix(r, "degree_drop");
    row.rounds_cleanup = rounds_with_prefix(r, "cleanup");
    row.rounds_final_mis = rounds_with_prefix(r, "final_mis");
    row.beta_measured = r.beta_measured;
    row.valid = check_independent(g, r.set).pass && r.beta_measured >= 0 &&
                static_cast<std::size_t>(r.beta_measured) <= r.beta_target;
  });
  return rows;
}

void write_scaling_csv(const std::vector<ScalingRow>& rows, std::ostream& out) {
  out << kScalingCsvHeader << '\n';
  for (const auto& r : rows) {
    out << r.n << ',' << r.family << ',' << r.algorithm << ',' << r.trial << ',' << r.seed << ',' << r.max_degree << ','
        << r.rounds_total << ',' << r.rounds_sampling << ',' << r.rounds_degree_drop << ',' << r.rounds_cleanup << ','
        << r.rounds_final_mis << ',' << r.beta_measured << ',' << (r.valid ? 1 : 0) << '\n';
  }
}

double LoglogFit::predict(std::size_t n_value) const {
  return a + b * std::log2(std::log2(static_cast<double>(n_value)));
}

LoglogFit fit_loglog(const std::vector<ScalingRow>& rows) {
  LoglogFit fit;
  if (rows.empty()) return fit;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::map<std::size_t, std::pair<double, std::size_t>> per_n;
  for (const auto& r : rows) {
    if (r.n < 4) throw std::invalid_argument("fit_loglog: n must be at least 4");
    const double x = std::log2(std::log2(static_cast<double>(r.n)));
    const double y = static_cast<double>(r.rounds_total);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    auto& [sum, count] = per_n[r.n];
    sum += y;
    ++count;
  }
  const double m = static_cast<double>(rows.size());
  const double denom = m * sxx - sx * sx;
  fit.b = std::abs(denom) > 1e-12 ? (m * sxy - sx * sy) / denom : 0.0;
  fit.a = (sy - fit.b * sx) / m;
  double ss_res = 0, ss_tot = 0;
  const double mean_y = sy / m;
  for (const auto& r : rows) {
    const double y = static_cast<double>(r.rounds_total);
    ss_res += (y - fit.predict(r.n)) * (y - fit.predict(r.n));
    ss_tot += (y - mean_y) * (y - mean_y);
  }
  fit.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
  for (const auto& [n, acc] : per_n) {
    fit.n.push_back(n);
    fit.mean_rounds.push_back(acc.first / static_cast<double>(acc.second));
    fit.residuals.push_back(fit.mean_rounds.back() - fit.predict(n));
  }
  return fit;
}

}  // namespace rulingsim

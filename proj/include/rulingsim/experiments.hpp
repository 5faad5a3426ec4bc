#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "rulingsim/algorithms.hpp"
#include "rulingsim/generators.hpp"
#include "rulingsim/graph.hpp"

namespace rulingsim {

/// Formats a double with 9 significant digits (the CSV convention).
std::string format_double(double x);

/// Runs fn(0..count-1) on `jobs` threads. fn must only write to its own
/// output slot; results are therefore independent of the thread count.
void parallel_for(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)>& fn);

struct KsResult {
  std::size_t k = 0;
  std::size_t samples = 0;
  double statistic = 0;  // sup |F_emp - F|
  double critical = 0;   // 1.63 / sqrt(samples), 99% level
  bool pass() const { return statistic < critical; }
};

/// Empirical CDF of the minimum of k uniforms against 1 - (1 - x)^k.
KsResult mc_min_cdf(std::size_t k, std::size_t samples, std::uint64_t seed);

struct ProportionResult {
  std::size_t hits = 0;
  std::size_t samples = 0;
  double expected = 0;
  double estimate() const { return samples ? static_cast<double>(hits) / static_cast<double>(samples) : 0.0; }
  /// Binomial standard error under the expected probability.
  double sigma() const;
  bool within(double z) const;
};

/// r uniform, X_1..X_l with density k(1-x)^(k-1) drawn as 1-(1-u)^(1/k);
/// counts r < min X_i. Expected 1/(k l + 1).
ProportionResult mc_conditional_prob(std::size_t k, std::size_t l, std::size_t samples, std::uint64_t seed);

struct MeanResult {
  double mean = 0;
  double expected = 0;
  double sigma = 0;  // standard error of the mean
  std::size_t samples = 0;
};

/// Mean of the inverse-CDF sampler for density k(1-x)^(k-1); expected 1/(k+1).
MeanResult mc_sampler_mean(std::size_t k, std::size_t samples, std::uint64_t seed);

struct DensityResult {
  std::size_t k = 0;
  std::size_t accepted = 0;
  std::size_t proposals = 0;
  std::vector<double> empirical_mass;  // per bin
  std::vector<double> expected_mass;   // exact integral of (k+1)(1-x)^k over the bin
  double l1 = 0;
};

/// Rejection sampling of r uniform conditioned on r < min of k uniforms
/// until `accepted` samples are kept; 100-bin histogram against
/// (k+1)(1-x)^k. k = 0 means no condition (uniform).
DensityResult mc_conditional_density(std::size_t k, std::size_t accepted, std::uint64_t seed, std::size_t bins = 100);

/// Exact mass of density (k+1)(1-x)^k on [a, b].
double conditional_density_mass(std::size_t k, double a, double b);

struct UncoveredResult {
  std::string family;
  std::size_t delta_nominal = 0;  // grid value the instance was built from
  std::size_t max_degree = 0;     // actual max degree of the instance
  std::size_t degree_of_v = 0;
  std::size_t trials = 0;
  std::size_t uncovered = 0;
  double bound = 0;  // (1 / max_degree)^(1/16)
  double estimate() const { return trials ? static_cast<double>(uncovered) / static_cast<double>(trials) : 0.0; }
  double sigma() const;  // binomial standard error of the estimate
  bool pass(double z) const { return estimate() <= bound + z * sigma(); }
};

/// P[v not covered after one LMJ on the whole graph followed by the
/// radius-2 removal], estimated over independent trials (seed per trial
/// derived from `seed`).
UncoveredResult mc_uncovered_probability(const Graph& g, NodeId v, std::size_t trials, std::uint64_t seed,
                                         std::size_t jobs = 1);

/// Instances for the uncovered-probability experiment, by nominal Delta.
/// "star": star with Delta leaves; "star_of_stars": (ceil Delta^0.8,
/// ceil Delta^0.5); "layered": three levels (ceil Delta^0.75, ceil Delta^0.25,
/// ceil Delta^0.25). The designated node is the root, 0.
Graph uncovered_instance(const std::string& family, std::size_t delta);

struct ScalingRow {
  std::size_t n = 0;
  std::string family;
  std::string algorithm;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  std::size_t max_degree = 0;
  std::size_t rounds_total = 0;
  std::size_t rounds_sampling = 0;
  std::size_t rounds_degree_drop = 0;
  std::size_t rounds_cleanup = 0;
  std::size_t rounds_final_mis = 0;
  std::int64_t beta_measured = 0;
  bool valid = false;  // independent and within beta_target
};

struct ScalingConfig {
  GraphFamilySpec family;  // n and seed are overridden per point/trial
  std::string family_name = "tree";
  std::vector<std::size_t> n_grid;
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  RunConfig run;
  std::size_t jobs = 1;
};

/// Seed of trial `trial` at size n.
std::uint64_t scaling_trial_seed(std::uint64_t master, std::size_t n, std::size_t trial);

std::vector<ScalingRow> scaling_experiment(const ScalingConfig& cfg);

inline const char* kScalingCsvHeader =
    "n,family,algorithm,trial,seed,max_degree,rounds_total,rounds_sampling,rounds_degree_drop,rounds_cleanup,"
    "rounds_final_mis,beta_measured,valid";
void write_scaling_csv(const std::vector<ScalingRow>& rows, std::ostream& out);

struct LoglogFit {
  double a = 0;
  double b = 0;
  double r2 = 0;
  std::vector<std::size_t> n;           // distinct sizes, increasing
  std::vector<double> mean_rounds;      // per size
  std::vector<double> residuals;        // mean - prediction, per size
  double predict(std::size_t n_value) const;
};

/// Least squares rounds_total ~ a + b * log2(log2 n) over all rows.
LoglogFit fit_loglog(const std::vector<ScalingRow>& rows);

}  // namespace rulingsim

#include <doctest.h>

#include <cmath>
#include <sstream>

#include "rulingsim/errors.hpp"
#include "rulingsim/experiments.hpp"
#include "rulingsim/result_io.hpp"

using namespace rulingsim;

TEST_CASE("minimum-of-k CDF") {
  // Closed form at k = 2, x = 0.5: 1 - (1 - 0.5)^2.
  CHECK(1.0 - std::pow(1.0 - 0.5, 2) == doctest::Approx(0.75));
  for (std::size_t k : {1u, 5u}) {
    const auto r = mc_min_cdf(k, 200000, 10 + k);
    CHECK(r.critical == doctest::Approx(1.63 / std::sqrt(200000.0)));
    CHECK(r.pass());
  }
  CHECK(mc_min_cdf(3, 10000, 1).statistic == mc_min_cdf(3, 10000, 1).statistic);
  CHECK_THROWS_AS(mc_min_cdf(0, 10, 1), std::invalid_argument);
}

TEST_CASE("conditional probability") {
  const auto a = mc_conditional_prob(1, 1, 100000, 1);
  CHECK(a.expected == doctest::Approx(0.5));
  CHECK(a.within(3));
  const auto b = mc_conditional_prob(2, 3, 100000, 2);
  CHECK(b.expected == doctest::Approx(1.0 / 7.0));
  CHECK(b.within(3));
  const auto c = mc_conditional_prob(4, 2, 1000000, 3);
  CHECK(c.expected == doctest::Approx(1.0 / 9.0));
  CHECK(c.within(3));
  CHECK(c.sigma() == doctest::Approx(std::sqrt((1.0 / 9.0) * (8.0 / 9.0) / 1e6)));
}

TEST_CASE("inverse-CDF sampler mean") {
  // Mean of density k(1-x)^(k-1) is the integral of (1-x)^k over [0,1] = 1/(k+1).
  for (std::size_t k : {1u, 2u, 7u}) {
    const auto m = mc_sampler_mean(k, 100000, k);
    CHECK(m.expected == doctest::Approx(1.0 / static_cast<double>(k + 1)));
    CHECK(std::abs(m.mean - m.expected) <= 3 * m.sigma);
  }
}

TEST_CASE("conditional density") {
  // Integral of 2(1-x) over [0, 0.01] = 0.02 - 0.0001.
  CHECK(conditional_density_mass(1, 0.0, 0.01) == doctest::Approx(0.0199));
  CHECK(conditional_density_mass(0, 0.3, 0.4) == doctest::Approx(0.1));

  const auto u = mc_conditional_density(0, 200000, 1);
  CHECK(u.proposals == u.accepted);  // no condition, nothing rejected
  for (double m : u.expected_mass) CHECK(m == doctest::Approx(0.01));
  CHECK(u.l1 < 0.05);

  const auto k1 = mc_conditional_density(1, 200000, 2);
  CHECK(k1.expected_mass.front() == doctest::Approx(0.0199));
  CHECK(k1.l1 < 0.05);

  const auto k10 = mc_conditional_density(10, 1000000, 3);
  CHECK(k10.l1 < 0.02);
}

TEST_CASE("uncovered probability") {
  // Star with a single leaf: whoever has the smaller draw joins and covers both.
  const auto one = mc_uncovered_probability(star_graph(2), 0, 2000, 1);
  CHECK(one.uncovered == 0);

  // On a star the global minimum is adjacent to or equal to the center, so
  // the center is always covered: exact probability 0.
  for (std::size_t delta : {16u, 256u}) {
    const Graph g = uncovered_instance("star", delta);
    CHECK(g.degree(0) == delta);
    const auto r = mc_uncovered_probability(g, 0, 2000, delta, 2);
    CHECK(r.uncovered == 0);
    CHECK(r.bound == doctest::Approx(std::pow(1.0 / static_cast<double>(delta), 1.0 / 16.0)));
    CHECK(r.pass(3));
  }
  const Graph sos = uncovered_instance("star_of_stars", 256);
  CHECK(sos.degree(0) == 85);  // ceil(256^0.8)
  CHECK(sos.degree(1) == 17);  // parent + ceil(256^0.5) leaves
  CHECK_THROWS_AS(uncovered_instance("wheel", 10), std::invalid_argument);

  // Results do not depend on the number of worker threads.
  const Graph lay = uncovered_instance("layered", 256);
  const auto a = mc_uncovered_probability(lay, 0, 300, 9, 1);
  const auto b = mc_uncovered_probability(lay, 0, 300, 9, 3);
  CHECK(a.uncovered == b.uncovered);
}

TEST_CASE("scaling experiment and fit") {
  ScalingConfig cfg;
  cfg.family.family = Family::uniform_random_tree;
  cfg.n_grid = {1024, 4096};
  cfg.trials = 3;
  cfg.seed = 5;
  const auto rows = scaling_experiment(cfg);
  REQUIRE(rows.size() == 6);
  for (const auto& r : rows) {
    CHECK(r.valid);
    CHECK(r.rounds_total == r.rounds_sampling + r.rounds_degree_drop + r.rounds_cleanup + r.rounds_final_mis);
  }
  cfg.jobs = 3;
  std::ostringstream a, b;
  write_scaling_csv(rows, a);
  write_scaling_csv(scaling_experiment(cfg), b);
  CHECK(a.str() == b.str());
  CHECK(a.str().rfind(std::string(kScalingCsvHeader) + "\n", 0) == 0);

  cfg.n_grid = {4096, 1024};
  CHECK_THROWS_AS(scaling_experiment(cfg), std::invalid_argument);

  // Exact line through synthetic points: rounds = 10 + 5 * log2 log2 n.
  std::vector<ScalingRow> synth;
  for (std::size_t n : {16u, 256u, 65536u}) {
    ScalingRow r;
    r.n = n;
    r.rounds_total = static_cast<std::size_t>(10 + 5 * std::log2(std::log2(static_cast<double>(n))));
    synth.push_back(r);
  }
  const auto fit = fit_loglog(synth);
  CHECK(fit.a == doctest::Approx(10));
  CHECK(fit.b == doctest::Approx(5));
  CHECK(fit.r2 == doctest::Approx(1));
  CHECK(fit.predict(1u << 16) == doctest::Approx(30));
}

TEST_CASE("format and parallel helpers") {
  CHECK(format_double(1.0 / 7.0) == "0.142857143");
  CHECK(format_double(0.5) == "0.5");
  std::vector<int> out(100, 0);
  parallel_for(100, 4, [&](std::size_t i) { out[i] = static_cast<int>(i * i); });
  for (int i = 0; i < 100; ++i) CHECK(out[i] == i * i);
  CHECK_THROWS_AS(parallel_for(10, 2, [](std::size_t i) { if (i == 7) throw std::runtime_error("x"); }),
                  std::runtime_error);
}

TEST_CASE("result JSON") {
  const Graph g = uniform_random_tree(200, 1);
  RunConfig cfg;
  cfg.seed = 3;
  const auto r = run_algorithm(g, cfg);
  const auto j = to_json(r);
  CHECK(j["schema_version"] == 1);
  CHECK(j["S"].get<std::vector<NodeId>>() == r.set);
  CHECK(j.begin().key() == "schema_version");
  std::istringstream in(dump_result(r));
  CHECK(read_result_set(in) == r.set);

  std::istringstream bad_json("{");
  CHECK_THROWS_AS(read_result_set(bad_json), InputError);
  std::istringstream no_s("{\"x\": 1}");
  CHECK_THROWS_AS(read_result_set(no_s), InputError);
  std::istringstream neg("{\"S\": [1, -2]}");
  CHECK_THROWS_AS(read_result_set(neg), InputError);
  std::istringstream version("{\"schema_version\": 2, \"S\": []}");
  CHECK_THROWS_AS(read_result_set(version), InputError);

  std::ostringstream trace;
  write_trace_jsonl(r.phases, trace);
  std::size_t lines = 0;
  for (char ch : trace.str()) lines += ch == '\n';
  CHECK(lines == r.phases.size());
}

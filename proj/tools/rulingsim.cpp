// rulingsim: generate graphs, run ruling-set pipelines, verify outputs,
// run Monte-Carlo checks and scaling sweeps.
//
// Exit codes: 0 success, 1 a check failed, 2 usage or input error.

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rulingsim/algorithms.hpp"
#include "rulingsim/errors.hpp"
#include "rulingsim/experiments.hpp"
#include "rulingsim/generators.hpp"
#include "rulingsim/graph.hpp"
#include "rulingsim/result_io.hpp"
#include "rulingsim/verify.hpp"

using namespace rulingsim;

namespace {

enum class LogLevel { off, info, trace };

LogLevel log_level() {
  const char* env = std::getenv("RULING_SIM_LOG");
  if (!env) return LogLevel::info;
  const std::string v = env;
  if (v == "off") return LogLevel::off;
  if (v == "trace") return LogLevel::trace;
  return LogLevel::info;
}

void info(const std::string& msg) {
  if (log_level() != LogLevel::off) std::cerr << msg << '\n';
}

// Writes `text` to `path`, or to stdout when path is empty.
void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open " + path + " for writing");
  out << text;
  if (!out) throw InputError("write failed: " + path);
}

struct CheckFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::size_t> parse_n_grid(const std::string& text) {
  auto parse_one = [&](const std::string& s) {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(s, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != s.size() || s.empty() || s[0] == '-') throw InputError("bad --n value \"" + text + "\"");
    return static_cast<std::size_t>(v);
  };
  std::vector<std::size_t> grid;
  if (auto dots = text.find(".."); dots != std::string::npos) {
    const std::size_t lo = parse_one(text.substr(0, dots)), hi = parse_one(text.substr(dots + 2));
    if (lo == 0 || hi < lo) throw InputError("bad --n range \"" + text + "\"");
    for (std::size_t v = lo; v <= hi; v *= 2) grid.push_back(v);
  } else {
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) grid.push_back(parse_one(item));
  }
  if (grid.empty()) throw InputError("empty --n grid");
  return grid;
}

// ---- gen ----------------------------------------------------------------

struct GenArgs {
  std::string family;
  std::size_t n = 0, d1 = 0, d2 = 0, target_degree = 8;
  std::string branching, base_tree = "uniform", out;
  std::uint64_t seed = 0;
};

GraphFamilySpec family_spec(const std::string& family, const GenArgs& a) {
  GraphFamilySpec spec;
  spec.n = a.n;
  spec.d1 = a.d1;
  spec.d2 = a.d2;
  spec.seed = a.seed;
  spec.target_degree = a.target_degree;
  if (a.base_tree == "uniform") {
    spec.base = BaseTree::uniform;
  } else if (a.base_tree == "preferential") {
    spec.base = BaseTree::preferential;
  } else {
    throw InputError("--base-tree must be uniform or preferential");
  }
  if (family == "tree") spec.family = Family::uniform_random_tree;
  else if (family == "preferential") spec.family = Family::preferential_tree;
  else if (family == "star") spec.family = Family::star;
  else if (family == "star-of-stars") spec.family = Family::star_of_stars;
  else if (family == "path") spec.family = Family::path;
  else if (family == "cycle") spec.family = Family::cycle;
  else if (family == "girth7") spec.family = Family::high_girth_regularish;
  else if (family == "layered") {
    spec.family = Family::layered_tree;
    std::stringstream ss(a.branching);
    for (std::string item; std::getline(ss, item, ',');) spec.branching.push_back(parse_n_grid(item).front());
    if (spec.branching.empty()) throw InputError("--branching is required for the layered family");
  } else {
    throw InputError("unknown family \"" + family + "\"");
  }
  return spec;
}

int cmd_gen(const GenArgs& a) {
  const GraphFamilySpec spec = family_spec(a.family, a);
  const Graph g = generate(spec);
  std::ostringstream text;
  save_edge_list(g, text);
  emit(a.out, text.str());
  std::string girth_text;
  if (g.edge_count() <= 100000) {
    const auto gi = girth(g);
    girth_text = gi ? std::to_string(*gi) : "inf";
  } else if (spec.family == Family::high_girth_regularish) {
    girth_text = ">=7 (certified by construction)";
  } else {
    girth_text = "not computed (m > 100000)";
  }
  const std::string summary = "n=" + std::to_string(g.node_count()) + " m=" + std::to_string(g.edge_count()) +
                              " max_degree=" + std::to_string(g.max_degree()) + " girth=" + girth_text;
  if (a.out.empty()) {
    info(summary);
  } else if (log_level() != LogLevel::off) {
    std::cout << summary << '\n';
  }
  return 0;
}

// ---- run ----------------------------------------------------------------

struct RunArgs {
  std::string graph, algorithm = "tree2rs", delta_small = "log^3", phase2 = "sqrt_delta", cleanup = "exact_mis";
  std::string out, trace;
  std::uint64_t seed = 0;
  std::size_t c = 1, c_tilde = 8;
};

int cmd_run(const RunArgs& a) {
  RunConfig cfg;
  const auto algorithm = parse_algorithm(a.algorithm);
  if (!algorithm) throw InputError("unknown --algorithm \"" + a.algorithm + "\"");
  const auto phase2 = parse_phase2_cutoff(a.phase2);
  if (!phase2) throw InputError("unknown --phase2-cutoff \"" + a.phase2 + "\"");
  const auto cleanup = parse_cleanup_mode(a.cleanup);
  if (!cleanup) throw InputError("unknown --cleanup \"" + a.cleanup + "\"");
  if (a.c == 0) throw InputError("--c must be positive");
  cfg.algorithm = *algorithm;
  if (cfg.algorithm == Algorithm::girth2rs && *cleanup == CleanupMode::relaxed_ruling) {
    cfg.algorithm = Algorithm::girth_relaxed_rs;
  }
  cfg.seed = a.seed;
  cfg.c = a.c;
  cfg.c_tilde = a.c_tilde;
  cfg.delta_small = a.delta_small;
  cfg.phase2_cutoff = *phase2;
  cfg.cleanup = *cleanup;

  const Graph g = load_edge_list_file(a.graph);
  const RulingSetResult r = run_algorithm(g, cfg);
  emit(a.out, dump_result(r));
  if (!a.trace.empty()) {
    std::ofstream tr(a.trace, std::ios::binary);
    if (!tr) throw InputError("cannot open " + a.trace + " for writing");
    write_trace_jsonl(r.phases, tr);
  } else if (log_level() == LogLevel::trace) {
    write_trace_jsonl(r.phases, std::cerr);
  }

  std::vector<VerificationReport> reports;
  reports.push_back(check_independent(g, r.set));
  reports.push_back(check_domination(g, r.set, r.beta_target));
  std::vector<NodeId> non_cleanup;
  for (const auto* family : {&r.sampling_sets, &r.degree_drop_sets}) {
    for (const auto& part : *family) non_cleanup.insert(non_cleanup.end(), part.begin(), part.end());
  }
  non_cleanup.insert(non_cleanup.end(), r.final_mis.begin(), r.final_mis.end());
  reports.push_back(check_parallel_cleanup(g, r.put_aside_sets, non_cleanup));
  if (cfg.algorithm != Algorithm::girth_relaxed_rs) {
    std::vector<NodeId> w_union, z;
    for (const auto& w : r.put_aside_sets) w_union.insert(w_union.end(), w.begin(), w.end());
    for (const auto& part : r.cleanup_sets) z.insert(z.end(), part.begin(), part.end());
    reports.push_back(check_mis(g, w_union, z));
  }
  bool ok = true;
  for (const auto& rep : reports) {
    ok = ok && rep.pass;
    if (!rep.pass) {
      std::cerr << "check " << rep.check_name << " FAILED with " << rep.violations.size() << " violation(s)";
      if (!rep.violations.empty()) std::cerr << "; first: " << rep.violations.front().description;
      std::cerr << '\n';
    }
  }
  info(r.algorithm + ": n=" + std::to_string(g.node_count()) + " |S|=" + std::to_string(r.set.size()) +
       " beta_measured=" + std::to_string(r.beta_measured) + " beta_target=" + std::to_string(r.beta_target) +
       " rounds_total=" + std::to_string(r.rounds_total) + (ok ? " checks=pass" : " checks=FAIL"));
  return ok ? 0 : 1;
}

// ---- verify -------------------------------------------------------------

struct VerifyArgs {
  std::string graph, set, report;
  std::size_t beta = 2;
};

int cmd_verify(const VerifyArgs& a) {
  const Graph g = load_edge_list_file(a.graph);
  std::ifstream in(a.set, std::ios::binary);
  if (!in) throw InputError("cannot open " + a.set);
  const std::vector<NodeId> s = read_result_set(in);
  for (NodeId v : s) {
    if (v >= g.node_count()) throw InputError("set member " + std::to_string(v) + " is not a node of the graph");
  }
  const VerificationReport ind = check_independent(g, s);
  const VerificationReport dom = check_domination(g, s, a.beta);
  const bool ok = ind.pass && dom.pass;
  if (!a.report.empty()) {
    nlohmann::ordered_json j;
    j["pass"] = ok;
    j["reports"] = {to_json(ind), to_json(dom)};
    emit(a.report, j.dump(2) + "\n");
  }
  info(std::string("independent: ") + (ind.pass ? "pass" : "FAIL") + " (" + std::to_string(ind.violations.size()) +
       " violations); domination beta=" + std::to_string(a.beta) + ": " + (dom.pass ? "pass" : "FAIL") +
       " (beta_measured=" + format_double(dom.measured.at("beta_measured")) + ", " +
       std::to_string(dom.violations.size()) + " violations)");
  return ok ? 0 : 1;
}

// ---- mc -----------------------------------------------------------------

struct McArgs {
  std::string lemma, out, family = "star";
  std::vector<std::size_t> k{2}, l{3}, delta{256};
  std::size_t samples = 1000000, trials = 10000, jobs = 1;
  double z = 3.0, tolerance = 0.02;
  std::uint64_t seed = 0;
};

int cmd_mc(const McArgs& a) {
  std::ostringstream csv;
  bool ok = true;
  if (a.samples < 1000) throw InputError("--samples must be at least 1000");
  std::uint64_t point = 0;
  if (a.lemma == "min-cdf") {
    csv << "k,samples,ks_statistic,critical_99,pass\n";
    for (std::size_t k : a.k) {
      const KsResult r = mc_min_cdf(k, a.samples, derive_seed(a.seed, point++));
      csv << k << ',' << r.samples << ',' << format_double(r.statistic) << ',' << format_double(r.critical) << ','
          << r.pass() << '\n';
      ok = ok && r.pass();
    }
  } else if (a.lemma == "conditional-prob") {
    csv << "k,l,samples,estimate,expected,sigma,pass\n";
    for (std::size_t k : a.k) {
      for (std::size_t l : a.l) {
        const ProportionResult r = mc_conditional_prob(k, l, a.samples, derive_seed(a.seed, point++));
        csv << k << ',' << l << ',' << r.samples << ',' << format_double(r.estimate()) << ','
            << format_double(r.expected) << ',' << format_double(r.sigma()) << ',' << r.within(a.z) << '\n';
        ok = ok && r.within(a.z);
      }
    }
  } else if (a.lemma == "conditional-density") {
    csv << "k,accepted,proposals,l1,tolerance,pass\n";
    for (std::size_t k : a.k) {
      const DensityResult r = mc_conditional_density(k, a.samples, derive_seed(a.seed, point++));
      csv << k << ',' << r.accepted << ',' << r.proposals << ',' << format_double(r.l1) << ','
          << format_double(a.tolerance) << ',' << (r.l1 < a.tolerance) << '\n';
      ok = ok && r.l1 < a.tolerance;
    }
  } else if (a.lemma == "uncovered") {
    csv << "family,delta,max_degree,degree_of_v,trials,uncovered,estimate,sigma,bound,pass\n";
    for (std::size_t d : a.delta) {
      const Graph g = uncovered_instance(a.family == "star-of-stars" ? "star_of_stars" : a.family, d);
      const UncoveredResult r = mc_uncovered_probability(g, 0, a.trials, derive_seed(a.seed, point++), a.jobs);
      csv << a.family << ',' << d << ',' << r.max_degree << ',' << r.degree_of_v << ',' << r.trials << ','
          << r.uncovered << ',' << format_double(r.estimate()) << ',' << format_double(r.sigma()) << ','
          << format_double(r.bound) << ',' << r.pass(a.z) << '\n';
      ok = ok && r.pass(a.z);
    }
  } else {
    throw InputError("unknown --lemma \"" + a.lemma + "\"");
  }
  emit(a.out, csv.str());
  return ok ? 0 : 1;
}

// ---- scale --------------------------------------------------------------

struct ScaleArgs {
  std::string family = "tree", n = "1024..16384", algorithm = "tree2rs", out, base_tree = "uniform";
  std::size_t trials = 10, jobs = 1, target_degree = 6;
  std::uint64_t seed = 0;
};

int cmd_scale(const ScaleArgs& a) {
  ScalingConfig cfg;
  GenArgs gen;
  gen.target_degree = a.target_degree;
  gen.base_tree = a.base_tree;
  gen.n = 1;
  cfg.family = family_spec(a.family, gen);
  cfg.family_name = a.family;
  cfg.n_grid = parse_n_grid(a.n);
  cfg.trials = a.trials;
  cfg.seed = a.seed;
  cfg.jobs = a.jobs;
  const auto algorithm = parse_algorithm(a.algorithm);
  if (!algorithm) throw InputError("unknown --algorithm \"" + a.algorithm + "\"");
  cfg.run.algorithm = *algorithm;
  if (a.trials == 0) throw InputError("--trials must be positive");
  if (cfg.n_grid.front() < 4) throw InputError("--n values must be at least 4");

  const auto rows = scaling_experiment(cfg);
  std::ostringstream csv;
  write_scaling_csv(rows, csv);
  emit(a.out, csv.str());
  bool ok = true;
  for (const auto& r : rows) ok = ok && r.valid;
  const LoglogFit fit = fit_loglog(rows);
  std::string msg = "fit rounds_total ~ a + b*log2(log2 n): a=" + format_double(fit.a) + " b=" + format_double(fit.b) +
                    " r2=" + format_double(fit.r2);
  for (std::size_t i = 0; i < fit.n.size(); ++i) {
    msg += "\n  n=" + std::to_string(fit.n[i]) + " mean=" + format_double(fit.mean_rounds[i]) +
           " residual=" + format_double(fit.residuals[i]);
  }
  info(msg);
  if (!ok) std::cerr << "some runs failed their checks (valid=0 rows)\n";
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Round-accurate ruling-set simulator and verification harness"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a graph as an edge list");
  gen_cmd->add_option("--family", gen.family, "tree|preferential|star|star-of-stars|path|cycle|layered|girth7")->required();
  gen_cmd->add_option("--n", gen.n, "Number of nodes");
  gen_cmd->add_option("--d1", gen.d1, "star-of-stars: children of the root");
  gen_cmd->add_option("--d2", gen.d2, "star-of-stars: leaves per child");
  gen_cmd->add_option("--branching", gen.branching, "layered: comma-separated branching factors");
  gen_cmd->add_option("--target-degree", gen.target_degree, "girth7: degree target");
  gen_cmd->add_option("--base-tree", gen.base_tree, "girth7: uniform|preferential");
  gen_cmd->add_option("--seed", gen.seed, "Random seed")->required();
  gen_cmd->add_option("--out", gen.out, "Output file (stdout if omitted)");

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Run a ruling-set pipeline and check its output");
  run_cmd->add_option("--graph", run.graph, "Edge-list file")->required();
  run_cmd->add_option("--algorithm", run.algorithm, "tree2rs|girth2rs|girth_relaxed_rs|fast_delta_tree2rs");
  run_cmd->add_option("--seed", run.seed, "Random seed")->required();
  run_cmd->add_option("--c", run.c, "Degree-Drop constant (16c LMJ iterations)");
  run_cmd->add_option("--c-tilde", run.c_tilde, "LMJ-Sampling iterations per sampling degree drop");
  run_cmd->add_option("--delta-small", run.delta_small, "Sampling phase target: log^K or an integer");
  run_cmd->add_option("--phase2-cutoff", run.phase2, "sqrt_delta|delta_star_34");
  run_cmd->add_option("--cleanup", run.cleanup, "exact_mis|relaxed_ruling (girth2rs)");
  run_cmd->add_option("--out", run.out, "Result JSON file (stdout if omitted)");
  run_cmd->add_option("--trace", run.trace, "Phase trace JSON-lines file");

  VerifyArgs ver;
  auto* verify_cmd = app.add_subcommand("verify", "Check a result set against a graph");
  verify_cmd->add_option("--graph", ver.graph, "Edge-list file")->required();
  verify_cmd->add_option("--set", ver.set, "Result JSON with an \"S\" array")->required();
  verify_cmd->add_option("--beta", ver.beta, "Domination radius");
  verify_cmd->add_option("--report", ver.report, "Write the verification report as JSON");

  McArgs mc;
  auto* mc_cmd = app.add_subcommand("mc", "Monte-Carlo checks of the probability lemmas");
  mc_cmd->add_option("--lemma", mc.lemma, "min-cdf|conditional-prob|conditional-density|uncovered")->required();
  mc_cmd->add_option("--k", mc.k, "k values")->delimiter(',');
  mc_cmd->add_option("--l", mc.l, "l values (conditional-prob)")->delimiter(',');
  mc_cmd->add_option("--samples", mc.samples, "Samples per point");
  mc_cmd->add_option("--delta", mc.delta, "Delta grid (uncovered)")->delimiter(',');
  mc_cmd->add_option("--family", mc.family, "uncovered: star|star-of-stars|layered");
  mc_cmd->add_option("--trials", mc.trials, "Trials per Delta (uncovered)");
  mc_cmd->add_option("--z", mc.z, "Confidence multiplier in standard errors");
  mc_cmd->add_option("--tolerance", mc.tolerance, "L1 tolerance (conditional-density)");
  mc_cmd->add_option("--jobs", mc.jobs, "Worker threads (uncovered)");
  mc_cmd->add_option("--seed", mc.seed, "Master seed")->required();
  mc_cmd->add_option("--out", mc.out, "CSV file (stdout if omitted)");

  ScaleArgs sc;
  auto* scale_cmd = app.add_subcommand("scale", "Rounds-versus-n sweep as CSV");
  scale_cmd->add_option("--family", sc.family, "tree|preferential|star|path|girth7");
  scale_cmd->add_option("--n", sc.n, "a..b (powers of two) or a comma list");
  scale_cmd->add_option("--trials", sc.trials, "Trials per size");
  scale_cmd->add_option("--algorithm", sc.algorithm, "Pipeline");
  scale_cmd->add_option("--target-degree", sc.target_degree, "girth7: degree target");
  scale_cmd->add_option("--base-tree", sc.base_tree, "girth7: uniform|preferential");
  scale_cmd->add_option("--jobs", sc.jobs, "Worker threads");
  scale_cmd->add_option("--seed", sc.seed, "Master seed")->required();
  scale_cmd->add_option("--out", sc.out, "CSV file (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*gen_cmd) return cmd_gen(gen);
    if (*run_cmd) return cmd_run(run);
    if (*verify_cmd) return cmd_verify(ver);
    if (*mc_cmd) return cmd_mc(mc);
    if (*scale_cmd) return cmd_scale(sc);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const GenerationError& e) {
    std::cerr << "generation failed: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

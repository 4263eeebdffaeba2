// Command-line front end: validate/conditions/solve/pagerank on tensor files,
// a seeded random-instance generator, and the benchmark harness.

#include <homc/homc.hpp>

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace homc;

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  const auto range_pos = text.find("..");
  if (range_pos != std::string::npos) {
    const std::uint64_t lo = std::stoull(text.substr(0, range_pos));
    const std::uint64_t hi = std::stoull(text.substr(range_pos + 2));
    if (hi < lo) throw CLI::ValidationError("--seeds", "range end before start");
    for (std::uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
    return seeds;
  }
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) seeds.push_back(std::stoull(tok));
  }
  return seeds;
}

std::vector<double> parse_doubles(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) out.push_back(std::stod(tok));
  }
  return out;
}

std::vector<Method> parse_methods(const std::string& text) {
  std::vector<Method> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) out.push_back(method_from_string(tok));
  }
  return out;
}

void write_or_print(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream os(out_path);
  if (!os) throw std::runtime_error("cannot write " + out_path);
  os << content;
}

struct SolveFlags {
  std::string method;
  double tol = 1e-10;
  int max_iter = 1000;
  std::optional<double> beta;
  std::optional<double> eta;
  double gamma = 1.2;
  double tau = 1e-6;
  std::optional<int> period;
  bool repair = false;
  std::string trace_path;

  void attach(CLI::App& cmd, bool require_method) {
    auto* opt = cmd.add_option("--method", method,
                               "hopm|geap|rhopm|hopmm1|hopmm2|qehopm");
    if (require_method) {
      opt->required();
    }
    cmd.add_option("--tol", tol, "stopping tolerance on ||x_k - x_{k-1}||_1");
    cmd.add_option("--max-iter", max_iter, "iteration cap");
    cmd.add_option("--beta", beta, "momentum weight for hopmm1");
    cmd.add_option("--eta", eta, "heavy-ball weight for hopmm2");
    cmd.add_option("--gamma", gamma, "relaxation weight for rhopm");
    cmd.add_option("--tau", tau, "positive-definiteness tolerance for geap");
    cmd.add_option("--period", period, "acceleration cadence (method default when omitted)");
    cmd.add_flag("--repair", repair, "rescale columns to unit sum on load");
    cmd.add_option("--trace", trace_path, "write iteration,step_norm,residual CSV");
  }

  SolverConfig config() const {
    SolverConfig cfg;
    cfg.method = method_from_string(method);
    cfg.tol = tol;
    cfg.max_iter = max_iter;
    cfg.gamma = gamma;
    cfg.tau = tau;
    cfg.period = period;
    if (cfg.method == Method::Hopmm1) {
      if (!beta) throw CLI::ValidationError("--beta", "hopmm1 needs an explicit momentum weight");
      cfg.beta = *beta;
    }
    if (cfg.method == Method::Hopmm2) {
      if (!eta) throw CLI::ValidationError("--eta", "hopmm2 needs an explicit momentum weight");
      cfg.eta = *eta;
    }
    return cfg;
  }
};

int run(int argc, char** argv) {
  CLI::App app{"Stationary distributions of higher-order Markov chains: "
               "accelerated power methods and multilinear PageRank"};
  app.require_subcommand(1);

  // validate
  auto* validate_cmd = app.add_subcommand("validate", "check tensor stochasticity");
  std::string validate_file;
  bool validate_repair = false;
  validate_cmd->add_option("file", validate_file, "tensor file")->required();
  validate_cmd->add_flag("--repair", validate_repair, "rescale columns before checking");

  // conditions
  auto* cond_cmd = app.add_subcommand("conditions", "uniqueness/contraction report");
  std::string cond_file;
  bool cond_repair = false;
  cond_cmd->add_option("file", cond_file, "tensor file")->required();
  cond_cmd->add_flag("--repair", cond_repair, "rescale columns on load");

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "stationary distribution of a tensor");
  SolveFlags solve_flags;
  std::string solve_file;
  solve_flags.attach(*solve_cmd, /*require_method=*/true);
  solve_cmd->add_option("file", solve_file, "tensor file")->required();

  // pagerank
  auto* pr_cmd = app.add_subcommand("pagerank", "multilinear PageRank fixed point");
  SolveFlags pr_flags;
  pr_flags.method = "qehopm";
  double theta = 0.85;
  std::string teleport = "uniform";
  std::string pr_file;
  pr_cmd->add_option("--theta", theta, "damping parameter in (0,1)")->required();
  pr_cmd->add_option("--teleport", teleport, "'uniform' or a vector file");
  pr_flags.attach(*pr_cmd, /*require_method=*/false);
  pr_cmd->add_option("file", pr_file, "base tensor file")->required();

  // gen
  auto* gen_cmd = app.add_subcommand("gen", "seeded random transition tensor");
  int gen_order = 3, gen_dim = 4;
  double gen_density = 0.5;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  gen_cmd->add_option("--order", gen_order, "tensor order m");
  gen_cmd->add_option("--dim", gen_dim, "state count n");
  gen_cmd->add_option("--density", gen_density, "per-column fill in (0,1]");
  gen_cmd->add_option("--seed", gen_seed, "generator seed");
  gen_cmd->add_option("--out", gen_out, "output file (.json for JSON)")->required();

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "benchmark harness");
  bench_cmd->require_subcommand(1);
  auto* table1_cmd = bench_cmd->add_subcommand("table1", "built-in tensors, six methods");
  std::string t1_out, t1_format = "md";
  bool t1_strict = false, t1_no_wall = false;
  table1_cmd->add_option("--out", t1_out, "write report here instead of stdout");
  table1_cmd->add_option("--format", t1_format, "json|csv|md");
  table1_cmd->add_flag("--strict", t1_strict, "exit 2 when a row misses its reference");
  table1_cmd->add_flag("--no-wall-time", t1_no_wall, "suppress timings for stable output");

  auto* sweep_cmd = bench_cmd->add_subcommand("pagerank", "damping sweep on seeded instances");
  std::string sw_seeds = "0..28", sw_thetas = "0.7,0.85,0.9,0.95,0.99";
  std::string sw_methods = "hopm,rhopm,qehopm";
  std::string sw_out, sw_format = "csv";
  bool sw_no_wall = false;
  SweepSpec spec;
  sweep_cmd->add_option("--seeds", sw_seeds, "range lo..hi or comma list");
  sweep_cmd->add_option("--thetas", sw_thetas, "comma list of damping values");
  sweep_cmd->add_option("--methods", sw_methods, "comma list of solver names");
  sweep_cmd->add_option("--order", spec.order, "tensor order");
  sweep_cmd->add_option("--dim", spec.dim, "state count; 0 = mixed 3/4/6 benchmark shape");
  sweep_cmd->add_option("--density", spec.density, "per-column fill");
  sweep_cmd->add_option("--tol", spec.tol, "stopping tolerance");
  sweep_cmd->add_option("--max-iter", spec.max_iter, "iteration cap");
  sweep_cmd->add_option("--out", sw_out, "write report here instead of stdout");
  sweep_cmd->add_option("--format", sw_format, "json|csv|md");
  sweep_cmd->add_flag("--no-wall-time", sw_no_wall, "suppress timings for stable output");

  CLI11_PARSE(app, argc, argv);

  if (*validate_cmd) {
    StochasticTensor t = read_tensor(validate_file);
    if (validate_repair) t = t.repaired();
    ValidationResult vr = t.validate();
    json out{{"ok", vr.ok()}, {"violations", json::array()}};
    for (const Violation& v : vr.violations) {
      json idx = json::array();
      for (std::uint32_t i : v.index) idx.push_back(i + 1);
      out["violations"].push_back(
          {{"kind", v.kind == Violation::Kind::NegativeEntry ? "negative_entry" : "column_sum"},
           {"index", std::move(idx)},
           {"value", v.value}});
    }
    std::cout << out.dump(2) << "\n";
    return vr.ok() ? 0 : 1;
  }

  if (*cond_cmd) {
    StochasticTensor t = load_tensor(cond_file, cond_repair);
    std::cout << to_json(condition_report(t)).dump(2) << "\n";
    return 0;
  }

  if (*solve_cmd) {
    StochasticTensor t = load_tensor(solve_file, solve_flags.repair);
    SolveReport rep = solve(t, solve_flags.config());
    std::cout << to_json(rep).dump(2) << "\n";
    if (!solve_flags.trace_path.empty()) write_trace_csv(rep, solve_flags.trace_path);
    return 0;
  }

  if (*pr_cmd) {
    StochasticTensor base = load_tensor(pr_file, pr_flags.repair);
    ProbVector v = teleport == "uniform" ? ProbVector::uniform(base.dim())
                                         : read_prob_vector(teleport);
    PageRankProblem problem(std::move(base), std::move(v), theta);
    SolveReport rep = solve(problem, pr_flags.config());
    std::cout << to_json(rep).dump(2) << "\n";
    if (!pr_flags.trace_path.empty()) write_trace_csv(rep, pr_flags.trace_path);
    return 0;
  }

  if (*gen_cmd) {
    StochasticTensor t = gen_random_tensor(gen_order, gen_dim, gen_density, gen_seed);
    write_tensor(t, gen_out);
    std::cout << "wrote " << gen_out << " (order " << gen_order << ", dim " << gen_dim
              << ", " << t.nnz() << " nonzeros)\n";
    return 0;
  }

  if (*table1_cmd) {
    BenchReport report = run_table1();
    std::ostringstream os;
    emit(report, emit_format_from_string(t1_format), os, !t1_no_wall);
    write_or_print(t1_out, os.str());
    if (t1_strict && !report.all_expected_met()) return 2;
    return 0;
  }

  if (*sweep_cmd) {
    spec.seeds = parse_seeds(sw_seeds);
    spec.thetas = parse_doubles(sw_thetas);
    spec.methods = parse_methods(sw_methods);
    BenchReport report = run_pagerank_sweep(spec);
    std::ostringstream os;
    emit(report, emit_format_from_string(sw_format), os, !sw_no_wall);
    write_or_print(sw_out, os.str());
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
}

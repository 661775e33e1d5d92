// Command line front end: solve, bench, convert, lp-dump, milp-export, generate.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "mstc/bench.hpp"
#include "mstc/bnb.hpp"
#include "mstc/io.hpp"
#include "mstc/kernel_search.hpp"
#include "mstc/lp_relax.hpp"

namespace fs = std::filesystem;

namespace {

enum Exit { kOk = 0, kNoSolution = 2, kInfeasible = 3, kInputError = 4 };

struct Tuning {
  std::string family = "zkp";
  std::optional<double> alpha, beta, delta, inner_tl, global_tl;
  std::optional<int> outer;
  std::optional<int> h_max, t_max;

  void attach(CLI::App* app) {
    app->add_option("--family", family, "parameter preset")->check(CLI::IsMember({"zkp", "ccpr"}));
    app->add_option("--alpha", alpha, "kernel size factor");
    app->add_option("--beta", beta, "bucket size factor");
    app->add_option("--delta", delta, "idle bucket fraction");
    app->add_option("--P", outer, "outer iterations");
    app->add_option("--inner-tl", inner_tl, "subproblem time limit (s)");
    app->add_option("--global-tl", global_tl, "global time limit (s)");
    app->add_option("--hmax", h_max, "starting heuristic outer iterations");
    app->add_option("--tmax", t_max, "starting heuristic repair iterations");
  }

  mstc::KsParams build() const {
    mstc::KsParams p = mstc::default_params(mstc::parse_family(family));
    mstc::apply_env_overrides(p);
    if (alpha) p.alpha = *alpha;
    if (beta) p.beta = *beta;
    if (delta) p.delta = *delta;
    if (outer) p.outer_iterations = *outer;
    if (inner_tl) p.inner_time_limit = *inner_tl;
    if (global_tl) p.global_time_limit = *global_tl;
    if (h_max) p.greedy.h_max = *h_max;
    if (t_max) p.greedy.t_max = *t_max;
    p.validate();
    return p;
  }
};

std::ostream& open_out(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path);
  if (!file) throw mstc::InputError("cannot write " + path);
  return file;
}

std::string fmt(mstc::Weight w) {
  std::ostringstream ss;
  ss.precision(17);
  ss << w;
  return ss.str();
}

int solve(const std::string& path, const std::string& format, const Tuning& tuning, std::uint64_t seed,
          const std::string& trace_path) {
  const mstc::Instance inst = mstc::parse_instance(path, mstc::parse_format(format));
  mstc::KsParams params = tuning.build();
  params.greedy.rng_seed = seed;

  std::ofstream trace_file;
  mstc::TraceSink sink;
  if (!trace_path.empty()) {
    std::ostream* trace = &std::cerr;
    if (trace_path != "-") {
      trace_file.open(trace_path);
      if (!trace_file) throw mstc::InputError("cannot write " + trace_path);
      trace = &trace_file;
    }
    sink = [trace](const mstc::TraceRecord& r) { *trace << r.to_json() << '\n' << std::flush; };
  }

  const mstc::KsRunResult res = mstc::run_kernel_search(inst, params, sink);
  std::cout << "status " << mstc::to_string(res.status) << '\n';
  if (res.best) {
    std::cout << "weight " << fmt(res.best->weight) << '\n';
    std::cout << "edges";
    for (mstc::EdgeId e : res.best->edges) std::cout << ' ' << e;
    std::cout << '\n';
  }
  std::cout << "ub_time " << res.time_to_best << '\n';
  std::cout << "total_time " << res.total_time << '\n';
  std::cout << "subproblems " << res.subproblems << '\n';
  switch (res.status) {
    case mstc::RunStatus::kFeasible: return kOk;
    case mstc::RunStatus::kInfeasible: return kInfeasible;
    case mstc::RunStatus::kNoSolution: return kNoSolution;
  }
  return kNoSolution;
}

int bench(const std::string& dir, const std::string& format, const Tuning& tuning, int seeds, const std::string& ref,
          const std::string& csv_path, const std::string& table_path, int jobs) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw mstc::InputError("no instance files in " + dir);

  std::vector<mstc::NamedInstance> instances;
  for (const fs::path& f : files) {
    try {
      instances.push_back({f.stem().string(), mstc::parse_instance(f.string(), mstc::parse_format(format))});
    } catch (const mstc::InputError& e) {
      throw mstc::InputError(f.string() + ": " + e.what());
    }
  }
  mstc::ReferenceTable reference;
  if (!ref.empty()) {
    std::ifstream in(ref);
    if (!in) throw mstc::InputError("cannot open " + ref);
    reference = mstc::read_reference(in);
  }
  mstc::BenchOptions options;
  options.params = tuning.build();
  options.seeds.clear();
  for (int s = 1; s <= seeds; ++s) options.seeds.push_back(static_cast<std::uint64_t>(s));
  options.workers = jobs;

  const std::vector<mstc::RunRecord> records = mstc::run_benchmark(instances, options, reference);
  std::ofstream csv_file;
  mstc::write_csv(open_out(csv_path, csv_file), records);
  if (!table_path.empty()) {
    std::ofstream table_file;
    mstc::write_table(open_out(table_path, table_file), records);
  }
  const bool any = std::any_of(records.begin(), records.end(), [](const mstc::RunRecord& r) { return r.ub.has_value(); });
  return any ? kOk : kNoSolution;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimum spanning tree with conflicts: kernel search solver"};
  app.require_subcommand(1);

  std::string format = "native";
  std::string input, output, trace, ref, table;
  std::uint64_t seed = 1;
  int seeds = 5, jobs = 1;
  bool no_subtours = false;
  Tuning tuning;

  auto* solve_cmd = app.add_subcommand("solve", "solve one instance");
  solve_cmd->add_option("file", input)->required();
  solve_cmd->add_option("--format", format)->check(CLI::IsMember({"native", "zkp", "ccpr"}));
  solve_cmd->add_option("--seed", seed, "heuristic RNG seed");
  solve_cmd->add_option("--trace", trace, "JSON lines trace file, '-' for stderr");
  tuning.attach(solve_cmd);

  auto* bench_cmd = app.add_subcommand("bench", "run every instance in a directory over several seeds");
  bench_cmd->add_option("dir", input)->required()->check(CLI::ExistingDirectory);
  bench_cmd->add_option("--format", format)->check(CLI::IsMember({"native", "zkp", "ccpr"}));
  bench_cmd->add_option("--seeds", seeds, "seeds 1..k")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--ref", ref, "reference CSV with id,ub columns");
  bench_cmd->add_option("--out", output, "CSV output, default stdout");
  bench_cmd->add_option("--table", table, "aligned summary table output");
  bench_cmd->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  tuning.attach(bench_cmd);

  auto* convert_cmd = app.add_subcommand("convert", "rewrite an instance in the native format");
  convert_cmd->add_option("in", input)->required();
  convert_cmd->add_option("out", output)->required();
  convert_cmd->add_option("--format", format)->check(CLI::IsMember({"native", "zkp", "ccpr"}));

  auto* lp_cmd = app.add_subcommand("lp-dump", "solve the LP relaxation and write it with all generated cuts");
  lp_cmd->add_option("file", input)->required();
  lp_cmd->add_option("--format", format)->check(CLI::IsMember({"native", "zkp", "ccpr"}));
  lp_cmd->add_option("--out", output, "LP file, default stdout");
  lp_cmd->add_flag("--no-subtours", no_subtours, "skip subtour and conflict-cycle separation");

  auto* milp_cmd = app.add_subcommand("milp-export", "write the full binary program");
  milp_cmd->add_option("file", input)->required();
  milp_cmd->add_option("--format", format)->check(CLI::IsMember({"native", "zkp", "ccpr"}));
  milp_cmd->add_option("--out", output, "LP file, default stdout");

  mstc::GeneratorOptions gen;
  auto* gen_cmd = app.add_subcommand("generate", "write a random connected instance");
  gen_cmd->add_option("--nodes", gen.nodes)->required();
  gen_cmd->add_option("--edges", gen.edges)->required();
  gen_cmd->add_option("--conflict-rate", gen.conflict_rate)->check(CLI::Range(0.0, 1.0));
  gen_cmd->add_option("--min-weight", gen.min_weight);
  gen_cmd->add_option("--max-weight", gen.max_weight);
  gen_cmd->add_option("--seed", gen.seed);
  gen_cmd->add_flag("--plant-tree", gen.plant_feasible_tree, "keep one spanning tree conflict free");
  gen_cmd->add_option("--out", output, "output file, default stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kInputError;
  }

  try {
    if (*solve_cmd) return solve(input, format, tuning, seed, trace);
    if (*bench_cmd) return bench(input, format, tuning, seeds, ref, output, table, jobs);
    if (*convert_cmd) {
      const mstc::Instance inst = mstc::parse_instance(input, mstc::parse_format(format));
      std::ofstream file;
      mstc::write_native(open_out(output, file), inst);
      return kOk;
    }
    if (*lp_cmd) {
      const mstc::Instance inst = mstc::parse_instance(input, mstc::parse_format(format));
      mstc::LpOptions opts;
      opts.include_subtours = !no_subtours;
      const mstc::LpSolution lp = mstc::solve_lp(inst, opts);
      std::ofstream file;
      mstc::write_lp_model(open_out(output, file), inst, lp.cuts);
      std::cerr << "objective " << fmt(lp.objective) << " rounds " << lp.rounds << " cuts " << lp.cuts.size() << '\n';
      return lp.status == mstc::LpStatus::kInfeasible ? kInfeasible : kOk;
    }
    if (*milp_cmd) {
      const mstc::Instance inst = mstc::parse_instance(input, mstc::parse_format(format));
      mstc::SubproblemSpec spec;
      spec.allowed = inst.all_edges();
      std::ofstream file;
      mstc::write_milp_model(open_out(output, file), inst, spec);
      return kOk;
    }
    if (*gen_cmd) {
      const mstc::Instance inst = mstc::generate_instance(gen);
      std::ofstream file;
      mstc::write_native(open_out(output, file), inst);
      return kOk;
    }
  } catch (const mstc::InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const mstc::InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return kInputError;
}

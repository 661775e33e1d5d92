#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mstc/bnb.hpp"
#include "mstc/greedy.hpp"
#include "mstc/instance.hpp"
#include "mstc/lp_relax.hpp"

namespace mstc {

struct KsParams {
  double alpha = 1.1;   // K = round(alpha * (n - 1))
  double beta = 0.2;    // d = round(beta * (m - K))
  double delta = 0.6;   // Delta = floor(delta * b)
  int outer_iterations = 4;  // P
  double inner_time_limit = 420.0;
  double global_time_limit = 3600.0;
  GreedyParams greedy;
  bool stop_rule = true;  // disable to sweep every bucket regardless of Delta

  void validate() const;
  int kernel_size(int n) const;             // K, round half to even
  int bucket_size(int m, int kernel) const; // d, at least 1
  int max_idle_buckets(int b) const;        // Delta
};

struct KernelState {
  EdgeSet kernel;
  std::vector<EdgeSet> buckets;
  std::optional<Solution> incumbent;
  Weight upper_bound = kInfinity;
  int p = 0;
  int k = 0;
  int k_bar = 0;
};

/// One record per restricted subproblem, emitted as a JSON line by the CLI.
struct TraceRecord {
  int p = 0;  // 0 for the initial MSTC(kernel) solve
  int k = 0;
  int bucket_size = 0;
  int kernel_size = 0;
  SubproblemStatus status = SubproblemStatus::kInfeasible;
  Weight upper_bound = kInfinity;
  double elapsed = 0;

  std::string to_json() const;
};

using TraceSink = std::function<void(const TraceRecord&)>;

/// Shared run context: clock origin, global deadline, optional trace sink and
/// a log of every incumbent accepted (for independent re-checking).
class SearchContext {
 public:
  explicit SearchContext(double global_time_limit, TraceSink sink = {});

  double elapsed() const;
  double remaining() const;
  bool expired() const { return remaining() <= 0; }
  void emit(TraceRecord record) const;

  double time_to_best = 0;
  int subproblems = 0;
  std::vector<Solution> incumbent_log;
  std::int64_t rejected_incumbents = 0;

 private:
  std::chrono::steady_clock::time_point start_;
  double limit_;
  TraceSink sink_;
};

struct InitResult {
  KernelState state;
  LpSolution relaxation;     // the relaxation used to rank edges
  bool used_subtour_lp = false;
  StartingResult start;
  EdgeSet independent;       // I over the conflict subgraph of S
  int kernel_target = 0;     // K after clamping to the LP support size
  int bucket_target = 0;     // d
  bool lp_infeasible = false;
};

/// Orders the non-kernel edges: fewest conflicts with the kernel, then larger
/// relaxation value, then larger reduced cost, then larger edge id.
std::vector<EdgeId> order_excluded(const Instance& inst, std::span<const EdgeId> excluded,
                                   std::span<const EdgeId> kernel, const LpSolution& lp);

/// Pairs buckets by greedy independent-set affinity: every pair (l, t) is
/// scored by the independent set size over kernel + B_l + B_t, pairs are taken
/// best-first (ties by (l, t)) while both buckets are still unmerged, and an
/// odd bucket out is appended last.
std::vector<EdgeSet> enlarge_buckets(const Instance& inst, const ConflictGraph& cg,
                                     const std::vector<EdgeSet>& buckets, std::span<const EdgeId> kernel);

/// Builds the initial kernel and buckets and solves MSTC(kernel).
InitResult initialize(const Instance& inst, const ConflictGraph& cg, const KsParams& params, SearchContext& ctx);

/// Bucket sweeps with kernel growth, enlarged buckets after the first pass,
/// and the idle-bucket stopping rule.
KernelState improve(const Instance& inst, const ConflictGraph& cg, KernelState state, const KsParams& params,
                    SearchContext& ctx);

enum class RunStatus { kFeasible, kNoSolution, kInfeasible };

const char* to_string(RunStatus status);

struct KsRunResult {
  RunStatus status = RunStatus::kNoSolution;
  std::optional<Solution> best;  // original edge ids
  std::optional<Solution> start_tree;  // the heuristic's tree, original edge ids
  double time_to_best = 0;
  double total_time = 0;
  int subproblems = 0;
  std::int64_t incumbent_violations = 0;  // incumbents failing the independent checker
};

/// Full pipeline on an original instance: preprocess, initialize, improve.
KsRunResult run_kernel_search(const Instance& inst, const KsParams& params, TraceSink sink = {});

}  // namespace mstc

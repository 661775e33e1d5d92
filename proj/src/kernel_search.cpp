#include "mstc/kernel_search.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>

#include "json.hpp"

#include "mstc/preprocess.hpp"

namespace mstc {

void KsParams::validate() const {
  if (!(alpha >= 1.0)) throw InputError("alpha must be >= 1");
  if (!(beta > 0.0 && beta < 1.0)) throw InputError("beta must lie in (0, 1)");
  if (!(delta > 0.0 && delta <= 1.0)) throw InputError("delta must lie in (0, 1]");
  if (outer_iterations < 1) throw InputError("P must be >= 1");
  if (!(inner_time_limit > 0)) throw InputError("inner time limit must be positive");
  if (!(global_time_limit > 0)) throw InputError("global time limit must be positive");
  greedy.validate();
}

// std::nearbyint uses the current rounding mode, which is round-half-even by default.
int KsParams::kernel_size(int n) const {
  return static_cast<int>(std::nearbyint(alpha * static_cast<double>(std::max(n - 1, 0))));
}

int KsParams::bucket_size(int m, int kernel) const {
  const double d = std::nearbyint(beta * static_cast<double>(m - kernel));
  return std::max(1, static_cast<int>(d));
}

int KsParams::max_idle_buckets(int b) const {
  return static_cast<int>(std::floor(delta * static_cast<double>(b)));
}

std::string TraceRecord::to_json() const {
  nlohmann::json j;
  j["p"] = p;
  j["k"] = k;
  j["bucket_size"] = bucket_size;
  j["kernel_size"] = kernel_size;
  j["status"] = to_string(status);
  if (std::isinf(upper_bound)) {
    j["ub"] = nullptr;
  } else {
    j["ub"] = upper_bound;
  }
  j["elapsed"] = elapsed;
  return j.dump();
}

SearchContext::SearchContext(double global_time_limit, TraceSink sink)
    : start_(std::chrono::steady_clock::now()), limit_(global_time_limit), sink_(std::move(sink)) {}

double SearchContext::elapsed() const {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
}

double SearchContext::remaining() const { return limit_ - elapsed(); }

void SearchContext::emit(TraceRecord record) const {
  if (sink_) sink_(record);
}

namespace {

// Quantized so that the comparator below is a strict weak ordering even when
// two LP values differ only by round-off.
long long quantize(double v) { return std::llround(v * 1e9); }

double subproblem_budget(const KsParams& params, const SearchContext& ctx) {
  return std::min(params.inner_time_limit, ctx.remaining());
}

// Accepts `candidate` as the new incumbent after re-checking it from scratch.
bool accept(const Instance& inst, KernelState& state, const Solution& candidate, SearchContext& ctx) {
  const Solution checked = check_solution(inst, candidate.edges);
  if (!checked.feasible()) {
    ++ctx.rejected_incumbents;
    return false;
  }
  if (checked.weight < state.upper_bound) ctx.time_to_best = ctx.elapsed();
  state.incumbent = checked;
  state.upper_bound = checked.weight;
  ctx.incumbent_log.push_back(checked);
  return true;
}

}  // namespace

std::vector<EdgeId> order_excluded(const Instance& inst, std::span<const EdgeId> excluded,
                                   std::span<const EdgeId> kernel, const LpSolution& lp) {
  std::vector<char> in_kernel(static_cast<std::size_t>(inst.num_edges()) + 1, 0);
  for (EdgeId e : kernel) in_kernel[static_cast<std::size_t>(e)] = 1;

  using Key = std::tuple<std::int64_t, long long, long long, EdgeId>;
  std::vector<Key> keys;
  keys.reserve(excluded.size());
  for (EdgeId e : excluded) {
    std::int64_t c = 0;
    for (EdgeId f : inst.conflicts_of(e)) c += in_kernel[static_cast<std::size_t>(f)];
    const bool has_lp = lp.x.size() == static_cast<std::size_t>(inst.num_edges());
    const long long xv = has_lp ? quantize(lp.value(e)) : 0;
    const long long rc = has_lp && !lp.reduced_costs.empty() ? quantize(lp.reduced_cost(e)) : 0;
    // Negated so that plain ascending order gives the required priorities.
    keys.emplace_back(c, -xv, -rc, -e);
  }
  std::sort(keys.begin(), keys.end());
  std::vector<EdgeId> out;
  out.reserve(keys.size());
  for (const Key& k : keys) out.push_back(-std::get<3>(k));
  return out;
}

std::vector<EdgeSet> enlarge_buckets(const Instance& inst, const ConflictGraph& cg,
                                     const std::vector<EdgeSet>& buckets, std::span<const EdgeId> kernel) {
  const int b = static_cast<int>(buckets.size());
  if (b < 2) return buckets;

  struct Pair {
    std::size_t score;
    int l, t;
  };
  std::vector<Pair> pairs;
  for (int l = 0; l < b; ++l) {
    for (int t = l + 1; t < b; ++t) {
      const EdgeSet a = set_union(buckets[static_cast<std::size_t>(l)], buckets[static_cast<std::size_t>(t)]);
      const EdgeSet nodes = set_union(kernel, a);
      const ConflictGraph h = induced_conflict_subgraph(cg, nodes);
      pairs.push_back({independent_set(inst, h).size(), l, t});
    }
  }
  std::stable_sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) { return x.score > y.score; });

  std::vector<char> used(static_cast<std::size_t>(b), 0);
  std::vector<EdgeSet> out;
  for (const Pair& p : pairs) {
    if (used[static_cast<std::size_t>(p.l)] || used[static_cast<std::size_t>(p.t)]) continue;
    used[static_cast<std::size_t>(p.l)] = used[static_cast<std::size_t>(p.t)] = 1;
    out.push_back(set_union(buckets[static_cast<std::size_t>(p.l)], buckets[static_cast<std::size_t>(p.t)]));
  }
  for (int l = 0; l < b; ++l) {
    if (!used[static_cast<std::size_t>(l)]) out.push_back(buckets[static_cast<std::size_t>(l)]);
  }
  return out;
}

InitResult initialize(const Instance& inst, const ConflictGraph& cg, const KsParams& params, SearchContext& ctx) {
  params.validate();
  InitResult r;
  const int n = inst.num_nodes();
  const int m = inst.num_edges();
  const int k_full = params.kernel_size(n);
  const int d = params.bucket_size(m, k_full);
  r.bucket_target = d;

  LpOptions with;
  with.include_subtours = true;
  with.time_limit = std::max(1e-3, subproblem_budget(params, ctx));
  LpSolution lp_with = solve_lp(inst, with);
  if (lp_with.status == LpStatus::kInfeasible) {
    r.lp_infeasible = true;
    throw InfeasibleError("LP relaxation is infeasible");
  }
  LpOptions without = with;
  without.include_subtours = false;
  without.time_limit = std::max(1e-3, subproblem_budget(params, ctx));
  LpSolution lp_without = solve_lp(inst, without);

  const bool usable_without = lp_without.status != LpStatus::kInfeasible && !lp_without.x.empty();
  const bool usable_with = !lp_with.x.empty();
  if (usable_with && usable_without) {
    r.used_subtour_lp = count_conflicts(inst, lp_with.support()) <= count_conflicts(inst, lp_without.support());
  } else {
    r.used_subtour_lp = usable_with;
  }
  r.relaxation = r.used_subtour_lp ? std::move(lp_with) : std::move(lp_without);

  std::vector<EdgeId> support;
  if (r.relaxation.x.size() == static_cast<std::size_t>(m)) support = r.relaxation.support();
  std::stable_sort(support.begin(), support.end(),
                   [&](EdgeId a, EdgeId b) { return r.relaxation.value(a) > r.relaxation.value(b); });
  const int k = std::min<int>(k_full, static_cast<int>(support.size()));
  r.kernel_target = k;
  const EdgeSet initial = make_edge_set({support.begin(), support.begin() + k});

  r.start = starting_solution(inst, cg, initial, params.greedy);
  r.independent = independent_set(inst, induced_conflict_subgraph(cg, r.start.accumulated));

  KernelState& st = r.state;
  st.kernel = set_union(r.independent, r.start.tree);
  std::vector<EdgeId> rest = order_excluded(inst, set_difference(inst.all_edges(), st.kernel), st.kernel, r.relaxation);
  std::size_t first = 0;
  if (static_cast<int>(st.kernel.size()) < k) {
    first = std::min(rest.size(), static_cast<std::size_t>(k) - st.kernel.size());
    st.kernel = set_union(st.kernel, make_edge_set({rest.begin(), rest.begin() + static_cast<std::ptrdiff_t>(first)}));
  }
  for (std::size_t i = first; i < rest.size(); i += static_cast<std::size_t>(d)) {
    const std::size_t end = std::min(rest.size(), i + static_cast<std::size_t>(d));
    st.buckets.push_back(make_edge_set({rest.begin() + static_cast<std::ptrdiff_t>(i),
                                        rest.begin() + static_cast<std::ptrdiff_t>(end)}));
  }

  SubproblemSpec spec;
  spec.allowed = st.kernel;
  spec.time_budget = std::max(1e-3, subproblem_budget(params, ctx));
  const SubproblemResult res = solve_restricted(inst, spec);
  ++ctx.subproblems;
  if (res.solution) accept(inst, st, *res.solution, ctx);
  // The heuristic tree lies inside the kernel, so it stands in when the
  // restricted solve runs out of time first.
  if (!r.start.tree.empty() && r.start.tree_weight < st.upper_bound) {
    accept(inst, st, check_solution(inst, r.start.tree), ctx);
  }
  ctx.emit({0, 0, 0, static_cast<int>(st.kernel.size()), res.status, st.upper_bound, ctx.elapsed()});
  return r;
}

KernelState improve(const Instance& inst, const ConflictGraph& cg, KernelState state, const KsParams& params,
                    SearchContext& ctx) {
  params.validate();
  auto drop_empty = [](std::vector<EdgeSet>& buckets) {
    std::erase_if(buckets, [](const EdgeSet& s) { return s.empty(); });
  };
  drop_empty(state.buckets);
  if (state.buckets.empty()) return state;

  state.k_bar = 0;
  for (int p = 1; p <= params.outer_iterations; ++p) {
    if (ctx.expired()) break;
    state.p = p;
    if (p > 1) {
      state.buckets = enlarge_buckets(inst, cg, state.buckets, state.kernel);
      drop_empty(state.buckets);
    }
    const int b = static_cast<int>(state.buckets.size());
    if (b == 0) break;
    const int max_idle = params.max_idle_buckets(b);
    for (int k = 1; k <= b; ++k) {
      if (ctx.expired()) return state;
      state.k = k;
      EdgeSet& bucket = state.buckets[static_cast<std::size_t>(k - 1)];
      if (bucket.empty()) {
        ++state.k_bar;
      } else {
        SubproblemSpec spec;
        spec.allowed = set_union(state.kernel, bucket);
        spec.must_use = bucket;
        spec.cutoff = state.upper_bound;
        spec.time_budget = std::max(1e-3, subproblem_budget(params, ctx));
        const SubproblemResult res = solve_restricted(inst, spec);
        ++ctx.subproblems;
        const std::size_t bucket_size = bucket.size();
        if (res.solution && accept(inst, state, *res.solution, ctx)) {
          const EdgeSet used = set_intersection(bucket, state.incumbent->edges);
          state.kernel = set_union(state.kernel, used);
          bucket = set_difference(bucket, used);
          state.k_bar = 0;
        } else {
          ++state.k_bar;
        }
        ctx.emit({p, k, static_cast<int>(bucket_size), static_cast<int>(state.kernel.size()), res.status,
                  state.upper_bound, ctx.elapsed()});
      }
      if (params.stop_rule && state.k_bar >= max_idle && !std::isinf(state.upper_bound)) return state;
    }
    drop_empty(state.buckets);
  }
  return state;
}

const char* to_string(RunStatus status) {
  switch (status) {
    case RunStatus::kFeasible: return "feasible";
    case RunStatus::kNoSolution: return "no-solution";
    case RunStatus::kInfeasible: return "infeasible";
  }
  return "?";
}

KsRunResult run_kernel_search(const Instance& inst, const KsParams& params, TraceSink sink) {
  params.validate();
  SearchContext ctx(params.global_time_limit, std::move(sink));
  KsRunResult out;
  try {
    const PreprocessResult pre = preprocess(inst);
    const ConflictGraph cg = build_conflict_graph(pre.instance);
    InitResult init = initialize(pre.instance, cg, params, ctx);
    if (!init.start.tree.empty()) {
      out.start_tree = check_solution(inst, pre.report.to_original(init.start.tree));
    }
    const KernelState final_state = improve(pre.instance, cg, std::move(init.state), params, ctx);
    if (final_state.incumbent) {
      const Solution mapped = check_solution(inst, pre.report.to_original(final_state.incumbent->edges));
      if (mapped.feasible()) {
        out.best = mapped;
        out.status = RunStatus::kFeasible;
      } else {
        ++ctx.rejected_incumbents;
      }
    }
  } catch (const InfeasibleError&) {
    out.status = RunStatus::kInfeasible;
  }
  out.time_to_best = ctx.time_to_best;
  out.total_time = ctx.elapsed();
  out.subproblems = ctx.subproblems;
  out.incumbent_violations = ctx.rejected_incumbents;
  return out;
}

}  // namespace mstc

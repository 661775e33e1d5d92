#include "doctest.h"
#include "mstc/graph.hpp"
#include "mstc/io.hpp"
#include "mstc/kernel_search.hpp"
#include "mstc/preprocess.hpp"
#include "oracle.hpp"

using namespace mstc;

namespace {

KsParams quick_params() {
  KsParams p;
  p.inner_time_limit = 5;
  p.global_time_limit = 30;
  p.greedy.h_max = 5;
  p.greedy.t_max = 50;
  return p;
}

LpSolution flat_lp(const Instance& inst, std::vector<double> x, std::vector<double> rc = {}) {
  LpSolution lp;
  lp.status = LpStatus::kOptimal;
  lp.x = std::move(x);
  lp.reduced_costs = rc.empty() ? std::vector<double>(static_cast<std::size_t>(inst.num_edges()), 0.0) : std::move(rc);
  return lp;
}

void check_state(const Instance& inst, const KernelState& st) {
  EdgeSet seen = st.kernel;
  std::size_t total = st.kernel.size();
  for (const EdgeSet& b : st.buckets) {
    CHECK(set_intersection(st.kernel, b).empty());
    total += b.size();
    seen = set_union(seen, b);
  }
  CHECK(seen.size() == total);
  CHECK(seen == inst.all_edges());
  if (st.incumbent) CHECK(st.upper_bound == st.incumbent->weight);
}

}  // namespace

TEST_SUITE("kernel-search") {

TEST_CASE("parameter formulas") {
  KsParams p;
  CHECK(p.kernel_size(50) == 54);      // 1.1 * 49 = 53.9
  p.alpha = 1.5;
  CHECK(p.kernel_size(6) == 8);        // 7.5 rounds to even
  CHECK(p.kernel_size(8) == 10);       // 10.5 rounds to even
  p.beta = 0.25;
  CHECK(p.bucket_size(20, 10) == 2);   // 2.5 rounds to even
  CHECK(p.bucket_size(10, 10) == 1);
  p.delta = 0.6;
  CHECK(p.max_idle_buckets(5) == 3);
  CHECK(p.max_idle_buckets(1) == 0);
  p.alpha = 0.9;
  CHECK_THROWS(p.validate());
}

TEST_CASE("excluded edge ordering") {
  // Kernel {1}; edge 2 conflicts with it, edges 3..5 do not.
  const Instance inst(4, {{1, 2, 1}, {2, 3, 1}, {3, 4, 1}, {1, 4, 1}, {1, 3, 1}}, {{1, 2}});
  const std::vector<EdgeId> kernel{1};
  const std::vector<EdgeId> rest{2, 3, 4, 5};
  const LpSolution tie = flat_lp(inst, {0, 0, 0, 0, 0});
  CHECK(order_excluded(inst, rest, kernel, tie) == std::vector<EdgeId>{5, 4, 3, 2});
  const LpSolution xs = flat_lp(inst, {0, 0.9, 0.2, 0.7, 0});
  CHECK(order_excluded(inst, rest, kernel, xs) == std::vector<EdgeId>{4, 3, 5, 2});
  const LpSolution rc = flat_lp(inst, {0, 0, 0.5, 0.5, 0}, {0, 0, 1, 2, 0});
  CHECK(order_excluded(inst, rest, kernel, rc) == std::vector<EdgeId>{4, 3, 5, 2});
}

TEST_CASE("enlarge buckets") {
  const Instance inst(5, {{1, 2, 1}, {2, 3, 1}, {3, 4, 1}, {4, 5, 1}, {1, 5, 1}, {1, 3, 1}, {2, 4, 1}, {3, 5, 1}},
                      {{3, 5}, {3, 6}, {5, 7}, {6, 7}});
  const ConflictGraph cg = build_conflict_graph(inst);
  const std::vector<EdgeId> kernel{1, 2};
  CHECK(enlarge_buckets(inst, cg, {{3}}, kernel).size() == 1);
  const auto two = enlarge_buckets(inst, cg, {{3}, {4}}, kernel);
  REQUIRE(two.size() == 1);
  CHECK(two[0] == EdgeSet{3, 4});

  // Pair scores over kernel {1,2}: {3},{4} -> 4, {3},{5} -> 3, {4},{5} -> 4.
  // Ties go to the lexicographically smaller pair, so (1,2) merges and {5} is left.
  const auto three = enlarge_buckets(inst, cg, {{3}, {4}, {5}}, kernel);
  REQUIRE(three.size() == 2);
  CHECK(three[0] == EdgeSet{3, 4});
  CHECK(three[1] == EdgeSet{5});

  // Path on 9 nodes, empty kernel; conflicts 1-2, 3-4 and 1-4 leave {1,3} + {2,4}
  // as the only pairing in which every pair scores 2.
  const Instance path(9, {{1, 2, 1}, {2, 3, 1}, {3, 4, 1}, {4, 5, 1}, {5, 6, 1}, {6, 7, 1}, {7, 8, 1}, {8, 9, 1}},
                      {{1, 2}, {3, 4}, {1, 4}});
  const auto four = enlarge_buckets(path, build_conflict_graph(path), {{1}, {2}, {3}, {4}}, {});
  REQUIRE(four.size() == 2);
  CHECK(four[0] == EdgeSet{1, 3});
  CHECK(four[1] == EdgeSet{2, 4});
}

TEST_CASE("initialize without conflicts yields the MST") {
  GeneratorOptions o;
  o.nodes = 12;
  o.edges = 30;
  o.seed = 3;
  const Instance inst = generate_instance(o);
  SearchContext ctx(60);
  const InitResult init = initialize(inst, build_conflict_graph(inst), quick_params(), ctx);
  const EdgeSet mst = kruskal(inst, inst.all_edges()).edges;
  REQUIRE(init.state.incumbent);
  CHECK(init.state.upper_bound == inst.weight(mst));
  CHECK(set_difference(mst, init.state.kernel).empty());
  check_state(inst, init.state);
}

TEST_CASE("kernel target clamps to the LP support") {
  // A tree-shaped instance: the LP support has n-1 edges, fewer than alpha(n-1).
  const Instance inst(5, {{1, 2, 1}, {2, 3, 1}, {3, 4, 1}, {4, 5, 1}, {1, 5, 9}}, {});
  KsParams p = quick_params();
  p.alpha = 1.5;
  p.beta = 0.5;
  SearchContext ctx(60);
  const InitResult init = initialize(inst, build_conflict_graph(inst), p, ctx);
  CHECK(init.kernel_target == 4);
  CHECK(init.bucket_target == 1);  // round(0.5 * (5 - 6)) clamps to 1
  check_state(inst, init.state);
}

TEST_CASE("improve with empty buckets is a no-op") {
  const Instance tri(3, {{1, 2, 1}, {2, 3, 2}, {1, 3, 3}}, {});
  KernelState st;
  st.kernel = tri.all_edges();
  st.buckets = {{}, {}};
  SearchContext ctx(10);
  const KernelState out = improve(tri, build_conflict_graph(tri), st, quick_params(), ctx);
  CHECK(out.kernel == st.kernel);
  CHECK(out.p == 0);
  CHECK(ctx.subproblems == 0);
}

TEST_CASE("full run matches the exhaustive optimum on small instances") {
  int solved = 0;
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    GeneratorOptions o;
    o.nodes = 6 + static_cast<int>(seed % 2);
    o.edges = 14;
    o.conflict_rate = 0.08;
    o.seed = seed;
    const Instance inst = generate_instance(o);
    const auto best = oracle::best_value(inst);
    KsParams p = quick_params();
    p.stop_rule = false;
    p.greedy.rng_seed = seed;
    std::vector<Weight> trajectory;
    const KsRunResult r = run_kernel_search(inst, p, [&](const TraceRecord& t) { trajectory.push_back(t.upper_bound); });
    CHECK(r.incumbent_violations == 0);
    for (std::size_t i = 1; i < trajectory.size(); ++i) CHECK(trajectory[i] <= trajectory[i - 1]);
    if (!best) {
      CHECK(r.status != RunStatus::kFeasible);
      continue;
    }
    REQUIRE(r.best);
    CHECK(r.best->feasible());
    CHECK(r.best->weight >= *best);
    if (r.best->weight == *best) ++solved;
    const KsRunResult again = run_kernel_search(inst, p);
    CHECK(again.best->edges == r.best->edges);
  }
  CHECK(solved >= 30);
}

TEST_CASE("optimum inside the initial kernel is found with P = 1") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    GeneratorOptions o;
    o.nodes = 6 + static_cast<int>(seed % 2);
    o.edges = 12;
    o.conflict_rate = 0.1;
    o.seed = 100 + seed;
    const Instance inst = generate_instance(o);
    PreprocessResult pre;
    try {
      pre = preprocess(inst);
    } catch (const InfeasibleError&) {
      continue;
    }
    const ConflictGraph cg = build_conflict_graph(pre.instance);
    KsParams p = quick_params();
    p.outer_iterations = 1;
    p.stop_rule = false;
    SearchContext ctx(60);
    const InitResult init = initialize(pre.instance, cg, p, ctx);
    const auto inside = oracle::best_value(pre.instance, init.state.kernel);
    const auto global = oracle::best_value(pre.instance);
    const KernelState out = improve(pre.instance, cg, init.state, p, ctx);
    if (inside && global && *inside == *global) {
      REQUIRE(out.incumbent);
      CHECK(out.upper_bound == *global);
    }
    check_state(pre.instance, out);
  }
}

TEST_CASE("trace records serialize as JSON") {
  TraceRecord r;
  r.p = 1;
  r.k = 2;
  r.status = SubproblemStatus::kOptimal;
  r.upper_bound = 42;
  const std::string j = r.to_json();
  CHECK(j.find("\"p\":1") != std::string::npos);
  CHECK(j.find("\"ub\":42") != std::string::npos);
  r.upper_bound = kInfinity;
  CHECK(r.to_json().find("\"ub\":null") != std::string::npos);
}

}  // TEST_SUITE

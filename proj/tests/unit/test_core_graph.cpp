#include <random>

#include "doctest.h"
#include "mstc/graph.hpp"
#include "mstc/instance.hpp"
#include "mstc/io.hpp"
#include "oracle.hpp"

using namespace mstc;

namespace {

Instance triangle(std::vector<ConflictPair> conflicts = {}) {
  return Instance(3, {{1, 2, 1}, {2, 3, 2}, {1, 3, 3}}, std::move(conflicts));
}

Instance random_instance(std::uint64_t seed, int n, int m, double rate) {
  GeneratorOptions o;
  o.nodes = n;
  o.edges = m;
  o.conflict_rate = rate;
  o.seed = seed;
  o.max_weight = 20;
  return generate_instance(o);
}

}  // namespace

TEST_SUITE("core-graph") {

TEST_CASE("instance validation") {
  CHECK_THROWS_AS(Instance(0, {}, {}), InputError);
  CHECK_THROWS_AS(Instance(2, {{1, 1, 1}}, {}), InputError);
  CHECK_THROWS_AS(Instance(2, {{1, 3, 1}}, {}), InputError);
  CHECK_THROWS_AS(Instance(2, {{1, 2, 1}, {2, 1, 4}}, {}), InputError);
  CHECK_THROWS_AS(Instance(3, {{1, 2, 1}, {2, 3, 1}}, {{1, 3}}), InputError);
  CHECK_THROWS_AS(Instance(3, {{1, 2, 1}, {2, 3, 1}}, {{2, 2}}), InputError);
  const Instance inst(3, {{1, 2, 1}, {2, 3, 1}}, {{2, 1}, {1, 2}});
  CHECK(inst.num_conflicts() == 1);
  CHECK(inst.in_conflict(1, 2));
  CHECK(inst.in_conflict(2, 1));
}

TEST_CASE("conflict graph construction") {
  const Instance none = triangle();
  const ConflictGraph g0 = build_conflict_graph(none);
  CHECK(g0.order() == 3);
  CHECK(g0.size() == 0);

  const ConflictGraph g = build_conflict_graph(triangle({{1, 2}}));
  CHECK(g.neighbors(1).size() == 1);
  CHECK(g.neighbors(1)[0] == 2);
  CHECK(g.neighbors(2)[0] == 1);
  CHECK(g.neighbors(3).empty());
  CHECK(g.degree(3) == 0);
}

TEST_CASE("induced conflict subgraph") {
  const ConflictGraph path = build_conflict_graph(triangle({{1, 2}, {2, 3}}));
  const ConflictGraph empty = induced_conflict_subgraph(path, {});
  CHECK(empty.order() == 0);
  const std::vector<EdgeId> all{1, 2, 3};
  const ConflictGraph same = induced_conflict_subgraph(path, all);
  CHECK(same.order() == 3);
  CHECK(same.size() == 2);
  const std::vector<EdgeId> ends{1, 3};
  const ConflictGraph split = induced_conflict_subgraph(path, ends);
  CHECK(split.order() == 2);
  CHECK(split.size() == 0);
  const std::vector<EdgeId> bad{1, 7};
  CHECK_THROWS_AS(induced_conflict_subgraph(path, bad), InputError);
}

TEST_CASE("count_conflicts and checker") {
  const Instance inst = triangle({{1, 3}});
  CHECK(count_conflicts(inst, {}) == 0);
  const std::vector<EdgeId> pair{1, 3};
  CHECK(count_conflicts(inst, pair) == 1);
  const Solution ok = check_solution(inst, std::vector<EdgeId>{1, 2});
  CHECK(ok.feasible());
  CHECK(ok.weight == 3);
  const Solution bad = check_solution(inst, pair);
  CHECK(bad.is_spanning_tree);
  CHECK(bad.conflict_count == 1);
  CHECK_FALSE(bad.feasible());
  CHECK_FALSE(check_solution(inst, std::vector<EdgeId>{1}).is_spanning_tree);
}

TEST_CASE("disjoint sets") {
  DisjointSets d(5);
  CHECK(d.components() == 5);
  CHECK(d.unite(1, 2));
  CHECK_FALSE(d.unite(2, 1));
  CHECK(d.components() == 4);
  CHECK(d.find(1) == d.find(d.find(1)));
  CHECK(d.same(1, 2));
  CHECK_FALSE(d.same(1, 3));
}

TEST_CASE("kruskal examples") {
  const Instance inst = triangle();
  const KruskalResult r = kruskal(inst, inst.all_edges());
  CHECK(r.spanning());
  CHECK(r.edges == EdgeSet{1, 2});
  const std::vector<EdgeId> one{2};
  const KruskalResult f = kruskal(inst, one);
  CHECK_FALSE(f.spanning());
  CHECK(f.edges == EdgeSet{2});
  const std::vector<EdgeId> forced{3};
  CHECK(kruskal(inst, inst.all_edges(), forced).edges == EdgeSet{1, 3});
  const Instance sq(4, {{1, 2, 1}, {2, 3, 1}, {1, 3, 1}, {3, 4, 1}}, {});
  const std::vector<EdgeId> cyc{1, 2, 3};
  CHECK_THROWS_AS(kruskal(sq, sq.all_edges(), cyc), PreconditionError);
  std::vector<Weight> override(4, 0);
  override[1] = 9;
  CHECK(kruskal(inst, inst.all_edges(), {}, &override).edges == EdgeSet{2, 3});
}

TEST_CASE("kruskal matches exhaustive minimum on random graphs") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const Instance inst = random_instance(seed, 6, 10, 0);
    const KruskalResult r = kruskal(inst, inst.all_edges());
    REQUIRE(r.spanning());
    CHECK(oracle::is_spanning_tree(inst, r.edges));
    CHECK(inst.weight(r.edges) == *oracle::mst_value(inst));
  }
}

TEST_CASE("creates_cycle") {
  const Instance inst(4, {{1, 2, 1}, {2, 3, 1}, {1, 3, 1}, {3, 4, 1}}, {});
  CHECK_FALSE(creates_cycle(inst, {}, 1));
  const std::vector<EdgeId> one{1};
  CHECK_FALSE(creates_cycle(inst, one, 2));
  const std::vector<EdgeId> two{1, 2};
  CHECK(creates_cycle(inst, two, 3));
}

TEST_CASE("bridges examples") {
  const Instance path(4, {{1, 2, 1}, {2, 3, 1}, {3, 4, 1}}, {});
  CHECK(bridges(path, path.all_edges()) == EdgeSet{1, 2, 3});
  const Instance cycle(4, {{1, 2, 1}, {2, 3, 1}, {3, 4, 1}, {4, 1, 1}}, {});
  CHECK(bridges(cycle, cycle.all_edges()).empty());
  const Instance two(6, {{1, 2, 1}, {2, 3, 1}, {1, 3, 1}, {4, 5, 1}, {5, 6, 1}, {4, 6, 1}, {3, 4, 1}}, {});
  CHECK(bridges(two, two.all_edges()) == EdgeSet{7});
}

TEST_CASE("bridges agree with connectivity after single removals") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const int n = 3 + static_cast<int>(seed % 10);
    const Instance inst = random_instance(seed, n, n + static_cast<int>(seed % 5), 0);
    const EdgeSet b = bridges(inst, inst.all_edges());
    for (EdgeId e = 1; e <= inst.num_edges(); ++e) {
      const bool is_bridge = contains(b, e);
      CHECK(is_bridge == !oracle::connected_without(inst, {e}));
      const std::vector<EdgeId> removed{e};
      CHECK(is_bridge == !is_connected_without(inst, removed));
    }
  }
}

TEST_CASE("is_connected_without examples") {
  const Instance star(4, {{1, 2, 1}, {1, 3, 1}, {1, 4, 1}}, {});
  CHECK(is_connected_without(star, {}));
  CHECK_FALSE(is_connected_without(star, star.all_edges()));
  const std::vector<EdgeId> leaf{3};
  CHECK_FALSE(is_connected_without(star, leaf));
}

TEST_CASE("max flow examples") {
  const std::vector<FlowArc> single{{0, 1, 5}};
  const MaxFlowResult r = max_flow(2, single, 0, 1);
  CHECK(r.value == doctest::Approx(5));
  CHECK(r.source_side == std::vector<int>{0});
  const std::vector<FlowArc> paths{{0, 1, 2}, {1, 3, 2}, {0, 2, 3}, {2, 3, 3}};
  CHECK(max_flow(4, paths, 0, 3).value == doctest::Approx(5));
  CHECK_THROWS_AS(max_flow(2, single, 1, 1), InputError);
}

TEST_CASE("max flow equals brute-force min cut") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> cap(0, 4);
  std::bernoulli_distribution present(0.45);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 8;
    std::vector<FlowArc> arcs;
    std::vector<oracle::Arc> ref;
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        if (a == b || !present(rng)) continue;
        const double c = trial % 2 ? std::floor(cap(rng)) : cap(rng);
        arcs.push_back({a, b, c});
        ref.push_back({a, b, c});
      }
    }
    const MaxFlowResult r = max_flow(n, arcs, 0, n - 1);
    CHECK(r.value == doctest::Approx(oracle::min_cut(n, ref, 0, n - 1)).epsilon(1e-9));
    double cut = 0;
    for (const FlowArc& a : arcs) {
      const bool from = std::binary_search(r.source_side.begin(), r.source_side.end(), a.from);
      const bool to = std::binary_search(r.source_side.begin(), r.source_side.end(), a.to);
      if (from && !to) cut += a.capacity;
    }
    CHECK(cut == doctest::Approx(r.value).epsilon(1e-9));
  }
}

}  // TEST_SUITE

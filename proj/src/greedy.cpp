#include "mstc/greedy.hpp"

#include <random>
#include <set>

#include "mstc/graph.hpp"

namespace mstc {

void GreedyParams::validate() const {
  if (h_max <= 1 || t_max <= 1) throw InputError("greedy parameters h_max and t_max must exceed 1");
}

EdgeSet independent_set(const Instance& inst, const ConflictGraph& h, std::span<const EdgeId> seed) {
  const EdgeSet seed_set = make_edge_set({seed.begin(), seed.end()});
  if (count_conflicts(inst, seed_set) != 0) throw PreconditionError("independent_set: seed edges conflict");
  ForestBuilder forest(inst);
  for (EdgeId e : seed_set) {
    if (!forest.add(e)) throw PreconditionError("independent_set: seed edges contain a cycle");
  }

  const std::size_t m1 = static_cast<std::size_t>(inst.num_edges()) + 1;
  std::vector<char> in_pool(m1, 0);
  for (EdgeId e : h.nodes()) in_pool[static_cast<std::size_t>(e)] = 1;
  for (EdgeId e : seed_set) {
    in_pool[static_cast<std::size_t>(e)] = 0;
    for (EdgeId f : inst.conflicts_of(e)) in_pool[static_cast<std::size_t>(f)] = 0;
  }

  std::vector<int> degree(m1, 0);
  std::set<std::pair<int, EdgeId>> queue;
  for (EdgeId e : h.nodes()) {
    if (!in_pool[static_cast<std::size_t>(e)]) continue;
    int d = 0;
    for (EdgeId f : h.neighbors(e)) d += in_pool[static_cast<std::size_t>(f)];
    degree[static_cast<std::size_t>(e)] = d;
    queue.emplace(d, e);
  }

  auto drop = [&](EdgeId e) {
    queue.erase({degree[static_cast<std::size_t>(e)], e});
    in_pool[static_cast<std::size_t>(e)] = 0;
    for (EdgeId f : h.neighbors(e)) {
      if (!in_pool[static_cast<std::size_t>(f)]) continue;
      int& d = degree[static_cast<std::size_t>(f)];
      queue.erase({d, f});
      --d;
      queue.emplace(d, f);
    }
  };

  EdgeSet result = seed_set;
  while (!queue.empty()) {
    const EdgeId e = queue.begin()->second;
    if (!forest.add(e)) {
      drop(e);
      continue;
    }
    result.push_back(e);
    drop(e);
    for (EdgeId f : h.neighbors(e)) {
      if (in_pool[static_cast<std::size_t>(f)]) drop(f);
    }
  }
  return make_edge_set(std::move(result));
}

StartingResult starting_solution(const Instance& inst, const ConflictGraph& cg, std::span<const EdgeId> initial,
                                 const GreedyParams& params) {
  params.validate();
  std::mt19937_64 rng(params.rng_seed);
  const int m = inst.num_edges();
  const EdgeSet all = inst.all_edges();

  StartingResult out;
  out.accumulated = make_edge_set({initial.begin(), initial.end()});
  std::vector<Weight> random_weight(static_cast<std::size_t>(m) + 1, 0);

  for (int h = 1; h <= params.h_max; ++h) {
    out.iterations = h;
    KruskalResult forest = kruskal(inst, out.accumulated);
    EdgeSet current = std::move(forest.edges);
    bool spanning = forest.spanning();
    EdgeSet clashing = conflicting_members(inst, current);
    const bool repaired = !clashing.empty() || !spanning;

    int t = 0;
    while ((!clashing.empty() || !spanning) && t <= params.t_max) {
      const EdgeSet keep = independent_set(inst, induced_conflict_subgraph(cg, clashing));
      current = set_difference(current, set_difference(clashing, keep));
      EdgeSet grown = independent_set(inst, cg, current);
      if (static_cast<int>(grown.size()) == inst.num_nodes() - 1) {
        current = std::move(grown);
        clashing.clear();
        spanning = true;
        break;
      }
      for (EdgeId e = 1; e <= m; ++e) {
        random_weight[static_cast<std::size_t>(e)] = static_cast<Weight>(1 + rng() % static_cast<std::uint64_t>(m));
      }
      KruskalResult tree = kruskal(inst, all, grown, &random_weight);
      current = std::move(tree.edges);
      spanning = tree.spanning();
      clashing = conflicting_members(inst, current);
      ++t;
    }

    out.accumulated = set_union(out.accumulated, current);
    const Weight w = inst.weight(current);
    if (clashing.empty() && spanning && w < out.tree_weight) {
      out.tree = current;
      out.tree_weight = w;
      if (!repaired) break;
    }
  }
  return out;
}

}  // namespace mstc

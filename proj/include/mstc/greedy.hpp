#pragma once

#include <cstdint>

#include "mstc/instance.hpp"

namespace mstc {

struct GreedyParams {
  int h_max = 20;   // outer iterations
  int t_max = 500;  // repair iterations per outer iteration
  std::uint64_t rng_seed = 1;

  void validate() const;
};

struct StartingResult {
  EdgeSet accumulated;  // S: every edge the heuristic looked at
  EdgeSet tree;         // conflict-free spanning tree, or empty
  Weight tree_weight = kInfinity;
  int iterations = 0;
};

/// Greedy minimum-degree independent set of the conflict subgraph `h` whose
/// edges are acyclic in the original graph.
///
/// The result contains `seed`; seed members and their conflict neighbours
/// never enter the candidate pool. Each step takes the candidate with minimum
/// degree in the conflict graph induced by the remaining pool (ties to the
/// lowest edge id), drops it if it would close a cycle, and otherwise accepts
/// it and removes its neighbours from the pool.
/// Throws PreconditionError if the seed conflicts internally or contains a cycle.
EdgeSet independent_set(const Instance& inst, const ConflictGraph& h, std::span<const EdgeId> seed = {});

/// Randomised repair heuristic that tries to build a conflict-free spanning
/// tree from the edges in `initial`, growing the explored set along the way.
StartingResult starting_solution(const Instance& inst, const ConflictGraph& cg, std::span<const EdgeId> initial,
                                 const GreedyParams& params);

}  // namespace mstc

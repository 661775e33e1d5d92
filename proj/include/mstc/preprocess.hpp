#pragma once

#include <vector>

#include "mstc/instance.hpp"

namespace mstc {

struct PreprocessReport {
  // Both sets use the edge ids of the input instance.
  EdgeSet removed_edges;
  EdgeSet fixed_edges;  // bridges of the reduced graph; they belong to every spanning tree
  int iterations = 0;
  // edge_map[j - 1] is the input id of reduced edge j.
  std::vector<EdgeId> edge_map;

  EdgeSet to_original(std::span<const EdgeId> reduced) const;
};

struct PreprocessResult {
  Instance instance;
  PreprocessReport report;
};

/// Iterative reduction:
///  1. every edge conflicting with a bridge is removed (repeated until the
///     bridge set stops changing);
///  2. scanning edges by ascending id, the first edge whose conflicting edges
///     disconnect the graph when removed is itself removed, and the procedure
///     restarts from step 1.
/// Stops when a full pass changes nothing. Surviving edges are renumbered in
/// their original relative order and conflicts touching removed edges dropped.
/// Throws InfeasibleError if the input, or the reduced graph, is disconnected.
PreprocessResult preprocess(const Instance& inst);

}  // namespace mstc

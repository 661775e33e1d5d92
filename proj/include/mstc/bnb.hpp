#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>

#include "mstc/instance.hpp"

namespace mstc {

/// Restricted problem MSTC(F) with the two optional side constraints used by
/// kernel search: at least one edge of `must_use` and weight <= cutoff.
struct SubproblemSpec {
  EdgeSet allowed;
  EdgeSet must_use;
  Weight cutoff = kInfinity;
  double time_budget = 60.0;  // seconds

  void validate(const Instance& inst) const;
};

enum class SubproblemStatus {
  kOptimal,               // search tree closed, solution is optimal
  kFeasibleTimeout,       // budget ran out holding a solution
  kInfeasible,            // tree closed, no feasible tree in F at all
  kNoImprovingSolution,   // tree closed, nothing within the cutoff
  kTimeout,               // budget ran out without any solution
};

const char* to_string(SubproblemStatus status);

struct SubproblemResult {
  SubproblemStatus status = SubproblemStatus::kInfeasible;
  std::optional<Solution> solution;
  std::int64_t nodes_explored = 0;
};

/// Depth-first branch-and-bound over include/exclude decisions.
///
/// The bound at each node is Kruskal over the allowed, non-excluded edges
/// with included edges forced, ignoring conflicts. A conflict in the bound
/// tree is resolved by branching on its heaviest conflicting pair; a
/// conflict-free tree that misses `must_use` branches on the cheapest usable
/// must-use edge. Deterministic for a fixed instance and spec.
SubproblemResult solve_restricted(const Instance& inst, const SubproblemSpec& spec);

/// Writes MSTC(F) with the side constraints as a binary program in CPLEX LP
/// format. Subtour constraints are listed explicitly for n <= 12; larger
/// graphs get an equivalent single-commodity flow connectivity block.
void write_milp_model(std::ostream& out, const Instance& inst, const SubproblemSpec& spec);

}  // namespace mstc

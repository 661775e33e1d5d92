#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "mstc/instance.hpp"

namespace mstc {

enum class CutKind { kSubtour, kConflictCycle, kDegree, kConflictPair };

const char* to_string(CutKind kind);

/// A linear inequality over edge variables. Degree cuts read
/// sum(edges) >= rhs; every other kind reads sum(edges) + x[extra] <= rhs.
struct Cut {
  CutKind kind = CutKind::kSubtour;
  EdgeSet edges;
  EdgeId extra = 0;            // the outside edge of a conflict-cycle cut, 0 if unused
  std::vector<NodeId> nodes;   // node set S of a subtour cut
  double rhs = 0;

  // x is indexed by edge id - 1.
  double lhs(std::span<const double> x) const;
  double violation(std::span<const double> x) const;
  // Exact check against an integral edge set.
  bool satisfied_by(std::span<const EdgeId> tree) const;
};

enum class LpStatus { kOptimal, kInfeasible, kTimeLimit };

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> x;              // indexed by edge id - 1
  std::vector<double> reduced_costs;  // indexed by edge id - 1
  double objective = 0;
  std::vector<double> round_objectives;
  std::vector<Cut> cuts;  // every constraint beyond the cardinality row
  int rounds = 0;

  double value(EdgeId e) const { return x[static_cast<std::size_t>(e - 1)]; }
  double reduced_cost(EdgeId e) const { return reduced_costs[static_cast<std::size_t>(e - 1)]; }
  EdgeSet support(double threshold = 1e-6) const;
};

struct LpOptions {
  bool include_subtours = true;
  double time_limit = 60.0;  // seconds
  int max_rounds = 500;
};

/// Cutting-plane solve of the LP relaxation: cardinality row plus a-priori
/// degree cuts, then repeated rounds that add violated conflict-pair rows
/// and, when include_subtours is set, subtour and conflict-cycle cuts.
LpSolution solve_lp(const Instance& inst, const LpOptions& options = {});

/// Exact subtour separation by min-cut: for every node k the cheapest node
/// set S containing k is found, and returned when sum x(E(S)) > |S|-1 + 1e-6.
/// Cuts are deduplicated by node set.
std::vector<Cut> separate_subtour(const Instance& inst, std::span<const double> x);

/// Heuristic conflict-cycle separation over fundamental cycles drawn from the
/// given subtour node sets and from the rounded support (x >= 0.5).
std::vector<Cut> separate_conflict_cycle(const Instance& inst, std::span<const double> x,
                                         std::span<const Cut> subtour_cuts);

/// Writes the relaxation with the given cuts in CPLEX LP text format.
void write_lp_model(std::ostream& out, const Instance& inst, std::span<const Cut> cuts);

}  // namespace mstc

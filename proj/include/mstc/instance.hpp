#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mstc {

// Node ids are 1..n and edge ids are 1..m throughout the library.
using NodeId = int;
using EdgeId = int;
using Weight = double;

// Sorted, duplicate-free list of edge ids.
using EdgeSet = std::vector<EdgeId>;

inline constexpr Weight kInfinity = std::numeric_limits<Weight>::infinity();

struct Edge {
  NodeId u = 0;
  NodeId v = 0;
  Weight w = 0;
};

// Conflict pair stored with first < second.
struct ConflictPair {
  EdgeId first = 0;
  EdgeId second = 0;
  friend bool operator==(const ConflictPair&, const ConflictPair&) = default;
  friend auto operator<=>(const ConflictPair&, const ConflictPair&) = default;
};

class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Raised when no conflict-free spanning tree can exist.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Undirected weighted graph together with its set of conflicting edge pairs.
///
/// Construction validates every invariant (ids in range, no self-loops, no
/// duplicate edges, no self-conflicts); an Instance is immutable afterwards.
class Instance {
 public:
  Instance() = default;
  Instance(int num_nodes, std::vector<Edge> edges, std::vector<ConflictPair> conflicts);

  int num_nodes() const { return num_nodes_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int num_conflicts() const { return static_cast<int>(conflicts_.size()); }

  const Edge& edge(EdgeId e) const { return edges_[static_cast<std::size_t>(e - 1)]; }
  std::span<const Edge> edges() const { return edges_; }
  const std::vector<ConflictPair>& conflicts() const { return conflicts_; }

  // Sorted ids of the edges in conflict with e.
  std::span<const EdgeId> conflicts_of(EdgeId e) const {
    return conflict_adj_[static_cast<std::size_t>(e - 1)];
  }
  bool in_conflict(EdgeId a, EdgeId b) const;

  bool integral_weights() const { return integral_; }
  Weight weight(std::span<const EdgeId> edges) const;

  EdgeSet all_edges() const;

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.num_nodes_ == b.num_nodes_ && a.conflicts_ == b.conflicts_ &&
           a.edges_.size() == b.edges_.size() && a.same_edges(b);
  }

 private:
  bool same_edges(const Instance& other) const;

  int num_nodes_ = 0;
  std::vector<Edge> edges_;
  std::vector<ConflictPair> conflicts_;
  std::vector<std::vector<EdgeId>> conflict_adj_;
  bool integral_ = true;
};

/// conflicts(F): number of conflict pairs with both edges in F.
std::int64_t count_conflicts(const Instance& inst, std::span<const EdgeId> edges);

// Edges of `edges` that conflict with at least one other member.
EdgeSet conflicting_members(const Instance& inst, std::span<const EdgeId> edges);

/// Solution summary produced by the independent checker.
struct Solution {
  EdgeSet edges;
  Weight weight = 0;
  bool is_spanning_tree = false;
  std::int64_t conflict_count = 0;

  bool feasible() const { return is_spanning_tree && conflict_count == 0; }
};

// Evaluates an arbitrary edge list without trusting where it came from.
Solution check_solution(const Instance& inst, std::span<const EdgeId> edges);

// Normalizes to sorted unique order.
EdgeSet make_edge_set(std::vector<EdgeId> edges);
EdgeSet set_union(std::span<const EdgeId> a, std::span<const EdgeId> b);
EdgeSet set_difference(std::span<const EdgeId> a, std::span<const EdgeId> b);
EdgeSet set_intersection(std::span<const EdgeId> a, std::span<const EdgeId> b);
bool contains(std::span<const EdgeId> set, EdgeId e);

/// Graph over edge ids where adjacency means "in conflict".
class ConflictGraph {
 public:
  ConflictGraph() = default;

  int order() const { return static_cast<int>(nodes_.size()); }
  std::int64_t size() const;  // number of conflict-graph edges

  const EdgeSet& nodes() const { return nodes_; }
  bool has_node(EdgeId e) const;
  // Conflict-graph neighbours of e (sorted); e must be a node.
  std::span<const EdgeId> neighbors(EdgeId e) const;
  int degree(EdgeId e) const { return static_cast<int>(neighbors(e).size()); }

 private:
  friend ConflictGraph build_conflict_graph(const Instance& inst);
  friend ConflictGraph induced_conflict_subgraph(const ConflictGraph& cg, std::span<const EdgeId> subset);

  EdgeSet nodes_;
  std::vector<int> slot_;  // edge id -> position in nodes_, -1 when absent
  std::vector<std::vector<EdgeId>> adj_;
};

ConflictGraph build_conflict_graph(const Instance& inst);

// Induced subgraph on `subset` (any order, duplicates ignored).
// Throws InputError when an id is not a node of cg.
ConflictGraph induced_conflict_subgraph(const ConflictGraph& cg, std::span<const EdgeId> subset);

}  // namespace mstc

#pragma once

#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "mstc/instance.hpp"

namespace mstc {

// Union-find over node ids 1..n with path halving and union by rank.
class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(static_cast<std::size_t>(n) + 1), rank_(static_cast<std::size_t>(n) + 1, 0), components_(n) {
    for (std::size_t i = 0; i < parent_.size(); ++i) parent_[i] = static_cast<int>(i);
  }

  int find(int x) {
    while (parent_[static_cast<std::size_t>(x)] != x) {
      auto& p = parent_[static_cast<std::size_t>(x)];
      p = parent_[static_cast<std::size_t>(p)];
      x = p;
    }
    return x;
  }

  bool same(int a, int b) { return find(a) == find(b); }

  // Returns false when a and b were already joined.
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (rank_[static_cast<std::size_t>(a)] < rank_[static_cast<std::size_t>(b)]) std::swap(a, b);
    parent_[static_cast<std::size_t>(b)] = a;
    if (rank_[static_cast<std::size_t>(a)] == rank_[static_cast<std::size_t>(b)]) ++rank_[static_cast<std::size_t>(a)];
    --components_;
    return true;
  }

  int components() const { return components_; }

 private:
  std::vector<int> parent_;
  std::vector<int> rank_;
  int components_;
};

// Incrementally grown acyclic edge set; answers creates_cycle in near O(1).
class ForestBuilder {
 public:
  explicit ForestBuilder(const Instance& inst) : inst_(&inst), dsu_(inst.num_nodes()) {}

  bool creates_cycle(EdgeId e) {
    const Edge& ed = inst_->edge(e);
    return dsu_.same(ed.u, ed.v);
  }
  // Adds e; returns false (and leaves the forest unchanged) if it closes a cycle.
  bool add(EdgeId e) {
    const Edge& ed = inst_->edge(e);
    if (!dsu_.unite(ed.u, ed.v)) return false;
    edges_.push_back(e);
    return true;
  }
  bool spanning() const { return dsu_.components() == 1; }
  const std::vector<EdgeId>& edges() const { return edges_; }

 private:
  const Instance* inst_;
  DisjointSets dsu_;
  std::vector<EdgeId> edges_;
};

/// creates_cycle(current, candidate): true iff candidate's endpoints are
/// already connected in G[current]. `current` must be acyclic.
bool creates_cycle(const Instance& inst, std::span<const EdgeId> current, EdgeId candidate);

enum class ForestStatus { kSpanningTree, kForest };

struct KruskalResult {
  EdgeSet edges;
  ForestStatus status = ForestStatus::kForest;
  bool spanning() const { return status == ForestStatus::kSpanningTree; }
};

/// Minimum spanning forest of G[allowed] containing every forced edge.
///
/// Forced edges are taken first; the rest are scanned by (weight, edge id)
/// where weight comes from `weight_override` when it has an entry for the
/// edge (indexed by edge id, size m+1), and from the instance otherwise.
/// Throws PreconditionError if the forced set contains a cycle.
KruskalResult kruskal(const Instance& inst, std::span<const EdgeId> allowed,
                      std::span<const EdgeId> forced = {},
                      const std::vector<Weight>* weight_override = nullptr);

/// Cut edges of G[active], ascending by id.
EdgeSet bridges(const Instance& inst, std::span<const EdgeId> active);

/// Connectivity of all n nodes using every edge except `removed`.
bool is_connected_without(const Instance& inst, std::span<const EdgeId> removed);

bool is_connected(const Instance& inst, std::span<const EdgeId> active);

struct FlowArc {
  int from = 0;
  int to = 0;
  double capacity = 0;
};

struct MaxFlowResult {
  double value = 0;
  std::vector<int> source_side;  // node ids reachable from s in the residual graph, sorted
};

/// Exact s-t maximum flow (Dinic) on a directed network with nodes 0..num_nodes-1.
/// Undirected capacities are expressed as two opposite arcs. Residual
/// capacities below 1e-12 are treated as saturated.
MaxFlowResult max_flow(int num_nodes, std::span<const FlowArc> arcs, int source, int sink);

}  // namespace mstc

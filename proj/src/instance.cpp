#include "mstc/instance.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "mstc/graph.hpp"

namespace mstc {

Instance::Instance(int num_nodes, std::vector<Edge> edges, std::vector<ConflictPair> conflicts)
    : num_nodes_(num_nodes), edges_(std::move(edges)) {
  if (num_nodes_ < 1) throw InputError("instance needs at least one node");
  const int m = num_edges();
  std::set<std::pair<NodeId, NodeId>> seen;
  for (int i = 0; i < m; ++i) {
    const Edge& e = edges_[static_cast<std::size_t>(i)];
    if (e.u < 1 || e.u > num_nodes_ || e.v < 1 || e.v > num_nodes_) {
      throw InputError("edge " + std::to_string(i + 1) + " has an endpoint outside [1, n]");
    }
    if (e.u == e.v) throw InputError("edge " + std::to_string(i + 1) + " is a self-loop");
    if (!std::isfinite(e.w)) throw InputError("edge " + std::to_string(i + 1) + " has a non-finite weight");
    if (!seen.emplace(std::min(e.u, e.v), std::max(e.u, e.v)).second) {
      throw InputError("edge " + std::to_string(i + 1) + " duplicates an earlier edge");
    }
    if (e.w != std::floor(e.w) || std::fabs(e.w) > 9.0e15) integral_ = false;
  }

  for (ConflictPair& c : conflicts) {
    if (c.first < 1 || c.first > m || c.second < 1 || c.second > m) {
      throw InputError("conflict (" + std::to_string(c.first) + ", " + std::to_string(c.second) +
                       ") references a missing edge");
    }
    if (c.first == c.second) throw InputError("edge " + std::to_string(c.first) + " conflicts with itself");
    if (c.first > c.second) std::swap(c.first, c.second);
  }
  std::sort(conflicts.begin(), conflicts.end());
  conflicts.erase(std::unique(conflicts.begin(), conflicts.end()), conflicts.end());
  conflicts_ = std::move(conflicts);

  conflict_adj_.assign(static_cast<std::size_t>(m), {});
  for (const ConflictPair& c : conflicts_) {
    conflict_adj_[static_cast<std::size_t>(c.first - 1)].push_back(c.second);
    conflict_adj_[static_cast<std::size_t>(c.second - 1)].push_back(c.first);
  }
  for (auto& adj : conflict_adj_) std::sort(adj.begin(), adj.end());
}

bool Instance::in_conflict(EdgeId a, EdgeId b) const {
  auto adj = conflicts_of(a);
  return std::binary_search(adj.begin(), adj.end(), b);
}

Weight Instance::weight(std::span<const EdgeId> edges) const {
  Weight total = 0;
  for (EdgeId e : edges) total += edge(e).w;
  return total;
}

EdgeSet Instance::all_edges() const {
  EdgeSet all(static_cast<std::size_t>(num_edges()));
  for (int i = 0; i < num_edges(); ++i) all[static_cast<std::size_t>(i)] = i + 1;
  return all;
}

bool Instance::same_edges(const Instance& other) const {
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& a = edges_[i];
    const Edge& b = other.edges_[i];
    if (a.u != b.u || a.v != b.v || a.w != b.w) return false;
  }
  return true;
}

std::int64_t count_conflicts(const Instance& inst, std::span<const EdgeId> edges) {
  const EdgeSet members = make_edge_set({edges.begin(), edges.end()});
  std::vector<char> member(static_cast<std::size_t>(inst.num_edges()) + 1, 0);
  for (EdgeId e : members) member[static_cast<std::size_t>(e)] = 1;
  std::int64_t count = 0;
  for (EdgeId e : members) {
    for (EdgeId f : inst.conflicts_of(e)) {
      if (f > e && member[static_cast<std::size_t>(f)]) ++count;
    }
  }
  return count;
}

EdgeSet conflicting_members(const Instance& inst, std::span<const EdgeId> edges) {
  std::vector<char> member(static_cast<std::size_t>(inst.num_edges()) + 1, 0);
  for (EdgeId e : edges) member[static_cast<std::size_t>(e)] = 1;
  EdgeSet out;
  for (EdgeId e : edges) {
    for (EdgeId f : inst.conflicts_of(e)) {
      if (member[static_cast<std::size_t>(f)]) {
        out.push_back(e);
        break;
      }
    }
  }
  return make_edge_set(std::move(out));
}

Solution check_solution(const Instance& inst, std::span<const EdgeId> edges) {
  Solution s;
  s.edges = make_edge_set({edges.begin(), edges.end()});
  s.weight = inst.weight(s.edges);
  s.conflict_count = count_conflicts(inst, s.edges);
  bool ids_ok = s.edges.size() == edges.size();
  for (EdgeId e : s.edges) ids_ok = ids_ok && e >= 1 && e <= inst.num_edges();
  if (!ids_ok || static_cast<int>(s.edges.size()) != inst.num_nodes() - 1) return s;
  DisjointSets dsu(inst.num_nodes());
  for (EdgeId e : s.edges) {
    if (!dsu.unite(inst.edge(e).u, inst.edge(e).v)) return s;
  }
  s.is_spanning_tree = dsu.components() == 1;
  return s;
}

EdgeSet make_edge_set(std::vector<EdgeId> edges) {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

EdgeSet set_union(std::span<const EdgeId> a, std::span<const EdgeId> b) {
  EdgeSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

EdgeSet set_difference(std::span<const EdgeId> a, std::span<const EdgeId> b) {
  EdgeSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

EdgeSet set_intersection(std::span<const EdgeId> a, std::span<const EdgeId> b) {
  EdgeSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool contains(std::span<const EdgeId> set, EdgeId e) {
  return std::binary_search(set.begin(), set.end(), e);
}

std::int64_t ConflictGraph::size() const {
  std::int64_t total = 0;
  for (const auto& a : adj_) total += static_cast<std::int64_t>(a.size());
  return total / 2;
}

bool ConflictGraph::has_node(EdgeId e) const {
  return e >= 0 && static_cast<std::size_t>(e) < slot_.size() && slot_[static_cast<std::size_t>(e)] >= 0;
}

std::span<const EdgeId> ConflictGraph::neighbors(EdgeId e) const {
  if (!has_node(e)) throw InputError("edge " + std::to_string(e) + " is not a conflict-graph node");
  return adj_[static_cast<std::size_t>(slot_[static_cast<std::size_t>(e)])];
}

ConflictGraph build_conflict_graph(const Instance& inst) {
  ConflictGraph cg;
  const int m = inst.num_edges();
  cg.nodes_ = inst.all_edges();
  cg.slot_.assign(static_cast<std::size_t>(m) + 1, -1);
  cg.adj_.resize(static_cast<std::size_t>(m));
  for (EdgeId e = 1; e <= m; ++e) {
    cg.slot_[static_cast<std::size_t>(e)] = e - 1;
    auto adj = inst.conflicts_of(e);
    cg.adj_[static_cast<std::size_t>(e - 1)].assign(adj.begin(), adj.end());
  }
  return cg;
}

ConflictGraph induced_conflict_subgraph(const ConflictGraph& cg, std::span<const EdgeId> subset) {
  for (EdgeId e : subset) {
    if (!cg.has_node(e)) throw InputError("edge " + std::to_string(e) + " is not a conflict-graph node");
  }
  ConflictGraph sub;
  sub.nodes_ = make_edge_set({subset.begin(), subset.end()});
  sub.slot_.assign(cg.slot_.size(), -1);
  for (std::size_t i = 0; i < sub.nodes_.size(); ++i) {
    sub.slot_[static_cast<std::size_t>(sub.nodes_[i])] = static_cast<int>(i);
  }
  sub.adj_.resize(sub.nodes_.size());
  for (std::size_t i = 0; i < sub.nodes_.size(); ++i) {
    for (EdgeId f : cg.neighbors(sub.nodes_[i])) {
      if (sub.slot_[static_cast<std::size_t>(f)] >= 0) sub.adj_[i].push_back(f);
    }
  }
  return sub;
}

}  // namespace mstc

#include "mstc/preprocess.hpp"

#include "mstc/graph.hpp"

namespace mstc {

EdgeSet PreprocessReport::to_original(std::span<const EdgeId> reduced) const {
  EdgeSet out;
  out.reserve(reduced.size());
  for (EdgeId e : reduced) out.push_back(edge_map[static_cast<std::size_t>(e - 1)]);
  return make_edge_set(std::move(out));
}

namespace {

struct ActiveEdges {
  std::vector<char> alive;
  int count = 0;

  EdgeSet list() const {
    EdgeSet out;
    for (std::size_t e = 1; e < alive.size(); ++e) {
      if (alive[e]) out.push_back(static_cast<EdgeId>(e));
    }
    return out;
  }
};

// Step 1: drop every edge in conflict with a bridge. Returns true on change.
bool remove_bridge_conflicts(const Instance& inst, ActiveEdges& active) {
  bool changed = false;
  while (true) {
    bool pass_changed = false;
    for (EdgeId b : bridges(inst, active.list())) {
      for (EdgeId f : inst.conflicts_of(b)) {
        if (active.alive[static_cast<std::size_t>(f)]) {
          active.alive[static_cast<std::size_t>(f)] = 0;
          --active.count;
          pass_changed = true;
        }
      }
    }
    if (!pass_changed) return changed;
    changed = true;
  }
}

// Step 2: remove the first edge whose conflicts disconnect the graph.
bool remove_disconnecting_edge(const Instance& inst, ActiveEdges& active) {
  const int m = inst.num_edges();
  for (EdgeId e = 1; e <= m; ++e) {
    if (!active.alive[static_cast<std::size_t>(e)]) continue;
    std::vector<EdgeId> dropped;
    for (EdgeId f : inst.conflicts_of(e)) {
      if (active.alive[static_cast<std::size_t>(f)]) dropped.push_back(f);
    }
    if (dropped.empty()) continue;
    DisjointSets dsu(inst.num_nodes());
    for (EdgeId g = 1; g <= m; ++g) {
      if (active.alive[static_cast<std::size_t>(g)] && !contains(dropped, g)) {
        dsu.unite(inst.edge(g).u, inst.edge(g).v);
      }
    }
    if (dsu.components() > 1) {
      active.alive[static_cast<std::size_t>(e)] = 0;
      --active.count;
      return true;
    }
  }
  return false;
}

}  // namespace

PreprocessResult preprocess(const Instance& inst) {
  const int m = inst.num_edges();
  ActiveEdges active{std::vector<char>(static_cast<std::size_t>(m) + 1, 1), m};
  active.alive[0] = 0;
  if (!is_connected(inst, active.list())) throw InfeasibleError("input graph is disconnected");

  PreprocessReport report;
  while (true) {
    ++report.iterations;
    remove_bridge_conflicts(inst, active);
    if (!is_connected(inst, active.list())) {
      throw InfeasibleError("conflicts between bridges leave no spanning tree");
    }
    if (!remove_disconnecting_edge(inst, active)) break;
    if (!is_connected(inst, active.list())) throw InfeasibleError("reduction disconnected the graph");
  }

  const EdgeSet kept = active.list();
  report.removed_edges = set_difference(inst.all_edges(), kept);
  report.fixed_edges = bridges(inst, kept);
  report.edge_map = kept;

  std::vector<EdgeId> new_id(static_cast<std::size_t>(m) + 1, 0);
  std::vector<Edge> edges;
  edges.reserve(kept.size());
  for (std::size_t i = 0; i < kept.size(); ++i) {
    new_id[static_cast<std::size_t>(kept[i])] = static_cast<EdgeId>(i + 1);
    edges.push_back(inst.edge(kept[i]));
  }
  std::vector<ConflictPair> conflicts;
  for (const ConflictPair& c : inst.conflicts()) {
    const EdgeId a = new_id[static_cast<std::size_t>(c.first)];
    const EdgeId b = new_id[static_cast<std::size_t>(c.second)];
    if (a != 0 && b != 0) conflicts.push_back({a, b});
  }
  return {Instance(inst.num_nodes(), std::move(edges), std::move(conflicts)), std::move(report)};
}

}  // namespace mstc

#include "mstc/graph.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace mstc {

bool creates_cycle(const Instance& inst, std::span<const EdgeId> current, EdgeId candidate) {
  DisjointSets dsu(inst.num_nodes());
  for (EdgeId e : current) dsu.unite(inst.edge(e).u, inst.edge(e).v);
  return dsu.same(inst.edge(candidate).u, inst.edge(candidate).v);
}

KruskalResult kruskal(const Instance& inst, std::span<const EdgeId> allowed, std::span<const EdgeId> forced,
                      const std::vector<Weight>* weight_override) {
  DisjointSets dsu(inst.num_nodes());
  KruskalResult out;
  for (EdgeId e : forced) {
    if (!dsu.unite(inst.edge(e).u, inst.edge(e).v)) {
      throw PreconditionError("forced edge set contains a cycle (edge " + std::to_string(e) + ")");
    }
    out.edges.push_back(e);
  }
  auto weight_of = [&](EdgeId e) {
    return weight_override != nullptr ? (*weight_override)[static_cast<std::size_t>(e)] : inst.edge(e).w;
  };
  std::vector<EdgeId> order(allowed.begin(), allowed.end());
  std::sort(order.begin(), order.end(), [&](EdgeId a, EdgeId b) {
    const Weight wa = weight_of(a);
    const Weight wb = weight_of(b);
    return wa != wb ? wa < wb : a < b;
  });
  for (EdgeId e : order) {
    if (dsu.components() == 1) break;
    if (dsu.unite(inst.edge(e).u, inst.edge(e).v)) out.edges.push_back(e);
  }
  out.edges = make_edge_set(std::move(out.edges));
  out.status = dsu.components() == 1 ? ForestStatus::kSpanningTree : ForestStatus::kForest;
  return out;
}

EdgeSet bridges(const Instance& inst, std::span<const EdgeId> active) {
  const int n = inst.num_nodes();
  std::vector<std::vector<std::pair<int, EdgeId>>> adj(static_cast<std::size_t>(n) + 1);
  for (EdgeId e : active) {
    adj[static_cast<std::size_t>(inst.edge(e).u)].push_back({inst.edge(e).v, e});
    adj[static_cast<std::size_t>(inst.edge(e).v)].push_back({inst.edge(e).u, e});
  }
  std::vector<int> disc(static_cast<std::size_t>(n) + 1, 0), low(static_cast<std::size_t>(n) + 1, 0);
  EdgeSet out;
  int timer = 0;
  // Iterative DFS: (node, parent edge, next adjacency position).
  struct Frame {
    int node;
    EdgeId via;
    std::size_t next;
  };
  std::vector<Frame> stack;
  for (int root = 1; root <= n; ++root) {
    if (disc[static_cast<std::size_t>(root)] != 0) continue;
    disc[static_cast<std::size_t>(root)] = low[static_cast<std::size_t>(root)] = ++timer;
    stack.push_back({root, 0, 0});
    while (!stack.empty()) {
      Frame& f = stack.back();
      const auto& nbrs = adj[static_cast<std::size_t>(f.node)];
      if (f.next < nbrs.size()) {
        auto [to, e] = nbrs[f.next++];
        if (e == f.via) continue;
        if (disc[static_cast<std::size_t>(to)] != 0) {
          low[static_cast<std::size_t>(f.node)] = std::min(low[static_cast<std::size_t>(f.node)], disc[static_cast<std::size_t>(to)]);
        } else {
          disc[static_cast<std::size_t>(to)] = low[static_cast<std::size_t>(to)] = ++timer;
          stack.push_back({to, e, 0});
        }
        continue;
      }
      const Frame done = f;
      stack.pop_back();
      if (!stack.empty()) {
        const int parent = stack.back().node;
        low[static_cast<std::size_t>(parent)] = std::min(low[static_cast<std::size_t>(parent)], low[static_cast<std::size_t>(done.node)]);
        if (low[static_cast<std::size_t>(done.node)] > disc[static_cast<std::size_t>(parent)]) out.push_back(done.via);
      }
    }
  }
  return make_edge_set(std::move(out));
}

bool is_connected(const Instance& inst, std::span<const EdgeId> active) {
  DisjointSets dsu(inst.num_nodes());
  for (EdgeId e : active) dsu.unite(inst.edge(e).u, inst.edge(e).v);
  return dsu.components() == 1;
}

bool is_connected_without(const Instance& inst, std::span<const EdgeId> removed) {
  std::vector<char> gone(static_cast<std::size_t>(inst.num_edges()) + 1, 0);
  for (EdgeId e : removed) gone[static_cast<std::size_t>(e)] = 1;
  DisjointSets dsu(inst.num_nodes());
  for (EdgeId e = 1; e <= inst.num_edges(); ++e) {
    if (!gone[static_cast<std::size_t>(e)]) dsu.unite(inst.edge(e).u, inst.edge(e).v);
  }
  return dsu.components() == 1;
}

namespace {

constexpr double kFlowEps = 1e-12;

class Dinic {
 public:
  Dinic(int n, std::span<const FlowArc> arcs) : head_(static_cast<std::size_t>(n), -1), level_(static_cast<std::size_t>(n)), it_(static_cast<std::size_t>(n)) {
    for (const FlowArc& a : arcs) {
      add(a.from, a.to, a.capacity);
      add(a.to, a.from, 0.0);
    }
  }

  double run(int s, int t) {
    double flow = 0;
    while (bfs(s, t)) {
      for (std::size_t i = 0; i < it_.size(); ++i) it_[i] = head_[i];
      while (true) {
        const double pushed = dfs(s, t, std::numeric_limits<double>::infinity());
        if (pushed <= kFlowEps) break;
        flow += pushed;
      }
    }
    return flow;
  }

  std::vector<int> reachable(int s) const {
    std::vector<char> seen(head_.size(), 0);
    std::vector<int> queue{s};
    seen[static_cast<std::size_t>(s)] = 1;
    for (std::size_t q = 0; q < queue.size(); ++q) {
      for (int a = head_[static_cast<std::size_t>(queue[q])]; a != -1; a = arcs_[static_cast<std::size_t>(a)].next) {
        const Arc& arc = arcs_[static_cast<std::size_t>(a)];
        if (arc.cap > kFlowEps && !seen[static_cast<std::size_t>(arc.to)]) {
          seen[static_cast<std::size_t>(arc.to)] = 1;
          queue.push_back(arc.to);
        }
      }
    }
    std::sort(queue.begin(), queue.end());
    return queue;
  }

 private:
  struct Arc {
    int to;
    int next;
    double cap;
  };

  void add(int from, int to, double cap) {
    arcs_.push_back({to, head_[static_cast<std::size_t>(from)], cap});
    head_[static_cast<std::size_t>(from)] = static_cast<int>(arcs_.size()) - 1;
  }

  bool bfs(int s, int t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<int> q;
    level_[static_cast<std::size_t>(s)] = 0;
    q.push(s);
    while (!q.empty()) {
      const int v = q.front();
      q.pop();
      for (int a = head_[static_cast<std::size_t>(v)]; a != -1; a = arcs_[static_cast<std::size_t>(a)].next) {
        const Arc& arc = arcs_[static_cast<std::size_t>(a)];
        if (arc.cap > kFlowEps && level_[static_cast<std::size_t>(arc.to)] < 0) {
          level_[static_cast<std::size_t>(arc.to)] = level_[static_cast<std::size_t>(v)] + 1;
          q.push(arc.to);
        }
      }
    }
    return level_[static_cast<std::size_t>(t)] >= 0;
  }

  double dfs(int v, int t, double limit) {
    if (v == t) return limit;
    for (int& a = it_[static_cast<std::size_t>(v)]; a != -1; a = arcs_[static_cast<std::size_t>(a)].next) {
      Arc& arc = arcs_[static_cast<std::size_t>(a)];
      if (arc.cap <= kFlowEps || level_[static_cast<std::size_t>(arc.to)] != level_[static_cast<std::size_t>(v)] + 1) continue;
      const double got = dfs(arc.to, t, std::min(limit, arc.cap));
      if (got > kFlowEps) {
        arc.cap -= got;
        arcs_[static_cast<std::size_t>(a ^ 1)].cap += got;
        return got;
      }
    }
    return 0;
  }

  std::vector<Arc> arcs_;
  std::vector<int> head_;
  std::vector<int> level_;
  std::vector<int> it_;
};

}  // namespace

MaxFlowResult max_flow(int num_nodes, std::span<const FlowArc> arcs, int source, int sink) {
  if (source == sink) throw InputError("max_flow: source and sink coincide");
  if (source < 0 || source >= num_nodes || sink < 0 || sink >= num_nodes) {
    throw InputError("max_flow: terminal outside the node range");
  }
  for (const FlowArc& a : arcs) {
    if (a.capacity < 0) throw InputError("max_flow: negative capacity");
  }
  Dinic net(num_nodes, arcs);
  MaxFlowResult out;
  out.value = net.run(source, sink);
  out.source_side = net.reachable(source);
  return out;
}

}  // namespace mstc

#include "mstc/lp_relax.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <ostream>
#include <set>

#include "mstc/dual_simplex.hpp"
#include "mstc/graph.hpp"

namespace mstc {

namespace {

constexpr double kViolationTol = 1e-6;
constexpr double kSupportTol = 1e-9;
constexpr std::size_t kMaxCyclesPerSource = 200;

lp::Row to_row(const Cut& cut) {
  lp::Row row;
  for (EdgeId e : cut.edges) row.coeffs.emplace_back(e - 1, 1.0);
  if (cut.extra != 0) row.coeffs.emplace_back(cut.extra - 1, 1.0);
  row.sense = cut.kind == CutKind::kDegree ? lp::Sense::kGreaterEqual : lp::Sense::kLessEqual;
  row.rhs = cut.rhs;
  return row;
}

// Fundamental cycles of the candidate edges, scanned in the given order.
std::vector<EdgeSet> fundamental_cycles(const Instance& inst, std::span<const EdgeId> candidates) {
  const int n = inst.num_nodes();
  DisjointSets dsu(n);
  std::vector<std::vector<std::pair<NodeId, EdgeId>>> adj(static_cast<std::size_t>(n) + 1);
  std::vector<EdgeSet> cycles;
  std::vector<EdgeId> via(static_cast<std::size_t>(n) + 1);
  std::vector<NodeId> parent(static_cast<std::size_t>(n) + 1);
  for (EdgeId e : candidates) {
    const Edge& ed = inst.edge(e);
    if (dsu.unite(ed.u, ed.v)) {
      adj[static_cast<std::size_t>(ed.u)].push_back({ed.v, e});
      adj[static_cast<std::size_t>(ed.v)].push_back({ed.u, e});
      continue;
    }
    if (cycles.size() >= kMaxCyclesPerSource) continue;
    std::fill(parent.begin(), parent.end(), 0);
    std::vector<NodeId> queue{ed.u};
    parent[static_cast<std::size_t>(ed.u)] = ed.u;
    for (std::size_t i = 0; i < queue.size() && parent[static_cast<std::size_t>(ed.v)] == 0; ++i) {
      for (auto [to, f] : adj[static_cast<std::size_t>(queue[i])]) {
        if (parent[static_cast<std::size_t>(to)] != 0) continue;
        parent[static_cast<std::size_t>(to)] = queue[i];
        via[static_cast<std::size_t>(to)] = f;
        queue.push_back(to);
      }
    }
    EdgeSet cycle{e};
    for (NodeId w = ed.v; w != ed.u; w = parent[static_cast<std::size_t>(w)]) cycle.push_back(via[static_cast<std::size_t>(w)]);
    cycles.push_back(make_edge_set(std::move(cycle)));
  }
  return cycles;
}

std::vector<EdgeId> by_value_desc(std::vector<EdgeId> edges, std::span<const double> x) {
  std::sort(edges.begin(), edges.end(), [&](EdgeId a, EdgeId b) {
    const double xa = x[static_cast<std::size_t>(a - 1)];
    const double xb = x[static_cast<std::size_t>(b - 1)];
    return xa != xb ? xa > xb : a < b;
  });
  return edges;
}

}  // namespace

const char* to_string(CutKind kind) {
  switch (kind) {
    case CutKind::kSubtour: return "subtour";
    case CutKind::kConflictCycle: return "conflict-cycle";
    case CutKind::kDegree: return "degree";
    case CutKind::kConflictPair: return "conflict-pair";
  }
  return "?";
}

double Cut::lhs(std::span<const double> x) const {
  double s = 0;
  for (EdgeId e : edges) s += x[static_cast<std::size_t>(e - 1)];
  if (extra != 0) s += x[static_cast<std::size_t>(extra - 1)];
  return s;
}

double Cut::violation(std::span<const double> x) const {
  return kind == CutKind::kDegree ? rhs - lhs(x) : lhs(x) - rhs;
}

bool Cut::satisfied_by(std::span<const EdgeId> tree) const {
  int count = 0;
  for (EdgeId e : tree) {
    if (contains(edges, e) || e == extra) ++count;
  }
  return kind == CutKind::kDegree ? count >= rhs : count <= rhs;
}

EdgeSet LpSolution::support(double threshold) const {
  EdgeSet out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > threshold) out.push_back(static_cast<EdgeId>(i + 1));
  }
  return out;
}

std::vector<Cut> separate_subtour(const Instance& inst, std::span<const double> x) {
  const int n = inst.num_nodes();
  const int source = 0;
  const int sink = n + 1;
  std::vector<double> degree(static_cast<std::size_t>(n) + 1, 0.0);
  std::vector<FlowArc> base;
  for (EdgeId e = 1; e <= inst.num_edges(); ++e) {
    const double xe = x[static_cast<std::size_t>(e - 1)];
    if (xe <= kSupportTol) continue;
    const Edge& ed = inst.edge(e);
    base.push_back({ed.u, ed.v, xe});
    base.push_back({ed.v, ed.u, xe});
    degree[static_cast<std::size_t>(ed.u)] += xe;
    degree[static_cast<std::size_t>(ed.v)] += xe;
  }
  // min over S containing k of x(delta(S)) + sum_{v in S} (2 - deg(v)) equals 2(|S| - x(E(S))).
  for (NodeId v = 1; v <= n; ++v) {
    const double b = 2.0 - degree[static_cast<std::size_t>(v)];
    if (b > 0) base.push_back({v, sink, b});
    if (b < 0) base.push_back({source, v, -b});
  }
  const double big = 4.0 * n + 4.0;

  std::vector<Cut> cuts;
  std::set<std::vector<NodeId>> seen;
  std::vector<char> in_s(static_cast<std::size_t>(n) + 2, 0);
  for (NodeId k = 1; k <= n; ++k) {
    std::vector<FlowArc> arcs = base;
    arcs.push_back({source, k, big});
    const MaxFlowResult flow = max_flow(n + 2, arcs, source, sink);
    std::vector<NodeId> nodes;
    for (int v : flow.source_side) {
      if (v >= 1 && v <= n) nodes.push_back(v);
    }
    if (nodes.size() < 3 || !seen.insert(nodes).second) continue;
    std::fill(in_s.begin(), in_s.end(), 0);
    for (NodeId v : nodes) in_s[static_cast<std::size_t>(v)] = 1;
    Cut cut;
    cut.kind = CutKind::kSubtour;
    cut.nodes = nodes;
    cut.rhs = static_cast<double>(nodes.size()) - 1.0;
    for (EdgeId e = 1; e <= inst.num_edges(); ++e) {
      const Edge& ed = inst.edge(e);
      if (in_s[static_cast<std::size_t>(ed.u)] && in_s[static_cast<std::size_t>(ed.v)]) cut.edges.push_back(e);
    }
    if (cut.violation(x) > kViolationTol) cuts.push_back(std::move(cut));
  }
  return cuts;
}

std::vector<Cut> separate_conflict_cycle(const Instance& inst, std::span<const double> x,
                                         std::span<const Cut> subtour_cuts) {
  std::vector<EdgeSet> cycles;
  for (const Cut& cut : subtour_cuts) {
    std::vector<EdgeId> inside(cut.edges.begin(), cut.edges.end());
    auto found = fundamental_cycles(inst, by_value_desc(std::move(inside), x));
    cycles.insert(cycles.end(), found.begin(), found.end());
  }
  std::vector<EdgeId> rounded;
  for (EdgeId e = 1; e <= inst.num_edges(); ++e) {
    if (x[static_cast<std::size_t>(e - 1)] >= 0.5) rounded.push_back(e);
  }
  auto found = fundamental_cycles(inst, by_value_desc(std::move(rounded), x));
  cycles.insert(cycles.end(), found.begin(), found.end());

  std::vector<Cut> cuts;
  std::set<std::pair<EdgeSet, EdgeId>> seen;
  for (const EdgeSet& cycle : cycles) {
    std::map<EdgeId, int> hits;
    for (EdgeId e : cycle) {
      for (EdgeId f : inst.conflicts_of(e)) ++hits[f];
    }
    for (auto [candidate, count] : hits) {
      if (count < 2 || contains(cycle, candidate)) continue;
      Cut cut;
      cut.kind = CutKind::kConflictCycle;
      cut.edges = cycle;
      cut.extra = candidate;
      cut.rhs = static_cast<double>(cycle.size()) - 1.0;
      if (cut.violation(x) > kViolationTol && seen.emplace(cycle, candidate).second) cuts.push_back(std::move(cut));
    }
  }
  return cuts;
}

LpSolution solve_lp(const Instance& inst, const LpOptions& options) {
  using Clock = std::chrono::steady_clock;
  const auto deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(options.time_limit));
  const int m = inst.num_edges();
  const int n = inst.num_nodes();

  std::vector<double> cost(static_cast<std::size_t>(m));
  for (EdgeId e = 1; e <= m; ++e) cost[static_cast<std::size_t>(e - 1)] = inst.edge(e).w;
  lp::DualSimplex engine(std::move(cost), std::vector<double>(static_cast<std::size_t>(m), 0.0),
                         std::vector<double>(static_cast<std::size_t>(m), 1.0));

  lp::Row cardinality;
  for (int j = 0; j < m; ++j) cardinality.coeffs.emplace_back(j, 1.0);
  cardinality.sense = lp::Sense::kEqual;
  cardinality.rhs = n - 1;
  engine.add_row(cardinality);

  LpSolution out;
  std::vector<EdgeSet> incident(static_cast<std::size_t>(n) + 1);
  for (EdgeId e = 1; e <= m; ++e) {
    incident[static_cast<std::size_t>(inst.edge(e).u)].push_back(e);
    incident[static_cast<std::size_t>(inst.edge(e).v)].push_back(e);
  }
  if (n > 1) {
    for (NodeId v = 1; v <= n; ++v) {
      Cut cut;
      cut.kind = CutKind::kDegree;
      cut.edges = incident[static_cast<std::size_t>(v)];
      cut.nodes = {v};
      cut.rhs = 1;
      engine.add_row(to_row(cut));
      out.cuts.push_back(std::move(cut));
    }
  }

  std::set<ConflictPair> added_pairs;
  while (true) {
    const lp::Status status = engine.solve(deadline);
    if (status == lp::Status::kInfeasible) {
      out.status = LpStatus::kInfeasible;
      return out;
    }
    const bool out_of_time = status != lp::Status::kOptimal || Clock::now() > deadline;
    out.x = engine.primal();
    for (double& v : out.x) v = std::clamp(v, 0.0, 1.0);
    out.reduced_costs = engine.reduced_costs();
    out.objective = engine.objective();
    out.round_objectives.push_back(out.objective);
    ++out.rounds;
    if (out_of_time || out.rounds >= options.max_rounds) {
      out.status = LpStatus::kTimeLimit;
      return out;
    }

    std::vector<Cut> fresh;
    for (const ConflictPair& c : inst.conflicts()) {
      if (out.x[static_cast<std::size_t>(c.first - 1)] + out.x[static_cast<std::size_t>(c.second - 1)] > 1.0 + kViolationTol &&
          added_pairs.insert(c).second) {
        Cut cut;
        cut.kind = CutKind::kConflictPair;
        cut.edges = {c.first, c.second};
        cut.rhs = 1;
        fresh.push_back(std::move(cut));
      }
    }
    if (options.include_subtours) {
      std::vector<Cut> subtours = separate_subtour(inst, out.x);
      std::vector<Cut> cycles = separate_conflict_cycle(inst, out.x, subtours);
      std::move(subtours.begin(), subtours.end(), std::back_inserter(fresh));
      std::move(cycles.begin(), cycles.end(), std::back_inserter(fresh));
    }
    if (fresh.empty()) {
      out.status = LpStatus::kOptimal;
      return out;
    }
    for (Cut& cut : fresh) {
      engine.add_row(to_row(cut));
      out.cuts.push_back(std::move(cut));
    }
  }
}

void write_lp_model(std::ostream& out, const Instance& inst, std::span<const Cut> cuts) {
  out << "\\ MSTC linear relaxation: n=" << inst.num_nodes() << " m=" << inst.num_edges()
      << " conflicts=" << inst.num_conflicts() << "\n";
  out << "Minimize\n obj:";
  for (EdgeId e = 1; e <= inst.num_edges(); ++e) {
    out << (e == 1 ? " " : " + ") << inst.edge(e).w << " x" << e;
  }
  out << "\nSubject To\n card:";
  for (EdgeId e = 1; e <= inst.num_edges(); ++e) out << (e == 1 ? " " : " + ") << "x" << e;
  out << " = " << inst.num_nodes() - 1 << "\n";
  int index = 0;
  for (const Cut& cut : cuts) {
    out << " " << to_string(cut.kind)[0] << ++index << ":";
    bool first = true;
    for (EdgeId e : cut.edges) {
      out << (first ? " " : " + ") << "x" << e;
      first = false;
    }
    if (cut.extra != 0) out << (first ? " " : " + ") << "x" << cut.extra;
    out << (cut.kind == CutKind::kDegree ? " >= " : " <= ") << cut.rhs << "\n";
  }
  out << "Bounds\n";
  for (EdgeId e = 1; e <= inst.num_edges(); ++e) out << " 0 <= x" << e << " <= 1\n";
  out << "End\n";
}

}  // namespace mstc

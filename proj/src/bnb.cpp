#include "mstc/bnb.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <ostream>
#include <string>

#include "mstc/graph.hpp"

namespace mstc {

const char* to_string(SubproblemStatus status) {
  switch (status) {
    case SubproblemStatus::kOptimal: return "optimal";
    case SubproblemStatus::kFeasibleTimeout: return "feasible-timeout";
    case SubproblemStatus::kInfeasible: return "infeasible";
    case SubproblemStatus::kNoImprovingSolution: return "no-improving-solution";
    case SubproblemStatus::kTimeout: return "timeout";
  }
  return "?";
}

void SubproblemSpec::validate(const Instance& inst) const {
  if (!(time_budget > 0)) throw InputError("subproblem time budget must be positive");
  if (std::isnan(cutoff)) throw InputError("subproblem cutoff is NaN");
  for (EdgeId e : allowed) {
    if (e < 1 || e > inst.num_edges()) throw InputError("allowed edge " + std::to_string(e) + " out of range");
  }
  if (!std::is_sorted(allowed.begin(), allowed.end()) || !std::is_sorted(must_use.begin(), must_use.end())) {
    throw InputError("subproblem edge sets must be sorted");
  }
  for (EdgeId e : must_use) {
    if (!contains(allowed, e)) throw InputError("must-use edge " + std::to_string(e) + " is not allowed");
  }
}

namespace {

enum : char { kFree = 0, kIn = 1, kOut = 2 };

class BranchAndBound {
 public:
  BranchAndBound(const Instance& inst, const SubproblemSpec& spec)
      : inst_(inst),
        spec_(spec),
        order_(spec.allowed),
        state_(static_cast<std::size_t>(inst.num_edges()) + 1, kFree),
        in_must_(static_cast<std::size_t>(inst.num_edges()) + 1, 0),
        mark_(static_cast<std::size_t>(inst.num_edges()) + 1, 0),
        deadline_(std::chrono::steady_clock::now() +
                  std::chrono::duration_cast<std::chrono::steady_clock::duration>(std::chrono::duration<double>(spec.time_budget))) {
    std::sort(order_.begin(), order_.end(), [&](EdgeId a, EdgeId b) {
      const Weight wa = inst_.edge(a).w;
      const Weight wb = inst_.edge(b).w;
      return wa != wb ? wa < wb : a < b;
    });
    for (EdgeId e : spec.must_use) in_must_[static_cast<std::size_t>(e)] = 1;
  }

  SubproblemResult run() {
    dfs(relax());
    SubproblemResult out;
    out.nodes_explored = nodes_;
    out.solution = best_;
    if (timed_out_) {
      out.status = best_ ? SubproblemStatus::kFeasibleTimeout : SubproblemStatus::kTimeout;
    } else if (best_) {
      out.status = SubproblemStatus::kOptimal;
    } else {
      out.status = std::isinf(spec_.cutoff) ? SubproblemStatus::kInfeasible : SubproblemStatus::kNoImprovingSolution;
    }
    return out;
  }

 private:
  struct Relaxation {
    bool spanning = false;
    Weight weight = 0;
    EdgeSet tree;
  };

  Relaxation relax() const {
    DisjointSets dsu(inst_.num_nodes());
    Relaxation r;
    for (EdgeId e : included_) {
      dsu.unite(inst_.edge(e).u, inst_.edge(e).v);
      r.tree.push_back(e);
      r.weight += inst_.edge(e).w;
    }
    for (EdgeId e : order_) {
      if (dsu.components() == 1) break;
      if (state_[static_cast<std::size_t>(e)] != kFree) continue;
      if (dsu.unite(inst_.edge(e).u, inst_.edge(e).v)) {
        r.tree.push_back(e);
        r.weight += inst_.edge(e).w;
      }
    }
    r.spanning = dsu.components() == 1;
    std::sort(r.tree.begin(), r.tree.end());
    return r;
  }

  bool improves(Weight w) const {
    const double slack = inst_.integral_weights() ? 0.5 : 1e-9 * (1.0 + std::fabs(w));
    if (best_) return w < best_->weight - slack;
    return w <= spec_.cutoff + slack;
  }

  void assign(EdgeId e, char s) {
    state_[static_cast<std::size_t>(e)] = s;
    trail_.push_back(e);
    if (s == kIn) included_.push_back(e);
  }

  void include(EdgeId e) {
    assign(e, kIn);
    for (EdgeId f : inst_.conflicts_of(e)) {
      if (state_[static_cast<std::size_t>(f)] == kFree) assign(f, kOut);
    }
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      const EdgeId e = trail_.back();
      trail_.pop_back();
      if (state_[static_cast<std::size_t>(e)] == kIn) included_.pop_back();
      state_[static_cast<std::size_t>(e)] = kFree;
    }
  }

  bool out_of_time() {
    if (!timed_out_ && (nodes_ & 31) == 0 && std::chrono::steady_clock::now() > deadline_) timed_out_ = true;
    return timed_out_;
  }

  // Branch children, each given as the edge and whether it is included.
  struct Child {
    EdgeId edge;
    bool include;
  };

  void dfs(const Relaxation& node) {
    ++nodes_;
    if (out_of_time()) return;
    if (!node.spanning || !improves(node.weight)) return;

    for (EdgeId e : node.tree) mark_[static_cast<std::size_t>(e)] = 1;
    EdgeId bi = 0, bj = 0;
    Weight best_pair = -kInfinity;
    for (EdgeId e : node.tree) {
      for (EdgeId f : inst_.conflicts_of(e)) {
        if (f <= e || !mark_[static_cast<std::size_t>(f)]) continue;
        const Weight w = inst_.edge(e).w + inst_.edge(f).w;
        if (w > best_pair) {
          best_pair = w;
          bi = e;
          bj = f;
        }
      }
    }
    bool meets_must = spec_.must_use.empty();
    for (EdgeId e : node.tree) {
      meets_must = meets_must || in_must_[static_cast<std::size_t>(e)];
      mark_[static_cast<std::size_t>(e)] = 0;
    }

    std::vector<Child> children;
    if (bi != 0) {
      EdgeId e = bi;
      if (state_[static_cast<std::size_t>(bi)] == kIn) {
        e = bj;
      } else if (state_[static_cast<std::size_t>(bj)] == kFree && inst_.edge(bj).w > inst_.edge(bi).w) {
        e = bj;
      }
      children = {{e, false}, {e, true}};
    } else if (meets_must) {
      best_ = check_solution(inst_, node.tree);
      return;
    } else {
      const EdgeId b = cheapest_usable_must_edge();
      if (b == 0) return;
      children = {{b, true}, {b, false}};
    }

    std::vector<std::pair<Relaxation, Child>> evaluated;
    for (const Child& c : children) {
      const std::size_t mark = trail_.size();
      c.include ? include(c.edge) : assign(c.edge, kOut);
      evaluated.emplace_back(relax(), c);
      undo(mark);
    }
    std::stable_sort(evaluated.begin(), evaluated.end(), [](const auto& a, const auto& b) {
      if (a.first.spanning != b.first.spanning) return a.first.spanning;
      return a.first.weight < b.first.weight;
    });
    for (const auto& [relaxation, c] : evaluated) {
      if (timed_out_) return;
      const std::size_t mark = trail_.size();
      c.include ? include(c.edge) : assign(c.edge, kOut);
      dfs(relaxation);
      undo(mark);
    }
  }

  EdgeId cheapest_usable_must_edge() const {
    DisjointSets dsu(inst_.num_nodes());
    for (EdgeId e : included_) dsu.unite(inst_.edge(e).u, inst_.edge(e).v);
    for (EdgeId e : order_) {
      if (!in_must_[static_cast<std::size_t>(e)] || state_[static_cast<std::size_t>(e)] != kFree) continue;
      if (!dsu.same(inst_.edge(e).u, inst_.edge(e).v)) return e;
    }
    return 0;
  }

  const Instance& inst_;
  const SubproblemSpec& spec_;
  std::vector<EdgeId> order_;
  std::vector<char> state_;
  std::vector<char> in_must_;
  std::vector<char> mark_;
  std::vector<EdgeId> trail_;
  std::vector<EdgeId> included_;
  std::optional<Solution> best_;
  std::chrono::steady_clock::time_point deadline_;
  std::int64_t nodes_ = 0;
  bool timed_out_ = false;
};

void write_sum(std::ostream& out, std::span<const EdgeId> edges) {
  bool first = true;
  for (EdgeId e : edges) {
    out << (first ? " " : " + ") << "x" << e;
    first = false;
  }
}

}  // namespace

SubproblemResult solve_restricted(const Instance& inst, const SubproblemSpec& spec) {
  spec.validate(inst);
  return BranchAndBound(inst, spec).run();
}

void write_milp_model(std::ostream& out, const Instance& inst, const SubproblemSpec& spec) {
  spec.validate(inst);
  const int n = inst.num_nodes();
  const EdgeSet& f = spec.allowed;
  out << "\\ MSTC restricted binary program: n=" << n << " |F|=" << f.size() << "\n";
  out << "Minimize\n obj:";
  for (std::size_t i = 0; i < f.size(); ++i) out << (i == 0 ? " " : " + ") << inst.edge(f[i]).w << " x" << f[i];
  out << "\nSubject To\n card:";
  write_sum(out, f);
  out << " = " << n - 1 << "\n";

  std::vector<EdgeSet> incident(static_cast<std::size_t>(n) + 1);
  for (EdgeId e : f) {
    incident[static_cast<std::size_t>(inst.edge(e).u)].push_back(e);
    incident[static_cast<std::size_t>(inst.edge(e).v)].push_back(e);
  }
  for (NodeId v = 1; v <= n && n > 1; ++v) {
    out << " deg" << v << ":";
    if (incident[static_cast<std::size_t>(v)].empty()) {
      out << " 0 x" << (f.empty() ? 1 : f.front());
    } else {
      write_sum(out, incident[static_cast<std::size_t>(v)]);
    }
    out << " >= 1\n";
  }
  int k = 0;
  for (const ConflictPair& c : inst.conflicts()) {
    if (contains(f, c.first) && contains(f, c.second)) {
      out << " conf" << ++k << ": x" << c.first << " + x" << c.second << " <= 1\n";
    }
  }
  if (!spec.must_use.empty()) {
    out << " bucket:";
    write_sum(out, spec.must_use);
    out << " >= 1\n";
  }
  if (std::isfinite(spec.cutoff)) {
    out << " cutoff:";
    for (std::size_t i = 0; i < f.size(); ++i) out << (i == 0 ? " " : " + ") << inst.edge(f[i]).w << " x" << f[i];
    out << " <= " << spec.cutoff << "\n";
  }

  if (n <= 12) {
    int s = 0;
    for (std::uint32_t mask = 1; mask < (1u << n) - 1; ++mask) {
      const int size = std::popcount(mask);
      if (size < 3) continue;
      EdgeSet inside;
      for (EdgeId e : f) {
        const Edge& ed = inst.edge(e);
        if ((mask >> (ed.u - 1) & 1u) && (mask >> (ed.v - 1) & 1u)) inside.push_back(e);
      }
      if (static_cast<int>(inside.size()) < size) continue;
      out << " sub" << ++s << ":";
      write_sum(out, inside);
      out << " <= " << size - 1 << "\n";
    }
  } else {
    // Single-commodity flow: node 1 ships one unit to every other node.
    std::vector<std::vector<std::string>> inflow(static_cast<std::size_t>(n) + 1), outflow(static_cast<std::size_t>(n) + 1);
    for (EdgeId e : f) {
      const Edge& ed = inst.edge(e);
      const std::string a = "f" + std::to_string(e) + "a";
      const std::string b = "f" + std::to_string(e) + "b";
      outflow[static_cast<std::size_t>(ed.u)].push_back(a);
      inflow[static_cast<std::size_t>(ed.v)].push_back(a);
      outflow[static_cast<std::size_t>(ed.v)].push_back(b);
      inflow[static_cast<std::size_t>(ed.u)].push_back(b);
      out << " cap" << e << "a: " << a << " - " << n - 1 << " x" << e << " <= 0\n";
      out << " cap" << e << "b: " << b << " - " << n - 1 << " x" << e << " <= 0\n";
    }
    for (NodeId v = 1; v <= n; ++v) {
      out << " flow" << v << ":";
      bool first = true;
      for (const auto& name : inflow[static_cast<std::size_t>(v)]) {
        out << (first ? " " : " + ") << name;
        first = false;
      }
      for (const auto& name : outflow[static_cast<std::size_t>(v)]) {
        out << (first ? " - " : " - ") << name;
        first = false;
      }
      if (first) out << " 0 x" << (f.empty() ? 1 : f.front());
      out << " = " << (v == 1 ? -(n - 1) : 1) << "\n";
    }
  }
  out << "Binary\n";
  for (EdgeId e : f) out << " x" << e << "\n";
  out << "End\n";
}

}  // namespace mstc

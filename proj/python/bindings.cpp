#include <pybind11/functional.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <tuple>

#include "mstc/bnb.hpp"
#include "mstc/graph.hpp"
#include "mstc/io.hpp"
#include "mstc/kernel_search.hpp"
#include "mstc/lp_relax.hpp"
#include "mstc/preprocess.hpp"

namespace py = pybind11;
using namespace mstc;

namespace {

Instance make_instance(int n, const std::vector<std::tuple<int, int, double>>& edges,
                       const std::vector<std::pair<int, int>>& conflicts) {
  std::vector<Edge> es;
  for (const auto& [u, v, w] : edges) es.push_back({u, v, w});
  std::vector<ConflictPair> cs;
  for (const auto& [a, b] : conflicts) cs.push_back({std::min(a, b), std::max(a, b)});
  return Instance(n, std::move(es), std::move(cs));
}

py::dict solution_dict(const Solution& s) {
  py::dict d;
  d["edges"] = s.edges;
  d["weight"] = s.weight;
  d["feasible"] = s.feasible();
  d["spanning_tree"] = s.is_spanning_tree;
  d["conflicts"] = s.conflict_count;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Minimum spanning tree with conflicts";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<InfeasibleError>(m, "InfeasibleError");
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);

  py::class_<Instance>(m, "Instance")
      .def(py::init(&make_instance), py::arg("n"), py::arg("edges"), py::arg("conflicts") = std::vector<std::pair<int, int>>{})
      .def_property_readonly("n", &Instance::num_nodes)
      .def_property_readonly("m", &Instance::num_edges)
      .def_property_readonly("num_conflicts", &Instance::num_conflicts)
      .def_property_readonly("edges", [](const Instance& inst) {
        std::vector<std::tuple<int, int, double>> out;
        for (const Edge& e : inst.edges()) out.emplace_back(e.u, e.v, e.w);
        return out;
      })
      .def_property_readonly("conflicts", [](const Instance& inst) {
        std::vector<std::pair<int, int>> out;
        for (const ConflictPair& c : inst.conflicts()) out.emplace_back(c.first, c.second);
        return out;
      })
      .def("to_native", [](const Instance& inst) {
        std::ostringstream ss;
        write_native(ss, inst);
        return ss.str();
      })
      .def(py::self == py::self)
      .def("__repr__", [](const Instance& inst) {
        return "<Instance n=" + std::to_string(inst.num_nodes()) + " m=" + std::to_string(inst.num_edges()) +
               " conflicts=" + std::to_string(inst.num_conflicts()) + ">";
      });

  m.def("from_native", [](const std::string& text) {
    std::istringstream ss(text);
    return read_native(ss);
  });
  m.def("load", [](const std::string& path, const std::string& format) { return parse_instance(path, parse_format(format)); },
        py::arg("path"), py::arg("format") = "native");
  m.def("generate", [](int nodes, int edges, double conflict_rate, std::uint64_t seed, int min_weight, int max_weight,
                       bool plant_tree) {
    GeneratorOptions o;
    o.nodes = nodes;
    o.edges = edges;
    o.conflict_rate = conflict_rate;
    o.seed = seed;
    o.min_weight = min_weight;
    o.max_weight = max_weight;
    o.plant_feasible_tree = plant_tree;
    return generate_instance(o);
  }, py::arg("nodes"), py::arg("edges"), py::arg("conflict_rate") = 0.0, py::arg("seed") = 1,
     py::arg("min_weight") = 1, py::arg("max_weight") = 100, py::arg("plant_tree") = false);

  m.def("check_solution", [](const Instance& inst, std::vector<int> edges) {
    return solution_dict(check_solution(inst, make_edge_set(std::move(edges))));
  });

  m.def("mst", [](const Instance& inst) {
    const KruskalResult r = kruskal(inst, inst.all_edges());
    return py::make_tuple(r.edges, r.spanning() ? inst.weight(r.edges) : kInfinity);
  }, "Minimum spanning tree ignoring conflicts: (edges, weight or inf).");

  m.def("preprocess", [](const Instance& inst) {
    const PreprocessResult r = preprocess(inst);
    py::dict d;
    d["instance"] = r.instance;
    d["removed"] = r.report.removed_edges;
    d["fixed"] = r.report.fixed_edges;
    d["edge_map"] = r.report.edge_map;
    return d;
  });

  m.def("solve_lp", [](const Instance& inst, bool include_subtours, double time_limit) {
    LpOptions o;
    o.include_subtours = include_subtours;
    o.time_limit = time_limit;
    const LpSolution lp = solve_lp(inst, o);
    py::dict d;
    d["status"] = lp.status == LpStatus::kOptimal ? "optimal" : lp.status == LpStatus::kInfeasible ? "infeasible" : "time-limit";
    d["objective"] = lp.objective;
    d["x"] = lp.x;
    d["reduced_costs"] = lp.reduced_costs;
    d["cuts"] = lp.cuts.size();
    d["rounds"] = lp.rounds;
    return d;
  }, py::arg("instance"), py::arg("include_subtours") = true, py::arg("time_limit") = 60.0);

  m.def("solve_restricted", [](const Instance& inst, std::optional<std::vector<int>> allowed, std::vector<int> must_use,
                               double cutoff, double time_budget) {
    SubproblemSpec spec;
    spec.allowed = allowed ? make_edge_set(*allowed) : inst.all_edges();
    spec.must_use = make_edge_set(std::move(must_use));
    spec.cutoff = cutoff;
    spec.time_budget = time_budget;
    const SubproblemResult r = solve_restricted(inst, spec);
    py::dict d;
    d["status"] = to_string(r.status);
    d["solution"] = r.solution ? py::object(solution_dict(*r.solution)) : py::none();
    d["nodes"] = r.nodes_explored;
    return d;
  }, py::arg("instance"), py::arg("allowed") = py::none(), py::arg("must_use") = std::vector<int>{},
     py::arg("cutoff") = kInfinity, py::arg("time_budget") = 60.0);

  py::class_<KsParams>(m, "KsParams")
      .def(py::init<>())
      .def_readwrite("alpha", &KsParams::alpha)
      .def_readwrite("beta", &KsParams::beta)
      .def_readwrite("delta", &KsParams::delta)
      .def_readwrite("P", &KsParams::outer_iterations)
      .def_readwrite("inner_time_limit", &KsParams::inner_time_limit)
      .def_readwrite("global_time_limit", &KsParams::global_time_limit)
      .def_readwrite("stop_rule", &KsParams::stop_rule)
      .def_property("seed", [](const KsParams& p) { return p.greedy.rng_seed; },
                    [](KsParams& p, std::uint64_t s) { p.greedy.rng_seed = s; })
      .def_property("h_max", [](const KsParams& p) { return p.greedy.h_max; }, [](KsParams& p, int v) { p.greedy.h_max = v; })
      .def_property("t_max", [](const KsParams& p) { return p.greedy.t_max; }, [](KsParams& p, int v) { p.greedy.t_max = v; })
      .def("kernel_size", &KsParams::kernel_size)
      .def("bucket_size", &KsParams::bucket_size)
      .def("validate", &KsParams::validate);

  m.def("default_params", [](const std::string& family) { return default_params(parse_family(family)); },
        py::arg("family") = "zkp");

  m.def("solve", [](const Instance& inst, std::optional<KsParams> params, std::function<void(py::dict)> trace) {
    KsParams p = params.value_or(default_params(Family::kZkp));
    TraceSink sink;
    if (trace) {
      sink = [trace](const TraceRecord& r) {
        py::gil_scoped_acquire gil;
        py::dict d;
        d["p"] = r.p;
        d["k"] = r.k;
        d["bucket_size"] = r.bucket_size;
        d["kernel_size"] = r.kernel_size;
        d["status"] = to_string(r.status);
        d["ub"] = r.upper_bound;
        d["elapsed"] = r.elapsed;
        trace(d);
      };
    }
    KsRunResult r;
    {
      py::gil_scoped_release release;
      r = run_kernel_search(inst, p, sink);
    }
    py::dict d;
    d["status"] = to_string(r.status);
    d["best"] = r.best ? py::object(solution_dict(*r.best)) : py::none();
    d["start_tree"] = r.start_tree ? py::object(solution_dict(*r.start_tree)) : py::none();
    d["ub_time"] = r.time_to_best;
    d["total_time"] = r.total_time;
    d["subproblems"] = r.subproblems;
    d["violations"] = r.incumbent_violations;
    return d;
  }, py::arg("instance"), py::arg("params") = py::none(), py::arg("trace") = nullptr);
}

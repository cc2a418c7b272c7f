#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>
#include <sstream>

#include "hitaug/errors.hpp"
#include "hitaug/estimator.hpp"
#include "hitaug/generators.hpp"
#include "hitaug/hitting.hpp"
#include "hitaug/io.hpp"
#include "hitaug/kcenter.hpp"
#include "hitaug/optimizers.hpp"

namespace py = pybind11;
using namespace hitaug;

namespace {

ShortcutSet to_set(const std::vector<NodeId>& endpoints) { return ShortcutSet(endpoints); }

std::vector<NodeId> to_list(const ShortcutSet& F) { return {F.endpoints().begin(), F.endpoints().end()}; }

BipartiteInstance from_edges(std::size_t n, const std::vector<std::pair<NodeId, NodeId>>& edges,
                             const std::vector<bool>& red) {
  if (red.size() != n) throw InvalidParameter("red mask must have one entry per node");
  std::vector<Edge> e(edges.begin(), edges.end());
  std::vector<Color> colors(n);
  for (std::size_t v = 0; v < n; ++v) colors[v] = red[v] ? Color::Red : Color::Blue;
  return BipartiteInstance::build(n, e, colors);
}

EstimatorConfig make_estimator(const std::string& mode, double epsilon, double delta, std::uint64_t seed,
                               std::optional<double> lambda, std::optional<std::size_t> walk_length,
                               std::optional<std::uint64_t> samples, std::optional<double> subsample) {
  EstimatorConfig c;
  if (mode == "experiment") {
    c = EstimatorConfig::experiment(seed);
  } else if (mode != "guarantee") {
    throw InvalidParameter("mode must be 'guarantee' or 'experiment'");
  }
  c.epsilon = epsilon;
  c.delta = delta;
  c.seed = seed;
  c.lambda = lambda;
  c.walk_length = walk_length;
  c.samples_per_node = samples;
  if (subsample) c.subsample_fraction = *subsample;
  return c;
}

py::dict trace_dict(const GreedyResult& r) {
  py::list steps;
  for (const auto& s : r.trace.steps) steps.append(py::make_tuple(s.endpoint, s.objective, s.evaluations));
  py::dict d;
  d["shortcuts"] = to_list(r.shortcuts);
  d["initial_objective"] = r.trace.initial_objective;
  d["iteration_budget"] = r.trace.iteration_budget;
  d["steps"] = steps;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Shortcut-edge augmentation for red/blue random-walk hitting times";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<DisconnectedGraph>(m, "DisconnectedGraph", base.ptr());
  py::register_exception<InvalidBipartition>(m, "InvalidBipartition", base.ptr());
  py::register_exception<MalformedInput>(m, "MalformedInput", base.ptr());
  py::register_exception<CapacityExceeded>(m, "CapacityExceeded", base.ptr());
  py::register_exception<SolverFailure>(m, "SolverFailure", base.ptr());
  py::register_exception<InvalidParameter>(m, "InvalidParameter", base.ptr());
  py::register_exception<InstanceTooLarge>(m, "InstanceTooLarge", base.ptr());
  py::register_exception<GenerationFailed>(m, "GenerationFailed", base.ptr());
  py::register_exception<InvariantViolation>(m, "InvariantViolation", base.ptr());

  py::class_<BipartiteInstance>(m, "Instance")
      .def(py::init(&from_edges), py::arg("n"), py::arg("edges"), py::arg("red"))
      .def_static(
          "load",
          [](const std::string& edges, const std::string& partition) { return load_instance_files(edges, partition); },
          py::arg("edges"), py::arg("partition"))
      .def_property_readonly("node_count", &BipartiteInstance::node_count)
      .def_property_readonly("edge_count", &BipartiteInstance::edge_count)
      .def_property_readonly("red_nodes", [](const BipartiteInstance& g) {
        auto r = g.red_nodes();
        return std::vector<NodeId>(r.begin(), r.end());
      })
      .def_property_readonly("blue_nodes", [](const BipartiteInstance& g) {
        auto b = g.blue_nodes();
        return std::vector<NodeId>(b.begin(), b.end());
      })
      .def_property_readonly("edges", [](const BipartiteInstance& g) {
        std::vector<std::pair<NodeId, NodeId>> out;
        for (const auto& [u, v] : g.edges()) out.emplace_back(u, v);
        return out;
      })
      .def("name", &BipartiteInstance::name)
      .def("is_red", &BipartiteInstance::is_red)
      .def("candidates", [](const BipartiteInstance& g, const std::vector<NodeId>& F) {
        return candidate_endpoints(g, to_set(F));
      }, py::arg("shortcuts") = std::vector<NodeId>{})
      .def("__repr__", [](const BipartiteInstance& g) {
        std::ostringstream s;
        s << "<Instance n=" << g.node_count() << " m=" << g.edge_count() << " |R|=" << g.red_count() << ">";
        return s.str();
      });

  m.def("path", &gen_path, py::arg("length"), py::arg("blue_positions"));
  m.def("star_path_clique", &gen_star_path_clique, py::arg("n"));
  m.def("planted_two_community", &gen_planted_two_community, py::arg("n_red"), py::arg("n_blue"), py::arg("p_in"),
        py::arg("p_out"), py::arg("seed"));

  m.def(
      "hitting_times",
      [](const BipartiteInstance& g, const std::vector<NodeId>& F) {
        const auto p = hitting_to_blue(g, to_set(F));
        py::dict h;
        for (std::size_t i = 0; i < p.red.size(); ++i) h[py::int_(p.red[i])] = p.h[i];
        py::dict d;
        d["h"] = h;
        d["g"] = p.g;
        d["f"] = p.f;
        d["residual"] = p.residual;
        return d;
      },
      py::arg("instance"), py::arg("shortcuts") = std::vector<NodeId>{});
  m.def(
      "g", [](const BipartiteInstance& g, const std::vector<NodeId>& F) {
        return evaluate(g, to_set(F), Objective::Average);
      },
      py::arg("instance"), py::arg("shortcuts") = std::vector<NodeId>{});
  m.def(
      "f", [](const BipartiteInstance& g, const std::vector<NodeId>& F) {
        return evaluate(g, to_set(F), Objective::Maximum);
      },
      py::arg("instance"), py::arg("shortcuts") = std::vector<NodeId>{});
  m.def("hitting_to_target", [](const BipartiteInstance& g, NodeId t) { return hitting_to_target(g, t); },
        py::arg("instance"), py::arg("target"));
  m.def("spectral_radius", py::overload_cast<const BipartiteInstance&>(&spectral_radius), py::arg("instance"));

  m.def(
      "estimate_g",
      [](const BipartiteInstance& g, const std::vector<NodeId>& F, std::uint64_t seed, const std::string& mode,
         double epsilon, double delta, std::optional<double> lambda, std::optional<std::size_t> walk_length,
         std::optional<std::uint64_t> samples, std::optional<double> subsample) {
        const auto e = estimate_g(g, to_set(F),
                                  make_estimator(mode, epsilon, delta, seed, lambda, walk_length, samples, subsample));
        py::dict d;
        d["g_hat"] = e.g_hat;
        d["walk_length"] = e.params.walk_length;
        d["samples_per_node"] = e.params.samples_per_node;
        d["lambda"] = e.params.lambda;
        d["starts"] = e.starts;
        return d;
      },
      py::arg("instance"), py::arg("shortcuts") = std::vector<NodeId>{}, py::kw_only(), py::arg("seed"),
      py::arg("mode") = "guarantee", py::arg("epsilon") = 0.1, py::arg("delta") = 0.1, py::arg("lambda_") = py::none(),
      py::arg("walk_length") = py::none(), py::arg("samples") = py::none(), py::arg("subsample") = py::none());

  m.def(
      "greedy",
      [](const BipartiteInstance& g, std::size_t k, double epsilon, bool cap_at_k, bool lazy) {
        GreedyOptions o;
        o.epsilon = epsilon;
        o.cap_at_k = cap_at_k;
        o.lazy = lazy;
        return trace_dict(greedy_exact(g, k, o));
      },
      py::arg("instance"), py::arg("k"), py::arg("epsilon") = 0.1, py::arg("cap_at_k") = true,
      py::arg("lazy") = false);
  m.def(
      "greedy_plus",
      [](const BipartiteInstance& g, std::size_t k, std::uint64_t seed, const std::string& mode, double epsilon,
         double delta, bool cap_at_k, std::optional<double> subsample) {
        GreedyOptions o;
        o.epsilon = epsilon;
        o.cap_at_k = cap_at_k;
        return trace_dict(greedy_plus(
            g, k, o, make_estimator(mode, epsilon, delta, seed, std::nullopt, std::nullopt, std::nullopt, subsample)));
      },
      py::arg("instance"), py::arg("k"), py::kw_only(), py::arg("seed"), py::arg("mode") = "experiment",
      py::arg("epsilon") = 0.1, py::arg("delta") = 0.1, py::arg("cap_at_k") = true,
      py::arg("subsample") = py::none());
  m.def(
      "brute_force",
      [](const BipartiteInstance& g, std::size_t k, const std::string& objective) {
        if (objective != "average" && objective != "maximum")
          throw InvalidParameter("objective must be 'average' or 'maximum'");
        const auto r = brute_force_opt(g, k, objective == "average" ? Objective::Average : Objective::Maximum);
        return py::make_tuple(to_list(r.shortcuts), r.value);
      },
      py::arg("instance"), py::arg("k"), py::arg("objective") = "average");
  m.def("asymm", [](const BipartiteInstance& g, std::size_t k) { return to_list(asymm(g, k).shortcuts); },
        py::arg("instance"), py::arg("k"));
  m.def(
      "pure_random",
      [](const BipartiteInstance& g, std::size_t k, std::uint64_t seed) { return to_list(pure_random(g, k, seed)); },
      py::arg("instance"), py::arg("k"), py::arg("seed"));
  m.def(
      "top_hitting", [](const BipartiteInstance& g, std::size_t k) { return to_list(top_hitting_baseline(g, k)); },
      py::arg("instance"), py::arg("k"));
  m.def(
      "quasi_metric",
      [](const BipartiteInstance& g) {
        const auto qm = build_quasi_metric(g);
        std::vector<std::vector<double>> d(qm.point_count(), std::vector<double>(qm.point_count()));
        for (std::size_t i = 0; i < qm.point_count(); ++i)
          for (std::size_t j = 0; j < qm.point_count(); ++j) d[i][j] = qm(i, j);
        return d;
      },
      py::arg("instance"));
}

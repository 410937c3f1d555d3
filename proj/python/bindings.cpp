#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <tuple>
#include <vector>

#include "wsntopo/analysis.hpp"
#include "wsntopo/baselines.hpp"
#include "wsntopo/error.hpp"
#include "wsntopo/experiment.hpp"
#include "wsntopo/geometry.hpp"
#include "wsntopo/io.hpp"
#include "wsntopo/laee.hpp"

namespace py = pybind11;
using namespace wsntopo;

namespace {

std::vector<std::tuple<NodeId, NodeId>> edge_tuples(const Graph& g) {
  std::vector<std::tuple<NodeId, NodeId>> out;
  for (const Edge& e : g.edges()) out.emplace_back(e.u, e.v);
  return out;
}

Graph graph_from_edges(std::size_t n, const std::vector<std::tuple<NodeId, NodeId>>& edges,
                       bool directed) {
  Graph g(n, directed);
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Scale-free sensor network topologies: LAEE growth, baselines and analysis";

  static py::exception<Error> error(m, "Error", PyExc_RuntimeError);
  static py::exception<ConfigError> config_error(m, "ConfigError", PyExc_ValueError);
  static py::exception<FitError> fit_error(m, "FitError", error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ConfigError& e) {
      PyErr_SetString(config_error.ptr(), e.what());
    } catch (const FitError& e) {
      PyErr_SetString(fit_error.ptr(), e.what());
    } catch (const Error& e) {
      PyErr_SetString(error.ptr(), e.what());
    }
  });

  py::class_<Graph>(m, "Graph")
      .def(py::init(&graph_from_edges), py::arg("node_count"), py::arg("edges"),
           py::arg("directed") = false)
      .def_property_readonly("node_count", &Graph::node_count)
      .def_property_readonly("edge_count", &Graph::edge_count)
      .def_property_readonly("directed", &Graph::directed)
      .def("edges", &edge_tuples)
      .def("degree", &Graph::degree)
      .def("degrees", [](const Graph& g) {
        std::vector<std::size_t> out;
        for (NodeId v = 0; v < g.node_count(); ++v) out.push_back(g.degree(v));
        return out;
      })
      .def("neighbors", [](const Graph& g, NodeId v) {
        const auto nb = g.neighbors(v);
        return std::vector<NodeId>(nb.begin(), nb.end());
      })
      .def("has_edge", &Graph::has_edge)
      .def("undirected_view", &Graph::undirected_view)
      .def("__eq__", [](const Graph& a, const Graph& b) { return a == b; })
      .def("__repr__", [](const Graph& g) {
        return "<Graph nodes=" + std::to_string(g.node_count()) +
               " edges=" + std::to_string(g.edge_count()) + ">";
      });

  py::class_<DeploymentConfig>(m, "DeploymentConfig")
      .def(py::init([](std::size_t n, double side, double range,
                       std::tuple<double, double> sink) {
             DeploymentConfig c{n, side, range, {std::get<0>(sink), std::get<1>(sink)}};
             c.validate();
             return c;
           }),
           py::arg("n") = 1000, py::arg("side") = 1000.0, py::arg("range") = 100.0,
           py::arg("sink") = std::make_tuple(0.0, 0.0))
      .def_readonly("n", &DeploymentConfig::n)
      .def_readonly("side", &DeploymentConfig::side)
      .def_readonly("range", &DeploymentConfig::range)
      .def_property_readonly("sink", [](const DeploymentConfig& c) {
        return std::make_tuple(c.sink_position.x, c.sink_position.y);
      });

  py::class_<Deployment>(m, "Deployment")
      .def_property_readonly("positions", [](const Deployment& d) {
        std::vector<std::tuple<double, double>> out;
        for (Point p : d.positions()) out.emplace_back(p.x, p.y);
        return out;
      })
      .def_property_readonly("energies", &Deployment::energies)
      .def_property_readonly("sink", &Deployment::sink)
      .def_property_readonly("range", &Deployment::range)
      .def("__len__", &Deployment::size)
      .def("to_json", [](const Deployment& d) { return to_json(d).dump(); })
      .def_static("from_json",
                  [](const std::string& s) { return deployment_from_json(Json::parse(s)); });

  m.def("deploy",
        [](const DeploymentConfig& c, double e_min, double e_max, std::uint64_t seed) {
          return deploy(c, {e_min, e_max}, seed);
        },
        py::arg("config"), py::arg("e_min") = 0.5, py::arg("e_max") = 1.0, py::arg("seed") = 1);
  m.def("potential_neighbors", &potential_neighbors, py::arg("deployment"), py::arg("node"));
  m.def("udg_graph", &udg_graph, py::arg("deployment"));
  py::enum_<NeighborCountModel>(m, "NeighborCountModel")
      .value("BINOMIAL", NeighborCountModel::kBinomial)
      .value("POISSON", NeighborCountModel::kPoisson);
  m.def("neighbor_count_pmf",
        py::overload_cast<std::size_t, double, std::size_t, NeighborCountModel>(
            &neighbor_count_pmf),
        py::arg("n"), py::arg("phi"), py::arg("k"),
        py::arg("model") = NeighborCountModel::kBinomial);

  py::enum_<EnergyWeight>(m, "EnergyWeight")
      .value("IDENTITY", EnergyWeight::kIdentity)
      .value("SQRT", EnergyWeight::kSqrt)
      .value("SQUARE", EnergyWeight::kSquare);

  py::class_<LaeeParams>(m, "LaeeParams")
      .def(py::init([](std::size_t m0, std::size_t e0, std::size_t m_, std::size_t k_max,
                       EnergyWeight f) {
             LaeeParams p{m0, e0, m_, k_max, f};
             p.validate();
             return p;
           }),
           py::arg("m0") = 10, py::arg("e0") = 10, py::arg("m") = 3, py::arg("k_max") = 30,
           py::arg("f") = EnergyWeight::kIdentity)
      .def_readonly("m0", &LaeeParams::m0)
      .def_readonly("e0", &LaeeParams::e0)
      .def_readonly("m", &LaeeParams::m)
      .def_readonly("k_max", &LaeeParams::k_max)
      .def_readonly("f", &LaeeParams::f_kind);

  m.def("evolve",
        [](const Deployment& d, const LaeeParams& p, std::uint64_t seed) {
          EvolutionResult r = evolve(d, p, seed);
          py::dict report;
          report["join_order"] = r.report.join_order;
          report["unreached"] = r.report.unreached;
          report["links_per_step"] = r.report.links_per_step;
          report["deferrals"] = r.report.deferrals;
          return py::make_tuple(std::move(r.graph), report);
        },
        py::arg("deployment"), py::arg("params") = LaeeParams{}, py::arg("seed") = 1,
        "Grow an LAEE topology; returns (graph, report dict).");

  m.def("knn_topology", &knn_topology, py::arg("deployment"), py::arg("k") = 6);
  m.def("dtg_topology", &dtg_topology, py::arg("deployment"));
  m.def("leach_composite",
        [](const Deployment& d, double p_head, const std::string& intra, std::size_t k,
           std::uint64_t seed) {
          if (intra != "knn" && intra != "dtg") {
            throw ConfigError("intra-cluster rule must be 'knn' or 'dtg'");
          }
          Rng rng(seed);
          const IntraCluster rule{intra == "knn" ? IntraClusterKind::kKnn : IntraClusterKind::kDtg,
                                  k};
          return leach_composite(d, p_head, rule, rng).graph;
        },
        py::arg("deployment"), py::arg("p_head") = kDefaultHeadProbability,
        py::arg("intra") = "knn", py::arg("k") = 6, py::arg("seed") = 1);
  m.def("ba_graph", &ba_graph, py::arg("n"), py::arg("m0"), py::arg("m"), py::arg("seed") = 1);

  m.def("degree_stats", [](const Graph& g) {
    const DegreeStats s = degree_stats(g);
    return py::make_tuple(s.avg, s.min, s.max);
  }, "(avg, min, max) over Graph.degree().");
  m.def("degree_histogram", [](const Graph& g) { return degree_histogram(g).counts; });

  m.def("theoretical_pk",
        [](std::size_t m_, double k, double e_min, double e_max) {
          return theoretical_pk(TheoreticalModel{m_, e_min, e_max}, k);
        },
        py::arg("m"), py::arg("k"), py::arg("e_min") = 0.5, py::arg("e_max") = 1.0);
  m.def("theoretical_bin_mass",
        [](std::size_t m_, std::size_t k, double e_min, double e_max) {
          return theoretical_bin_mass(TheoreticalModel{m_, e_min, e_max}, k);
        },
        py::arg("m"), py::arg("k"), py::arg("e_min") = 0.5, py::arg("e_max") = 1.0);
  m.def("ks_distance",
        [](const Graph& g, std::size_t m_, double e_min, double e_max) {
          return ks_distance(degree_histogram(g), TheoreticalModel{m_, e_min, e_max});
        },
        py::arg("graph"), py::arg("m"), py::arg("e_min") = 0.5, py::arg("e_max") = 1.0);
  m.def("fit_power_law",
        [](const std::vector<std::size_t>& degrees, std::size_t k_min, bool scan) {
          const DegreeHistogram h = histogram_of(degrees);
          const PowerLawFit f = scan ? fit_power_law_scan(h, k_min) : fit_power_law_exponent(h, k_min);
          py::dict out;
          out["gamma"] = f.gamma;
          out["std_error"] = f.std_error;
          out["k_min"] = f.k_min;
          out["samples"] = f.samples;
          out["ks"] = f.ks;
          return out;
        },
        py::arg("degrees"), py::arg("k_min"), py::arg("scan") = false);

  m.def("giant_components", [](const Graph& g, NodeId sink) {
    const ComponentSizes c = giant_components(g, sink);
    return py::make_tuple(c.giant, c.sink_component);
  }, py::arg("graph"), py::arg("sink") = 0, "(giant, sink_component) node counts.");
  m.def("random_failure_sweep",
        [](const Graph& g, NodeId sink, const std::vector<double>& fractions, std::size_t trials,
           std::uint64_t seed) {
          const RobustnessCurve c = random_failure_sweep(g, sink, fractions, trials, seed);
          py::dict out;
          out["fractions"] = c.removal_fractions;
          out["gc_mean"] = c.gc_fraction_mean;
          out["gc_std"] = c.gc_fraction_std;
          out["sink_gc_mean"] = c.sink_gc_fraction_mean;
          out["sink_gc_std"] = c.sink_gc_fraction_std;
          return out;
        },
        py::arg("graph"), py::arg("sink"), py::arg("fractions"), py::arg("trials") = 20,
        py::arg("seed") = 1);

  // Experiment runners take the JSON config accepted by the command-line tool.
  auto config_of = [](const std::string& json) {
    ExperimentConfig c = experiment_config_from_json(json.empty() ? Json::object() : Json::parse(json));
    c.validate();
    return c;
  };
  m.def("table2_csv", [config_of](const std::string& json) {
    return table2_csv(run_table2(config_of(json)));
  }, py::arg("config_json") = "");
  m.def("fig3_csv", [config_of](const std::string& json) {
    return fig3_csv(run_fig3(config_of(json)));
  }, py::arg("config_json") = "");
  m.def("fig2_summary_csv", [config_of](const std::string& json) {
    return fig2_summary_csv(run_fig2(config_of(json)));
  }, py::arg("config_json") = "");
}

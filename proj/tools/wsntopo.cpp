// wsntopo: generate sensor-network topologies and run the degree, degree
// distribution and random-failure experiments.
//
// Exit codes: 0 success, 2 configuration error, 3 runtime error.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wsntopo/analysis.hpp"
#include "wsntopo/error.hpp"
#include "wsntopo/experiment.hpp"
#include "wsntopo/io.hpp"

namespace fs = std::filesystem;
using namespace wsntopo;

namespace {

constexpr int kConfigExit = 2;
constexpr int kRuntimeExit = 3;

struct Overrides {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> replicates;
  std::optional<std::string> out;
  std::optional<std::size_t> n;
  std::optional<double> side;
  std::optional<double> range;
  std::optional<std::vector<double>> sink;
  std::optional<std::size_t> m0;
  std::optional<std::size_t> e0;
  std::optional<std::size_t> m;
  std::optional<std::vector<std::size_t>> m_values;
  std::optional<std::size_t> k_max;
  std::optional<double> e_min;
  std::optional<double> e_max;
  std::optional<std::string> f_kind;
  std::optional<std::size_t> knn_k;
  std::optional<double> p_head;
  std::optional<std::size_t> trials;
  std::optional<std::vector<double>> fractions;
};

void add_common_options(CLI::App& app, Overrides& o) {
  app.add_option("--config", o.config_path, "JSON experiment config; flags override it");
  app.add_option("--seed", o.seed, "base seed (u64)");
  app.add_option("--replicates", o.replicates, "independent deployments");
  app.add_option("--out", o.out, "output directory");
  app.add_option("--n", o.n, "number of nodes");
  app.add_option("--side", o.side, "region side length (m)");
  app.add_option("--range", o.range, "transmission range r (m)");
  app.add_option("--sink", o.sink, "sink position x y")->expected(2);
  app.add_option("--m0", o.m0, "seed topology size");
  app.add_option("--e0", o.e0, "seed topology links");
  app.add_option("--m", o.m, "links per joining node (generate)");
  app.add_option("--m-values", o.m_values, "LAEE m values (table2, fig2, fig3)");
  app.add_option("--kmax", o.k_max, "degree cap");
  app.add_option("--emin", o.e_min, "lower energy bound (J)");
  app.add_option("--emax", o.e_max, "upper energy bound (J)");
  app.add_option("--f", o.f_kind, "energy weight: identity, sqrt, square");
  app.add_option("--knn-k", o.knn_k, "KNN neighbor count");
  app.add_option("--p-head", o.p_head, "LEACH cluster-head probability");
  app.add_option("--trials", o.trials, "failure trials per removal fraction");
  app.add_option("--fractions", o.fractions, "removal fractions (ascending)");
}

ExperimentConfig resolve(const Overrides& o) {
  ExperimentConfig c;
  if (!o.config_path.empty()) c = experiment_config_from_json(read_json_file(o.config_path));
  if (o.seed) c.seed = *o.seed;
  if (o.replicates) c.replicates = *o.replicates;
  if (o.out) c.out_dir = *o.out;
  if (o.n) c.deployment.n = *o.n;
  if (o.side) c.deployment.side = *o.side;
  if (o.range) c.deployment.range = *o.range;
  if (o.sink) c.deployment.sink_position = {(*o.sink)[0], (*o.sink)[1]};
  if (o.m0) c.laee.m0 = *o.m0;
  if (o.e0) c.laee.e0 = *o.e0;
  if (o.m) c.laee.m = *o.m;
  if (o.m_values) c.m_values = *o.m_values;
  if (o.k_max) c.laee.k_max = *o.k_max;
  if (o.e_min) c.energy.lo = *o.e_min;
  if (o.e_max) c.energy.hi = *o.e_max;
  if (o.f_kind) c.laee.f_kind = parse_energy_weight(*o.f_kind);
  if (o.knn_k) c.knn_k = *o.knn_k;
  if (o.p_head) c.p_head = *o.p_head;
  if (o.trials) c.trials = *o.trials;
  if (o.fractions) c.fractions = *o.fractions;
  c.validate();
  return c;
}

void generate(const ExperimentConfig& c, Model model) {
  const std::size_t param = (model == Model::kKnn || model == Model::kLeachKnn)
                                ? c.knn_k
                                : (model == Model::kLaee || model == Model::kBa) ? c.laee.m : 0;
  std::string stem(model_name(model));
  if (model == Model::kLaee || model == Model::kBa) stem += "_m" + std::to_string(param);
  if (model == Model::kKnn || model == Model::kLeachKnn) stem += "_k" + std::to_string(param);
  const fs::path dir(c.out_dir);
  for (std::size_t r = 0; r < c.replicates; ++r) {
    const Deployment deployment = replicate_deployment(c, r);
    const Topology t = build_topology(c, deployment, model, param, r);
    const std::string suffix = "_r" + std::to_string(r) + ".json";
    write_file_atomic(dir / ("deployment" + suffix), to_json(deployment).dump(1) + "\n");
    write_file_atomic(dir / (stem + suffix), t.document.dump(1) + "\n");
    const DegreeStats s = degree_stats(t.graph);
    std::cout << t.label << " replicate=" << r << " nodes=" << t.graph.node_count()
              << " edges=" << t.graph.edge_count() << " avg_degree=" << format_float(s.avg)
              << " min_degree=" << s.min << " max_degree=" << s.max << '\n';
  }
}

void analyze(const ExperimentConfig& c, const std::string& graph_path, NodeId sink) {
  const Json doc = read_json_file(graph_path);
  const Graph g = graph_from_json(doc);
  if (sink >= g.node_count()) throw ConfigError("sink id outside the graph");
  const DegreeStats s = degree_stats(g);
  const ComponentSizes comp = giant_components(g, sink);
  std::cout << "nodes=" << g.node_count() << " edges=" << g.edge_count()
            << " directed=" << (g.directed() ? "true" : "false")
            << " avg_degree=" << format_float(s.avg) << " min_degree=" << s.min
            << " max_degree=" << s.max << " giant_component=" << comp.giant
            << " sink_component=" << comp.sink_component << '\n';

  const DegreeHistogram h = degree_histogram(g);
  const auto pmf = h.pmf();
  const auto ccdf = h.ccdf();
  std::string csv = "k,count,pmf,ccdf\n";
  for (std::size_t k = 0; k < h.counts.size(); ++k) {
    csv += std::to_string(k) + ',' + std::to_string(h.counts[k]) + ',' +
           format_float(pmf[k]) + ',' + format_float(ccdf[k]) + '\n';
  }
  const fs::path out = fs::path(c.out_dir) / (fs::path(graph_path).stem().string() + "_histogram.csv");
  write_file_atomic(out, csv);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scale-free wireless sensor network topology construction and analysis"};
  app.require_subcommand(1);
  app.fallthrough();
  Overrides overrides;
  add_common_options(app, overrides);

  std::string model_text;
  auto* gen = app.add_subcommand("generate", "write deployment and graph JSON per replicate");
  gen->add_option("--model", model_text, "laee|udg|knn|dtg|leach+knn|leach+dtg|ba")->required();
  auto* table2 = app.add_subcommand("table2", "degree statistics for every comparison model");
  auto* fig2 = app.add_subcommand("fig2", "LAEE degree distributions against the mean-field curve");
  auto* fig3 = app.add_subcommand("fig3", "giant component under random node failure");
  std::string graph_path;
  NodeId sink = 0;
  auto* analyze_cmd = app.add_subcommand("analyze", "statistics of an existing graph file");
  analyze_cmd->add_option("--graph", graph_path, "graph JSON written by generate")->required();
  analyze_cmd->add_option("--sink-id", sink, "sink node id");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigExit;
  }

  try {
    const ExperimentConfig config = resolve(overrides);
    const fs::path dir(config.out_dir);
    if (*gen) {
      generate(config, parse_model(model_text));
    } else if (*table2) {
      const std::string csv = table2_csv(run_table2(config));
      write_file_atomic(dir / "table2.csv", csv);
      std::cout << csv;
    } else if (*fig2) {
      const auto series = run_fig2(config);
      for (const auto& s : series) {
        write_file_atomic(dir / ("fig2_m" + std::to_string(s.m) + ".csv"), fig2_csv(s));
      }
      const std::string summary = fig2_summary_csv(series);
      write_file_atomic(dir / "fig2_summary.csv", summary);
      std::cout << summary;
    } else if (*fig3) {
      const std::string csv = fig3_csv(run_fig3(config));
      write_file_atomic(dir / "fig3.csv", csv);
      std::cout << csv;
    } else if (*analyze_cmd) {
      analyze(config, graph_path, sink);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigExit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntimeExit;
  }
  return 0;
}

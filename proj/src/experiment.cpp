#include "wsntopo/experiment.hpp"

#include <algorithm>
#include <sstream>

#include "wsntopo/error.hpp"

namespace wsntopo {
namespace {

constexpr std::uint64_t kDeployStream = 1;
constexpr std::uint64_t kModelStream = 2;
constexpr std::size_t kDeployAttempts = 1000;

std::string label_of(Model model, std::size_t param) {
  switch (model) {
    case Model::kUdg:
      return "UDG";
    case Model::kLaee:
      return "LAEE(m=" + std::to_string(param) + ")";
    case Model::kKnn:
      return "KNN(k=" + std::to_string(param) + ")";
    case Model::kDtg:
      return "DTG";
    case Model::kLeachKnn:
      return "LEACH+KNN(k=" + std::to_string(param) + ")";
    case Model::kLeachDtg:
      return "LEACH+DTG";
    case Model::kBa:
      return "BA(m=" + std::to_string(param) + ")";
  }
  return "?";
}

Json composite_params(const ExperimentConfig& config, const CompositeTopology& c,
                      std::size_t k) {
  Json p;
  p["p_head"] = config.p_head;
  if (k > 0) p["k"] = k;
  p["heads"] = c.clusters.heads.size();
  p["orphans"] = c.clusters.orphans.size();
  p["election_rounds"] = c.clusters.attempts;
  p["sink_links"] = c.sink_links;
  p["relay_links"] = c.relay_links;
  p["detached_heads"] = c.detached_heads;
  return p;
}

}  // namespace

std::string_view model_name(Model model) {
  switch (model) {
    case Model::kUdg:
      return "udg";
    case Model::kLaee:
      return "laee";
    case Model::kKnn:
      return "knn";
    case Model::kDtg:
      return "dtg";
    case Model::kLeachKnn:
      return "leach+knn";
    case Model::kLeachDtg:
      return "leach+dtg";
    case Model::kBa:
      return "ba";
  }
  return "?";
}

Model parse_model(std::string_view name) {
  for (Model m : {Model::kUdg, Model::kLaee, Model::kKnn, Model::kDtg, Model::kLeachKnn,
                  Model::kLeachDtg, Model::kBa}) {
    if (model_name(m) == name) return m;
  }
  throw ConfigError("unknown model '" + std::string(name) +
                    "' (expected laee, udg, knn, dtg, leach+knn, leach+dtg or ba)");
}

void ExperimentConfig::validate() const {
  deployment.validate();
  energy.validate();
  laee.validate();
  if (laee.m0 > deployment.n) throw ConfigError("m0 exceeds n");
  if (m_values.empty()) throw ConfigError("m_values must not be empty");
  for (std::size_t m : m_values) {
    LaeeParams p = laee;
    p.m = m;
    p.validate();
  }
  if (knn_k < 1) throw ConfigError("knn_k must be at least 1");
  if (!(p_head > 0.0 && p_head < 1.0)) throw ConfigError("p_head must lie in (0, 1)");
  if (fractions.empty()) throw ConfigError("fractions must not be empty");
  for (double f : fractions) {
    if (!(f >= 0.0 && f < 1.0)) throw ConfigError("fractions must lie in [0, 1)");
  }
  if (!std::is_sorted(fractions.begin(), fractions.end())) {
    throw ConfigError("fractions must be ascending");
  }
  if (trials < 1) throw ConfigError("trials must be at least 1");
  if (replicates < 1) throw ConfigError("replicates must be at least 1");
}

ExperimentConfig experiment_config_from_json(const Json& j, ExperimentConfig c) {
  if (!j.is_object()) throw ConfigError("experiment config must be a JSON object");
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "deployment") {
        Json merged = to_json(c.deployment);
        for (const auto& [k, v] : value.items()) merged[k] = v;
        c.deployment = deployment_config_from_json(merged);
      } else if (key == "energy") {
        for (const auto& [k, v] : value.items()) {
          if (k == "min") {
            c.energy.lo = v.get<double>();
          } else if (k == "max") {
            c.energy.hi = v.get<double>();
          } else {
            throw ConfigError("unknown energy key '" + k + "'");
          }
        }
      } else if (key == "laee") {
        c.laee = laee_params_from_json(value, c.laee);
      } else if (key == "m_values") {
        c.m_values = value.get<std::vector<std::size_t>>();
      } else if (key == "knn_k") {
        c.knn_k = value.get<std::size_t>();
      } else if (key == "p_head") {
        c.p_head = value.get<double>();
      } else if (key == "fractions") {
        c.fractions = value.get<std::vector<double>>();
      } else if (key == "trials") {
        c.trials = value.get<std::size_t>();
      } else if (key == "seed") {
        c.seed = value.get<std::uint64_t>();
      } else if (key == "replicates") {
        c.replicates = value.get<std::size_t>();
      } else if (key == "out_dir") {
        c.out_dir = value.get<std::string>();
      } else {
        throw ConfigError("unknown config key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("experiment config: ") + e.what());
  }
  return c;
}

Json to_json(const ExperimentConfig& c) {
  Json j;
  j["deployment"] = to_json(c.deployment);
  j["energy"] = Json{{"min", c.energy.lo}, {"max", c.energy.hi}};
  j["laee"] = to_json(c.laee);
  j["m_values"] = c.m_values;
  j["knn_k"] = c.knn_k;
  j["p_head"] = c.p_head;
  j["fractions"] = c.fractions;
  j["trials"] = c.trials;
  j["seed"] = c.seed;
  j["replicates"] = c.replicates;
  j["out_dir"] = c.out_dir;
  return j;
}

Deployment replicate_deployment(const ExperimentConfig& config, std::size_t replicate) {
  const std::size_t needed = config.laee.m0 - 1;
  for (std::size_t attempt = 0; attempt < kDeployAttempts; ++attempt) {
    Deployment d = deploy(config.deployment, config.energy,
                          derive_seed(config.seed, {kDeployStream, replicate, attempt}));
    if (potential_neighbors(d, d.sink()).size() >= needed) return d;
  }
  throw SeedError("no deployment in " + std::to_string(kDeployAttempts) +
                  " attempts gives the sink m0-1=" + std::to_string(needed) +
                  " potential neighbors");
}

std::uint64_t model_seed(const ExperimentConfig& config, std::size_t replicate,
                         Model model, std::size_t param) {
  return derive_seed(config.seed, {kModelStream, replicate,
                                   static_cast<std::uint64_t>(model), param});
}

Topology build_topology(const ExperimentConfig& config, const Deployment& deployment,
                        Model model, std::size_t param, std::size_t replicate) {
  const std::uint64_t seed = model_seed(config, replicate, model, param);
  Topology t;
  t.model = model;
  t.param = param;
  t.label = label_of(model, param);
  switch (model) {
    case Model::kUdg:
      t.graph = udg_graph(deployment);
      t.document = graph_json(t.graph, "udg", Json::object(), seed);
      break;
    case Model::kLaee: {
      LaeeParams p = config.laee;
      p.m = param;
      EvolutionResult result = evolve(deployment, p, seed);
      t.document = evolution_json(result);
      t.graph = std::move(result.graph);
      break;
    }
    case Model::kKnn:
      t.graph = knn_topology(deployment, param);
      t.document = graph_json(t.graph, "knn", Json{{"k", param}}, seed);
      break;
    case Model::kDtg:
      t.graph = dtg_topology(deployment);
      t.document = graph_json(t.graph, "dtg", Json::object(), seed);
      break;
    case Model::kLeachKnn:
    case Model::kLeachDtg: {
      Rng rng(seed);
      const bool knn = model == Model::kLeachKnn;
      const IntraCluster intra{knn ? IntraClusterKind::kKnn : IntraClusterKind::kDtg, param};
      CompositeTopology c = leach_composite(deployment, config.p_head, intra, rng);
      t.document = graph_json(c.graph, model_name(model),
                              composite_params(config, c, knn ? param : 0), seed);
      t.graph = std::move(c.graph);
      break;
    }
    case Model::kBa:
      t.graph = ba_graph(deployment.size(), config.laee.m0, param, seed);
      t.document = graph_json(t.graph, "ba", Json{{"m0", config.laee.m0}, {"m", param}}, seed);
      break;
  }
  return t;
}

std::vector<ModelSpec> comparison_models(const ExperimentConfig& config) {
  std::vector<ModelSpec> out{{Model::kUdg, 0}};
  for (std::size_t m : config.m_values) out.push_back({Model::kLaee, m});
  out.push_back({Model::kKnn, config.knn_k});
  out.push_back({Model::kDtg, 0});
  out.push_back({Model::kLeachKnn, config.knn_k});
  out.push_back({Model::kLeachDtg, 0});
  return out;
}

std::vector<Table2Row> run_table2(const ExperimentConfig& config) {
  config.validate();
  const auto models = comparison_models(config);
  std::vector<Table2Row> rows(models.size());
  for (std::size_t r = 0; r < config.replicates; ++r) {
    const Deployment deployment = replicate_deployment(config, r);
    for (std::size_t i = 0; i < models.size(); ++i) {
      const Topology t = build_topology(config, deployment, models[i].model, models[i].param, r);
      const DegreeStats s = degree_stats(t.graph);
      rows[i].label = t.label;
      rows[i].avg.add(s.avg);
      rows[i].min.add(static_cast<double>(s.min));
      rows[i].max.add(static_cast<double>(s.max));
      rows[i].worst_max = std::max(rows[i].worst_max, s.max);
    }
  }
  return rows;
}

std::string table2_csv(const std::vector<Table2Row>& rows) {
  std::ostringstream out;
  out << "model,avg_mean,avg_std,min_mean,min_std,max_mean,max_std,max_overall,replicates\n";
  for (const auto& row : rows) {
    out << row.label << ',' << format_float(row.avg.mean()) << ','
        << format_float(row.avg.stddev()) << ',' << format_float(row.min.mean()) << ','
        << format_float(row.min.stddev()) << ',' << format_float(row.max.mean()) << ','
        << format_float(row.max.stddev()) << ',' << row.worst_max << ','
        << row.avg.count() << '\n';
  }
  return out.str();
}

std::vector<Fig2Series> run_fig2(const ExperimentConfig& config) {
  config.validate();
  std::vector<Fig2Series> series;
  for (std::size_t m : config.m_values) {
    Fig2Series s;
    s.m = m;
    s.model = TheoreticalModel{m, config.energy.lo, config.energy.hi};
    series.push_back(std::move(s));
  }
  for (std::size_t r = 0; r < config.replicates; ++r) {
    const Deployment deployment = replicate_deployment(config, r);
    for (auto& s : series) {
      const Topology t = build_topology(config, deployment, Model::kLaee, s.m, r);
      DegreeHistogram h = degree_histogram(t.graph);
      s.ks.push_back(ks_distance(h, s.model));
      s.below_m.push_back(fraction_below(h, s.m));
      s.histograms.push_back(std::move(h));
    }
  }
  return series;
}

std::string fig2_csv(const Fig2Series& s) {
  std::size_t support = 0;
  for (const auto& h : s.histograms) support = std::max(support, h.counts.size());
  std::vector<RunningStats> pmf(support);
  std::vector<RunningStats> ccdf(support);
  for (const auto& h : s.histograms) {
    const auto p = h.pmf();
    const auto c = h.ccdf();
    for (std::size_t k = 0; k < support; ++k) {
      pmf[k].add(k < p.size() ? p[k] : 0.0);
      ccdf[k].add(k < c.size() ? c[k] : 0.0);
    }
  }
  std::ostringstream out;
  out << "k,pmf_mean,pmf_std,ccdf_mean,theoretical_pk,theoretical_bin_mass\n";
  for (std::size_t k = 0; k < support; ++k) {
    out << k << ',' << format_float(pmf[k].mean()) << ',' << format_float(pmf[k].stddev())
        << ',' << format_float(ccdf[k].mean()) << ',';
    if (k >= s.m) {
      out << format_float(theoretical_pk(s.model, static_cast<double>(k))) << ','
          << format_float(theoretical_bin_mass(s.model, k));
    } else {
      out << ',';
    }
    out << '\n';
  }
  return out.str();
}

std::string fig2_summary_csv(const std::vector<Fig2Series>& series) {
  std::ostringstream out;
  out << "m,ks_mean,ks_std,below_m_mean,below_m_std,replicates\n";
  for (const auto& s : series) {
    RunningStats ks;
    RunningStats below;
    for (double x : s.ks) ks.add(x);
    for (double x : s.below_m) below.add(x);
    out << s.m << ',' << format_float(ks.mean()) << ',' << format_float(ks.stddev()) << ','
        << format_float(below.mean()) << ',' << format_float(below.stddev()) << ','
        << s.ks.size() << '\n';
  }
  return out.str();
}

std::vector<Fig3Row> run_fig3(const ExperimentConfig& config) {
  config.validate();
  const auto models = comparison_models(config);
  const std::size_t nf = config.fractions.size();
  std::vector<Fig3Row> rows(models.size() * nf);
  for (std::size_t r = 0; r < config.replicates; ++r) {
    const Deployment deployment = replicate_deployment(config, r);
    const double n = static_cast<double>(deployment.size());
    for (std::size_t mi = 0; mi < models.size(); ++mi) {
      const Topology t = build_topology(config, deployment, models[mi].model,
                                        models[mi].param, r);
      const std::uint64_t seed = model_seed(config, r, models[mi].model, models[mi].param);
      for (std::size_t i = 0; i < nf; ++i) {
        Fig3Row& row = rows[mi * nf + i];
        row.label = t.label;
        row.fraction = config.fractions[i];
        for (std::size_t j = 0; j < config.trials; ++j) {
          Rng rng(seed, {i, j});
          const ComponentSizes sizes =
              failure_trial(t.graph, deployment.sink(), config.fractions[i], rng);
          row.gc.add(static_cast<double>(sizes.giant) / n);
          row.sink_gc.add(static_cast<double>(sizes.sink_component) / n);
        }
      }
    }
  }
  return rows;
}

std::string fig3_csv(const std::vector<Fig3Row>& rows) {
  std::ostringstream out;
  out << "model,fraction,gc_mean,gc_std,sink_gc_mean,sink_gc_std,trials\n";
  for (const auto& row : rows) {
    out << row.label << ',' << format_float(row.fraction) << ','
        << format_float(row.gc.mean()) << ',' << format_float(row.gc.stddev()) << ','
        << format_float(row.sink_gc.mean()) << ',' << format_float(row.sink_gc.stddev()) << ','
        << row.gc.count() << '\n';
  }
  return out.str();
}

}  // namespace wsntopo

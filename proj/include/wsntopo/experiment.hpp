#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "wsntopo/analysis.hpp"
#include "wsntopo/baselines.hpp"
#include "wsntopo/geometry.hpp"
#include "wsntopo/io.hpp"
#include "wsntopo/laee.hpp"

namespace wsntopo {

enum class Model { kUdg, kLaee, kKnn, kDtg, kLeachKnn, kLeachDtg, kBa };

// "udg", "laee", "knn", "dtg", "leach+knn", "leach+dtg", "ba"
std::string_view model_name(Model model);
Model parse_model(std::string_view name);

/// Every knob of the reproduction experiments. Defaults are the reference
/// simulation parameters.
struct ExperimentConfig {
  DeploymentConfig deployment;
  EnergyBounds energy;
  LaeeParams laee;  // laee.m is used by single-model generation
  std::vector<std::size_t> m_values{3, 5, 8};
  std::size_t knn_k = 6;
  double p_head = kDefaultHeadProbability;
  std::vector<double> fractions{0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  std::size_t trials = 20;
  std::uint64_t seed = 1;
  std::size_t replicates = 20;
  std::string out_dir = "out";

  // Throws ConfigError.
  void validate() const;
};

// All keys optional; unknown keys throw ConfigError. Missing keys keep the
// values of `base`.
ExperimentConfig experiment_config_from_json(const Json& j, ExperimentConfig base = {});
Json to_json(const ExperimentConfig& config);

// Deployment for replicate r: Rng stream (seed, {1, r, attempt}), redrawn
// with the next attempt until the sink has at least m0-1 potential neighbors
// (up to 1000 attempts, then SeedError).
Deployment replicate_deployment(const ExperimentConfig& config, std::size_t replicate);

// Engine seed for one model build: (seed, {2, r, model, param}).
std::uint64_t model_seed(const ExperimentConfig& config, std::size_t replicate,
                         Model model, std::size_t param);

struct Topology {
  Model model = Model::kUdg;
  std::size_t param = 0;  // m for LAEE and BA, k for KNN variants
  std::string label;      // e.g. "LAEE(m=3)"
  Graph graph;
  Json document;          // graph JSON as written by `generate`
};

// param: m for LAEE/BA, k for KNN and LEACH+KNN, ignored otherwise.
Topology build_topology(const ExperimentConfig& config, const Deployment& deployment,
                        Model model, std::size_t param, std::size_t replicate);

// The comparison set: UDG, LAEE for each m, KNN, DTG, LEACH+KNN, LEACH+DTG.
struct ModelSpec {
  Model model;
  std::size_t param;
};
std::vector<ModelSpec> comparison_models(const ExperimentConfig& config);

// ---- degree table --------------------------------------------------------------

struct Table2Row {
  std::string label;
  RunningStats avg;
  RunningStats min;
  RunningStats max;
  std::size_t worst_max = 0;  // largest max degree seen over replicates
};

std::vector<Table2Row> run_table2(const ExperimentConfig& config);
// model,avg_mean,avg_std,min_mean,min_std,max_mean,max_std,max_overall,replicates
std::string table2_csv(const std::vector<Table2Row>& rows);

// ---- degree distributions -------------------------------------------------------

struct Fig2Series {
  std::size_t m = 0;
  std::vector<DegreeHistogram> histograms;  // one per replicate
  std::vector<double> ks;                   // per replicate, on k >= m
  std::vector<double> below_m;              // per replicate
  TheoreticalModel model;
};

std::vector<Fig2Series> run_fig2(const ExperimentConfig& config);
// k,pmf_mean,pmf_std,ccdf_mean,theoretical_pk,theoretical_bin_mass
// (theory columns empty below m).
std::string fig2_csv(const Fig2Series& series);
// m,ks_mean,ks_std,below_m_mean,below_m_std,replicates
std::string fig2_summary_csv(const std::vector<Fig2Series>& series);

// ---- robustness -------------------------------------------------------------------

struct Fig3Row {
  std::string label;
  double fraction = 0.0;
  RunningStats gc;
  RunningStats sink_gc;
};

// Rows grouped by model (comparison order), then ascending fraction. Each row
// pools trials x replicates samples; trial j at fraction index i of
// replicate r draws from (model_seed(r, model, param), {i, j}).
std::vector<Fig3Row> run_fig3(const ExperimentConfig& config);
// model,fraction,gc_mean,gc_std,sink_gc_mean,sink_gc_std,trials
std::string fig3_csv(const std::vector<Fig3Row>& rows);

}  // namespace wsntopo

#include "wsntopo/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/minima.hpp>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_zeta.h>

#include "wsntopo/error.hpp"

namespace wsntopo {
namespace {

double hurwitz_zeta(double s, double q) {
  static std::once_flag quiet;
  std::call_once(quiet, [] { gsl_set_error_handler_off(); });
  gsl_sf_result result;
  if (gsl_sf_hzeta_e(s, q, &result) != GSL_SUCCESS) {
    throw AnalysisError("Hurwitz zeta failed at s=" + std::to_string(s) +
                        " q=" + std::to_string(q));
  }
  return result.val;
}

template <class F>
double integrate_energy(const TheoreticalModel& model, F&& conditional,
                        double tolerance) {
  if (model.e_min == model.e_max) return conditional(model.e_min);
  double error = 0.0;
  const double integral = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      conditional, model.e_min, model.e_max, 20, tolerance, &error);
  return model.rho() * integral;
}

// Ascending list of (k, count) over degrees >= k_min.
struct Tail {
  std::size_t samples = 0;
  std::size_t distinct = 0;
  double log_sum = 0.0;
};

Tail tail_of(const DegreeHistogram& h, std::size_t k_min) {
  Tail t;
  for (std::size_t k = std::max<std::size_t>(k_min, 1); k < h.counts.size(); ++k) {
    if (h.counts[k] == 0) continue;
    t.samples += h.counts[k];
    ++t.distinct;
    t.log_sum += static_cast<double>(h.counts[k]) * std::log(static_cast<double>(k));
  }
  return t;
}

double fitted_ks(const DegreeHistogram& h, std::size_t k_min, double gamma,
                 std::size_t samples) {
  const double norm = hurwitz_zeta(gamma, static_cast<double>(k_min));
  double empirical = 0.0;
  double ks = 0.0;
  for (std::size_t k = k_min; k < h.counts.size(); ++k) {
    empirical += static_cast<double>(h.counts[k]) / static_cast<double>(samples);
    const double model = 1.0 - hurwitz_zeta(gamma, static_cast<double>(k + 1)) / norm;
    ks = std::max(ks, std::abs(empirical - model));
  }
  return ks;
}

}  // namespace

// ---- degree statistics ------------------------------------------------------

DegreeStats degree_stats(const Graph& g) {
  if (g.node_count() == 0) throw AnalysisError("degree statistics of an empty graph");
  DegreeStats s{0.0, std::numeric_limits<std::size_t>::max(), 0};
  std::size_t sum = 0;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const std::size_t d = g.degree(v);
    sum += d;
    s.min = std::min(s.min, d);
    s.max = std::max(s.max, d);
  }
  s.avg = static_cast<double>(sum) / static_cast<double>(g.node_count());
  return s;
}

std::size_t DegreeHistogram::count_at_least(std::size_t k) const {
  std::size_t c = 0;
  for (std::size_t i = k; i < counts.size(); ++i) c += counts[i];
  return c;
}

std::vector<double> DegreeHistogram::pmf() const {
  std::vector<double> out(counts.size(), 0.0);
  if (total == 0) return out;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    out[k] = static_cast<double>(counts[k]) / static_cast<double>(total);
  }
  return out;
}

std::vector<double> DegreeHistogram::ccdf() const {
  std::vector<double> out(counts.size(), 0.0);
  if (total == 0) return out;
  std::size_t at_least = 0;
  for (std::size_t k = counts.size(); k-- > 0;) {
    at_least += counts[k];
    out[k] = static_cast<double>(at_least) / static_cast<double>(total);
  }
  return out;
}

DegreeHistogram histogram_of(std::span<const std::size_t> degrees) {
  DegreeHistogram h;
  for (std::size_t d : degrees) {
    if (d >= h.counts.size()) h.counts.resize(d + 1, 0);
    ++h.counts[d];
  }
  h.total = degrees.size();
  return h;
}

DegreeHistogram degree_histogram(const Graph& g) {
  std::vector<std::size_t> degrees(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) degrees[v] = g.degree(v);
  return histogram_of(degrees);
}

double fraction_below(const DegreeHistogram& h, std::size_t m) {
  if (h.total == 0) throw AnalysisError("empty histogram");
  return 1.0 - static_cast<double>(h.count_at_least(m)) / static_cast<double>(h.total);
}

std::vector<LogBin> log_binned(const DegreeHistogram& h, double ratio) {
  if (!(ratio > 1.0)) throw DomainError("log-bin ratio must exceed 1");
  std::vector<LogBin> bins;
  if (h.total == 0) return bins;
  std::size_t lo = 1;
  while (lo <= h.max_degree()) {
    const auto hi = std::max(lo + 1, static_cast<std::size_t>(
                                         std::ceil(static_cast<double>(lo) * ratio)));
    std::size_t mass = 0;
    for (std::size_t k = lo; k < hi && k < h.counts.size(); ++k) mass += h.counts[k];
    bins.push_back({lo, hi,
                    static_cast<double>(mass) /
                        (static_cast<double>(h.total) * static_cast<double>(hi - lo))});
    lo = hi;
  }
  return bins;
}

// ---- mean-field degree distribution ------------------------------------------

void TheoreticalModel::validate() const {
  if (m < 1) throw DomainError("model needs m >= 1");
  if (!(e_min > 0.0) || !(e_max >= e_min)) {
    throw DomainError("model needs 0 < e_min <= e_max");
  }
}

double TheoreticalModel::rho() const {
  return e_max > e_min ? 1.0 / (e_max - e_min) : std::numeric_limits<double>::infinity();
}

double TheoreticalModel::e_bar() const { return 0.5 * (e_min + e_max); }

double theoretical_pk(const TheoreticalModel& model, double k, double tolerance) {
  model.validate();
  const double m = static_cast<double>(model.m);
  if (!(k >= m)) {
    throw DomainError("theoretical density is defined for k >= m=" + std::to_string(model.m));
  }
  const double log_ratio = std::log(m / k);
  auto conditional = [&](double energy) {
    const double inv_beta = 1.0 / model.beta(energy);
    return inv_beta * std::exp(inv_beta * log_ratio) / k;
  };
  return integrate_energy(model, conditional, tolerance);
}

double theoretical_bin_mass(const TheoreticalModel& model, std::size_t k,
                            double tolerance) {
  model.validate();
  if (k < model.m) {
    throw DomainError("theoretical mass is defined for k >= m=" + std::to_string(model.m));
  }
  const double m = static_cast<double>(model.m);
  const double lo = std::log(m / static_cast<double>(k));
  const double hi = std::log(m / static_cast<double>(k + 1));
  auto conditional = [&](double energy) {
    const double inv_beta = 1.0 / model.beta(energy);
    return std::exp(inv_beta * lo) - std::exp(inv_beta * hi);
  };
  return integrate_energy(model, conditional, tolerance);
}

double ks_distance(const DegreeHistogram& h, const TheoreticalModel& model) {
  const std::size_t support = h.count_at_least(model.m);
  if (support == 0) {
    throw AnalysisError("no degree reaches m=" + std::to_string(model.m));
  }
  std::vector<double> masses;
  for (std::size_t k = model.m; k <= h.max_degree(); ++k) {
    masses.push_back(theoretical_bin_mass(model, k));
  }
  const double norm = std::accumulate(masses.begin(), masses.end(), 0.0);
  double empirical = 0.0;
  double theory = 0.0;
  double ks = 0.0;
  for (std::size_t k = model.m; k <= h.max_degree(); ++k) {
    empirical += static_cast<double>(h.counts[k]) / static_cast<double>(support);
    theory += masses[k - model.m] / norm;
    ks = std::max(ks, std::abs(empirical - theory));
  }
  return ks;
}

// ---- power-law fit ----------------------------------------------------------

PowerLawFit fit_power_law_exponent(const DegreeHistogram& h, std::size_t k_min) {
  if (k_min < 1) throw DomainError("power-law fit needs k_min >= 1");
  const Tail tail = tail_of(h, k_min);
  if (tail.samples < kMinFitSamples) {
    throw FitError("power-law fit needs at least " + std::to_string(kMinFitSamples) +
                       " degrees >= k_min, got " + std::to_string(tail.samples),
                   tail.samples);
  }
  if (tail.distinct < 2) {
    throw FitError("power-law fit needs at least two distinct degrees >= k_min",
                   tail.samples);
  }
  const double n = static_cast<double>(tail.samples);
  const double mean_log = tail.log_sum / n;
  const double q = static_cast<double>(k_min);
  auto neg_log_likelihood = [&](double gamma) {
    return gamma * mean_log + std::log(hurwitz_zeta(gamma, q));
  };
  const auto [gamma, nll] =
      boost::math::tools::brent_find_minima(neg_log_likelihood, 1.0001, 20.0, 50);
  (void)nll;

  // Observed information: N * d^2/dgamma^2 log zeta(gamma, k_min).
  const double step = 1e-4;
  auto log_zeta = [&](double s) { return std::log(hurwitz_zeta(s, q)); };
  const double curvature =
      (log_zeta(gamma + step) - 2.0 * log_zeta(gamma) + log_zeta(gamma - step)) /
      (step * step);
  PowerLawFit fit;
  fit.gamma = gamma;
  fit.std_error = curvature > 0.0 ? 1.0 / std::sqrt(n * curvature)
                                  : std::numeric_limits<double>::infinity();
  fit.k_min = k_min;
  fit.samples = tail.samples;
  fit.ks = fitted_ks(h, k_min, gamma, tail.samples);
  return fit;
}

PowerLawFit fit_power_law_scan(const DegreeHistogram& h, std::size_t k_min_floor,
                               std::size_t min_tail) {
  std::optional<PowerLawFit> best;
  for (std::size_t k = std::max<std::size_t>(k_min_floor, 1); k <= h.max_degree(); ++k) {
    const Tail tail = tail_of(h, k);
    if (tail.samples < std::max(min_tail, kMinFitSamples)) break;
    if (tail.distinct < 2) break;
    const PowerLawFit fit = fit_power_law_exponent(h, k);
    if (!best || fit.ks < best->ks) best = fit;
  }
  if (!best) {
    throw FitError("no k_min >= " + std::to_string(k_min_floor) + " leaves " +
                       std::to_string(min_tail) + " tail samples",
                   tail_of(h, k_min_floor).samples);
  }
  return *best;
}

// ---- robustness -------------------------------------------------------------

ComponentSizes giant_components(const Graph& g, NodeId sink, std::span<const char> removed) {
  const std::size_t n = g.node_count();
  auto alive = [&](NodeId v) { return removed.empty() || !removed[v]; };
  std::vector<NodeId> parent(n);
  std::iota(parent.begin(), parent.end(), NodeId{0});
  auto find = [&](NodeId x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (NodeId u = 0; u < n; ++u) {
    if (!alive(u)) continue;
    for (NodeId v : g.neighbors(u)) {
      if (!alive(v)) continue;
      const NodeId a = find(u);
      const NodeId b = find(v);
      if (a != b) parent[a] = b;
    }
  }
  std::vector<std::size_t> size(n, 0);
  for (NodeId v = 0; v < n; ++v) {
    if (alive(v)) ++size[find(v)];
  }
  ComponentSizes out;
  out.giant = n == 0 ? 0 : *std::max_element(size.begin(), size.end());
  if (sink < n && alive(sink)) out.sink_component = size[find(sink)];
  return out;
}

std::size_t removal_count(std::size_t n, double fraction) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) {
    throw DomainError("removal fraction must lie in [0, 1], got " + std::to_string(fraction));
  }
  if (n == 0) return 0;
  return std::min(n - 1, static_cast<std::size_t>(
                             std::floor(fraction * static_cast<double>(n - 1))));
}

ComponentSizes failure_trial(const Graph& g, NodeId sink, double fraction, Rng& rng) {
  const std::size_t n = g.node_count();
  const std::size_t remove = removal_count(n, fraction);
  std::vector<NodeId> pool;
  pool.reserve(n);
  for (NodeId v = 0; v < n; ++v) {
    if (v != sink) pool.push_back(v);
  }
  std::vector<char> removed(n, 0);
  for (std::size_t i = 0; i < remove; ++i) {
    std::swap(pool[i], pool[i + rng.below(pool.size() - i)]);
    removed[pool[i]] = 1;
  }
  return giant_components(g, sink, removed);
}

void RunningStats::Compensated::add(double x) {
  const double t = sum + x;
  if (std::abs(sum) >= std::abs(x)) {
    carry += (sum - t) + x;
  } else {
    carry += (x - t) + sum;
  }
  sum = t;
}

void RunningStats::add(double x) {
  if (count_ == 0) shift_ = x;
  ++count_;
  const double d = x - shift_;
  sum_.add(d);
  sum_sq_.add(d * d);
}

double RunningStats::mean() const {
  return count_ == 0 ? 0.0 : shift_ + sum_.value() / static_cast<double>(count_);
}

double RunningStats::stddev() const {
  if (count_ < 2) return 0.0;
  const double n = static_cast<double>(count_);
  const double mu = sum_.value() / n;
  const double var = (sum_sq_.value() - n * mu * mu) / (n - 1.0);
  return var > 0.0 ? std::sqrt(var) : 0.0;
}

RobustnessCurve random_failure_sweep(const Graph& g, NodeId sink,
                                     std::span<const double> fractions,
                                     std::size_t trials, std::uint64_t seed) {
  if (trials < 1) throw ConfigError("failure sweep needs at least one trial");
  if (!std::is_sorted(fractions.begin(), fractions.end())) {
    throw ConfigError("removal fractions must be ascending");
  }
  RobustnessCurve curve;
  curve.removal_fractions.assign(fractions.begin(), fractions.end());
  curve.trials = trials;
  curve.seed = seed;
  const double n = static_cast<double>(g.node_count());
  for (std::size_t i = 0; i < fractions.size(); ++i) {
    RunningStats gc;
    RunningStats sink_gc;
    for (std::size_t j = 0; j < trials; ++j) {
      Rng rng(seed, {i, j});
      const ComponentSizes sizes = failure_trial(g, sink, fractions[i], rng);
      gc.add(static_cast<double>(sizes.giant) / n);
      sink_gc.add(static_cast<double>(sizes.sink_component) / n);
    }
    curve.gc_fraction_mean.push_back(gc.mean());
    curve.gc_fraction_std.push_back(gc.stddev());
    curve.sink_gc_fraction_mean.push_back(sink_gc.mean());
    curve.sink_gc_fraction_std.push_back(sink_gc.stddev());
  }
  return curve;
}

}  // namespace wsntopo

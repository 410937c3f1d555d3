#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "wsntopo/graph.hpp"
#include "wsntopo/rng.hpp"

namespace wsntopo {

// ---- degree statistics ------------------------------------------------------

struct DegreeStats {
  double avg = 0.0;
  std::size_t min = 0;
  std::size_t max = 0;
};

// Over Graph::degree(), i.e. out-degree for directed graphs. Throws
// AnalysisError on an empty graph.
DegreeStats degree_stats(const Graph& g);

struct DegreeHistogram {
  std::vector<std::size_t> counts;  // counts[k]: nodes of degree k
  std::size_t total = 0;

  std::size_t max_degree() const { return counts.empty() ? 0 : counts.size() - 1; }
  std::size_t count_at_least(std::size_t k) const;
  std::vector<double> pmf() const;
  // ccdf[k] = P(K >= k); ccdf[0] = 1.
  std::vector<double> ccdf() const;
};

DegreeHistogram degree_histogram(const Graph& g);
DegreeHistogram histogram_of(std::span<const std::size_t> degrees);

// Fraction of nodes with degree below m.
double fraction_below(const DegreeHistogram& h, std::size_t m);

struct LogBin {
  std::size_t k_lo = 0;  // inclusive
  std::size_t k_hi = 0;  // exclusive
  double density = 0.0;  // probability mass in the bin divided by its width
};

// Logarithmic bins [1, ratio), [ratio, ratio^2), ... over degrees >= 1, for
// plotting heavy tails.
std::vector<LogBin> log_binned(const DegreeHistogram& h, double ratio = 2.0);

// ---- mean-field degree distribution ------------------------------------------

/// Energy-mixed power law for growth with energy-weighted preferential
/// attachment under uniform energies on [e_min, e_max]. A node of energy E
/// follows P(k | E) = (1/beta) m^(1/beta) k^-(1 + 1/beta), beta = E / (2 e_bar),
/// and P(k) averages that over the energy density.
struct TheoreticalModel {
  std::size_t m = 3;
  double e_min = 0.5;
  double e_max = 1.0;

  // Throws DomainError unless m >= 1 and 0 < e_min <= e_max.
  void validate() const;
  double rho() const;    // 1 / (e_max - e_min); infinite for constant energy
  double e_bar() const;  // (e_min + e_max) / 2
  double beta(double energy) const { return energy / (2.0 * e_bar()); }
};

inline constexpr double kQuadratureTolerance = 1e-10;

// Continuum density at degree k >= m, integrated over energy by adaptive
// Gauss-Kronrod quadrature. Constant energy collapses to 2 m^2 k^-3.
// Throws DomainError for k < m.
double theoretical_pk(const TheoreticalModel& model, double k,
                      double tolerance = kQuadratureTolerance);

// Mass of the continuum density on the unit bin [k, k + 1). These sum to one
// over k >= m.
double theoretical_bin_mass(const TheoreticalModel& model, std::size_t k,
                            double tolerance = kQuadratureTolerance);

// Kolmogorov-Smirnov distance between the empirical distribution of degrees
// >= m and the unit-bin theoretical masses, both renormalized over
// [m, max observed degree]. Throws AnalysisError if no degree reaches m.
double ks_distance(const DegreeHistogram& h, const TheoreticalModel& model);

// ---- power-law fit ----------------------------------------------------------

inline constexpr std::size_t kMinFitSamples = 10;

struct PowerLawFit {
  double gamma = 0.0;
  double std_error = 0.0;
  std::size_t k_min = 0;
  std::size_t samples = 0;  // degrees >= k_min used by the fit
  double ks = 0.0;          // KS distance of the fitted law on the tail
};

// Discrete maximum-likelihood exponent for P(k) = k^-gamma / zeta(gamma, k_min)
// over degrees >= k_min, with the asymptotic standard error from the
// observed information. Throws FitError when fewer than kMinFitSamples
// degrees reach k_min or the tail holds a single distinct value.
PowerLawFit fit_power_law_exponent(const DegreeHistogram& h, std::size_t k_min);

// Scans k_min upward from k_min_floor and keeps the fit with the smallest KS
// distance among tails holding at least min_tail samples.
PowerLawFit fit_power_law_scan(const DegreeHistogram& h, std::size_t k_min_floor,
                               std::size_t min_tail = 50);

// ---- robustness -------------------------------------------------------------

struct ComponentSizes {
  std::size_t giant = 0;
  std::size_t sink_component = 0;  // 0 when the sink is removed
};

// Components of the undirected view, ignoring nodes flagged in `removed`
// (empty span: nothing removed).
ComponentSizes giant_components(const Graph& g, NodeId sink,
                                std::span<const char> removed = {});

// floor(fraction * (n - 1)), the number of non-sink nodes a trial removes.
std::size_t removal_count(std::size_t n, double fraction);

// One random-failure trial: removes removal_count(n, fraction) uniformly
// chosen non-sink nodes (partial Fisher-Yates on the ascending non-sink ids).
ComponentSizes failure_trial(const Graph& g, NodeId sink, double fraction, Rng& rng);

// Mean and sample standard deviation with compensated sums of the samples
// shifted by the first one.
class RunningStats {
 public:
  void add(double x);
  std::size_t count() const noexcept { return count_; }
  double mean() const;
  double stddev() const;

 private:
  struct Compensated {
    double sum = 0.0;
    double carry = 0.0;
    void add(double x);
    double value() const { return sum + carry; }
  };
  std::size_t count_ = 0;
  double shift_ = 0.0;
  Compensated sum_;
  Compensated sum_sq_;
};

struct RobustnessCurve {
  std::vector<double> removal_fractions;
  std::vector<double> gc_fraction_mean;
  std::vector<double> gc_fraction_std;
  std::vector<double> sink_gc_fraction_mean;
  std::vector<double> sink_gc_fraction_std;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
};

// Trial j at fraction index i draws from Rng(seed, {i, j}). Component sizes
// are reported as fractions of the original node count. The sink is never
// removed.
RobustnessCurve random_failure_sweep(const Graph& g, NodeId sink,
                                     std::span<const double> fractions,
                                     std::size_t trials, std::uint64_t seed);

}  // namespace wsntopo

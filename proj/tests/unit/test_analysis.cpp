#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <vector>

#include "oracles.hpp"
#include "wsntopo/analysis.hpp"
#include "wsntopo/baselines.hpp"
#include "wsntopo/error.hpp"

using namespace wsntopo;

namespace {

Graph cycle(std::size_t n) {
  Graph g(n);
  for (NodeId v = 0; v < n; ++v) g.add_edge(v, static_cast<NodeId>((v + 1) % n));
  return g;
}



// Composite Simpson rule on [a, b] with 2n panels.
template <class F>
double simpson(F f, double a, double b, int n) {
  const double h = (b - a) / (2 * n);
  double s = f(a) + f(b);
  for (int i = 1; i < 2 * n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

// Exact discrete power-law sampler by inverse CDF over a long table.
std::vector<std::size_t> discrete_power_law(double gamma, std::size_t k_min, std::size_t n,
                                            std::uint64_t seed) {
  const std::size_t k_top = 2000000;
  std::vector<double> cdf;
  cdf.reserve(k_top - k_min);
  double total = 0.0;
  for (std::size_t k = k_min; k < k_top; ++k) {
    total += std::pow(static_cast<double>(k), -gamma);
    cdf.push_back(total);
  }
  // Tail beyond the table by the integral approximation.
  total += std::pow(static_cast<double>(k_top) - 0.5, 1.0 - gamma) / (gamma - 1.0);
  Rng rng(seed);
  std::vector<std::size_t> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = rng.uniform() * total;
    const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
    out.push_back(it == cdf.end() ? k_top : k_min + static_cast<std::size_t>(it - cdf.begin()));
  }
  return out;
}

}  // namespace

TEST_CASE("degree statistics") {
  const DegreeStats tri = degree_stats(cycle(3));
  CHECK(tri.avg == 2.0);
  CHECK(tri.min == 2);
  CHECK(tri.max == 2);

  // Path 0-1-2-3 plus a triangle 4-5-6 with a pendant edge 6-3.
  const std::vector<Edge> edges{{0, 1}, {1, 2}, {2, 3}, {4, 5}, {5, 6}, {4, 6}, {3, 6}};
  const DegreeStats s = degree_stats(Graph::from_edges(7, edges));
  CHECK(s.avg == doctest::Approx(2.0));
  CHECK(s.min == 1);
  CHECK(s.max == 3);
  CHECK_THROWS_AS(degree_stats(Graph{}), AnalysisError);
}

TEST_CASE("histogram, pmf and ccdf") {
  const DegreeHistogram regular = degree_histogram(cycle(8));
  CHECK(regular.pmf()[2] == 1.0);
  CHECK(regular.ccdf()[2] == 1.0);
  CHECK(regular.ccdf()[0] == 1.0);

  Graph star(5);
  for (NodeId v = 1; v < 5; ++v) star.add_edge(0, v);
  const DegreeHistogram h = degree_histogram(star);
  CHECK(h.pmf()[1] == doctest::Approx(0.8));
  CHECK(h.pmf()[4] == doctest::Approx(0.2));
  CHECK(h.count_at_least(2) == 1);
  CHECK(fraction_below(h, 4) == doctest::Approx(0.8));

  Rng rng(3);
  for (int i = 0; i < 20; ++i) {
    const DegreeHistogram r = degree_histogram(oracles::random_graph(rng, 40, 0.1 + 0.02 * i));
    const auto pmf = r.pmf();
    CHECK(std::abs(std::accumulate(pmf.begin(), pmf.end(), 0.0) - 1.0) < 1e-12);
    const auto ccdf = r.ccdf();
    for (std::size_t k = 1; k < ccdf.size(); ++k) CHECK(ccdf[k] <= ccdf[k - 1]);
  }
}

TEST_CASE("log bins conserve mass over degrees >= 1") {
  const std::vector<std::size_t> deg{0, 1, 1, 2, 3, 5, 8, 13, 21};
  const DegreeHistogram h = histogram_of(deg);
  double mass = 0.0;
  for (const LogBin& b : log_binned(h)) mass += b.density * static_cast<double>(b.k_hi - b.k_lo);
  CHECK(mass == doctest::Approx(8.0 / 9.0));
  CHECK_THROWS_AS(log_binned(h, 1.0), DomainError);
}

TEST_CASE("constant energy collapses to 2 m^2 k^-3") {
  for (std::size_t m : {1, 3, 5, 8}) {
    const TheoreticalModel model{m, 0.8, 0.8};
    for (double k : {1.0 * m, m + 0.5, 10.0, 123.0, 1e4}) {
      const double expect = 2.0 * m * m * std::pow(k, -3.0);
      CHECK(std::abs(theoretical_pk(model, k) - expect) <= 1e-12 * expect);
    }
  }
}

TEST_CASE("energy-mixed density matches an independent Simpson integral") {
  const TheoreticalModel model{3, 0.5, 1.0};
  for (double k : {3.0, 4.5, 10.0, 50.0, 1000.0}) {
    auto integrand = [k](double e) {
      const double inv_beta = 2.0 * 0.75 / e;
      return 2.0 * inv_beta * std::pow(3.0, inv_beta) * std::pow(k, -(1.0 + inv_beta));
    };
    const double expect = simpson(integrand, 0.5, 1.0, 2000);
    CHECK(theoretical_pk(model, k) == doctest::Approx(expect).epsilon(1e-9));
  }
}

TEST_CASE("density shape: positive, decreasing, slope between -4 and -2.5") {
  const TheoreticalModel model{3, 0.5, 1.0};
  double prev_k = 3.0;
  double prev = theoretical_pk(model, prev_k);
  for (double k = 3.25; k < 5000.0; k *= 1.05) {
    const double p = theoretical_pk(model, k);
    CHECK(p > 0.0);
    CHECK(p < prev);
    const double slope = (std::log(p) - std::log(prev)) / (std::log(k) - std::log(prev_k));
    CHECK(slope <= -2.5);
    CHECK(slope >= -4.0);
    prev = p;
    prev_k = k;
  }
  CHECK_THROWS_AS(theoretical_pk(model, 2.9), DomainError);
  CHECK_THROWS_AS(theoretical_bin_mass(model, 2), DomainError);
}

TEST_CASE("quadrature tolerance halving moves the density by < 1e-7") {
  for (std::size_t m : {3, 5, 8}) {
    const TheoreticalModel model{m, 0.5, 1.0};
    for (double k = static_cast<double>(m); k < 1e5; k *= 1.7) {
      const double a = theoretical_pk(model, k, 1e-10);
      const double b = theoretical_pk(model, k, 5e-11);
      CHECK(std::abs(a - b) < 1e-7 * std::abs(b));
    }
  }
}

TEST_CASE("unit-bin masses integrate the density and sum to one") {
  const TheoreticalModel model{3, 0.5, 1.0};
  for (std::size_t k : {3, 4, 7, 20}) {
    const double expect =
        simpson([&](double x) { return theoretical_pk(model, x); }, k, k + 1.0, 200);
    CHECK(theoretical_bin_mass(model, k) == doctest::Approx(expect).epsilon(1e-8));
  }
  for (std::size_t m : {3, 5, 8}) {
    const TheoreticalModel mm{m, 0.5, 1.0};
    double total = 0.0;
    // The mass beyond 10^4 is below (8e-4)^1.5 for every m here.
    for (std::size_t k = m; k <= 10000; ++k) total += theoretical_bin_mass(mm, k);
    CHECK(std::abs(total - 1.0) < 0.02);
  }
}

TEST_CASE("KS distance against the renormalized bin masses") {
  const TheoreticalModel model{3, 0.5, 1.0};
  DegreeHistogram h;
  h.counts = {0, 0, 0, 10};
  h.total = 10;
  // Support is [3, 3], so both sides renormalize to a point mass.
  CHECK(ks_distance(h, model) == doctest::Approx(0.0));

  h.counts = {0, 0, 0, 10, 0, 1};
  h.total = 11;
  const double b3 = theoretical_bin_mass(model, 3);
  const double b4 = theoretical_bin_mass(model, 4);
  const double b5 = theoretical_bin_mass(model, 5);
  const double norm = b3 + b4 + b5;
  const double expect =
      std::max(std::abs(10.0 / 11.0 - b3 / norm), std::abs(10.0 / 11.0 - (b3 + b4) / norm));
  CHECK(ks_distance(h, model) == doctest::Approx(expect).epsilon(1e-12));

  // Degrees below m are ignored.
  h.counts[1] = 50;
  h.total += 50;
  CHECK(ks_distance(h, model) == doctest::Approx(expect).epsilon(1e-12));

  DegreeHistogram low;
  low.counts = {0, 4};
  low.total = 4;
  CHECK_THROWS_AS(ks_distance(low, model), AnalysisError);
}

TEST_CASE("MLE recovers gamma = 3 from an exact discrete sample") {
  const auto sample = discrete_power_law(3.0, 3, 100000, 17);
  const DegreeHistogram h = histogram_of(sample);
  const PowerLawFit fit = fit_power_law_exponent(h, 3);
  CHECK(fit.gamma == doctest::Approx(3.0).epsilon(0.05 / 3.0));
  CHECK(fit.samples == 100000);
  // Asymptotic error for this tail is about 0.006.
  CHECK(fit.std_error > 0.003);
  CHECK(fit.std_error < 0.012);
  CHECK(std::abs(fit.gamma - 3.0) < 4.0 * fit.std_error);

  const PowerLawFit scanned = fit_power_law_scan(h, 3);
  CHECK(scanned.gamma == doctest::Approx(3.0).epsilon(0.1 / 3.0));
}

TEST_CASE("MLE on the BA degree sequence with k_min = m") {
  // With the whole tail from k = m the discrete MLE is pulled below 3 by the
  // curvature of the exact BA law 2m(m+1)/(k(k+1)(k+2)); its
  // infinite-sample limit for m = 3 is 2.6529.
  const Graph g = ba_graph(10000, 3, 3, 1);
  const PowerLawFit fit = fit_power_law_exponent(degree_histogram(g), 3);
  CHECK(fit.gamma == doctest::Approx(2.6529).epsilon(0.05 / 2.65));
}

TEST_CASE("fit errors") {
  const std::vector<std::size_t> flat(50, 4);
  CHECK_THROWS_AS(fit_power_law_exponent(histogram_of(flat), 3), FitError);
  const std::vector<std::size_t> few{3, 4, 5, 6, 7};
  try {
    fit_power_law_exponent(histogram_of(few), 3);
    FAIL("expected FitError");
  } catch (const FitError& e) {
    CHECK(e.samples() == 5);
  }
}

TEST_CASE("giant components against breadth-first search") {
  Rng rng(12);
  for (int i = 0; i < 300; ++i) {
    const std::size_t n = 1 + rng.below(64);
    const Graph g = oracles::random_graph(rng, n, 2.5 * rng.uniform() / static_cast<double>(n));
    std::vector<char> removed(n, 0);
    for (auto& r : removed) r = rng.uniform() < 0.2;
    const NodeId sink = static_cast<NodeId>(rng.below(n));
    const ComponentSizes got = giant_components(g, sink, removed);
    const ComponentSizes expect = oracles::bfs_components(g, sink, removed);
    CHECK(got.giant == expect.giant);
    CHECK(got.sink_component == expect.sink_component);
  }
  // Seven-node path plus a triangle holding the sink.
  Graph g(10);
  for (NodeId v = 0; v < 6; ++v) g.add_edge(v, v + 1);
  g.add_edge(7, 8);
  g.add_edge(8, 9);
  g.add_edge(7, 9);
  const auto c = giant_components(g, 8);
  CHECK(c.giant == 7);
  CHECK(c.sink_component == 3);
}

TEST_CASE("removal count is the floor over non-sink nodes") {
  CHECK(removal_count(1000, 0.1) == 99);
  CHECK(removal_count(1000, 0.0) == 0);
  CHECK(removal_count(1000, 1.0) == 999);
  CHECK_THROWS_AS(removal_count(10, 1.5), DomainError);
}

TEST_CASE("failure trials keep the sink and respect sink <= giant") {
  const Graph g = ba_graph(300, 3, 2, 4);
  for (double f : {0.0, 0.3, 0.7, 1.0}) {
    for (std::uint64_t j = 0; j < 20; ++j) {
      Rng rng(j);
      const ComponentSizes c = failure_trial(g, 5, f, rng);
      CHECK(c.sink_component >= 1);
      CHECK(c.sink_component <= c.giant);
      CHECK(c.giant <= 300 - removal_count(300, f));
    }
  }
}

TEST_CASE("failure sweep endpoints, determinism and monotonicity") {
  const Graph g = ba_graph(400, 3, 2, 8);
  const std::vector<double> fractions{0.0, 0.2, 0.4, 0.6, 0.8, 1.0};
  const RobustnessCurve a = random_failure_sweep(g, 0, fractions, 30, 5);
  const RobustnessCurve b = random_failure_sweep(g, 0, fractions, 30, 5);
  CHECK(a.gc_fraction_mean == b.gc_fraction_mean);
  CHECK(a.sink_gc_fraction_std == b.sink_gc_fraction_std);

  const ComponentSizes intact = giant_components(g, 0);
  CHECK(a.gc_fraction_mean[0] == doctest::Approx(intact.giant / 400.0));
  CHECK(a.gc_fraction_std[0] == 0.0);
  CHECK(a.sink_gc_fraction_mean.back() == doctest::Approx(1.0 / 400.0));

  for (std::size_t i = 1; i < fractions.size(); ++i) {
    const double slack =
        3.0 * std::hypot(a.gc_fraction_std[i], a.gc_fraction_std[i - 1]) / std::sqrt(30.0);
    CHECK(a.gc_fraction_mean[i] <= a.gc_fraction_mean[i - 1] + slack);
    CHECK(a.sink_gc_fraction_mean[i] <= a.gc_fraction_mean[i] + 1e-12);
  }
  CHECK_THROWS_AS(random_failure_sweep(g, 0, fractions, 0, 5), ConfigError);
  const std::vector<double> unsorted{0.5, 0.1};
  CHECK_THROWS_AS(random_failure_sweep(g, 0, unsorted, 3, 5), ConfigError);
}

TEST_CASE("running stats match a two-pass computation") {
  Rng rng(6);
  std::vector<double> xs;
  RunningStats s;
  for (int i = 0; i < 1000; ++i) {
    xs.push_back(1e8 + rng.uniform());
    s.add(xs.back());
  }
  const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  CHECK(s.mean() == doctest::Approx(mean).epsilon(1e-15));
  CHECK(s.stddev() == doctest::Approx(std::sqrt(ss / (xs.size() - 1))).epsilon(1e-6));
  RunningStats one;
  one.add(2.0);
  CHECK(one.stddev() == 0.0);
}

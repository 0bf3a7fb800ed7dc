#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "majdyn/errors.hpp"
#include "majdyn/mixing.hpp"

using namespace majdyn;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kGolden = 0.6180339887498949;  // (sqrt(5)-1)/2

// Cell-integrated arcsine law, the stationary density of the chaotic
// logistic map: (2/pi) d/dx asin(sqrt(x)).
double arcsine_cell_average(const Grid& g, int i) {
  const double lo = i * g.h();
  const double hi = (i + 1) * g.h();
  return (2.0 / kPi) * (std::asin(std::sqrt(hi)) - std::asin(std::sqrt(lo))) /
         g.h();
}

}  // namespace

TEST_CASE("map registry") {
  CHECK(logistic_map().apply(0.5) == 1.0 - 1e-15);  // clamped
  CHECK(doubling_map().apply(0.75) == 0.5);
  CHECK(tent_map().apply(0.25) == 0.5);
  CHECK(rotation_map(0.25).apply(0.9) == doctest::Approx(0.15));
  CHECK(make_map("rotation:0.5").apply(0.75) == doctest::Approx(0.25));
  CHECK_THROWS_AS(make_map("nope"), std::invalid_argument);
}

TEST_CASE("identity map produces a degenerate orbit") {
  MapSystem identity{"identity", [](double x) { return x; }, {}, 7};
  CHECK_THROWS_AS(
      estimate_invariant_density(identity, 100, 20'000, Grid(64), 0.0),
      DegenerateOrbit);
  CHECK_THROWS_AS(estimate_invariant_density(logistic_map(), 0, 100, Grid(8)),
                  std::invalid_argument);  // too few samples
}

TEST_CASE("logistic invariant density matches the arcsine law") {
  const Grid g(32);
  const Density hist =
      estimate_invariant_density(logistic_map(11), 10'000, 5'000'000, g);
  CHECK(hist.is_probability(1e-9));
  // Diverges toward the endpoints.
  CHECK(hist.values()[0] > 2.0 * hist.values()[g.n_cells() / 2]);
  // Symmetric about 1/2.
  for (int i = 0; i < g.n_cells() / 2; ++i) {
    const double a = hist.values()[i];
    const double b = hist.values()[g.n_cells() - 1 - i];
    CHECK(std::abs(a - b) <= 0.02 * 0.5 * (a + b));
  }
  // Cell-by-cell agreement with the closed form.
  for (int i = 0; i < g.n_cells(); ++i) {
    const double expected = arcsine_cell_average(g, i);
    CHECK(std::abs(hist.values()[i] - expected) <= 0.03 * expected);
  }
}

TEST_CASE("doubling-map histogram is close to uniform") {
  const Grid g(16);
  const Density hist =
      estimate_invariant_density(doubling_map(13), 1'000, 1'000'000, g);
  for (double v : hist.values()) {
    CHECK(std::abs(v - 1.0) <= 0.05);
  }
}

TEST_CASE("histogram estimation is reproducible bit for bit") {
  const Grid g(32);
  const Density a =
      estimate_invariant_density(logistic_map(21), 1'000, 50'000, g);
  const Density b =
      estimate_invariant_density(logistic_map(21), 1'000, 50'000, g);
  for (int i = 0; i < g.n_cells(); ++i) {
    CHECK(a.values()[i] == b.values()[i]);
  }
}

TEST_CASE("correlation at n = 0 is the plain inner product") {
  const Grid g(64);
  const Observable f = make_observable("cos1", g);
  const Observable gg = make_observable("centered_x", g);
  // 8 nodes per cell integrate a step function exactly.
  const double got = correlation(logistic_map(), f, gg, 0, 64 * 8);
  double exact = 0.0;
  for (int i = 0; i < g.n_cells(); ++i) exact += f.values[i] * gg.values[i];
  exact *= g.h();
  CHECK(std::abs(got - exact) <= 1e-10);

  const Observable wrong = make_observable("cos1", Grid(32));
  CHECK_THROWS_AS(correlation(logistic_map(), f, wrong, 0, 100), GridMismatch);
}

TEST_CASE("rotation correlations oscillate at the analytic value") {
  const MapSystem rot = rotation_map(kGolden);
  const Grid g(4096);
  const Observable f = make_observable("cos1", g);
  const auto corr = correlation_sequence(rot, f, f, 8, 400'000);
  for (int n = 0; n <= 8; ++n) {
    const double expected = 0.5 * std::cos(2.0 * kPi * n * kGolden);
    CHECK(std::abs(corr[n] - expected) <= 5e-3);
  }
}

TEST_CASE("l1 sequence is constant for measure-preserving maps") {
  const Grid g(64);
  // Nonnegative observable under the doubling map: dyadic nodes iterate
  // exactly onto coarser dyadic grids, so the sums match to round-off.
  Observable f = make_observable("one", g);
  for (int i = 0; i < g.n_cells(); ++i) {
    f.values[i] = 0.25 + (i % 5) * 0.5;
  }
  const auto seq = l1_norm_sequence(doubling_map(), f, 8, 1 << 18);
  for (int n = 1; n <= 8; ++n) {
    CHECK(std::abs(seq[n] - seq[0]) <= 1e-9 * seq[0]);
  }

  MapSystem identity{"identity", [](double x) { return x; }, {}, 1};
  const auto id_seq = l1_norm_sequence(identity, f, 5, 10'000);
  for (int n = 1; n <= 5; ++n) CHECK(id_seq[n] == id_seq[0]);
}

TEST_CASE("l1 sequence is reported for signed observables") {
  const Grid g(64);
  const Observable f = make_observable("centered_x", g);
  const auto seq = l1_norm_sequence(logistic_map(), f, 10, 100'000);
  REQUIRE(seq.size() == 11);
  // |f| integrates to 1/4 for the centered coordinate.
  CHECK(seq[0] == doctest::Approx(0.25).epsilon(1e-3));
  for (double v : seq) {
    CHECK(std::isfinite(v));
    CHECK(v >= 0.0);
  }
}

TEST_CASE("mixing verdict: logistic settles, rotation does not") {
  const Grid og(1024);
  MapSystem logistic = logistic_map(3);
  logistic.invariant_density_estimate =
      estimate_invariant_density(logistic, 10'000, 1'000'000, Grid(32));
  const std::vector<Observable> obs{make_observable("centered_x", og),
                                    make_observable("sin1", og)};
  const MixingReport log_report =
      mixing_verdict(logistic, obs, 40, 0.02, 200'000);
  CHECK(log_report.all_consistent);
  for (const auto& pair : log_report.pairs) {
    CHECK(pair.n_settle <= 20);
  }

  MapSystem rot = rotation_map(kGolden, 3);
  rot.invariant_density_estimate =
      estimate_invariant_density(rot, 10'000, 1'000'000, Grid(32));
  const std::vector<Observable> rot_obs{make_observable("cos1", og),
                                        make_observable("sin1", og)};
  const MixingReport rot_report =
      mixing_verdict(rot, rot_obs, 40, 0.02, 200'000);
  for (const auto& pair : rot_report.pairs) {
    CHECK_FALSE(pair.consistent);
    CHECK(pair.worst_tail_abs_err >= 0.1);
  }
}

TEST_CASE("a constant observable pair is trivially mixing-consistent") {
  const Grid og(256);
  MapSystem logistic = logistic_map(5);
  logistic.invariant_density_estimate =
      estimate_invariant_density(logistic, 10'000, 1'000'000, Grid(32));
  const std::vector<Observable> obs{make_observable("one", og),
                                    make_observable("one", og)};
  const MixingReport report = mixing_verdict(logistic, obs, 10, 0.02, 50'000);
  CHECK(report.all_consistent);
  for (const auto& pair : report.pairs) {
    CHECK(pair.n_settle == 0);
    CHECK(pair.limit == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("estimated invariant measure is invariant under preimages") {
  MapSystem logistic = logistic_map(9);
  const Grid g(64);
  const Density f_star =
      estimate_invariant_density(logistic, 10'000, 4'000'000, g);
  const Observable f_obs = to_observable(f_star, "f_star");
  const std::int64_t m = 1'000'000;
  for (int k = 0; k < 8; ++k) {
    const double lo = k / 8.0;
    const double hi = (k + 1) / 8.0;
    double mu_a = 0.0;
    for (int i = 0; i < g.n_cells(); ++i) {
      const double x = g.center(i);
      if (x >= lo && x < hi) mu_a += f_star.values()[i];
    }
    mu_a *= g.h();
    double mu_pre = 0.0;
    for (std::int64_t j = 0; j < m; ++j) {
      const double x = (j + 0.5) / static_cast<double>(m);
      const double y = logistic.apply(x);
      if (y >= lo && y < hi) mu_pre += f_obs.at(x);
    }
    mu_pre /= static_cast<double>(m);
    CHECK(std::abs(mu_a - mu_pre) <= 0.03 * std::max(mu_a, 0.02));
  }
}

TEST_CASE("verdicts require at least two observables") {
  MapSystem logistic = logistic_map();
  logistic.invariant_density_estimate = Density::uniform(Grid(8));
  const std::vector<Observable> one{make_observable("one", Grid(8))};
  CHECK_THROWS_AS(mixing_verdict(logistic, one, 5, 0.02, 1'000),
                  std::invalid_argument);
}

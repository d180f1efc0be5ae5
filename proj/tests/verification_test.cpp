// Copyright 2026 The monoest authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <cmath>

#include "monoest/experiment.hpp"
#include "monoest/moments.hpp"
#include "monoest/suite.hpp"
#include "oracles.hpp"

using namespace monoest;

namespace {

const ThresholdScheme kUnit = ThresholdScheme::pps({1, 1});
const FunctionSpec kRg1 = FunctionSpec::range_plus(1.0);

}  // namespace

TEST_CASE("worked moment values at (0.6, 0.2)") {
  const DataVector v{0.6, 0.2};
  SUBCASE("lower extreme") {
    const auto m = moments(EstimatorKind::lstar(), kRg1, kUnit, v);
    CHECK(m.expectation == doctest::Approx(0.4).epsilon(1e-9));
    CHECK(m.second_moment == doctest::Approx(0.3606).epsilon(5e-4));
    CHECK(m.variance == doctest::Approx(0.2006).epsilon(5e-4));
    CHECK(m.f_value == doctest::Approx(0.4));
  }
  SUBCASE("inverse probability") {
    const auto m = moments(EstimatorKind::ht(), kRg1, kUnit, v);
    CHECK(m.expectation == doctest::Approx(0.4));
    CHECK(m.second_moment == doctest::Approx(0.8));
    CHECK(m.variance == doctest::Approx(0.64));
  }
  SUBCASE("per-vector optimum") {
    const auto m = moments(EstimatorKind::vopt_oracle(), kRg1, kUnit, v);
    CHECK(m.expectation == doctest::Approx(0.4).epsilon(1e-9));
    CHECK(m.second_moment == doctest::Approx(4.0 / 15.0).epsilon(1e-9));
  }
  SUBCASE("competitive ratio") {
    const auto r = competitive_ratio(EstimatorKind::lstar(), kRg1, kUnit, v);
    CHECK(r.ratio == doctest::Approx(1.352).epsilon(1e-3));
    // The oracle against itself is 1, and zero-f vectors use the
    // ratio-1 convention.
    CHECK(competitive_ratio(EstimatorKind::vopt_oracle(), kRg1, kUnit, v).ratio ==
          doctest::Approx(1.0));
    CHECK(competitive_ratio(EstimatorKind::lstar(), kRg1, kUnit, {0.2, 0.6}).ratio == 1.0);
  }
}

TEST_CASE("closed-form moments agree with the oracle integrator") {
  oracles::Rng rng(3);
  for (double p : {1.0, 2.0}) {
    const auto f = FunctionSpec::range_plus(p);
    for (int trial = 0; trial < 8; ++trial) {
      const double v1 = rng.uniform(0.15, 1.0);
      const double v2 = rng.uniform(0.0, v1 * 0.9);
      const DataVector v{v1, v2};
      for (const auto kind : {EstimatorKind::lstar(), EstimatorKind::ustar()}) {
        const auto m = moments(kind, f, kUnit, v);
        const auto est = [&](double u) {
          return apply_estimator(kind, f, sample_vector(v, u, kUnit));
        };
        const auto est2 = [&](double u) {
          const double x = est(u);
          return x * x;
        };
        const double e = oracles::integrate_with_breaks(est, 1e-10, 1.0, {v2, v1}, 1e-10);
        const double e2 = oracles::integrate_with_breaks(est2, 1e-10, 1.0, {v2, v1}, 1e-10);
        CHECK(m.expectation == doctest::Approx(e).epsilon(1e-6));
        CHECK(m.second_moment == doctest::Approx(e2).epsilon(1e-6));
      }
    }
  }
  // The p = 1/2 path runs through quadrature; cross-check it as well.
  const auto f_half = FunctionSpec::range_plus(0.5);
  const DataVector v{0.7, 0.25};
  const auto m = moments(EstimatorKind::lstar(), f_half, kUnit, v);
  const auto est2 = [&](double u) {
    const double x = lstar_estimate(f_half, sample_vector(v, u, kUnit));
    return x * x;
  };
  CHECK(m.second_moment ==
        doctest::Approx(oracles::integrate_with_breaks(est2, 1e-10, 1.0, {0.25, 0.7}, 1e-10))
            .epsilon(1e-6));
}

TEST_CASE("order-table moments are exact") {
  std::vector<RationalVector> domain;
  for (int i = 0; i <= 3; ++i) {
    for (int j = 0; j <= 3; ++j) domain.push_back({Rational(i), Rational(j)});
  }
  auto table = std::make_shared<EstimatorTable>(
      order_optimal_build(kRg1, domain, {Rational(1, 4), Rational(1, 2), Rational(3, 4)},
                          VectorOrder::ascending_f()));
  const auto kind = EstimatorKind::order_table(table);
  const auto m = moments(kind, kRg1, table->step_scheme(), {2.0, 0.0});
  CHECK(m.expectation == doctest::Approx(2.0));
  // 6 on (0,1/4], 2 on (1/4,1/2]: second moment 36/4 + 4/4 = 10.
  CHECK(m.second_moment == doctest::Approx(10.0));
}

TEST_CASE("tightness family closed forms and numerics") {
  SUBCASE("p = 1/4") {
    const auto rep = tightness_family(0.25);
    CHECK(rep.opt_second_moment == doctest::Approx(2.0));
    CHECK(rep.lstar_second_moment == doctest::Approx(16.0 / 3.0));
    CHECK(rep.ratio == doctest::Approx(8.0 / 3.0));
    CHECK(rep.max_rel_err < 1e-6);
  }
  SUBCASE("p = 0.49 approaches the universal cap") {
    const auto rep = tightness_family(0.49);
    CHECK(rep.ratio == doctest::Approx(2.0 / 0.51).epsilon(1e-9));
    CHECK(rep.ratio == doctest::Approx(3.9216).epsilon(1e-4));
    CHECK(rep.max_rel_err < 1e-6);
  }
  SUBCASE("p = 0 degenerates to ratio 2") {
    const auto rep = tightness_family(0.0);
    CHECK(rep.opt_second_moment == doctest::Approx(1.0));
    CHECK(rep.lstar_second_moment == doctest::Approx(2.0));
    CHECK(rep.ratio == doctest::Approx(2.0));
    CHECK(rep.max_rel_err < 1e-6);
  }
  SUBCASE("quadrature cross-check of the family moments") {
    for (double p : {0.1, 0.25, 0.4}) {
      const auto f = FunctionSpec::tight_family(p);
      const auto est2 = [&](double u) {
        const double x = lstar_estimate(f, sample_vector({0.0}, u, ThresholdScheme::pps({1.0})));
        return x * x;
      };
      // The integrand blows up like u^{-2p} near zero; integrate the body
      // on a geometric mesh and compare with the antiderivative over the
      // same range.
      const double eps = 1e-10;
      std::vector<double> mesh;
      for (double x = eps; x < 1.0; x *= 4.0) mesh.push_back(x);
      const double body = oracles::integrate_with_breaks(est2, eps, 1.0, mesh, 1e-10);
      const auto prim = [p](double u) {
        return (std::pow(u, 1.0 - 2.0 * p) / (1.0 - 2.0 * p) -
                2.0 * std::pow(u, 1.0 - p) / (1.0 - p) + u) /
               (p * p);
      };
      const double expected_body = prim(1.0) - prim(eps);
      CHECK(body == doctest::Approx(expected_body).epsilon(1e-6));
      const auto rep = tightness_family(p);
      CHECK(body <= rep.lstar_second_moment + 1e-6);
    }
  }
  SUBCASE("domain validation") {
    CHECK_THROWS_AS((void)tightness_family(0.5), std::invalid_argument);
    CHECK_THROWS_AS((void)tightness_family(0.6), std::invalid_argument);
    CHECK_THROWS_AS((void)tightness_family(-0.1), std::invalid_argument);
  }
}

TEST_CASE("property suite on a small grid") {
  SuiteConfig config;
  config.fspec = kRg1;
  config.scheme = kUnit;
  config.vectors = grid_vectors_2d(11);
  const SuiteReport report = property_suite(config);
  CHECK(report.passed());
  CHECK(report.vectors_checked == 121);
  CHECK(report.max_lstar_ratio > 1.0);
  CHECK(report.max_lstar_ratio <= 2.0 + 1e-2);
  // Text and JSON renderings carry the verdict.
  CHECK(report.to_json()["passed"] == true);
  CHECK(report.to_text().find("all checks passed") != std::string::npos);
  CHECK(report.to_csv().find("lstar_ratio") != std::string::npos);
}

TEST_CASE("property suite on an empty grid passes vacuously") {
  SuiteConfig config;
  config.fspec = kRg1;
  config.scheme = kUnit;
  const SuiteReport report = property_suite(config);
  CHECK(report.passed());
  CHECK(report.vectors_checked == 0);
}

TEST_CASE("sum aggregation concentrates") {
  const InstanceMatrix matrix = synthetic_matrix(600);
  AggregateConfig config;
  config.fspec = kRg1;
  config.scheme = kUnit;
  config.domain_sizes = {60, 600};
  config.trials = 80;
  const AggregateReport report = aggregate_error_experiment(matrix, config);
  REQUIRE(report.rows.size() == 2);
  CHECK(report.rows[0].truth > 0);
  // Mean within 3 standard errors of the truth.
  for (const auto& row : report.rows) {
    const double se = row.rmse / std::sqrt(static_cast<double>(config.trials));
    CHECK(std::abs(row.mean_estimate - row.truth) <= 3.0 * se);
  }
  // Relative error decreases with the domain size.
  CHECK(report.rows[1].relative_rmse < report.rows[0].relative_rmse);
}

TEST_CASE("all-zero differences aggregate to exactly zero") {
  InstanceMatrix m;
  m.instances = 2;
  for (int k = 0; k < 50; ++k) {
    m.keys.push_back("k" + std::to_string(k));
    const double w = 0.1 + 0.01 * k;
    m.items.push_back({w, w});
  }
  AggregateConfig config;
  config.fspec = kRg1;
  config.scheme = kUnit;
  config.domain_sizes = {50};
  config.trials = 20;
  const AggregateReport report = aggregate_error_experiment(m, config);
  CHECK(report.rows[0].truth == 0.0);
  CHECK(report.rows[0].mean_estimate == 0.0);
  CHECK(report.rows[0].rmse == 0.0);
}

TEST_CASE("sum variance is additive across items") {
  const InstanceMatrix matrix = synthetic_matrix(200, 5);
  double var_sum = 0.0;
  for (const auto& item : matrix.items) {
    var_sum += moments(EstimatorKind::lstar(), kRg1, kUnit, item).variance;
  }
  const std::size_t trials = 400;
  double truth = 0.0;
  for (const auto& item : matrix.items) truth += kRg1.value(item);
  double mean = 0.0, m2 = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    const SampleSet set = sample_matrix(matrix, kUnit, "var-" + std::to_string(t));
    double sum = 0.0;
    for (const auto& rec : set.records) sum += lstar_estimate(kRg1, rec.outcome);
    mean += sum;
    m2 += sum * sum;
  }
  mean /= trials;
  m2 /= trials;
  const double empirical_var = m2 - mean * mean;
  // The variance estimator's own standard error is about var*sqrt(2/n).
  const double sigma = var_sum * std::sqrt(2.0 / (trials - 1));
  CHECK(std::abs(empirical_var - var_sum) <= 3.0 * sigma);
  CHECK(std::abs(mean - truth) <= 3.0 * std::sqrt(var_sum / trials));
}

TEST_CASE("demo dataset query is recovered in expectation") {
  // L1 over {b,c,e} = 0.44 + 0.23 + 0.05 = 0.72 on the demo data; the
  // per-item estimates are unbiased, so the Monte Carlo mean lands within
  // 3 standard errors.
  InstanceMatrix m;
  m.instances = 2;
  m.keys = {"b", "c", "e"};
  m.items = {{0.0, 0.44}, {0.23, 0.0}, {0.10, 0.05}};
  AggregateConfig config;
  config.fspec = FunctionSpec::range(1.0);
  config.scheme = kUnit;
  config.domain_sizes = {3};
  config.trials = 400;
  const AggregateReport report = aggregate_error_experiment(m, config);
  CHECK(report.rows[0].truth == doctest::Approx(0.72));
  const double se = report.rows[0].rmse / std::sqrt(400.0);
  CHECK(std::abs(report.rows[0].mean_estimate - 0.72) <= 3.0 * se);
}

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

#include "monoest/hull.hpp"
#include "monoest/optimal_range.hpp"
#include "oracles.hpp"

using namespace monoest;

namespace {

// Dense-grid convex-minorant cross check of the analytic hull.
void check_against_grid_minorant(const PiecewiseCurve& curve, double rho, double M,
                                 double slope_tol) {
  const AnchoredHull hull = lower_hull(curve, rho, M);
  const int n = 4000;
  const double spacing = rho / n;
  std::vector<oracles::MinorantPoint> pts;
  pts.push_back({0.0, curve.right_limit(0.0)});
  for (int i = 1; i < n; ++i) {
    const double u = rho * i / n;
    pts.push_back({u, curve.value(u)});
  }
  pts.push_back({rho, M});
  const auto chain = oracles::grid_convex_minorant(pts);
  const auto near_vertex = [&](double u) {
    for (const auto& vertex : chain) {
      if (std::abs(u - vertex.x) < 4.0 * spacing) return true;
    }
    return false;
  };
  for (int i = 1; i <= 40; ++i) {
    const double u = rho * (i - 0.5) / 40.0;
    // Slopes jump at chain vertices, whose grid positions are off by up to
    // one spacing; only compare away from them.
    if (!near_vertex(u)) {
      CHECK(hull.estimate(u) ==
            doctest::Approx(oracles::minorant_negated_slope(chain, u)).epsilon(slope_tol));
    }
    CHECK(hull.value(u) <= curve.value(u) + 1e-10);
    // Grid chords sit slightly above convex arcs, so allow slack both ways.
    CHECK(oracles::minorant_value(chain, u) ==
          doctest::Approx(hull.value(u)).epsilon(1e-3).scale(1.0));
  }
  // Convexity: negated slopes non-increasing in u.
  double prev = 1e300;
  for (int i = 1; i <= 200; ++i) {
    const double u = rho * i / 200.0;
    const double est = hull.estimate(u);
    CHECK(est <= prev + 1e-9);
    CHECK(est >= -1e-12);
    prev = est;
  }
  // Mass identity: the estimate integrates to hull(0+) - M.
  CHECK(hull.estimate_integral(0.0, rho) ==
        doctest::Approx(hull.apex_value() - M).epsilon(1e-9));
}

}  // namespace

TEST_CASE("hull of a concave-then-zero curve is a single chord") {
  // Lower bound of the one-sided range at (0.6, 0.2): 0.4 on (0,0.2],
  // 0.6-u on (0.2,0.6], then 0. Anchored at (1,0) the hull is the chord
  // from (0,0.4) to (0.6,0).
  const auto f = FunctionSpec::range_plus(1.0);
  const auto curve = lower_bound_curve(f, ThresholdScheme::pps({1, 1}), {0.6, 0.2});
  const AnchoredHull hull = lower_hull(curve, 1.0, 0.0);
  CHECK(hull.estimate(0.1) == doctest::Approx(2.0 / 3.0));
  CHECK(hull.estimate(0.35) == doctest::Approx(2.0 / 3.0));
  CHECK(hull.estimate(0.6) == doctest::Approx(2.0 / 3.0));
  CHECK(hull.estimate(0.7) == doctest::Approx(0.0));
  CHECK(hull.apex_value() == doctest::Approx(0.4));
  CHECK(hull.estimate_integral(0.0, 1.0) == doctest::Approx(0.4));
  CHECK(hull.estimate_square_integral_full() == doctest::Approx(0.6 * 4.0 / 9.0));
}

TEST_CASE("a convex curve is its own hull") {
  const auto f = FunctionSpec::tight_family(0.25);
  const auto curve = lower_bound_curve(f, ThresholdScheme::pps({1.0}), {0.0});
  const AnchoredHull hull = lower_hull(curve, 1.0, 0.0);
  for (double u = 0.05; u <= 1.0; u += 0.05) {
    CHECK(hull.estimate(u) == doctest::Approx(std::pow(u, -0.25)).epsilon(1e-10));
    CHECK(hull.value(u) == doctest::Approx(curve.value(u)).epsilon(1e-10));
  }
  CHECK(hull.estimate_square_integral_full() == doctest::Approx(2.0));
}

TEST_CASE("hull of a two-level step curve") {
  // Step curve of the vector (2,0) under breakpoints (1/4,1/2): 2, then 1,
  // then 0. Anchored at (1,0) the hull is the line 2-4u down to (1/2, 0).
  const auto scheme = ThresholdScheme::step({0.25, 0.5}, {1, 2}, 2);
  const auto f = FunctionSpec::range_plus(1.0);
  const auto curve = lower_bound_curve(f, scheme, {2.0, 0.0});
  const AnchoredHull hull = lower_hull(curve, 1.0, 0.0);
  CHECK(hull.estimate(0.2) == doctest::Approx(4.0));
  CHECK(hull.estimate(0.5) == doctest::Approx(4.0));
  CHECK(hull.estimate(0.75) == doctest::Approx(0.0));
  CHECK(hull.value(0.25) == doctest::Approx(1.0));
}

TEST_CASE("hull rides convex arcs for p > 1") {
  // For p=2 the curve (0.6-u)^2 is convex past the flat head; the hull is
  // tangent from (0, 0.16) and follows the arc to (0.6, 0).
  const auto f = FunctionSpec::range_plus(2.0);
  const auto curve = lower_bound_curve(f, ThresholdScheme::pps({1, 1}), {0.6, 0.2});
  check_against_grid_minorant(curve, 1.0, 0.0, 2e-2);
  const AnchoredHull hull = lower_hull(curve, 1.0, 0.0);
  // Tangency t solves (0.6-t)^2 + 2t(0.6-t) = 0.16, i.e. the tangent line
  // through (0, 0.16): 0.36 - t^2 = 0.16 => t = sqrt(0.2).
  const double t = std::sqrt(0.2);
  CHECK(hull.estimate(t + 0.05) == doctest::Approx(2.0 * (0.6 - (t + 0.05))).epsilon(1e-9));
  CHECK(hull.estimate(t - 0.05) == doctest::Approx(2.0 * (0.6 - t)).epsilon(1e-7));
}

TEST_CASE("hull matches the dense-grid minorant oracle") {
  oracles::Rng rng(1234);
  for (double p : {0.5, 1.0, 2.0, 3.0}) {
    for (int trial = 0; trial < 12; ++trial) {
      const double v1 = rng.uniform(0.3, 1.0);
      const double v2 = rng.uniform(0.0, v1 * 0.9);
      const auto f = FunctionSpec::range_plus(p);
      const auto curve = lower_bound_curve(f, ThresholdScheme::pps({1, 1}), {v1, v2});
      const double rho = rng.uniform(0.3, 1.0);
      const double at_rho = curve.value(rho);
      const double M = rng.uniform(0.0, at_rho);
      check_against_grid_minorant(curve, rho, M, 3e-2);
    }
  }
  for (double p : {0.1, 0.25, 0.4}) {
    const auto f = FunctionSpec::tight_family(p);
    for (int trial = 0; trial < 6; ++trial) {
      const double v = rng.uniform(0.0, 0.9);
      const auto curve = lower_bound_curve(f, ThresholdScheme::pps({1.0}), {v});
      const double rho = rng.uniform(0.3, 1.0);
      const double M = rng.uniform(0.0, curve.value(rho));
      check_against_grid_minorant(curve, rho, M, 3e-2);
    }
  }
}

TEST_CASE("multi-arc curves fall back to tabulation") {
  // Unequal rates over three entries split the convex stretch into two
  // distinct arcs; the hull still comes out within grid resolution.
  const auto f = FunctionSpec::range(2.0);
  const auto scheme = ThresholdScheme::pps({1.0, 1.0, 2.0});
  const DataVector v{0.9, 0.5, 0.0};
  const auto curve = lower_bound_curve(f, scheme, v);
  const AnchoredHull hull = lower_hull(curve, 1.0, 0.0);
  CHECK(hull.estimate_integral(0.0, 1.0) == doctest::Approx(f.value(v)).epsilon(1e-6));
  double prev = 1e300;
  for (double u = 0.01; u <= 1.0; u += 0.01) {
    const double est = hull.estimate(u);
    CHECK(est >= 0.0);
    CHECK(est <= prev + 1e-9);
    CHECK(hull.value(u) <= curve.value(u) + 1e-6);
    prev = est;
  }
  // Cross-check against the dense grid minorant.
  const int n = 4000;
  std::vector<oracles::MinorantPoint> pts;
  pts.push_back({0.0, curve.right_limit(0.0)});
  for (int i = 1; i < n; ++i) pts.push_back({i / double(n), curve.value(i / double(n))});
  pts.push_back({1.0, 0.0});
  const auto chain = oracles::grid_convex_minorant(pts);
  for (int i = 1; i <= 20; ++i) {
    const double u = (i - 0.5) / 20.0;
    CHECK(hull.value(u) ==
          doctest::Approx(oracles::minorant_value(chain, u)).epsilon(1e-4).scale(1.0));
  }
}

TEST_CASE("anchor validation") {
  const auto f = FunctionSpec::range_plus(1.0);
  const auto curve = lower_bound_curve(f, ThresholdScheme::pps({1, 1}), {0.6, 0.2});
  CHECK_THROWS_AS((void)lower_hull(curve, 0.4, 0.3), std::domain_error);  // M > curve(0.4)=0.2
  CHECK_THROWS_AS((void)lower_hull(curve, 0.4, -0.1), std::domain_error);
}

TEST_CASE("lambda examples") {
  const auto f = FunctionSpec::range_plus(1.0);
  const auto scheme = ThresholdScheme::pps({1, 1});
  SUBCASE("chord to the origin for the (0.6,0) curve") {
    const auto curve = lower_bound_curve(f, scheme, {0.6, 0.0});
    const double M = 0.2 - 0.4 * std::log(1.5);  // cumulative mass of the lower extreme
    CHECK(M == doctest::Approx(0.037814).epsilon(1e-4));
    CHECK(lambda_value(curve, 0.4, M) == doctest::Approx((0.6 - M) / 0.4).epsilon(1e-12));
    CHECK(lambda_value(curve, 0.4, M) == doctest::Approx(1.40547).epsilon(1e-4));
  }
  SUBCASE("anchor on a flat stretch gives zero") {
    const auto curve = lower_bound_curve(f, scheme, {0.6, 0.2});
    CHECK(lambda_value(curve, 0.1, curve.value(0.1)) == doctest::Approx(0.0));
  }
  SUBCASE("anchor on a convex curve gives the tangent slope") {
    const auto tf = FunctionSpec::tight_family(0.25);
    const auto curve = lower_bound_curve(tf, ThresholdScheme::pps({1.0}), {0.0});
    for (double rho : {0.3, 0.6, 0.9}) {
      const double lam = lambda_value(curve, rho, curve.value(rho));
      CHECK(lam == doctest::Approx(std::pow(rho, -0.25)).epsilon(1e-9));
      // Finite-difference cross check.
      const double h = 1e-6;
      const double fd = (curve.value(rho - h) - curve.value(rho)) / h;
      CHECK(lam == doctest::Approx(fd).epsilon(1e-4));
    }
  }
}

TEST_CASE("lambda bounds on outcomes") {
  const auto f = FunctionSpec::range_plus(1.0);
  const auto scheme = ThresholdScheme::pps({1, 1});
  SUBCASE("worked endpoints at rho=0.4") {
    const Outcome s = sample_vector({0.6, 0.2}, 0.4, scheme);
    const double M = 0.2 - 0.4 * std::log(1.5);
    const OptimalRange r = lambda_bounds(f, s, M);
    CHECK(r.lambda_lo == doctest::Approx(std::log(1.5)).epsilon(1e-9));  // 0.40546
    CHECK(r.lambda_hi == doctest::Approx((0.6 - M) / 0.4).epsilon(1e-9));
    CHECK_FALSE(r.unbounded_hi);
    CHECK(r.lambda_lo <= r.lambda_hi);
  }
  SUBCASE("zero suffix and zero mass") {
    const Outcome s = sample_vector({0.1, 0.1}, 0.9, scheme);
    const OptimalRange r = lambda_bounds(f, s, 0.0);
    CHECK(r.lambda_lo == doctest::Approx(0.0));
    CHECK(r.lambda_hi == doctest::Approx(0.0));
  }
  SUBCASE("fully sampled outcome degenerates to a point") {
    const Outcome s = sample_vector({0.6, 0.2}, 0.15, scheme);
    const OptimalRange r = lambda_bounds(f, s, 0.1);
    CHECK(r.lambda_lo == doctest::Approx(r.lambda_hi).epsilon(1e-12));
    CHECK(r.lambda_lo == doctest::Approx((0.4 - 0.1) / 0.15));
  }
}

TEST_CASE("per-vector optimal estimate functions") {
  const auto scheme = ThresholdScheme::pps({1, 1});
  SUBCASE("worked examples") {
    const auto opt_62 = v_optimal(FunctionSpec::range_plus(1.0), scheme, {0.6, 0.2});
    CHECK(opt_62.estimate(0.3) == doctest::Approx(2.0 / 3.0));
    CHECK(opt_62.estimate(0.9) == doctest::Approx(0.0));
    const auto opt_60 = v_optimal(FunctionSpec::range_plus(1.0), scheme, {0.6, 0.0});
    CHECK(opt_60.estimate(0.3) == doctest::Approx(1.0));
    CHECK(opt_60.estimate(0.61) == doctest::Approx(0.0));
    const auto opt_tight = v_optimal(FunctionSpec::tight_family(0.25),
                                     ThresholdScheme::pps({1.0}), {0.0});
    CHECK(opt_tight.estimate(0.5) == doctest::Approx(std::pow(0.5, -0.25)));
  }
  SUBCASE("unbiased by construction") {
    oracles::Rng rng(55);
    for (double p : {0.5, 1.0, 2.0}) {
      const auto f = FunctionSpec::range_plus(p);
      for (int trial = 0; trial < 10; ++trial) {
        const DataVector v{rng.uniform(), rng.uniform()};
        const auto opt = v_optimal(f, scheme, v);
        CHECK(opt.estimate_integral(0.0, 1.0) == doctest::Approx(f.value(v)).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("lambda is consistent with the hull slope") {
  oracles::Rng rng(321);
  const auto scheme = ThresholdScheme::pps({1, 1});
  for (double p : {0.5, 1.0, 2.0}) {
    const auto f = FunctionSpec::range_plus(p);
    for (int trial = 0; trial < 12; ++trial) {
      const double v1 = rng.uniform(0.3, 1.0);
      const double v2 = rng.uniform(0.0, v1 * 0.9);
      const auto curve = lower_bound_curve(f, scheme, {v1, v2});
      const auto hull = lower_hull(curve, 1.0, 0.0);
      const double rho = rng.uniform(0.05, 0.95);
      // Anchoring at the hull's own cumulative mass must reproduce its slope.
      const double lam = lambda_value(curve, rho, hull.value(rho));
      CHECK(lam == doctest::Approx(hull.estimate(rho)).epsilon(1e-9));
    }
  }
}

TEST_CASE("lower range endpoint is realized by an infimum-achieving vector") {
  const auto f = FunctionSpec::range_plus(1.0);
  const auto scheme = ThresholdScheme::pps({1, 1});
  oracles::Rng rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const double v1 = rng.uniform(0.3, 1.0);
    const double rho = rng.uniform(0.1, v1 * 0.95);
    const Outcome s = sample_vector({v1, 0.0}, rho, scheme);
    const double M = rng.uniform(0.0, suffix_curve(f, s).start_value());
    const OptimalRange range = lambda_bounds(f, s, M);
    // A consistent vector just below the bound has nearly the infimum f
    // value; its own optimal estimate approaches lambda_lo.
    const DataVector near{v1, rho * (1.0 - 1e-7)};
    const auto curve = lower_bound_curve(f, scheme, near);
    CHECK(lambda_value(curve, rho, M) == doctest::Approx(range.lambda_lo).epsilon(1e-5));
  }
}

TEST_CASE("existence checks") {
  const auto scheme = ThresholdScheme::pps({1, 1});
  const auto rp = FunctionSpec::range_plus(1.0);
  const auto a = existence_checks(rp, scheme, {0.6, 0.0});
  CHECK(a.estimable == Certainty::kTrue);
  CHECK(a.finite_variance == Certainty::kTrue);
  CHECK(a.bounded == Certainty::kTrue);
  const auto b = existence_checks(rp, scheme, {0.6, 0.2});
  CHECK(b.estimable == Certainty::kTrue);
  CHECK(b.finite_variance == Certainty::kTrue);
  CHECK(b.bounded == Certainty::kTrue);
  const auto c =
      existence_checks(FunctionSpec::tight_family(0.25), ThresholdScheme::pps({1.0}), {0.0});
  CHECK(c.estimable == Certainty::kTrue);
  CHECK(c.finite_variance == Certainty::kTrue);
  CHECK(c.bounded == Certainty::kFalse);
}

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

#include "monoest/moments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "monoest/quadrature.hpp"

namespace monoest {

std::string EstimatorKind::name() const {
  switch (type) {
    case Type::kLstar:
      return "lstar";
    case Type::kUstar:
      return "ustar";
    case Type::kHt:
      return "ht";
    case Type::kVOptOracle:
      return "vopt";
    case Type::kTable:
      return "table";
  }
  return "?";
}

double apply_estimator(const EstimatorKind& kind, const FunctionSpec& f, const Outcome& outcome) {
  switch (kind.type) {
    case EstimatorKind::Type::kLstar:
      return lstar_estimate(f, outcome);
    case EstimatorKind::Type::kUstar:
      return ustar_estimate(f, outcome);
    case EstimatorKind::Type::kHt:
      return ht_estimate(f, outcome);
    case EstimatorKind::Type::kTable:
      return kind.table->estimate(outcome);
    case EstimatorKind::Type::kVOptOracle:
      throw std::invalid_argument("the v-optimal oracle is not an outcome function");
  }
  throw std::logic_error("unreachable");
}

namespace {

constexpr double kTailEps = 1e-12;

// Primitives on [x0, x1] with c > 0.
double int_log(double c, double x0, double x1) {
  const auto prim = [c](double w) { return w <= 0 ? 0.0 : w * std::log(c / w) + w; };
  return prim(x1) - prim(x0);
}

double int_log2(double c, double x0, double x1) {
  const auto prim = [c](double w) {
    if (w <= 0) return 0.0;
    const double l = std::log(c / w);
    return w * (l * l + 2 * l + 2);
  };
  return prim(x1) - prim(x0);
}

double int_wlog(double c, double x0, double x1) {
  const auto prim = [c](double w) {
    return w <= 0 ? 0.0 : 0.5 * w * w * std::log(c / w) + 0.25 * w * w;
  };
  return prim(x1) - prim(x0);
}

struct RangeCase {
  bool applies = false;
  double a = 0.0;  // larger value
  double b = 0.0;  // smaller value
  double r = 0.0;  // shared pps rate
};

// Closed-form moments exist for the two-entry range kinds under equal-rate
// pps when the larger entry unsamples within (0,1].
RangeCase closed_range_case(const FunctionSpec& f, const ThresholdScheme& scheme,
                            const DataVector& v) {
  RangeCase c;
  if (f.kind() != FunctionKind::kRangePlus && f.kind() != FunctionKind::kRange) return c;
  if (v.size() != 2 || scheme.kind() != SchemeKind::kPps) return c;
  const double r0 = scheme.rate(0);
  const double r1 = scheme.rate(1);
  if (std::abs(r0 - r1) > 1e-12 * (r0 + r1)) return c;
  const double hi = std::max(v[0], v[1]);
  const double lo = std::min(v[0], v[1]);
  if (f.kind() == FunctionKind::kRangePlus && v[0] < v[1]) return c;  // f = 0, handled earlier
  if (hi > r0) return c;
  c.applies = true;
  c.a = hi;
  c.b = lo;
  c.r = r0;
  return c;
}

MomentReport lstar_range_closed(double p, const RangeCase& c) {
  MomentReport rep;
  rep.f_value = std::pow(c.a - c.b, p);
  const double a = c.a, b = c.b, r = c.r;
  if (p == 1.0) {
    rep.expectation = (b > 0 ? b * std::log(a / b) : 0.0) + int_log(a, b, a);
    rep.second_moment =
        (b > 0 ? r * b * std::log(a / b) * std::log(a / b) : 0.0) + r * int_log2(a, b, a);
  } else {
    // p == 2
    const auto g1 = [a](double w) { return 2.0 * (a * std::log(a / w) - (a - w)); };
    const double head_e = b > 0 ? b * g1(b) : 0.0;
    const double head_m = b > 0 ? (b / r) * (r * g1(b)) * (r * g1(b)) : 0.0;
    rep.expectation = head_e + 2.0 * a * int_log(a, b, a) - (a - b) * (a - b);
    const double il = int_log(a, b, a);
    const double il2 = int_log2(a, b, a);
    const double iwl = int_wlog(a, b, a);
    const double cube = (a - b) * (a - b) * (a - b) / 3.0;
    const double g1_sq_int = 4.0 * (a * a * il2 - 2.0 * a * (a * il - iwl) + cube);
    rep.second_moment = head_m + r * g1_sq_int;
  }
  rep.variance = rep.second_moment - rep.expectation * rep.expectation;
  return rep;
}

MomentReport ustar_range_closed(double p, const RangeCase& c) {
  MomentReport rep;
  rep.f_value = std::pow(c.a - c.b, p);
  const double a = c.a, b = c.b, r = c.r;
  const double s_b = b / r;
  const double s_a = a / r;
  if (p >= 1.0) {
    rep.expectation = std::pow(a - b, p);
    rep.second_moment = r * p * p * std::pow(a - b, 2.0 * p - 1.0) / (2.0 * p - 1.0);
  } else {
    const double head = b > 0 ? r * (std::pow(a - b, p) - std::pow(a, p - 1.0) * (a - b)) / b : 0.0;
    const double tail = r * std::pow(a, p - 1.0);
    rep.expectation = s_b * head + (s_a - s_b) * tail;
    rep.second_moment = s_b * head * head + (s_a - s_b) * tail * tail;
  }
  rep.variance = rep.second_moment - rep.expectation * rep.expectation;
  return rep;
}

MomentReport lstar_tight_closed(double p, double v) {
  MomentReport rep;
  rep.f_value = p == 0.0 ? 1.0 - v : (1.0 - std::pow(v, 1.0 - p)) / (1.0 - p);
  const auto est = [p](double c) {
    return p == 0.0 ? -std::log(c) : (std::pow(c, -p) - 1.0) / p;
  };
  const auto int_est = [p](double x0, double x1) {
    if (p == 0.0) return int_log(1.0, x0, x1);  // integral of ln(1/u)
    const auto prim = [p](double u) {
      return (std::pow(u, 1.0 - p) / (1.0 - p) - u) / p;
    };
    return prim(x1) - prim(x0);
  };
  const auto int_est2 = [p](double x0, double x1) {
    if (p == 0.0) return int_log2(1.0, x0, x1);  // integral of ln(u)^2
    const auto prim = [p](double u) {
      return (std::pow(u, 1.0 - 2.0 * p) / (1.0 - 2.0 * p) -
              2.0 * std::pow(u, 1.0 - p) / (1.0 - p) + u) /
             (p * p);
    };
    return prim(x1) - prim(x0);
  };
  rep.expectation = (v > 0 ? v * est(v) : 0.0) + int_est(v, 1.0);
  rep.second_moment = (v > 0 ? v * est(v) * est(v) : 0.0) + int_est2(v, 1.0);
  rep.variance = rep.second_moment - rep.expectation * rep.expectation;
  return rep;
}

MomentReport vopt_moments(const FunctionSpec& f, const ThresholdScheme& scheme,
                          const DataVector& v) {
  MomentReport rep;
  rep.f_value = f.value(v);
  const PiecewiseCurve curve = lower_bound_curve(f, scheme, v);
  const AnchoredHull hull = lower_hull(curve, 1.0, 0.0);
  rep.expectation = hull.estimate_integral(0.0, 1.0);
  rep.second_moment = hull.estimate_square_integral_full();
  if (!std::isfinite(rep.second_moment)) {
    rep.second_moment_infinite = true;
    rep.variance = std::numeric_limits<double>::infinity();
  } else {
    rep.variance = rep.second_moment - rep.expectation * rep.expectation;
  }
  return rep;
}

MomentReport ht_moments(const FunctionSpec& f, const ThresholdScheme& scheme,
                        const DataVector& v) {
  MomentReport rep;
  rep.f_value = f.value(v);
  const double p_rev = ht_reveal_probability(f, scheme, v);
  if (!(p_rev > 0)) {
    throw std::domain_error("HT estimator inapplicable: zero reveal probability");
  }
  rep.expectation = rep.f_value;
  rep.second_moment = rep.f_value * rep.f_value / p_rev;
  rep.variance = rep.second_moment - rep.expectation * rep.expectation;
  return rep;
}

MomentReport table_moments(const EstimatorTable& table, const DataVector& v) {
  MomentReport rep;
  RationalVector rv;
  for (double x : v) {
    bool matched = std::abs(x) <= 1e-9;
    Rational val(0);
    if (!matched) {
      for (const auto& level : table.levels()) {
        if (std::abs(level.to_double() - x) <= 1e-9) {
          val = level;
          matched = true;
          break;
        }
      }
    }
    if (!matched) throw std::invalid_argument("vector entry is not on the table's grid");
    rv.push_back(val);
  }
  rep.f_value = table.f_value(rv).to_double();
  rep.expectation = table.expectation(rv).to_double();
  rep.second_moment = table.second_moment(rv).to_double();
  rep.variance = rep.second_moment - rep.expectation * rep.expectation;
  return rep;
}

// Split points where the outcome of v changes: entry horizons plus step
// breakpoints.
std::vector<double> outcome_breakpoints(const ThresholdScheme& scheme, const DataVector& v) {
  std::vector<double> cuts;
  if (scheme.kind() == SchemeKind::kPps) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      const double h = scheme.sampling_horizon(i, v[i]);
      if (h > 0 && h < 1.0) cuts.push_back(h);
    }
  } else {
    for (double pi : scheme.breakpoints()) {
      if (pi < 1.0) cuts.push_back(pi);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  cuts.push_back(1.0);
  return cuts;
}

MomentReport quadrature_moments(const EstimatorKind& kind, const FunctionSpec& f,
                                const ThresholdScheme& scheme, const DataVector& v, double tol) {
  MomentReport rep;
  rep.f_value = f.value(v);
  const auto est = [&](double u) {
    return apply_estimator(kind, f, sample_vector(v, u, scheme));
  };
  std::vector<double> cuts = outcome_breakpoints(scheme, v);
  // Geometric ladder toward zero: keeps the adaptive subdivision shallow
  // when the estimate has a log singularity at u -> 0.
  for (double x = 1e-9; x < cuts.front(); x *= 31.6227766) cuts.push_back(x);
  std::sort(cuts.begin(), cuts.end());
  double lo = kTailEps;
  double err = 0.0;
  for (double hi : cuts) {
    if (!(hi > lo)) continue;
    double e1 = 0, e2 = 0;
    rep.expectation += adaptive_simpson(est, lo, hi, tol, 40, &e1);
    rep.second_moment += adaptive_simpson([&est](double u) {
      const double x = est(u);
      return x * x;
    }, lo, hi, tol, 40, &e2);
    err += e1 + e2;
    lo = hi;
  }
  // Tail below the cutoff: estimates grow at most like log^2 there.
  const double at_eps = est(kTailEps);
  err += kTailEps * (at_eps * at_eps + at_eps) * 8.0;
  rep.quadrature_error_bound = err;
  rep.variance = rep.second_moment - rep.expectation * rep.expectation;
  return rep;
}

MomentReport zero_report(double f_value) {
  MomentReport rep;
  rep.f_value = f_value;
  return rep;
}

}  // namespace

MomentReport moments(const EstimatorKind& kind, const FunctionSpec& f,
                     const ThresholdScheme& scheme, const DataVector& v, double tol) {
  validate_data_vector(v);
  const double fv = f.value(v);

  switch (kind.type) {
    case EstimatorKind::Type::kVOptOracle:
      return vopt_moments(f, scheme, v);
    case EstimatorKind::Type::kHt:
      return ht_moments(f, scheme, v);
    case EstimatorKind::Type::kTable:
      return table_moments(*kind.table, v);
    default:
      break;
  }

  if (fv == 0.0) return zero_report(fv);

  const double p = f.exponent();
  if (f.kind() == FunctionKind::kTightFamily && kind.type == EstimatorKind::Type::kLstar &&
      scheme.kind() == SchemeKind::kPps && scheme.rates() == std::vector<double>{1.0}) {
    return lstar_tight_closed(p, v[0]);
  }
  const RangeCase range = closed_range_case(f, scheme, v);
  if (range.applies && kind.type == EstimatorKind::Type::kLstar && (p == 1.0 || p == 2.0)) {
    return lstar_range_closed(p, range);
  }
  if (range.applies && kind.type == EstimatorKind::Type::kUstar) {
    return ustar_range_closed(p, range);
  }
  return quadrature_moments(kind, f, scheme, v, tol);
}

RatioReport competitive_ratio(const EstimatorKind& kind, const FunctionSpec& f,
                              const ThresholdScheme& scheme, const DataVector& v) {
  RatioReport report;
  report.v = v;
  if (f.value(v) == 0.0) {
    return report;  // both moments vanish; ratio 1 by convention
  }
  const MomentReport est = moments(kind, f, scheme, v);
  const MomentReport opt = moments(EstimatorKind::vopt_oracle(), f, scheme, v);
  report.estimator_second_moment = est.second_moment;
  report.optimal_second_moment = opt.second_moment;
  if (opt.second_moment <= 0.0) {
    throw std::logic_error("v-optimal second moment vanished on a positive-f vector");
  }
  report.ratio = est.second_moment / opt.second_moment;
  return report;
}

TightnessReport tightness_family(double p) {
  if (!(p >= 0) || p >= 0.5) throw std::invalid_argument("tightness family needs p in [0, 0.5)");
  TightnessReport rep;
  rep.p = p;
  rep.opt_second_moment = 1.0 / (1.0 - 2.0 * p);
  rep.lstar_second_moment = 2.0 / ((1.0 - 2.0 * p) * (1.0 - p));
  rep.ratio = 2.0 / (1.0 - p);

  const FunctionSpec f = FunctionSpec::tight_family(p);
  const ThresholdScheme scheme = ThresholdScheme::pps({1.0});
  const DataVector zero{0.0};
  rep.opt_numeric = moments(EstimatorKind::vopt_oracle(), f, scheme, zero).second_moment;
  rep.lstar_numeric = moments(EstimatorKind::lstar(), f, scheme, zero).second_moment;
  rep.max_rel_err =
      std::max(std::abs(rep.opt_numeric - rep.opt_second_moment) / rep.opt_second_moment,
               std::abs(rep.lstar_numeric - rep.lstar_second_moment) / rep.lstar_second_moment);
  return rep;
}

}  // namespace monoest

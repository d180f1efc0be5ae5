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

#include "monoest/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "monoest/quadrature.hpp"

namespace monoest {

double lstar_estimate(const FunctionSpec& f, const Outcome& outcome) {
  const PiecewiseCurve sfx = suffix_curve(f, outcome);
  if (sfx.identically_zero()) return 0.0;
  const double rho = outcome.seed;
  const double val = sfx.start_value() / rho - sfx.integral_over_u2(rho, 1.0);
  return std::max(0.0, val);
}

double lstar_estimate_quadrature(const FunctionSpec& f, const Outcome& outcome, double tol) {
  const PiecewiseCurve sfx = suffix_curve(f, outcome);
  if (sfx.identically_zero()) return 0.0;
  const double rho = outcome.seed;
  double integral = 0.0;
  for (const auto& seg : sfx.segments()) {
    const double lo = std::max(rho, seg.lo);
    const double hi = seg.hi;
    if (!(hi > lo)) continue;
    integral += adaptive_simpson([&seg](double u) { return seg.eval(u) / (u * u); }, lo, hi, tol);
  }
  return std::max(0.0, sfx.start_value() / rho - integral);
}

double lstar_cumulative(const FunctionSpec& f, const Outcome& outcome) {
  // From the defining equation: M(rho) = underline(rho) - rho * estimate.
  const PiecewiseCurve sfx = suffix_curve(f, outcome);
  if (sfx.identically_zero()) return 0.0;
  const double rho = outcome.seed;
  const double est = std::max(0.0, sfx.start_value() / rho - sfx.integral_over_u2(rho, 1.0));
  return std::max(0.0, sfx.start_value() - rho * est);
}

namespace {

// Role split of an arity-2 range outcome: the larger (sampled) entry plays
// the positive role, the other entry is either exact or only bounded.
struct RangeRoles {
  bool positive_sampled = false;
  double a = 0.0;        // positive-role value
  bool neg_exact = false;
  double b = 0.0;        // negative-role value when exact
};

RangeRoles range_roles(const FunctionSpec& f, const Outcome& outcome) {
  RangeRoles roles;
  if (f.kind() == FunctionKind::kRangePlus) {
    if (!outcome.is_sampled(0)) return roles;
    roles.positive_sampled = true;
    roles.a = outcome.sampled_value(0);
    roles.neg_exact = outcome.is_sampled(1);
    if (roles.neg_exact) roles.b = outcome.sampled_value(1);
    return roles;
  }
  // Symmetric range on two entries: the max sampled value leads.
  if (outcome.sampled.empty()) return roles;
  std::size_t lead = outcome.sampled.begin()->first;
  for (const auto& [i, v] : outcome.sampled) {
    if (v > outcome.sampled_value(lead)) lead = i;
  }
  roles.positive_sampled = true;
  roles.a = outcome.sampled_value(lead);
  const std::size_t other = 1 - lead;
  roles.neg_exact = outcome.is_sampled(other);
  if (roles.neg_exact) roles.b = outcome.sampled_value(other);
  return roles;
}

bool ustar_closed_form_applies(const FunctionSpec& f, const Outcome& outcome) {
  if (f.kind() != FunctionKind::kRangePlus && f.kind() != FunctionKind::kRange) return false;
  if (outcome.arity != 2) return false;
  if (outcome.scheme.kind() != SchemeKind::kPps) return false;
  const double r0 = outcome.scheme.rate(0);
  const double r1 = outcome.scheme.rate(1);
  if (std::abs(r0 - r1) > 1e-12 * (r0 + r1)) return false;
  const RangeRoles roles = range_roles(f, outcome);
  if (!roles.positive_sampled) return true;  // estimate is 0, trivially closed
  return roles.a <= r0;  // the positive entry must unsample within (0,1]
}

double ustar_closed(const FunctionSpec& f, const Outcome& outcome, double* cumulative) {
  const RangeRoles roles = range_roles(f, outcome);
  const double p = f.exponent();
  const double rho = outcome.seed;
  if (!roles.positive_sampled) {
    if (cumulative != nullptr) *cumulative = 0.0;
    return 0.0;
  }
  const double r = outcome.scheme.rate(0);
  const double a = roles.a;
  const double horizon_a = a / r;
  double est, mass;
  if (roles.neg_exact && roles.b >= a) {
    // Only zero-difference vectors are consistent; the estimate vanishes.
    if (cumulative != nullptr) *cumulative = 0.0;
    return 0.0;
  }
  if (roles.neg_exact) {
    const double b = roles.b;
    const double horizon_b = b / r;
    if (p >= 1.0) {
      est = 0.0;
      mass = std::pow(a - b, p);
    } else {
      est = b > 0 ? r * (std::pow(a - b, p) - std::pow(a, p - 1.0) * (a - b)) / b : 0.0;
      mass = (horizon_b - rho) * est + (horizon_a - horizon_b) * r * std::pow(a, p - 1.0);
    }
  } else {
    if (p >= 1.0) {
      est = r * p * std::pow(a - rho * r, p - 1.0);
      mass = std::pow(a - rho * r, p);
    } else {
      est = r * std::pow(a, p - 1.0);
      mass = (horizon_a - rho) * est;
    }
  }
  if (cumulative != nullptr) *cumulative = std::max(0.0, mass);
  return std::max(0.0, est);
}

double lambda_upper_at(const FunctionSpec& f, const Outcome& base, double u, double mass) {
  const Outcome coarse = u > base.seed ? coarsen(base, u) : base;
  const PiecewiseCurve sup = sup_lower_bound_curve(f, coarse);
  if (sup.identically_zero()) return 0.0;
  const double cap = sup.value(u);
  return lambda_value(sup, u, std::min(mass, cap));
}

struct SweepResult {
  double estimate = 0.0;
  double mass = 0.0;
};

SweepResult ustar_sweep_impl(const FunctionSpec& f, const Outcome& outcome, double tol) {
  const double rho = outcome.seed;
  if (rho >= 1.0) {
    return {lambda_upper_at(f, outcome, 1.0, 0.0), 0.0};
  }
  std::vector<double> prev;
  SweepResult result;
  for (std::size_t n = 512; n <= (1u << 15); n *= 2) {
    std::vector<double> est(n + 1);
    const double log_rho = std::log(rho);
    double mass = 0.0;
    double u_prev = 1.0;
    est[0] = lambda_upper_at(f, outcome, 1.0, 0.0);
    for (std::size_t k = 1; k <= n; ++k) {
      const double u = k == n ? rho : std::exp(log_rho * static_cast<double>(k) / n);
      const double du = u_prev - u;
      double guess = est[k - 1];
      for (int it = 0; it < 3; ++it) {
        const double trial_mass = mass + 0.5 * du * (est[k - 1] + guess);
        guess = lambda_upper_at(f, outcome, u, trial_mass);
        if (!std::isfinite(guess)) {
          throw std::domain_error("upper estimator undefined: unbounded optimal range");
        }
      }
      est[k] = guess;
      mass += 0.5 * du * (est[k - 1] + est[k]);
      u_prev = u;
    }
    result = {est[n], mass};
    if (!prev.empty()) {
      double diff = 0.0;
      for (std::size_t k = 0; k < prev.size(); ++k) {
        diff = std::max(diff, std::abs(prev[k] - est[2 * k]));
      }
      if (diff < tol) return result;
    }
    prev = std::move(est);
  }
  return result;  // best effort at the grid cap
}

}  // namespace

double ustar_estimate(const FunctionSpec& f, const Outcome& outcome) {
  if (ustar_closed_form_applies(f, outcome)) {
    return ustar_closed(f, outcome, nullptr);
  }
  return ustar_sweep_impl(f, outcome, 1e-6).estimate;
}

double ustar_estimate_sweep(const FunctionSpec& f, const Outcome& outcome, double tol) {
  return ustar_sweep_impl(f, outcome, tol).estimate;
}

double ustar_cumulative(const FunctionSpec& f, const Outcome& outcome) {
  if (ustar_closed_form_applies(f, outcome)) {
    double mass = 0.0;
    ustar_closed(f, outcome, &mass);
    return mass;
  }
  return ustar_sweep_impl(f, outcome, 1e-6).mass;
}

double ht_reveal_probability(const FunctionSpec& f, const ThresholdScheme& scheme,
                             const DataVector& v) {
  validate_data_vector(v);
  if (f.kind() == FunctionKind::kCustom) {
    const auto p = f.oracle()->reveal_probability(scheme, v);
    if (!p) throw std::domain_error("custom function provides no reveal probability");
    return *p;
  }
  double prob = 1.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    prob = std::min(prob, scheme.sampling_horizon(i, v[i]));
  }
  return prob;
}

bool ht_applicable(const FunctionSpec& f, const ThresholdScheme& scheme, const DataVector& v) {
  return ht_reveal_probability(f, scheme, v) > 0.0;
}

double ht_estimate(const FunctionSpec& f, const Outcome& outcome) {
  if (f.kind() == FunctionKind::kCustom) {
    if (!f.oracle()->outcome_reveals(outcome)) return 0.0;
  } else if (outcome.sampled.size() != outcome.arity) {
    return 0.0;
  }
  DataVector v(outcome.arity);
  for (std::size_t i = 0; i < outcome.arity; ++i) v[i] = outcome.sampled_value(i);
  const double p = ht_reveal_probability(f, outcome.scheme, v);
  if (!(p > 0)) throw std::domain_error("HT estimator inapplicable: zero reveal probability");
  return f.value(v) / p;
}

}  // namespace monoest

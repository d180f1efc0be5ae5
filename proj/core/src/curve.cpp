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

#include "monoest/curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "monoest/quadrature.hpp"

namespace monoest {

namespace {

constexpr double kJoinTol = 1e-12;

double clamp_nonneg(double x) { return x > 0 ? x : 0.0; }

}  // namespace

Segment Segment::constant(double lo, double hi, double value) {
  Segment s;
  s.lo = lo;
  s.hi = hi;
  s.form = SegmentForm::kConst;
  s.a = value;
  return s;
}

Segment Segment::linear(double lo, double hi, double a, double b) {
  Segment s;
  s.lo = lo;
  s.hi = hi;
  s.form = SegmentForm::kLinear;
  s.a = a;
  s.b = b;
  return s;
}

Segment Segment::power(double lo, double hi, double a, double b, double p) {
  Segment s;
  s.lo = lo;
  s.hi = hi;
  s.form = SegmentForm::kPower;
  s.a = a;
  s.b = b;
  s.p = p;
  return s;
}

Segment Segment::tight_power(double lo, double hi, double b, double p) {
  Segment s;
  s.lo = lo;
  s.hi = hi;
  s.form = SegmentForm::kTightPower;
  s.b = b;
  s.p = p;
  return s;
}

Segment Segment::tabulated(std::vector<std::pair<double, double>> nodes) {
  if (nodes.size() < 2) throw std::invalid_argument("tabulated segment needs >= 2 nodes");
  Segment s;
  s.lo = nodes.front().first;
  s.hi = nodes.back().first;
  s.form = SegmentForm::kTabulated;
  s.nodes = std::move(nodes);
  return s;
}

double Segment::eval(double u) const {
  switch (form) {
    case SegmentForm::kConst:
      return a;
    case SegmentForm::kLinear:
      return a - b * u;
    case SegmentForm::kPower:
      return std::pow(clamp_nonneg(a - b * u), p);
    case SegmentForm::kTightPower:
      return (1.0 - std::pow(b * u, 1.0 - p)) / (1.0 - p);
    case SegmentForm::kTabulated: {
      auto it = std::lower_bound(nodes.begin(), nodes.end(), u,
                                 [](const auto& n, double x) { return n.first < x; });
      if (it == nodes.begin()) return it->second;
      if (it == nodes.end()) return nodes.back().second;
      const auto& [x1, y1] = *it;
      const auto& [x0, y0] = *(it - 1);
      if (x1 == x0) return y1;
      const double t = (u - x0) / (x1 - x0);
      return y0 + t * (y1 - y0);
    }
  }
  return 0.0;
}

double Segment::derivative(double u) const {
  switch (form) {
    case SegmentForm::kConst:
      return 0.0;
    case SegmentForm::kLinear:
      return -b;
    case SegmentForm::kPower:
      return -b * p * std::pow(clamp_nonneg(a - b * u), p - 1.0);
    case SegmentForm::kTightPower:
      return -std::pow(b, 1.0 - p) * std::pow(u, -p);
    case SegmentForm::kTabulated:
      throw std::logic_error("derivative of a tabulated segment");
  }
  return 0.0;
}

bool Segment::is_convex_arc() const {
  if (form == SegmentForm::kPower) return p > 1.0;
  if (form == SegmentForm::kTightPower) return p > 0.0;
  return false;
}

double Segment::integral(double x0, double x1) const {
  if (!(x1 > x0)) return 0.0;
  switch (form) {
    case SegmentForm::kConst:
      return a * (x1 - x0);
    case SegmentForm::kLinear:
      return a * (x1 - x0) - 0.5 * b * (x1 * x1 - x0 * x0);
    case SegmentForm::kPower: {
      const auto prim = [&](double u) {
        return -std::pow(clamp_nonneg(a - b * u), p + 1.0) / (b * (p + 1.0));
      };
      return prim(x1) - prim(x0);
    }
    case SegmentForm::kTightPower: {
      const auto prim = [&](double u) {
        return (u - std::pow(b, 1.0 - p) * std::pow(u, 2.0 - p) / (2.0 - p)) / (1.0 - p);
      };
      return prim(x1) - prim(x0);
    }
    case SegmentForm::kTabulated: {
      double total = 0.0;
      for (std::size_t i = 1; i < nodes.size(); ++i) {
        const double lo_x = std::max(x0, nodes[i - 1].first);
        const double hi_x = std::min(x1, nodes[i].first);
        if (hi_x <= lo_x) continue;
        total += 0.5 * (eval(lo_x) + eval(hi_x)) * (hi_x - lo_x);
      }
      return total;
    }
  }
  return 0.0;
}

double Segment::integral_over_u2(double x0, double x1) const {
  if (!(x1 > x0)) return 0.0;
  if (!(x0 > 0)) throw std::domain_error("integral_over_u2 needs x0 > 0");
  switch (form) {
    case SegmentForm::kConst:
      return a * (1.0 / x0 - 1.0 / x1);
    case SegmentForm::kLinear:
      return a * (1.0 / x0 - 1.0 / x1) - b * std::log(x1 / x0);
    case SegmentForm::kPower: {
      if (p == 1.0) {
        return a * (1.0 / x0 - 1.0 / x1) - b * std::log(x1 / x0);
      }
      if (p == 2.0) {
        return a * a * (1.0 / x0 - 1.0 / x1) - 2.0 * a * b * std::log(x1 / x0) +
               b * b * (x1 - x0);
      }
      if (p == 0.5 && a > 0) {
        const double ra = std::sqrt(a);
        const auto prim = [&](double u) {
          const double s = std::sqrt(clamp_nonneg(a - b * u));
          return -s / u - (b / (2.0 * ra)) * std::log((ra - s) / (ra + s));
        };
        return prim(x1) - prim(x0);
      }
      return adaptive_simpson([this](double u) { return eval(u) / (u * u); }, x0, x1, 1e-11, 28);
    }
    case SegmentForm::kTightPower: {
      const double bp = std::pow(b, 1.0 - p);
      const auto prim = [&](double u) {
        return (-1.0 / u + bp * std::pow(u, -p) / p) / (1.0 - p);
      };
      return prim(x1) - prim(x0);
    }
    case SegmentForm::kTabulated: {
      double total = 0.0;
      for (std::size_t i = 1; i < nodes.size(); ++i) {
        const double lo_x = std::max(x0, nodes[i - 1].first);
        const double hi_x = std::min(x1, nodes[i].first);
        if (hi_x <= lo_x) continue;
        const auto& [nx0, ny0] = nodes[i - 1];
        const auto& [nx1, ny1] = nodes[i];
        const double slope = (ny1 - ny0) / (nx1 - nx0);
        const double intercept = ny0 - slope * nx0;  // value = intercept + slope*u
        total += intercept * (1.0 / lo_x - 1.0 / hi_x) + slope * std::log(hi_x / lo_x);
      }
      return total;
    }
  }
  return 0.0;
}

void PiecewiseCurve::append(Segment s) {
  const double expected_lo = segments_.empty() ? start_u_ : segments_.back().hi;
  if (std::abs(s.lo - expected_lo) > kJoinTol) {
    throw std::logic_error("piecewise curve segments must be contiguous");
  }
  s.lo = expected_lo;
  if (!(s.hi > s.lo)) return;  // drop empty pieces
  segments_.push_back(std::move(s));
}

double PiecewiseCurve::value(double u) const {
  if (u == start_u_) return start_value_;
  for (const auto& s : segments_) {
    if (u > s.lo && u <= s.hi) return s.eval(u);
  }
  throw std::out_of_range("curve evaluated outside its domain");
}

double PiecewiseCurve::right_limit(double x) const {
  for (const auto& s : segments_) {
    if (x >= s.lo && x < s.hi) return s.eval(x);
  }
  throw std::out_of_range("right limit outside the curve domain");
}

double PiecewiseCurve::integral(double a, double b) const {
  double total = 0.0;
  for (const auto& s : segments_) {
    total += s.integral(std::max(a, s.lo), std::min(b, s.hi));
  }
  return total;
}

double PiecewiseCurve::integral_over_u2(double a, double b) const {
  double total = 0.0;
  for (const auto& s : segments_) {
    total += s.integral_over_u2(std::max(a, s.lo), std::min(b, s.hi));
  }
  return total;
}

bool PiecewiseCurve::identically_zero() const {
  if (start_value_ != 0.0) return false;
  for (const auto& s : segments_) {
    if (s.form != SegmentForm::kConst || s.a != 0.0) return false;
  }
  return true;
}

nlohmann::json PiecewiseCurve::to_json() const {
  nlohmann::json j;
  j["start_u"] = start_u_;
  j["start_value"] = start_value_;
  nlohmann::json segs = nlohmann::json::array();
  for (const auto& s : segments_) {
    nlohmann::json seg;
    seg["lo"] = s.lo;
    seg["hi"] = s.hi;
    switch (s.form) {
      case SegmentForm::kConst:
        seg["form"] = "const";
        seg["value"] = s.a;
        break;
      case SegmentForm::kLinear:
        seg["form"] = "linear";
        seg["a"] = s.a;
        seg["b"] = s.b;
        break;
      case SegmentForm::kPower:
        seg["form"] = "power";
        seg["a"] = s.a;
        seg["b"] = s.b;
        seg["p"] = s.p;
        break;
      case SegmentForm::kTightPower:
        seg["form"] = "tight";
        seg["b"] = s.b;
        seg["p"] = s.p;
        break;
      case SegmentForm::kTabulated:
        seg["form"] = "tabulated";
        seg["nodes"] = s.nodes;
        break;
    }
    segs.push_back(seg);
  }
  j["segments"] = segs;
  return j;
}

namespace {

// tau_i at seed u, with u == 0 read as the u -> 0+ limit.
double tau_at(const ThresholdScheme& scheme, std::size_t i, double u) {
  if (u > 0) return scheme.threshold(i, u);
  if (scheme.kind() == SchemeKind::kPps) return 0.0;
  return scheme.levels().front();
}

bool entry_sampled_at(const ThresholdScheme& scheme, const EntryBound& e, std::size_t i,
                      double u) {
  return e.exact && e.value >= tau_at(scheme, i, u);
}

// Largest value of the step grid {0} union levels strictly below `cut`.
// Step schemes carry discrete domains, so free entries range over the grid.
double step_grid_below(const ThresholdScheme& scheme, double cut) {
  double best = 0.0;
  for (double level : scheme.levels()) {
    if (level < cut) best = level;
  }
  return best;
}

double tight_value(double p, double v) {
  if (p == 0.0) return 1.0 - v;
  return (1.0 - std::pow(v, 1.0 - p)) / (1.0 - p);
}

double range_plus_inf(double p, bool a_known, double a, double b_cap) {
  if (!a_known) return 0.0;
  return std::pow(clamp_nonneg(a - b_cap), p);
}

PiecewiseCurve zero_curve(double from) {
  PiecewiseCurve c(from, 0.0);
  c.append(Segment::constant(from, 1.0, 0.0));
  return c;
}

// Sampling horizon of an entry: it stays sampled for u <= horizon.
double horizon(const ThresholdScheme& scheme, const EntryBound& e, std::size_t i) {
  if (!e.exact) return 0.0;
  return scheme.sampling_horizon(i, e.value);
}

PiecewiseCurve build_pps_range_plus(const FunctionSpec& f, const ThresholdScheme& scheme,
                                    const std::vector<EntryBound>& entries, double from) {
  const double p = f.exponent();
  const double h0 = horizon(scheme, entries[0], 0);
  if (h0 <= from) return zero_curve(from);
  const double v0 = entries[0].value;
  const double r1 = scheme.rate(1);
  const double h1 = horizon(scheme, entries[1], 1);

  PiecewiseCurve c(from, point_infimum(f, scheme, entries, from));
  double cursor = from;
  // Entry 1 known and still sampled: constant (v0-v1)^p.
  if (h1 > cursor) {
    const double end = std::min(h1, h0);
    c.append(Segment::constant(cursor, end, std::pow(clamp_nonneg(v0 - entries[1].value), p)));
    cursor = end;
  }
  // Entry 1 bounded by u*r1: (v0 - u*r1)^p until it dies at v0/r1.
  if (cursor < h0) {
    const double z = v0 / r1;
    if (z > cursor) {
      c.append(Segment::power(cursor, std::min(h0, z), v0, r1, p));
      cursor = std::min(h0, z);
    }
    if (cursor < h0) {
      c.append(Segment::constant(cursor, h0, 0.0));
      cursor = h0;
    }
  }
  if (cursor < 1.0) c.append(Segment::constant(cursor, 1.0, 0.0));
  return c;
}

PiecewiseCurve build_pps_range(const FunctionSpec& f, const ThresholdScheme& scheme,
                               const std::vector<EntryBound>& entries, double from) {
  const double p = f.exponent();
  const std::size_t r = entries.size();
  std::vector<double> hs(r);
  std::vector<double> cuts;
  for (std::size_t i = 0; i < r; ++i) {
    hs[i] = horizon(scheme, entries[i], i);
    if (hs[i] > from && hs[i] < 1.0) cuts.push_back(hs[i]);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  cuts.push_back(1.0);

  PiecewiseCurve c(from, point_infimum(f, scheme, entries, from));
  double a = from;
  for (double b : cuts) {
    if (!(b > a)) continue;
    double vmax = -1.0, vmin = std::numeric_limits<double>::infinity();
    double min_free_rate = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < r; ++i) {
      if (hs[i] >= b) {
        vmax = std::max(vmax, entries[i].value);
        vmin = std::min(vmin, entries[i].value);
      } else {
        min_free_rate = std::min(min_free_rate, scheme.rate(i));
      }
    }
    if (vmax < 0) {
      c.append(Segment::constant(a, b, 0.0));
    } else if (!std::isfinite(min_free_rate)) {
      c.append(Segment::constant(a, b, std::pow(vmax - vmin, p)));
    } else {
      // Free entries can be pushed up to u*min_free_rate: below t they drag
      // the minimum, above t the sampled minimum rules.
      const double t = vmin / min_free_rate;
      if (t > a) c.append(Segment::power(a, std::min(b, t), vmax, min_free_rate, p));
      if (t < b) c.append(Segment::constant(std::max(a, t), b, std::pow(vmax - vmin, p)));
    }
    a = b;
  }
  return c;
}

PiecewiseCurve build_pps_tight(const FunctionSpec& f, const ThresholdScheme& scheme,
                               const std::vector<EntryBound>& entries, double from) {
  const double p = f.exponent();
  if (entries[0].exact && entries[0].value > 1.0) {
    throw std::invalid_argument("tight_family domain is [0,1]");
  }
  const double rate = scheme.rate(0);
  const double h = horizon(scheme, entries[0], 0);
  PiecewiseCurve c(from, point_infimum(f, scheme, entries, from));
  double cursor = from;
  if (h > cursor) {
    c.append(Segment::constant(cursor, h, tight_value(p, entries[0].value)));
    cursor = h;
  }
  if (cursor < 1.0) {
    // Unsampled: the infimum chases the bound u*rate, clamped at the domain
    // edge where the function hits zero.
    const double q = 1.0 / rate;
    if (q > cursor) {
      const double end = std::min(1.0, q);
      if (p == 0.0) {
        c.append(Segment::linear(cursor, end, 1.0, rate));
      } else {
        c.append(Segment::tight_power(cursor, end, rate, p));
      }
      cursor = end;
    }
    if (cursor < 1.0) c.append(Segment::constant(cursor, 1.0, 0.0));
  }
  return c;
}

PiecewiseCurve build_step_curve(const FunctionSpec& f, const ThresholdScheme& scheme,
                                const std::vector<EntryBound>& entries, double from) {
  const auto& pis = scheme.breakpoints();
  std::vector<double> edges;
  for (double pi : pis) {
    if (pi > from && pi < 1.0) edges.push_back(pi);
  }
  edges.push_back(1.0);

  PiecewiseCurve c(from, point_infimum(f, scheme, entries, from));
  double a = from;
  for (double b : edges) {
    if (!(b > a)) continue;
    c.append(Segment::constant(a, b, point_infimum(f, scheme, entries, b)));
    a = b;
  }
  return c;
}

}  // namespace

double point_infimum(const FunctionSpec& f, const ThresholdScheme& scheme,
                     const std::vector<EntryBound>& entries, double u) {
  if (entries.size() != scheme.arity()) {
    throw std::invalid_argument("entry knowledge does not match scheme arity");
  }
  const bool step = scheme.kind() == SchemeKind::kStep;
  switch (f.kind()) {
    case FunctionKind::kRangePlus: {
      const bool a_known = entry_sampled_at(scheme, entries[0], 0, u);
      double b_cap;
      if (entry_sampled_at(scheme, entries[1], 1, u)) {
        b_cap = entries[1].value;
      } else {
        const double tau = tau_at(scheme, 1, u);
        b_cap = step ? step_grid_below(scheme, tau) : tau;
      }
      return range_plus_inf(f.exponent(), a_known, entries[0].value, b_cap);
    }
    case FunctionKind::kRange: {
      double vmax = -1.0, vmin = std::numeric_limits<double>::infinity();
      double free_cap = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < entries.size(); ++i) {
        if (entry_sampled_at(scheme, entries[i], i, u)) {
          vmax = std::max(vmax, entries[i].value);
          vmin = std::min(vmin, entries[i].value);
        } else {
          const double tau = tau_at(scheme, i, u);
          free_cap = std::min(free_cap, step ? step_grid_below(scheme, tau) : tau);
        }
      }
      if (vmax < 0) return 0.0;
      const double eff_min = std::min(vmin, free_cap);
      return std::pow(clamp_nonneg(vmax - eff_min), f.exponent());
    }
    case FunctionKind::kTightFamily: {
      if (entry_sampled_at(scheme, entries[0], 0, u)) return tight_value(f.exponent(), entries[0].value);
      const double tau = tau_at(scheme, 0, u);
      const double z = step ? step_grid_below(scheme, tau) : tau;
      return tight_value(f.exponent(), std::min(z, 1.0));
    }
    case FunctionKind::kCustom: {
      return f.oracle()->lower_bound_curve(scheme, entries, std::max(u, 0.0)).start_value();
    }
  }
  throw std::logic_error("unreachable");
}

PiecewiseCurve knowledge_curve(const FunctionSpec& f, const ThresholdScheme& scheme,
                               const std::vector<EntryBound>& entries, double from) {
  if (entries.size() != scheme.arity()) {
    throw std::invalid_argument("entry knowledge does not match scheme arity");
  }
  if (from < 0 || from > 1.0) throw std::invalid_argument("curve start must lie in [0,1]");
  if (f.kind() == FunctionKind::kCustom) {
    return f.oracle()->lower_bound_curve(scheme, entries, from);
  }
  if (scheme.kind() == SchemeKind::kStep) return build_step_curve(f, scheme, entries, from);
  switch (f.kind()) {
    case FunctionKind::kRangePlus:
      if (entries.size() != 2) throw std::invalid_argument("range_plus expects 2 entries");
      return build_pps_range_plus(f, scheme, entries, from);
    case FunctionKind::kRange:
      return build_pps_range(f, scheme, entries, from);
    case FunctionKind::kTightFamily:
      return build_pps_tight(f, scheme, entries, from);
    default:
      break;
  }
  throw std::logic_error("unreachable");
}

PiecewiseCurve lower_bound_curve(const FunctionSpec& f, const ThresholdScheme& scheme,
                                 const DataVector& v) {
  validate_data_vector(v);
  std::vector<EntryBound> entries(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) entries[i] = {true, v[i]};
  return knowledge_curve(f, scheme, entries, 0.0);
}

PiecewiseCurve suffix_curve(const FunctionSpec& f, const Outcome& outcome) {
  return knowledge_curve(f, outcome.scheme, consistent_bounds(outcome), outcome.seed);
}

PiecewiseCurve tabulate_curve(const std::function<double(double)>& infimum, double from,
                              std::size_t nodes) {
  if (nodes < 2) throw std::invalid_argument("tabulation needs at least two nodes");
  if (from < 0 || from >= 1.0) throw std::invalid_argument("curve start must lie in [0,1)");
  const double lo = std::max(from, 1e-6);
  std::vector<std::pair<double, double>> grid;
  grid.reserve(nodes + 1);
  if (from < lo) grid.emplace_back(from, infimum(std::max(from, 1e-12)));
  const double log_lo = std::log(lo);
  for (std::size_t k = 0; k < nodes; ++k) {
    const double t = static_cast<double>(k) / (nodes - 1);
    const double u = k + 1 == nodes ? 1.0 : std::exp(log_lo * (1.0 - t));
    grid.emplace_back(u, infimum(u));
  }
  // Clip float noise so the tabulation stays non-increasing and nonnegative.
  for (std::size_t k = grid.size(); k-- > 1;) {
    grid[k - 1].second = std::max(grid[k - 1].second, grid[k].second);
  }
  for (auto& [u, y] : grid) y = clamp_nonneg(y);

  PiecewiseCurve curve(from, grid.front().second);
  curve.append(Segment::tabulated(std::move(grid)));
  return curve;
}

PiecewiseCurve sup_lower_bound_curve(const FunctionSpec& f, const Outcome& outcome) {
  if (f.kind() == FunctionKind::kCustom) {
    return f.oracle()->sup_lower_bound_curve(outcome);
  }
  // The sup over consistent z is attained by pinning every unsampled entry
  // at zero (its extreme); if no entry is sampled every consistent curve
  // dies before the seed and the sup of optimal estimates is zero.
  std::vector<EntryBound> best(outcome.arity);
  bool any_sampled = false;
  for (std::size_t i = 0; i < outcome.arity; ++i) {
    if (outcome.is_sampled(i)) {
      best[i] = {true, outcome.sampled_value(i)};
      any_sampled = true;
    } else {
      best[i] = {true, 0.0};
    }
  }
  if (!any_sampled) return zero_curve(0.0);
  if (f.kind() == FunctionKind::kRangePlus && !outcome.is_sampled(0)) return zero_curve(0.0);
  return knowledge_curve(f, outcome.scheme, best, 0.0);
}

}  // namespace monoest

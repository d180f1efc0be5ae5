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

#include "monoest/suite.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace monoest {

namespace {

std::string vec_text(const DataVector& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) os << ",";
    os << v[i];
  }
  os << ")";
  return os.str();
}

}  // namespace

nlohmann::json SuiteReport::to_json() const {
  nlohmann::json j;
  j["vectors_checked"] = vectors_checked;
  j["points_checked"] = points_checked;
  j["max_lstar_ratio"] = max_lstar_ratio;
  j["max_ratio_vector"] = max_ratio_vector;
  j["passed"] = passed();
  nlohmann::json viols = nlohmann::json::array();
  for (const auto& v : violations) {
    nlohmann::json item;
    item["check"] = v.check;
    item["vector"] = v.v;
    item["seed"] = v.seed;
    item["lhs"] = v.lhs;
    item["rhs"] = v.rhs;
    item["message"] = v.message;
    viols.push_back(item);
  }
  j["violations"] = viols;
  return j;
}

std::string SuiteReport::to_text() const {
  std::ostringstream os;
  os << "vectors checked: " << vectors_checked << "\n";
  os << "points checked:  " << points_checked << "\n";
  os << "max lstar ratio: " << max_lstar_ratio << " at " << vec_text(max_ratio_vector) << "\n";
  if (violations.empty()) {
    os << "all checks passed\n";
  } else {
    os << violations.size() << " violation(s):\n";
    for (const auto& v : violations) {
      os << "  [" << v.check << "] v=" << vec_text(v.v);
      if (v.seed > 0) os << " u=" << v.seed;
      os << " " << v.message << " (lhs=" << v.lhs << ", rhs=" << v.rhs << ")\n";
    }
  }
  return os.str();
}

std::string SuiteReport::to_csv() const {
  std::ostringstream os;
  os << "v1,v2,lstar_ratio,lstar_second_moment,opt_second_moment\n";
  for (const auto& row : ratio_rows_) {
    os << row[0] << "," << row[1] << "," << row[2] << "," << row[3] << "," << row[4] << "\n";
  }
  return os.str();
}

std::vector<DataVector> grid_vectors_2d(std::size_t n) {
  std::vector<DataVector> out;
  out.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      out.push_back({static_cast<double>(i) / (n - 1), static_cast<double>(j) / (n - 1)});
    }
  }
  return out;
}

SuiteReport property_suite(const SuiteConfig& config) {
  SuiteReport report;
  const auto& f = config.fspec;
  const auto& scheme = config.scheme;
  const auto& tol = config.tol;

  std::vector<double> seeds = config.seeds;
  std::sort(seeds.begin(), seeds.end());

  const auto add = [&report](std::string check, const DataVector& v, double seed, double lhs,
                             double rhs, std::string message) {
    report.violations.push_back(
        {std::move(check), v, seed, lhs, rhs, std::move(message)});
  };

  for (const auto& v : config.vectors) {
    ++report.vectors_checked;
    const double fv = f.value(v);

    const MomentReport m_l = moments(EstimatorKind::lstar(), f, scheme, v);
    if (std::abs(m_l.expectation - fv) > tol.unbiased * (1.0 + fv)) {
      add("unbiased-lstar", v, 0, m_l.expectation, fv, "expectation != f(v)");
    }
    MomentReport m_u;
    if (config.check_ustar) {
      m_u = moments(EstimatorKind::ustar(), f, scheme, v);
      if (std::abs(m_u.expectation - fv) > tol.unbiased * (1.0 + fv)) {
        add("unbiased-ustar", v, 0, m_u.expectation, fv, "expectation != f(v)");
      }
    }
    const MomentReport m_o = moments(EstimatorKind::vopt_oracle(), f, scheme, v);
    if (std::abs(m_o.expectation - fv) > tol.unbiased * (1.0 + fv)) {
      add("unbiased-vopt", v, 0, m_o.expectation, fv, "expectation != f(v)");
    }

    const bool ht_ok = config.check_ht && ht_applicable(f, scheme, v);
    if (ht_ok) {
      const MomentReport m_h = moments(EstimatorKind::ht(), f, scheme, v);
      if (std::abs(m_h.expectation - fv) > tol.unbiased * (1.0 + fv)) {
        add("unbiased-ht", v, 0, m_h.expectation, fv, "expectation != f(v)");
      }
      if (m_l.variance > m_h.variance + tol.domination * (1.0 + m_h.variance)) {
        add("ht-domination", v, 0, m_l.variance, m_h.variance,
            "lstar variance exceeds HT variance");
      }
    }

    if (fv > 0) {
      const double ratio = m_l.second_moment / m_o.second_moment;
      report.ratio_rows_.push_back(
          {v[0], v.size() > 1 ? v[1] : 0.0, ratio, m_l.second_moment, m_o.second_moment});
      if (ratio > report.max_lstar_ratio) {
        report.max_lstar_ratio = ratio;
        report.max_ratio_vector = v;
      }
      if (ratio > tol.ratio_cap + tol.ratio_slack) {
        add("ratio-cap", v, 0, ratio, tol.ratio_cap, "lstar competitive ratio above the cap");
      }
    }

    double prev_l = std::numeric_limits<double>::infinity();
    for (double u : seeds) {
      ++report.points_checked;
      const Outcome outcome = sample_vector(v, u, scheme);
      const double est_l = lstar_estimate(f, outcome);
      if (est_l < -tol.in_range) {
        add("nonnegative-lstar", v, u, est_l, 0.0, "negative estimate");
      }
      if (est_l > prev_l + tol.monotone * (1.0 + std::abs(prev_l))) {
        add("monotone-lstar", v, u, est_l, prev_l, "estimate increased with u");
      }
      prev_l = est_l;

      const OptimalRange range_l = lambda_bounds(f, outcome, lstar_cumulative(f, outcome));
      const double slack_l = tol.in_range * (1.0 + std::abs(est_l));
      if (est_l < range_l.lambda_lo - slack_l ||
          (!range_l.unbounded_hi && est_l > range_l.lambda_hi + slack_l)) {
        add("in-range-lstar", v, u, est_l, range_l.lambda_lo, "estimate outside optimal range");
      }
      if (config.check_ustar) {
        const double est_u = ustar_estimate(f, outcome);
        if (est_u < -tol.in_range) {
          add("nonnegative-ustar", v, u, est_u, 0.0, "negative estimate");
        }
        const OptimalRange range_u = lambda_bounds(f, outcome, ustar_cumulative(f, outcome));
        const double slack_u = 1e-6 * (1.0 + std::abs(est_u));
        if (est_u < range_u.lambda_lo - slack_u ||
            (!range_u.unbounded_hi && est_u > range_u.lambda_hi + slack_u)) {
          add("in-range-ustar", v, u, est_u, range_u.lambda_hi, "estimate outside optimal range");
        }
      }
    }
  }
  return report;
}

}  // namespace monoest

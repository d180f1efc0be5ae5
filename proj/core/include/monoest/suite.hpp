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

#pragma once

#include <array>
#include <string>
#include <vector>

#include <json.hpp>

#include "monoest/moments.hpp"
#include "monoest/optimal_range.hpp"

namespace monoest {

struct SuiteTolerances {
  double unbiased = 1e-6;
  double in_range = 1e-9;
  double monotone = 1e-9;
  double domination = 1e-9;
  double ratio_cap = 4.0;
  double ratio_slack = 1e-3;
};

struct SuiteConfig {
  FunctionSpec fspec = FunctionSpec::range_plus(1.0);
  ThresholdScheme scheme = ThresholdScheme::pps({1.0, 1.0});
  std::vector<DataVector> vectors;
  std::vector<double> seeds = {0.05, 0.15, 0.3, 0.5, 0.7, 0.9};
  SuiteTolerances tol;
  bool check_ustar = true;
  bool check_ht = true;
};

struct SuiteViolation {
  std::string check;
  DataVector v;
  double seed = 0.0;  // 0 for per-vector checks
  double lhs = 0.0;
  double rhs = 0.0;
  std::string message;
};

struct SuiteReport {
  std::size_t vectors_checked = 0;
  std::size_t points_checked = 0;
  double max_lstar_ratio = 0.0;
  DataVector max_ratio_vector;
  std::vector<SuiteViolation> violations;

  bool passed() const { return violations.empty(); }
  nlohmann::json to_json() const;
  std::string to_text() const;
  // Plot-ready rows: one line per vector with ratio and moments.
  std::string to_csv() const;

 private:
  friend SuiteReport property_suite(const SuiteConfig&);
  std::vector<std::array<double, 5>> ratio_rows_;  // v1, v2-or-0, ratio, est_m2, opt_m2
};

// Per grid point: unbiasedness, nonnegativity, monotonicity of the lower
// extreme in u, in-range membership of both extremes, variance domination
// over HT where it applies, and the competitive-ratio cap. Failures are
// data, not exceptions.
SuiteReport property_suite(const SuiteConfig& config);

// n x n grid of two-entry vectors covering [0,1]^2 (includes the axes).
std::vector<DataVector> grid_vectors_2d(std::size_t n);

}  // namespace monoest

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

#include "monoest/scheme.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace monoest {

ThresholdScheme ThresholdScheme::pps(std::vector<double> rates) {
  if (rates.empty()) throw std::invalid_argument("pps scheme needs at least one rate");
  for (double r : rates) {
    if (!(r > 0)) throw std::invalid_argument("pps rate must be positive");
  }
  ThresholdScheme s;
  s.kind_ = SchemeKind::kPps;
  s.arity_ = rates.size();
  s.rates_ = std::move(rates);
  return s;
}

ThresholdScheme ThresholdScheme::step(std::vector<double> breakpoints, std::vector<double> levels,
                                      std::size_t arity) {
  if (breakpoints.empty() || breakpoints.size() != levels.size()) {
    throw std::invalid_argument("step scheme needs matching breakpoint and level lists");
  }
  if (arity == 0) throw std::invalid_argument("step scheme needs arity >= 1");
  for (std::size_t i = 0; i < breakpoints.size(); ++i) {
    if (!(breakpoints[i] > 0) || breakpoints[i] > 1.0) {
      throw std::invalid_argument("step breakpoints must lie in (0,1]");
    }
    if (!(levels[i] > 0)) throw std::invalid_argument("step levels must be positive");
    if (i > 0 && (breakpoints[i] <= breakpoints[i - 1] || levels[i] <= levels[i - 1])) {
      throw std::invalid_argument("step breakpoints and levels must be strictly increasing");
    }
  }
  ThresholdScheme s;
  s.kind_ = SchemeKind::kStep;
  s.arity_ = arity;
  s.breakpoints_ = std::move(breakpoints);
  s.levels_ = std::move(levels);
  return s;
}

double ThresholdScheme::threshold(std::size_t index, double u) const {
  if (index >= arity_) throw std::out_of_range("entry index out of range");
  if (!(u > 0) || u > 1.0) throw std::invalid_argument("seed must lie in (0,1]");
  if (kind_ == SchemeKind::kPps) return u * rates_[index];
  // Smallest level still sampled at u; +inf when u is past the last cut.
  const auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), u);
  if (it == breakpoints_.end()) return std::numeric_limits<double>::infinity();
  return levels_[static_cast<std::size_t>(it - breakpoints_.begin())];
}

double ThresholdScheme::rate(std::size_t index) const {
  if (kind_ != SchemeKind::kPps) throw std::logic_error("rate() on a non-pps scheme");
  if (index >= arity_) throw std::out_of_range("entry index out of range");
  return rates_[index];
}

double ThresholdScheme::sampling_horizon(std::size_t index, double value) const {
  if (index >= arity_) throw std::out_of_range("entry index out of range");
  if (!(value > 0)) return 0.0;
  if (kind_ == SchemeKind::kPps) return std::min(1.0, value / rates_[index]);
  double h = 0.0;
  for (std::size_t j = 0; j < levels_.size(); ++j) {
    if (value >= levels_[j]) h = breakpoints_[j];
  }
  return h;
}

nlohmann::json ThresholdScheme::to_json() const {
  nlohmann::json j;
  if (kind_ == SchemeKind::kPps) {
    j["kind"] = "pps";
    j["rates"] = rates_;
  } else {
    j["kind"] = "step";
    j["breakpoints"] = breakpoints_;
    j["levels"] = levels_;
    j["arity"] = arity_;
  }
  return j;
}

ThresholdScheme ThresholdScheme::from_json(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "pps") {
    return pps(j.at("rates").get<std::vector<double>>());
  }
  if (kind == "step") {
    return step(j.at("breakpoints").get<std::vector<double>>(),
                j.at("levels").get<std::vector<double>>(), j.at("arity").get<std::size_t>());
  }
  throw std::invalid_argument("unknown scheme kind: " + kind);
}

}  // namespace monoest

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

#include "monoest/function_spec.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "monoest/curve.hpp"

namespace monoest {

PiecewiseCurve CustomOracle::sup_lower_bound_curve(const Outcome&) const {
  throw std::domain_error("custom function has no sup-lower-bound oracle");
}

std::optional<double> CustomOracle::reveal_probability(const ThresholdScheme&,
                                                       const DataVector&) const {
  return std::nullopt;
}

bool CustomOracle::outcome_reveals(const Outcome&) const { return false; }

FunctionSpec FunctionSpec::range_plus(double p) {
  if (!(p > 0)) throw std::invalid_argument("range_plus needs p > 0");
  FunctionSpec f;
  f.kind_ = FunctionKind::kRangePlus;
  f.p_ = p;
  return f;
}

FunctionSpec FunctionSpec::range(double p) {
  if (!(p > 0)) throw std::invalid_argument("range needs p > 0");
  FunctionSpec f;
  f.kind_ = FunctionKind::kRange;
  f.p_ = p;
  return f;
}

FunctionSpec FunctionSpec::tight_family(double p) {
  if (!(p >= 0) || p >= 0.5) throw std::invalid_argument("tight_family needs p in [0, 0.5)");
  FunctionSpec f;
  f.kind_ = FunctionKind::kTightFamily;
  f.p_ = p;
  return f;
}

FunctionSpec FunctionSpec::custom(std::shared_ptr<const CustomOracle> oracle) {
  if (!oracle) throw std::invalid_argument("null custom oracle");
  FunctionSpec f;
  f.kind_ = FunctionKind::kCustom;
  f.oracle_ = std::move(oracle);
  return f;
}

double FunctionSpec::value(const DataVector& v) const {
  validate_data_vector(v);
  switch (kind_) {
    case FunctionKind::kRangePlus: {
      if (v.size() != 2) throw std::invalid_argument("range_plus expects 2 entries");
      return std::pow(std::max(0.0, v[0] - v[1]), p_);
    }
    case FunctionKind::kRange: {
      if (v.size() < 2) throw std::invalid_argument("range expects >= 2 entries");
      const auto [mn, mx] = std::minmax_element(v.begin(), v.end());
      return std::pow(*mx - *mn, p_);
    }
    case FunctionKind::kTightFamily: {
      if (v.size() != 1) throw std::invalid_argument("tight_family expects 1 entry");
      if (v[0] > 1.0) throw std::invalid_argument("tight_family domain is [0,1]");
      if (p_ == 0.0) return 1.0 - v[0];
      return (1.0 - std::pow(v[0], 1.0 - p_)) / (1.0 - p_);
    }
    case FunctionKind::kCustom:
      return oracle_->value(v);
  }
  throw std::logic_error("unreachable");
}

std::string FunctionSpec::name() const {
  std::ostringstream os;
  switch (kind_) {
    case FunctionKind::kRangePlus:
      os << "rgplus(p=" << p_ << ")";
      break;
    case FunctionKind::kRange:
      os << "rg(p=" << p_ << ")";
      break;
    case FunctionKind::kTightFamily:
      os << "tight(p=" << p_ << ")";
      break;
    case FunctionKind::kCustom:
      os << "custom";
      break;
  }
  return os.str();
}

}  // namespace monoest

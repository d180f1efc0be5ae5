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

#include "monoest/order_table.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace monoest {

bool DiscreteOutcome::operator<(const DiscreteOutcome& o) const {
  if (interval != o.interval) return interval < o.interval;
  if (sampled.size() != o.sampled.size()) return sampled.size() < o.sampled.size();
  for (std::size_t i = 0; i < sampled.size(); ++i) {
    if (sampled[i].first != o.sampled[i].first) return sampled[i].first < o.sampled[i].first;
    if (sampled[i].second != o.sampled[i].second) return sampled[i].second < o.sampled[i].second;
  }
  return false;
}

bool DiscreteOutcome::operator==(const DiscreteOutcome& o) const {
  return !(*this < o) && !(o < *this);
}

namespace {

Rational rational_f(FunctionKind kind, unsigned p, const RationalVector& v) {
  if (kind == FunctionKind::kRangePlus) {
    if (v.size() != 2) throw std::invalid_argument("range_plus expects 2 entries");
    const Rational d = v[0] - v[1];
    return d > Rational(0) ? d.pow(p) : Rational(0);
  }
  if (kind == FunctionKind::kRange) {
    Rational mx = v[0], mn = v[0];
    for (const auto& x : v) {
      if (x > mx) mx = x;
      if (x < mn) mn = x;
    }
    return (mx - mn).pow(p);
  }
  throw std::invalid_argument("estimator tables support range_plus and range functions");
}

std::string vec_string(const RationalVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) s += ",";
    s += v[i].to_string();
  }
  return s + ")";
}

}  // namespace

Rational EstimatorTable::f_value(const RationalVector& v) const {
  return rational_f(kind_, exponent_, v);
}

DiscreteOutcome EstimatorTable::outcome_of(const RationalVector& v, std::size_t interval) const {
  if (v.size() != arity_) throw std::invalid_argument("vector arity mismatch");
  DiscreteOutcome key;
  key.interval = interval;
  // The cut level of interval j is levels[j]; the tail past the last
  // breakpoint samples nothing.
  if (interval < levels_.size()) {
    const Rational& cut = levels_[interval];
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] >= cut) key.sampled.emplace_back(i, v[i]);
    }
  }
  return key;
}

Rational EstimatorTable::estimate(const DiscreteOutcome& key) const {
  const auto it = cells_.find(key);
  if (it == cells_.end()) throw std::out_of_range("unknown outcome for this estimator table");
  return it->second;
}

double EstimatorTable::estimate(const Outcome& outcome) const {
  if (outcome.scheme.kind() != SchemeKind::kStep) {
    throw std::invalid_argument("estimator tables expect step-scheme outcomes");
  }
  DiscreteOutcome key;
  const double rho = outcome.seed;
  std::size_t j = 0;
  while (j + 1 < interval_count() && rho > edges_[j + 1].to_double() + 1e-12) ++j;
  key.interval = j;
  for (const auto& [i, value] : outcome.sampled) {
    // Sampled values must sit on the table's grid; match them back to
    // rationals.
    bool matched = false;
    for (const auto& level : levels_) {
      if (std::abs(level.to_double() - value) <= 1e-9) {
        key.sampled.emplace_back(i, level);
        matched = true;
        break;
      }
    }
    if (!matched) throw std::out_of_range("sampled value is not on the table's grid");
  }
  return estimate(key).to_double();
}

Rational EstimatorTable::expectation(const RationalVector& v) const {
  Rational total(0);
  for (std::size_t j = 0; j + 1 < edges_.size(); ++j) {
    const Rational len = edges_[j + 1] - edges_[j];
    total = total + len * estimate(outcome_of(v, j));
  }
  return total;
}

Rational EstimatorTable::second_moment(const RationalVector& v) const {
  Rational total(0);
  for (std::size_t j = 0; j + 1 < edges_.size(); ++j) {
    const Rational len = edges_[j + 1] - edges_[j];
    const Rational val = estimate(outcome_of(v, j));
    total = total + len * val * val;
  }
  return total;
}

bool EstimatorTable::unbiased_exact(const RationalVector& v) const {
  return expectation(v) == f_value(v);
}

ThresholdScheme EstimatorTable::step_scheme() const {
  std::vector<double> pis, lvls;
  for (const auto& x : thresholds_) pis.push_back(x.to_double());
  for (const auto& x : levels_) lvls.push_back(x.to_double());
  return ThresholdScheme::step(pis, lvls, arity_);
}

nlohmann::json EstimatorTable::to_json() const {
  nlohmann::json j;
  j["function"]["kind"] = kind_ == FunctionKind::kRangePlus ? "rgplus" : "rg";
  j["function"]["p"] = exponent_;
  nlohmann::json domain = nlohmann::json::array();
  for (const auto& v : domain_) {
    nlohmann::json row = nlohmann::json::array();
    for (const auto& x : v) row.push_back(x.to_string());
    domain.push_back(row);
  }
  j["domain"] = domain;
  nlohmann::json pis = nlohmann::json::array();
  for (const auto& x : thresholds_) pis.push_back(x.to_string());
  j["thresholds"] = pis;
  nlohmann::json lvls = nlohmann::json::array();
  for (const auto& x : levels_) lvls.push_back(x.to_string());
  j["levels"] = lvls;
  switch (order_.kind) {
    case VectorOrder::Kind::kAscendingF:
      j["order"]["kind"] = "ascending_f";
      break;
    case VectorOrder::Kind::kDescendingF:
      j["order"]["kind"] = "descending_f";
      break;
    case VectorOrder::Kind::kChains: {
      j["order"]["kind"] = "chains";
      nlohmann::json chains = nlohmann::json::array();
      for (const auto& chain : order_.chains) {
        nlohmann::json c = nlohmann::json::array();
        for (const auto& v : chain) {
          nlohmann::json row = nlohmann::json::array();
          for (const auto& x : v) row.push_back(x.to_string());
          c.push_back(row);
        }
        chains.push_back(c);
      }
      j["order"]["chains"] = chains;
      break;
    }
  }
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& [key, value] : cells_) {
    nlohmann::json cell;
    cell["interval"] = key.interval;
    cell["lo"] = edges_[key.interval].to_string();
    cell["hi"] = edges_[key.interval + 1].to_string();
    nlohmann::json sampled = nlohmann::json::object();
    for (const auto& [i, x] : key.sampled) sampled[std::to_string(i + 1)] = x.to_string();
    cell["sampled"] = sampled;
    cell["value"] = value.to_string();
    cells.push_back(cell);
  }
  j["cells"] = cells;
  return j;
}

EstimatorTable EstimatorTable::from_json(const nlohmann::json& j) {
  const std::string kind = j.at("function").at("kind").get<std::string>();
  const unsigned p = j.at("function").at("p").get<unsigned>();
  FunctionSpec f = kind == "rgplus" ? FunctionSpec::range_plus(p) : FunctionSpec::range(p);
  std::vector<RationalVector> domain;
  for (const auto& row : j.at("domain")) {
    RationalVector v;
    for (const auto& x : row) v.push_back(Rational::parse(x.get<std::string>()));
    domain.push_back(std::move(v));
  }
  std::vector<Rational> thresholds;
  for (const auto& x : j.at("thresholds")) {
    thresholds.push_back(Rational::parse(x.get<std::string>()));
  }
  VectorOrder order;
  const std::string order_kind = j.at("order").at("kind").get<std::string>();
  if (order_kind == "ascending_f") {
    order = VectorOrder::ascending_f();
  } else if (order_kind == "descending_f") {
    order = VectorOrder::descending_f();
  } else if (order_kind == "chains") {
    std::vector<std::vector<RationalVector>> chains;
    for (const auto& c : j.at("order").at("chains")) {
      std::vector<RationalVector> chain;
      for (const auto& row : c) {
        RationalVector v;
        for (const auto& x : row) v.push_back(Rational::parse(x.get<std::string>()));
        chain.push_back(std::move(v));
      }
      chains.push_back(std::move(chain));
    }
    order = VectorOrder::with_chains(std::move(chains));
  } else {
    throw std::invalid_argument("unknown order kind: " + order_kind);
  }
  // Rebuilding from the inputs reproduces the cells exactly and revalidates.
  return order_optimal_build(f, std::move(domain), std::move(thresholds), order);
}

std::string EstimatorTable::listing() const {
  std::ostringstream os;
  for (const auto& [key, value] : cells_) {
    os << "outcome {";
    bool first = true;
    for (std::size_t i = 0; i < arity_; ++i) {
      if (!first) os << ", ";
      first = false;
      const auto it = std::find_if(key.sampled.begin(), key.sampled.end(),
                                   [i](const auto& s) { return s.first == i; });
      if (it != key.sampled.end()) {
        os << "v" << (i + 1) << "=" << it->second.to_string();
      } else if (key.interval < levels_.size()) {
        os << "v" << (i + 1) << "<" << levels_[key.interval].to_string();
      } else {
        os << "v" << (i + 1) << " free";
      }
    }
    os << "} on (" << edges_[key.interval].to_string() << ","
       << edges_[key.interval + 1].to_string() << "]: " << value.to_string() << "\n";
  }
  return os.str();
}

namespace {

struct BuildState {
  FunctionKind kind;
  unsigned p;
  std::size_t arity;
  std::vector<RationalVector> domain;
  std::vector<Rational> levels;
  std::vector<Rational> edges;

  std::size_t intervals() const { return edges.size() - 1; }

  DiscreteOutcome key_of(const RationalVector& v, std::size_t j) const {
    DiscreteOutcome key;
    key.interval = j;
    if (j < levels.size()) {
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] >= levels[j]) key.sampled.emplace_back(i, v[i]);
      }
    }
    return key;
  }
};

// Lower convex chain through the constraint corners (edge_j, values[j]) for
// j <= j_max and the anchor (edge_{j_max+1}, anchor); returns the negated
// slope per interval.
std::vector<Rational> anchored_chain(const BuildState& st, const std::vector<Rational>& values,
                                     std::size_t j_max, const Rational& anchor) {
  std::vector<std::pair<Rational, Rational>> pts;
  for (std::size_t j = 0; j <= j_max; ++j) pts.emplace_back(st.edges[j], values[j]);
  pts.emplace_back(st.edges[j_max + 1], anchor);

  std::vector<std::pair<Rational, Rational>> chain;
  for (const auto& pt : pts) {
    while (chain.size() >= 2) {
      const auto& a = chain[chain.size() - 2];
      const auto& b = chain[chain.size() - 1];
      if (orientation(a.first, a.second, b.first, b.second, pt.first, pt.second) <= 0) {
        chain.pop_back();
      } else {
        break;
      }
    }
    chain.push_back(pt);
  }

  std::vector<Rational> slopes(j_max + 1, Rational(0));
  for (std::size_t e = 0; e + 1 < chain.size(); ++e) {
    const Rational lam =
        (chain[e].second - chain[e + 1].second) / (chain[e + 1].first - chain[e].first);
    for (std::size_t j = 0; j <= j_max; ++j) {
      if (st.edges[j] >= chain[e].first && st.edges[j + 1] <= chain[e + 1].first) {
        slopes[j] = lam;
      }
    }
  }
  return slopes;
}

}  // namespace

EstimatorTable order_optimal_build(const FunctionSpec& fspec, std::vector<RationalVector> domain,
                                   std::vector<Rational> thresholds, const VectorOrder& order) {
  if (fspec.kind() != FunctionKind::kRangePlus && fspec.kind() != FunctionKind::kRange) {
    throw std::invalid_argument("estimator tables support range_plus and range functions");
  }
  const double p_raw = fspec.exponent();
  if (p_raw != std::floor(p_raw) || p_raw < 1 || p_raw > 16) {
    throw std::invalid_argument("estimator tables need an integer exponent (rational values)");
  }
  const unsigned p = static_cast<unsigned>(p_raw);
  if (domain.empty()) throw std::invalid_argument("empty domain");
  const std::size_t arity = domain[0].size();
  if (fspec.kind() == FunctionKind::kRangePlus && arity != 2) {
    throw std::invalid_argument("range_plus expects 2 entries");
  }
  if (arity < 2) throw std::invalid_argument("range functions need arity >= 2");
  for (const auto& v : domain) {
    if (v.size() != arity) throw std::invalid_argument("domain vectors must share an arity");
    for (const auto& x : v) {
      if (x < Rational(0)) throw std::invalid_argument("domain entries must be nonnegative");
    }
  }
  std::sort(domain.begin(), domain.end());
  domain.erase(std::unique(domain.begin(), domain.end()), domain.end());

  // The i-th threshold is the breakpoint of the i-th smallest positive value.
  std::set<Rational> level_set;
  for (const auto& v : domain) {
    for (const auto& x : v) {
      if (x > Rational(0)) level_set.insert(x);
    }
  }
  std::vector<Rational> levels(level_set.begin(), level_set.end());
  if (levels.size() != thresholds.size()) {
    throw std::invalid_argument("need exactly one threshold per distinct positive domain value");
  }
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    if (!(thresholds[i] > Rational(0)) || thresholds[i] > Rational(1) ||
        (i > 0 && !(thresholds[i] > thresholds[i - 1]))) {
      throw std::invalid_argument("thresholds must be strictly increasing within (0,1]");
    }
  }

  BuildState st;
  st.kind = fspec.kind();
  st.p = p;
  st.arity = arity;
  st.domain = domain;
  st.levels = levels;
  st.edges.push_back(Rational(0));
  for (const auto& t : thresholds) st.edges.push_back(t);
  if (st.edges.back() != Rational(1)) st.edges.push_back(Rational(1));

  // Reachable outcomes, their consistent vectors, and lower-bound values.
  std::map<DiscreteOutcome, std::vector<std::size_t>> consistent;
  for (std::size_t vi = 0; vi < domain.size(); ++vi) {
    for (std::size_t j = 0; j < st.intervals(); ++j) {
      consistent[st.key_of(domain[vi], j)].push_back(vi);
    }
  }
  std::map<DiscreteOutcome, Rational> underline;
  for (const auto& [key, vecs] : consistent) {
    Rational lo = rational_f(st.kind, p, domain[vecs.front()]);
    for (std::size_t vi : vecs) {
      const Rational f = rational_f(st.kind, p, domain[vi]);
      if (f < lo) lo = f;
    }
    underline[key] = lo;
  }

  // Estimates must vanish wherever a zero-f vector is consistent.
  std::map<DiscreteOutcome, Rational> cells;
  for (const auto& [key, lo] : underline) {
    if (lo == Rational(0)) cells[key] = Rational(0);
  }

  std::map<RationalVector, std::pair<std::size_t, std::size_t>> chain_pos;
  if (order.kind == VectorOrder::Kind::kChains) {
    for (std::size_t c = 0; c < order.chains.size(); ++c) {
      for (std::size_t k = 0; k < order.chains[c].size(); ++k) {
        if (!chain_pos.emplace(order.chains[c][k], std::make_pair(c, k)).second) {
          throw std::invalid_argument("vector listed twice in the priority chains");
        }
      }
    }
  }

  std::vector<std::size_t> estimable;
  for (std::size_t vi = 0; vi < domain.size(); ++vi) {
    if (rational_f(st.kind, p, domain[vi]) > Rational(0)) estimable.push_back(vi);
  }

  // Precedence edges: every same-outcome consistent set with a positive
  // lower bound must be totally ordered.
  std::map<std::size_t, std::set<std::size_t>> preceded_by;
  for (const auto& [key, vecs] : consistent) {
    if (underline.at(key) == Rational(0)) continue;
    std::vector<std::size_t> group;
    for (std::size_t vi : vecs) {
      if (rational_f(st.kind, p, domain[vi]) > Rational(0)) group.push_back(vi);
    }
    if (group.size() < 2) continue;
    auto precedes = [&](std::size_t a, std::size_t b) -> std::optional<bool> {
      if (order.kind == VectorOrder::Kind::kChains) {
        const auto ia = chain_pos.find(domain[a]);
        const auto ib = chain_pos.find(domain[b]);
        if (ia == chain_pos.end() || ib == chain_pos.end() ||
            ia->second.first != ib->second.first) {
          return std::nullopt;
        }
        return ia->second.second < ib->second.second;
      }
      const Rational fa = rational_f(st.kind, p, domain[a]);
      const Rational fb = rational_f(st.kind, p, domain[b]);
      if (fa == fb) return std::nullopt;
      const bool asc = order.kind == VectorOrder::Kind::kAscendingF;
      return asc ? fa < fb : fb < fa;
    };
    for (std::size_t x = 0; x < group.size(); ++x) {
      for (std::size_t y = x + 1; y < group.size(); ++y) {
        const auto rel = precedes(group[x], group[y]);
        if (!rel) {
          throw std::invalid_argument("priority order is not total on vectors sharing an outcome: " +
                                      vec_string(domain[group[x]]) + " vs " +
                                      vec_string(domain[group[y]]));
        }
        if (*rel) {
          preceded_by[group[y]].insert(group[x]);
        } else {
          preceded_by[group[x]].insert(group[y]);
        }
      }
    }
  }

  // Deterministic topological order: among ready vectors, smallest
  // (f value, lexicographic) first.
  std::vector<std::size_t> sequence;
  {
    std::set<std::size_t> pending(estimable.begin(), estimable.end());
    while (!pending.empty()) {
      std::optional<std::size_t> pick;
      for (std::size_t vi : pending) {
        bool ready = true;
        if (const auto it = preceded_by.find(vi); it != preceded_by.end()) {
          for (std::size_t dep : it->second) {
            if (pending.count(dep) != 0) {
              ready = false;
              break;
            }
          }
        }
        if (!ready) continue;
        if (!pick) {
          pick = vi;
          continue;
        }
        const Rational fa = rational_f(st.kind, p, domain[vi]);
        const Rational fb = rational_f(st.kind, p, domain[*pick]);
        if (fa < fb || (fa == fb && domain[vi] < domain[*pick])) pick = vi;
      }
      if (!pick) throw std::invalid_argument("priority order is cyclic");
      sequence.push_back(*pick);
      pending.erase(*pick);
    }
  }

  for (std::size_t vi : sequence) {
    const RationalVector& v = domain[vi];
    const Rational fv = rational_f(st.kind, p, v);

    std::vector<DiscreteOutcome> keys;
    keys.reserve(st.intervals());
    for (std::size_t j = 0; j < st.intervals(); ++j) keys.push_back(st.key_of(v, j));
    // Already-specified cells must form a suffix of the seed intervals.
    std::size_t first_specified = st.intervals();
    while (first_specified > 0 && cells.count(keys[first_specified - 1]) != 0) {
      --first_specified;
    }
    for (std::size_t j = 0; j < first_specified; ++j) {
      if (cells.count(keys[j]) != 0) {
        throw std::invalid_argument("priority order specifies outcomes out of sequence for " +
                                    vec_string(v));
      }
    }
    if (first_specified == 0) {
      Rational total(0);
      for (std::size_t j = 0; j < st.intervals(); ++j) {
        total = total + (st.edges[j + 1] - st.edges[j]) * cells.at(keys[j]);
      }
      if (total != fv) {
        throw std::domain_error("order leaves vector " + vec_string(v) +
                                " fully specified but biased");
      }
      continue;
    }

    Rational mass(0);
    for (std::size_t j = first_specified; j < st.intervals(); ++j) {
      mass = mass + (st.edges[j + 1] - st.edges[j]) * cells.at(keys[j]);
    }
    const std::size_t j_max = first_specified - 1;
    if (mass > underline.at(keys[j_max])) {
      throw std::domain_error("vector " + vec_string(v) +
                              " cannot be completed nonnegatively under this order");
    }
    std::vector<Rational> lows(j_max + 1, Rational(0));
    for (std::size_t j = 0; j <= j_max; ++j) lows[j] = underline.at(keys[j]);
    const std::vector<Rational> slopes = anchored_chain(st, lows, j_max, mass);
    for (std::size_t j = 0; j <= j_max; ++j) {
      if (slopes[j] < Rational(0)) {
        throw std::domain_error("vector " + vec_string(v) +
                                " cannot be completed nonnegatively under this order");
      }
      cells[keys[j]] = slopes[j];
    }
  }

  EstimatorTable table;
  table.kind_ = st.kind;
  table.exponent_ = p;
  table.arity_ = arity;
  table.domain_ = std::move(domain);
  table.thresholds_ = std::move(thresholds);
  table.levels_ = std::move(levels);
  table.edges_ = st.edges;
  table.order_ = order;
  table.cells_ = std::move(cells);
  for (const auto& v : table.domain_) {
    if (!table.unbiased_exact(v)) {
      throw std::domain_error("order produced a biased table for " + vec_string(v));
    }
  }
  return table;
}

}  // namespace monoest

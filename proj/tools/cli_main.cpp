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

// Command-line front end: dataset ingestion and coordinated sampling,
// query estimation over stored samples, estimator-table derivation, and
// the verification / benchmark harnesses.

#include <atomic>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "monoest/data.hpp"
#include "monoest/estimators.hpp"
#include "monoest/hull.hpp"
#include "monoest/experiment.hpp"
#include "monoest/order_table.hpp"
#include "monoest/sample_io.hpp"
#include "monoest/suite.hpp"

namespace {

using namespace monoest;
using nlohmann::json;

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stod(item));
  }
  return out;
}

std::vector<Rational> parse_rational_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(Rational::parse(item));
  }
  return out;
}

struct SchemeFlags {
  std::string tau;
  std::string step_breakpoints;
  std::string step_levels;

  ThresholdScheme build(std::size_t arity) const {
    if (!step_breakpoints.empty() || !step_levels.empty()) {
      if (!tau.empty()) throw CLI::ValidationError("scheme", "--tau conflicts with --step-*");
      return ThresholdScheme::step(parse_double_list(step_breakpoints),
                                   parse_double_list(step_levels), arity);
    }
    std::vector<double> rates = tau.empty() ? std::vector<double>{1.0} : parse_double_list(tau);
    if (rates.size() == 1) rates.assign(arity, rates[0]);
    if (rates.size() != arity) {
      throw CLI::ValidationError("scheme", "--tau needs one rate, or one per instance");
    }
    for (double r : rates) {
      if (!(r > 0)) throw CLI::ValidationError("scheme", "rates must be positive");
    }
    return ThresholdScheme::pps(rates);
  }
};

FunctionSpec make_function(const std::string& name, double p) {
  if (name == "rgplus") return FunctionSpec::range_plus(p);
  if (name == "rg") return FunctionSpec::range(p);
  if (name == "tight") return FunctionSpec::tight_family(p);
  throw CLI::ValidationError("function", "unknown function kind: " + name);
}

int cmd_sample(const std::string& input, const std::string& output, const SchemeFlags& flags,
               const std::string& salt, const std::string& inject_path) {
  const InstanceMatrix matrix = read_matrix_csv_file(input);
  const ThresholdScheme scheme = flags.build(matrix.instances);
  std::map<std::string, double> injected;
  const std::map<std::string, double>* injected_ptr = nullptr;
  if (!inject_path.empty()) {
    std::ifstream in(inject_path);
    if (!in) throw std::runtime_error("cannot open seed file: " + inject_path);
    const json j = json::parse(in);
    for (const auto& [key, value] : j.items()) injected[key] = value.get<double>();
    injected_ptr = &injected;
  }
  const SampleSet set = sample_matrix(matrix, scheme, salt, injected_ptr);
  write_sample_set_file(set, output);
  std::cout << "sampled " << set.records.size() << " items into " << output << "\n";
  return 0;
}

struct QueryResult {
  double estimate = 0.0;
  std::size_t items = 0;
  bool biased_root = false;
  std::vector<std::string> item_errors;
};

QueryResult run_query(const SampleSet& set, const std::string& query, double p,
                      const std::vector<std::size_t>& instances,
                      const std::vector<std::string>& keys, bool keys_given,
                      const std::string& estimator, unsigned threads) {
  FunctionSpec fspec = FunctionSpec::range_plus(p);
  bool root_at_end = false;
  if (query == "lpp" || query == "lp") {
    fspec = FunctionSpec::range(p);
    root_at_end = query == "lp";
  } else if (query == "lpplus") {
    fspec = FunctionSpec::range_plus(p);
  } else {
    throw CLI::ValidationError("query", "unknown query kind: " + query);
  }
  EstimatorKind kind = EstimatorKind::lstar();
  if (estimator == "ustar") {
    kind = EstimatorKind::ustar();
  } else if (estimator == "ht") {
    kind = EstimatorKind::ht();
  } else if (estimator != "lstar") {
    throw CLI::ValidationError("estimator", "unknown estimator: " + estimator);
  }

  std::vector<const SampleRecord*> selected;
  if (!keys_given) {
    for (const auto& rec : set.records) selected.push_back(&rec);
  } else {
    // An explicitly empty list is an empty domain (estimate 0).
    for (const std::string& key : keys) {
      if (key.empty()) continue;
      const auto it = std::find_if(set.records.begin(), set.records.end(),
                                   [&key](const SampleRecord& r) { return r.key == key; });
      if (it == set.records.end()) throw std::runtime_error("key not in sample: " + key);
      selected.push_back(&*it);
    }
  }
  for (std::size_t idx : instances) {
    if (idx >= set.arity) throw std::runtime_error("instance index out of range");
  }
  const bool needs_projection =
      !(set.arity == instances.size() && instances == std::vector<std::size_t>{0, 1});

  std::vector<double> values(selected.size(), 0.0);
  std::vector<std::string> errors(selected.size());
  const auto worker = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      try {
        const Outcome& full = selected[i]->outcome;
        values[i] = needs_projection
                        ? apply_estimator(kind, fspec, full.project(instances))
                        : apply_estimator(kind, fspec, full);
      } catch (const std::exception& e) {
        errors[i] = selected[i]->key + std::string(": ") + e.what();
      }
    }
  };
  const unsigned n_threads = std::max(1u, threads);
  if (n_threads == 1 || selected.size() < 2 * n_threads) {
    worker(0, selected.size());
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (selected.size() + n_threads - 1) / n_threads;
    for (unsigned t = 0; t < n_threads; ++t) {
      const std::size_t lo = t * chunk;
      const std::size_t hi = std::min(selected.size(), lo + chunk);
      if (lo < hi) pool.emplace_back(worker, lo, hi);
    }
    for (auto& th : pool) th.join();
  }

  QueryResult result;
  result.items = selected.size();
  for (std::size_t i = 0; i < selected.size(); ++i) {
    if (!errors[i].empty()) {
      result.item_errors.push_back(errors[i]);
    } else {
      result.estimate += values[i];
    }
  }
  if (root_at_end) {
    result.estimate = std::pow(result.estimate, 1.0 / p);
    result.biased_root = true;
  }
  return result;
}

int cmd_estimate(const std::string& samples_path, const std::string& query, double p,
                 const std::string& instances_flag, const std::vector<std::string>& keys,
                 bool keys_given, const std::string& estimator, unsigned threads,
                 bool as_json) {
  const SampleSet set = read_sample_set_file(samples_path);
  std::vector<std::size_t> instances;
  for (double idx : parse_double_list(instances_flag.empty() ? "1,2" : instances_flag)) {
    if (idx < 1) throw CLI::ValidationError("instances", "instance indices are 1-based");
    instances.push_back(static_cast<std::size_t>(idx) - 1);
  }
  if (instances.size() != 2 || instances[0] == instances[1]) {
    throw CLI::ValidationError("instances", "need two distinct instance indices");
  }
  const QueryResult result =
      run_query(set, query, p, instances, keys, keys_given, estimator, threads);

  if (as_json) {
    json j;
    j["estimate"] = result.estimate;
    j["items"] = result.items;
    j["estimator"] = estimator;
    j["query"] = query;
    j["p"] = p;
    if (result.biased_root) {
      j["note"] = "root of an unbiased sum estimate; the root itself is biased";
    }
    j["item_errors"] = result.item_errors;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << query << "(p=" << p << ") over " << result.items
              << " item(s) via " << estimator << ": " << result.estimate << "\n";
    if (result.biased_root) {
      std::cout << "note: root of an unbiased sum estimate; the root itself is biased\n";
    }
    for (const auto& err : result.item_errors) {
      std::cout << "item error: " << err << "\n";
    }
  }
  return result.item_errors.empty() ? 0 : 1;
}

int cmd_derive(const std::string& domain_path, const std::string& thresholds_flag,
               const std::string& function, double p, const std::string& order_flag,
               const std::string& output, bool as_json) {
  std::ifstream in(domain_path);
  if (!in) throw std::runtime_error("cannot open domain file: " + domain_path);
  std::vector<RationalVector> domain;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    RationalVector v;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, ',')) v.push_back(Rational::parse(item));
    domain.push_back(std::move(v));
  }

  VectorOrder order = VectorOrder::ascending_f();
  if (order_flag == "ustar") {
    order = VectorOrder::descending_f();
  } else if (order_flag != "lstar") {
    std::ifstream order_in(order_flag);
    if (!order_in) throw std::runtime_error("cannot open order file: " + order_flag);
    const json j = json::parse(order_in);
    std::vector<std::vector<RationalVector>> chains;
    for (const auto& chain_json : j) {
      std::vector<RationalVector> chain;
      for (const auto& vec_json : chain_json) {
        RationalVector v;
        for (const auto& x : vec_json) {
          v.push_back(x.is_string() ? Rational::parse(x.get<std::string>())
                                    : Rational(x.get<std::int64_t>()));
        }
        chain.push_back(std::move(v));
      }
      chains.push_back(std::move(chain));
    }
    order = VectorOrder::with_chains(std::move(chains));
  }

  const EstimatorTable table = order_optimal_build(
      make_function(function, p), std::move(domain), parse_rational_list(thresholds_flag), order);
  if (!output.empty()) {
    std::ofstream out(output);
    if (!out) throw std::runtime_error("cannot open output file: " + output);
    out << table.to_json().dump(2) << "\n";
  }
  if (as_json) {
    std::cout << table.to_json().dump() << "\n";
  } else {
    std::cout << table.listing();
    if (!output.empty()) std::cout << "table written to " << output << "\n";
  }
  return 0;
}

// Per-seed estimate series for one vector; plot-ready (x = u).
void write_trace_csv(const FunctionSpec& fspec, const ThresholdScheme& scheme,
                     const DataVector& v, std::ostream& out) {
  const bool ht_ok = ht_applicable(fspec, scheme, v);
  const AnchoredHull opt = v_optimal(fspec, scheme, v);
  out << "u,lstar,ustar,ht,vopt\n";
  for (int i = 1; i <= 200; ++i) {
    const double u = i / 200.0;
    const Outcome s = sample_vector(v, u, scheme);
    out << u << "," << lstar_estimate(fspec, s) << "," << ustar_estimate(fspec, s) << ",";
    if (ht_ok) out << ht_estimate(fspec, s);
    out << "," << opt.estimate(u) << "\n";
  }
}

int cmd_verify(const std::string& function, double p, unsigned grid, unsigned seed_count,
               double tau, double ratio_cap, const std::string& csv_path,
               const std::string& trace_flag, bool as_json) {
  if (function != "rgplus" && function != "rg") {
    throw CLI::ValidationError("function",
                               "verify runs on rgplus | rg; the tight family lives in bench");
  }
  SuiteConfig config;
  config.fspec = make_function(function, p);
  config.scheme = ThresholdScheme::pps({tau, tau});
  config.vectors = grid_vectors_2d(grid);
  config.seeds.clear();
  for (unsigned i = 1; i <= seed_count; ++i) {
    config.seeds.push_back(static_cast<double>(i) / (seed_count + 1));
  }
  if (ratio_cap > 0) config.tol.ratio_cap = ratio_cap;
  const SuiteReport report = property_suite(config);
  if (!csv_path.empty()) {
    std::ofstream out(csv_path);
    if (!out) throw std::runtime_error("cannot open csv file: " + csv_path);
    if (!trace_flag.empty()) {
      const auto v = parse_double_list(trace_flag);
      write_trace_csv(config.fspec, config.scheme, v, out);
    } else {
      out << report.to_csv();
    }
  }
  if (as_json) {
    std::cout << report.to_json().dump() << "\n";
  } else {
    std::cout << report.to_text();
  }
  return report.passed() ? 0 : 1;
}

int cmd_bench_tight(double p, bool as_json) {
  const TightnessReport rep = tightness_family(p);
  if (as_json) {
    json j;
    j["p"] = rep.p;
    j["opt_second_moment"] = rep.opt_second_moment;
    j["lstar_second_moment"] = rep.lstar_second_moment;
    j["ratio"] = rep.ratio;
    j["opt_numeric"] = rep.opt_numeric;
    j["lstar_numeric"] = rep.lstar_numeric;
    j["max_rel_err"] = rep.max_rel_err;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "(" << rep.opt_second_moment << ", " << rep.lstar_second_moment << ", "
              << rep.ratio << ")\n";
    std::cout << "numeric cross-check: opt=" << rep.opt_numeric
              << " lstar=" << rep.lstar_numeric << " max_rel_err=" << rep.max_rel_err << "\n";
  }
  return rep.max_rel_err < 1e-4 ? 0 : 1;
}

int cmd_bench_aggregate(std::size_t items, const std::string& domains_flag, std::size_t trials,
                        const std::string& estimator, const std::string& csv_path,
                        bool as_json) {
  AggregateConfig config;
  config.fspec = FunctionSpec::range_plus(1.0);
  config.scheme = ThresholdScheme::pps({1.0, 1.0});
  if (estimator == "ustar") config.kind = EstimatorKind::ustar();
  if (estimator == "ht") config.kind = EstimatorKind::ht();
  for (double d : parse_double_list(domains_flag)) {
    config.domain_sizes.push_back(static_cast<std::size_t>(d));
  }
  config.trials = trials;
  const InstanceMatrix matrix = synthetic_matrix(items);
  const AggregateReport report = aggregate_error_experiment(matrix, config);
  if (!csv_path.empty()) {
    std::ofstream out(csv_path);
    if (!out) throw std::runtime_error("cannot open csv file: " + csv_path);
    out << report.to_csv();
  }
  if (as_json) {
    std::cout << report.to_json().dump() << "\n";
  } else {
    std::cout << report.to_text();
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coordinated-sampling estimation toolkit"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  std::string salt = "default";
  unsigned threads = 1;
  bool as_json = false;
  app.add_option("--salt", salt, "hash salt for seed generation")->capture_default_str();
  app.add_option("--threads", threads, "worker threads for per-item estimation")
      ->capture_default_str();
  app.add_flag("--json", as_json, "machine-readable JSON output");

  // sample
  auto* sample = app.add_subcommand("sample", "coordinate-sample a csv dataset");
  std::string in_path, out_path, inject_path;
  SchemeFlags scheme_flags;
  sample->add_option("--input", in_path, "input csv (key,v1,...,vr)")->required();
  sample->add_option("--output", out_path, "output sample file (json lines)")->required();
  sample->add_option("--tau", scheme_flags.tau, "pps rate, scalar or per instance");
  sample->add_option("--step-breakpoints", scheme_flags.step_breakpoints,
                     "step scheme breakpoints");
  sample->add_option("--step-levels", scheme_flags.step_levels, "step scheme cut levels");
  sample->add_option("--inject-seeds", inject_path, "json map key->seed replacing the hash")
      ->group("");

  // estimate
  auto* estimate = app.add_subcommand("estimate", "estimate a query over a sample file");
  std::string samples_path, query = "lpp", instances_flag, estimator = "lstar";
  double query_p = 1.0;
  std::vector<std::string> keys;
  estimate->add_option("--samples", samples_path, "sample file from the sample command")
      ->required();
  estimate->add_option("--query", query, "lpp | lp | lpplus")->capture_default_str();
  estimate->add_option("--p", query_p, "exponent of the difference")->capture_default_str();
  estimate->add_option("--instances", instances_flag, "1-based instance pair, e.g. 1,2");
  estimate->add_option("--keys", keys, "item keys forming the domain (default: all)")
      ->delimiter(',');
  estimate->add_option("--estimator", estimator, "lstar | ustar | ht")->capture_default_str();

  // derive
  auto* derive = app.add_subcommand("derive", "build an order-optimal estimator table");
  std::string domain_path, thresholds_flag, function = "rgplus", order_flag = "lstar",
              table_out;
  double derive_p = 1.0;
  derive->add_option("--domain", domain_path, "csv of domain vectors, one per line")->required();
  derive->add_option("--thresholds", thresholds_flag, "breakpoints, e.g. 1/4,1/2,3/4")
      ->required();
  derive->add_option("--function", function, "rgplus | rg")->capture_default_str();
  derive->add_option("--p", derive_p, "integer exponent")->capture_default_str();
  derive->add_option("--order", order_flag, "lstar | ustar | chains file (json)")
      ->capture_default_str();
  derive->add_option("--output", table_out, "write the table json here");

  // verify
  auto* verify = app.add_subcommand("verify", "run the numeric property suite");
  std::string verify_function = "rgplus";
  double verify_p = 1.0, verify_tau = 1.0, ratio_cap = 0.0;
  unsigned grid = 25, seed_count = 8;
  verify->add_option("--function", verify_function, "rgplus | rg")->capture_default_str();
  verify->add_option("--p", verify_p, "exponent")->capture_default_str();
  verify->add_option("--grid", grid, "vector grid resolution per axis")->capture_default_str();
  verify->add_option("--seeds", seed_count, "seed grid size")->capture_default_str();
  verify->add_option("--tau", verify_tau, "shared pps rate")->capture_default_str();
  verify->add_option("--ratio-cap", ratio_cap, "override the competitive-ratio cap");
  std::string verify_csv, verify_trace;
  verify->add_option("--csv", verify_csv, "write a plot-ready csv here");
  verify->add_option("--trace", verify_trace,
                     "with --csv: per-seed estimator series for this vector, e.g. 0.6,0.2");

  // bench
  auto* bench = app.add_subcommand("bench", "tightness family and aggregation benchmarks");
  std::string family;
  double bench_p = 0.25;
  bool aggregate = false;
  std::size_t items = 10000, trials = 200;
  std::string domains_flag = "100,1000,10000", bench_estimator = "lstar";
  bench->add_option("--family", family, "tight");
  bench->add_option("--p", bench_p, "family exponent, in [0, 0.5)")->capture_default_str();
  bench->add_flag("--aggregate", aggregate, "run the sum-aggregation concentration bench");
  bench->add_option("--items", items, "synthetic item count")->capture_default_str();
  bench->add_option("--domains", domains_flag, "domain sizes")->capture_default_str();
  bench->add_option("--trials", trials, "monte-carlo trials")->capture_default_str();
  bench->add_option("--estimator", bench_estimator, "lstar | ustar | ht")
      ->capture_default_str();
  std::string bench_csv;
  bench->add_option("--csv", bench_csv, "write the aggregation series csv here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sample->parsed()) {
      return cmd_sample(in_path, out_path, scheme_flags, salt, inject_path);
    }
    if (estimate->parsed()) {
      return cmd_estimate(samples_path, query, query_p, instances_flag, keys,
                          estimate->count("--keys") > 0, estimator, threads, as_json);
    }
    if (derive->parsed()) {
      return cmd_derive(domain_path, thresholds_flag, function, derive_p, order_flag, table_out,
                        as_json);
    }
    if (verify->parsed()) {
      return cmd_verify(verify_function, verify_p, grid, seed_count, verify_tau, ratio_cap,
                        verify_csv, verify_trace, as_json);
    }
    if (bench->parsed()) {
      if (aggregate) {
        return cmd_bench_aggregate(items, domains_flag, trials, bench_estimator, bench_csv,
                                   as_json);
      }
      if (family != "tight") {
        throw CLI::ValidationError("family", "expected --family tight or --aggregate");
      }
      if (!(bench_p >= 0.0) || bench_p >= 0.5) {
        throw CLI::ValidationError("p", "the tight family needs p in [0, 0.5)");
      }
      return cmd_bench_tight(bench_p, as_json);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

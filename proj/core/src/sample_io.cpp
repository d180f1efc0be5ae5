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

#include "monoest/sample_io.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace monoest {

using nlohmann::json;

void write_sample_set(const SampleSet& set, std::ostream& out) {
  json header;
  header["r"] = set.arity;
  header["salt"] = set.salt;
  header["scheme"] = set.scheme.to_json();
  out << header.dump() << "\n";
  for (const auto& rec : set.records) {
    json line;
    line["key"] = rec.key;
    line["seed"] = rec.outcome.seed;
    json sampled = json::object();
    for (const auto& [i, v] : rec.outcome.sampled) sampled[std::to_string(i + 1)] = v;
    json bounds = json::object();
    for (const auto& [i, b] : rec.outcome.bounds) bounds[std::to_string(i + 1)] = b;
    line["sampled"] = sampled;
    line["bounds"] = bounds;
    out << line.dump() << "\n";
  }
}

void write_sample_set_file(const SampleSet& set, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open sample file for writing: " + path);
  write_sample_set(set, out);
}

SampleSet read_sample_set(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty sample file");
  const json header = json::parse(line);
  SampleSet set;
  set.arity = header.at("r").get<std::size_t>();
  set.salt = header.at("salt").get<std::string>();
  set.scheme = ThresholdScheme::from_json(header.at("scheme"));
  if (set.scheme.arity() != set.arity) throw std::runtime_error("sample header arity mismatch");

  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    const json j = json::parse(line);
    SampleRecord rec;
    rec.key = j.at("key").get<std::string>();
    rec.outcome.seed = j.at("seed").get<double>();
    rec.outcome.arity = set.arity;
    rec.outcome.scheme = set.scheme;
    for (const auto& [k, v] : j.at("sampled").items()) {
      rec.outcome.sampled[std::stoul(k) - 1] = v.get<double>();
    }
    for (const auto& [k, v] : j.at("bounds").items()) {
      rec.outcome.bounds[std::stoul(k) - 1] = v.get<double>();
    }
    if (rec.outcome.sampled.size() + rec.outcome.bounds.size() != set.arity) {
      throw std::runtime_error("sample record on line " + std::to_string(row) +
                               " does not cover all entries");
    }
    set.records.push_back(std::move(rec));
  }
  return set;
}

SampleSet read_sample_set_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open sample file: " + path);
  return read_sample_set(in);
}

}  // namespace monoest

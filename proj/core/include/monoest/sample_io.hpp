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

#include <iosfwd>
#include <string>

#include "monoest/outcome.hpp"

namespace monoest {

// Sample files are JSON lines. The first line is a header object
//   {"r":3,"salt":"s1","scheme":{...}}
// and every following line is one item record
//   {"bounds":{"2":0.32,"3":0.32},"key":"a","sampled":{"1":0.95},"seed":0.32}
// Entry indices are 1-based in the file format.
void write_sample_set(const SampleSet& set, std::ostream& out);
void write_sample_set_file(const SampleSet& set, const std::string& path);

SampleSet read_sample_set(std::istream& in);
SampleSet read_sample_set_file(const std::string& path);

}  // namespace monoest

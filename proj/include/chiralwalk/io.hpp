// Copyright 2026 The ChiralWalk Authors
//
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

#ifndef CHIRALWALK_IO_HPP_
#define CHIRALWALK_IO_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "chiralwalk/chiral.hpp"
#include "chiralwalk/estimator.hpp"
#include "chiralwalk/graph.hpp"
#include "chiralwalk/lindblad.hpp"
#include "chiralwalk/unitary.hpp"

namespace chiralwalk {

// Shortest-exact decimal form (round-trips through parsing).
std::string format_double(double value);

// Writes to a temporary file in the target directory and renames it over the
// destination, so readers never observe a half-written file.
void atomic_write(const std::filesystem::path& path, const std::string& content);

std::string read_file(const std::filesystem::path& path);

std::uint64_t graph_fingerprint(const HermitianGraph& g);

std::string graph_to_json(const HermitianGraph& g);
HermitianGraph graph_from_json(const std::string& text);

std::string phases_to_json(const ChiralPhaseAssignment& phases);
ChiralPhaseAssignment phases_from_json(const std::string& text);

std::string state_to_json(const StateVector& state);
StateVector state_from_json(const std::string& text);

// CSV layout: header "t,v1,...,vn", then one row per time with every value in
// shortest-exact form.
std::string trace_to_csv(const ProbabilityTrace& trace);
ProbabilityTrace trace_from_csv(const std::string& text);

std::string reference_to_csv(const ReferenceTable& table);
ReferenceTable reference_from_csv(const std::string& text);

std::string snapshots_to_json(const RealVector& times, const std::vector<ComplexMatrix>& states);

std::string lindblad_kind_name(LindbladKind kind);
LindbladKind lindblad_kind_from_name(const std::string& name);

}  // namespace chiralwalk

#endif  // CHIRALWALK_IO_HPP_

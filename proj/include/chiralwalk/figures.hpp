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

#ifndef CHIRALWALK_FIGURES_HPP_
#define CHIRALWALK_FIGURES_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "chiralwalk/estimator.hpp"
#include "chiralwalk/lindblad.hpp"
#include "chiralwalk/unitary.hpp"

namespace chiralwalk {

// Canned closed-system run: a phased Hamiltonian, an initial state, a time
// grid, and the vertices whose occupation the run is expected to suppress.
struct ClosedWalkFigure {
    std::string name;
    HermitianGraph hamiltonian;
    StateVector initial;
    RealVector times;
    std::vector<int> suppressed_vertices;
};

struct OpenWalkFigure {
    std::string name;
    HermitianGraph hamiltonian;
    LindbladSet lindblads;
    DensityMatrix initial;
    RealVector times;
    int revived_vertex = 0;  // vertex whose suppression the noise destroys
};

std::vector<LindbladKind> default_lindblad_kinds();

// Six-vertex graph whose 1-2 edge stays passive under the phased walk.
HermitianGraph passive_edge_graph();

ClosedWalkFigure star_walk_figure();          // fig7
ClosedWalkFigure cycle_walk_figure();         // fig9
ClosedWalkFigure passive_edge_walk_figure();  // fig11
OpenWalkFigure cycle_decoherence_figure();    // fig12
ReferenceTable reference_figure();            // fig14

// Writes fig7.csv, fig9.csv, fig11.csv, fig12.csv, and fig14.csv and returns
// the paths in that order.
std::vector<std::filesystem::path> write_all_figures(const std::filesystem::path& outdir);

struct VerifyReport {
    bool passed = false;
    std::vector<std::string> failures;
};

// Re-validates an emitted file against its figure predicate, chosen by file
// stem; unknown stems get the generic probability-trace checks.
VerifyReport verify_figure_file(const std::filesystem::path& path);

}  // namespace chiralwalk

#endif  // CHIRALWALK_FIGURES_HPP_

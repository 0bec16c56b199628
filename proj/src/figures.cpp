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

#include "chiralwalk/figures.hpp"

#include <cmath>
#include <numbers>

#include "chiralwalk/chiral.hpp"
#include "chiralwalk/io.hpp"

namespace chiralwalk {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSuppressionCeiling = 1e-18;

void fail(VerifyReport* report, const std::string& message) {
    report->passed = false;
    report->failures.push_back(message);
}

void check_trace_shape(const ProbabilityTrace& trace, double row_tolerance,
                       VerifyReport* report) {
    for (Eigen::Index r = 1; r < trace.times.size(); ++r) {
        if (trace.times(r) <= trace.times(r - 1)) {
            fail(report, "times are not strictly increasing at row " + std::to_string(r));
            break;
        }
    }
    double worst_sum = 0.0;
    double worst_entry = 0.0;
    for (Eigen::Index r = 0; r < trace.probabilities.rows(); ++r) {
        worst_sum = std::max(worst_sum, std::abs(trace.probabilities.row(r).sum() - 1.0));
        worst_entry = std::min(worst_entry, trace.probabilities.row(r).minCoeff());
    }
    if (worst_sum > row_tolerance) {
        fail(report, "row sums deviate from 1 by " + format_double(worst_sum));
    }
    if (worst_entry < -row_tolerance) {
        fail(report, "negative probability " + format_double(worst_entry));
    }
}

double column_max(const ProbabilityTrace& trace, int vertex) {
    return trace.probabilities.col(vertex - 1).maxCoeff();
}

void check_suppressed(const ProbabilityTrace& trace, const std::vector<int>& vertices,
                      VerifyReport* report) {
    for (int v : vertices) {
        if (v < 1 || v > trace.probabilities.cols()) {
            fail(report, "suppressed vertex " + std::to_string(v) + " missing from trace");
            continue;
        }
        const double peak = column_max(trace, v);
        if (peak >= kSuppressionCeiling) {
            fail(report, "vertex " + std::to_string(v) + " reaches probability " +
                             format_double(peak));
        }
    }
}

}  // namespace

std::vector<LindbladKind> default_lindblad_kinds() {
    return {LindbladKind::Scattering, LindbladKind::Dephasing, LindbladKind::Dissipation};
}

HermitianGraph passive_edge_graph() {
    const Complex one{1.0, 0.0};
    return HermitianGraph(
        6, {{1, 2, one}, {1, 3, one}, {2, 3, one}, {3, 4, one}, {4, 5, one}, {4, 6, one},
            {5, 6, one}});
}

ClosedWalkFigure star_walk_figure() {
    auto [graph, decomposition] = merged_star_type1({4, 3});
    const ChiralPhaseAssignment phases(
        {{1, 2, kPi / 2.0}, {3, 4, kPi}, {5, 6, 3.0 * kPi / 2.0}});
    return {"fig7", apply_phases(graph, phases), StateVector::uniform_over(9, {1, 3, 5, 7}),
            time_grid(0.0, 5.0, 0.01), {decomposition.merge_vertex}};
}

ClosedWalkFigure cycle_walk_figure() {
    auto [graph, decomposition] = merged_star_type2({2, 3});
    const ChiralPhaseAssignment phases({{1, 2, kPi}});
    return {"fig9", apply_phases(graph, phases), StateVector::basis(4, 1),
            time_grid(0.0, 10.0, 0.01), {decomposition.merge_vertex}};
}

ClosedWalkFigure passive_edge_walk_figure() {
    const ChiralPhaseAssignment phases({{1, 3, kPi}});
    return {"fig11", apply_phases(passive_edge_graph(), phases),
            StateVector::uniform_over(6, {1, 2}), time_grid(0.0, 10.0, 0.01), {3, 4, 5, 6}};
}

OpenWalkFigure cycle_decoherence_figure() {
    const ClosedWalkFigure closed = cycle_walk_figure();
    LindbladSet set(standard_lindblads(closed.hamiltonian, default_lindblad_kinds()), 0.1);
    return {"fig12",
            closed.hamiltonian,
            std::move(set),
            DensityMatrix::pure(closed.initial),
            closed.times,
            closed.suppressed_vertices.front()};
}

ReferenceTable reference_figure() {
    return build_reference(default_omega_grid(), kDefaultMeasureTime,
                           default_estimator_kinds());
}

std::vector<std::filesystem::path> write_all_figures(const std::filesystem::path& outdir) {
    std::vector<std::filesystem::path> written;

    for (const ClosedWalkFigure& figure :
         {star_walk_figure(), cycle_walk_figure(), passive_edge_walk_figure()}) {
        const SpectralPropagator propagator(figure.hamiltonian);
        const ProbabilityTrace trace =
            trace_probabilities(propagator, figure.initial, figure.times);
        const std::filesystem::path path = outdir / (figure.name + ".csv");
        atomic_write(path, trace_to_csv(trace));
        written.push_back(path);
    }

    {
        const OpenWalkFigure figure = cycle_decoherence_figure();
        const QswResult result =
            qsw_evolve(figure.hamiltonian, figure.lindblads, figure.initial, figure.times);
        const std::filesystem::path path = outdir / (figure.name + ".csv");
        atomic_write(path, trace_to_csv(result.trace));
        written.push_back(path);
    }

    {
        const std::filesystem::path path = outdir / "fig14.csv";
        atomic_write(path, reference_to_csv(reference_figure()));
        written.push_back(path);
    }
    return written;
}

VerifyReport verify_figure_file(const std::filesystem::path& path) {
    VerifyReport report;
    report.passed = true;
    const std::string stem = path.stem().string();
    const std::string text = read_file(path);

    if (stem == "fig14") {
        const ReferenceTable table = reference_from_csv(text);
        if (table.omega_grid.size() < 2) {
            fail(&report, "reference table has fewer than two rows");
            return report;
        }
        for (Eigen::Index k = 0; k < table.omega_grid.size(); ++k) {
            const double w = table.omega_grid(k);
            if (w < 0.0 || w > 1.0) fail(&report, "omega " + format_double(w) + " outside [0, 1]");
            if (k > 0 && w <= table.omega_grid(k - 1)) {
                fail(&report, "omega grid not strictly increasing at row " + std::to_string(k));
            }
        }
        if (table.transfer_probabilities(0) > 1e-10) {
            fail(&report, "omega = 0 transfer probability " +
                              format_double(table.transfer_probabilities(0)) + " exceeds 1e-10");
        }
        if (table.monotone_end < 2 || table.monotone_end > table.omega_grid.size()) {
            fail(&report, "monotone_end " + std::to_string(table.monotone_end) + " out of range");
        } else {
            for (Eigen::Index k = 1; k < table.monotone_end; ++k) {
                if (table.transfer_probabilities(k) <= table.transfer_probabilities(k - 1)) {
                    fail(&report, "transfer curve not increasing at row " + std::to_string(k));
                }
            }
        }
        return report;
    }

    const ProbabilityTrace trace = trace_from_csv(text);
    if (stem == "fig7") {
        check_trace_shape(trace, 1e-10, &report);
        check_suppressed(trace, {9}, &report);
    } else if (stem == "fig9") {
        check_trace_shape(trace, 1e-10, &report);
        check_suppressed(trace, {4}, &report);
        if (column_max(trace, 2) <= 0.1) {
            fail(&report, "vertex 2 never exceeds probability 0.1; the walk looks frozen");
        }
    } else if (stem == "fig11") {
        check_trace_shape(trace, 1e-10, &report);
        check_suppressed(trace, {3, 4, 5, 6}, &report);
        for (int v : {1, 2}) {
            const double drift =
                (trace.probabilities.col(v - 1).array() - 0.5).abs().maxCoeff();
            if (drift > 1e-10) {
                fail(&report, "vertex " + std::to_string(v) + " drifts from 1/2 by " +
                                  format_double(drift));
            }
        }
    } else if (stem == "fig12") {
        check_trace_shape(trace, 1e-8, &report);
        if (column_max(trace, 4) <= 1e-3) {
            fail(&report, "vertex 4 stays suppressed; decoherence left no signature");
        }
    } else {
        check_trace_shape(trace, 1e-8, &report);
    }
    return report;
}

}  // namespace chiralwalk

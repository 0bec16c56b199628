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

#include "chiralwalk/chiral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <string>

namespace chiralwalk {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_phase(double alpha) {
    double w = std::fmod(alpha, kTwoPi);
    if (w < 0.0) w += kTwoPi;
    if (w == kTwoPi) w = 0.0;
    return w;
}

}  // namespace

ChiralPhaseAssignment::ChiralPhaseAssignment(const std::vector<PhasedEdge>& entries) {
    std::set<std::pair<int, int>> seen;
    entries_.reserve(entries.size());
    for (const PhasedEdge& e : entries) {
        if (e.i < 1 || e.j < 1) {
            throw IndexOutOfRangeError("phase entry has non-positive vertex label");
        }
        if (e.i == e.j) {
            throw SelfLoopError("phase on self-loop at vertex " + std::to_string(e.i));
        }
        if (!std::isfinite(e.phase)) {
            throw InvalidParamsError("phase on (" + std::to_string(e.i) + ", " +
                                     std::to_string(e.j) + ") is not finite");
        }
        if (!seen.insert(std::minmax(e.i, e.j)).second) {
            throw DuplicateEdgeError("duplicate phase entry for pair (" + std::to_string(e.i) +
                                     ", " + std::to_string(e.j) + ")");
        }
        entries_.push_back({e.i, e.j, wrap_phase(e.phase)});
    }
}

double ChiralPhaseAssignment::traversal_phase(int from, int to) const {
    for (const PhasedEdge& e : entries_) {
        if (e.i == from && e.j == to) return e.phase;
        if (e.i == to && e.j == from) return -e.phase;
    }
    return 0.0;
}

bool ChiralPhaseAssignment::covers(int i, int j) const {
    for (const PhasedEdge& e : entries_) {
        if ((e.i == i && e.j == j) || (e.i == j && e.j == i)) return true;
    }
    return false;
}

ChiralPhaseAssignment ChiralPhaseAssignment::negated() const {
    std::vector<PhasedEdge> flipped;
    flipped.reserve(entries_.size());
    for (const PhasedEdge& e : entries_) flipped.push_back({e.i, e.j, -e.phase});
    return ChiralPhaseAssignment(flipped);
}

HermitianGraph apply_phases(const HermitianGraph& g, const ChiralPhaseAssignment& phases) {
    ComplexMatrix w = g.weights();
    const int n = g.vertex_count();
    for (const PhasedEdge& e : phases.entries()) {
        if (e.i > n || e.j > n) {
            throw IndexOutOfRangeError("phase entry (" + std::to_string(e.i) + ", " +
                                       std::to_string(e.j) + ") outside 1.." + std::to_string(n));
        }
        if (!g.has_edge(e.i, e.j)) {
            throw PhaseOnNonEdgeError("phase on missing edge (" + std::to_string(e.i) + ", " +
                                      std::to_string(e.j) + ")");
        }
        const Complex phased = w(e.i - 1, e.j - 1) * std::polar(1.0, e.phase);
        w(e.i - 1, e.j - 1) = phased;
        w(e.j - 1, e.i - 1) = std::conj(phased);
    }
    return HermitianGraph::from_weights(std::move(w));
}

BranchPhaseSums branch_phase_sums(const BranchDecomposition& d,
                                  const ChiralPhaseAssignment& phases) {
    BranchPhaseSums out;
    out.sums.reserve(d.branches.size());
    for (const auto& branch : d.branches) {
        double sum = 0.0;
        for (std::size_t q = 0; q + 1 < branch.size(); ++q) {
            sum += phases.traversal_phase(branch[q], branch[q + 1]);
        }
        out.sums.push_back(sum);
    }
    return out;
}

double zero_transfer_residual(const BranchPhaseSums& sums) {
    if (sums.sums.empty()) {
        throw InvalidParamsError("residual needs at least one branch sum");
    }
    Complex total{0.0, 0.0};
    for (double s : sums.sums) total += std::polar(1.0, -s);
    return std::abs(total);
}

ChiralPhaseAssignment plan_zero_transfer(const BranchDecomposition& d) {
    const int b = d.branch_count();
    if (b < 2) {
        throw SingleBranchError("zero transfer needs at least two branches, got " +
                                std::to_string(b));
    }
    std::vector<PhasedEdge> entries;
    entries.reserve(static_cast<std::size_t>(b));
    for (int p = 1; p <= b; ++p) {
        const auto& branch = d.branches[static_cast<std::size_t>(p - 1)];
        entries.push_back({branch[0], branch[1], kTwoPi * (p - 1) / b});
    }
    return ChiralPhaseAssignment(entries);
}

ComplexVector gauge_amplitudes(const ComplexVector& plain_amplitudes,
                               const ChiralPhaseAssignment& phases, int start_vertex) {
    const Eigen::Index n = plain_amplitudes.size();
    if (start_vertex < 1 || start_vertex > n) {
        throw IndexOutOfRangeError("start vertex " + std::to_string(start_vertex) +
                                   " outside 1.." + std::to_string(n));
    }
    for (const PhasedEdge& e : phases.entries()) {
        const auto [lo, hi] = std::minmax(e.i, e.j);
        if (hi > n || hi != lo + 1) {
            throw PhaseOnNonEdgeError("phase on (" + std::to_string(e.i) + ", " +
                                      std::to_string(e.j) + ") is not a path edge");
        }
    }

    // prefix[v] accumulates the traversal phases of edges (1,2)..(v,v+1), so
    // the gauge phasor at vertex v is e^{-i prefix[v-1]} and the phased
    // amplitude is d_v conj(d_start) times the plain one.
    std::vector<double> prefix(static_cast<std::size_t>(n), 0.0);
    for (Eigen::Index v = 1; v < n; ++v) {
        prefix[static_cast<std::size_t>(v)] =
            prefix[static_cast<std::size_t>(v - 1)] +
            phases.traversal_phase(static_cast<int>(v), static_cast<int>(v + 1));
    }

    const double start_prefix = prefix[static_cast<std::size_t>(start_vertex - 1)];
    ComplexVector out(n);
    for (Eigen::Index v = 0; v < n; ++v) {
        out(v) = std::polar(1.0, start_prefix - prefix[static_cast<std::size_t>(v)]) *
                 plain_amplitudes(v);
    }
    return out;
}

}  // namespace chiralwalk

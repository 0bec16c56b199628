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

#ifndef CHIRALWALK_ESTIMATOR_HPP_
#define CHIRALWALK_ESTIMATOR_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include "chiralwalk/lindblad.hpp"

namespace chiralwalk {

inline constexpr double kDefaultMeasureTime = 3.0;

// Transfer probability of the probe's middle vertex at the measure time, one
// entry per omega on the grid.  Coherent evolution keeps the probe's initial
// state dark, so the middle vertex lights up only through the noise channel;
// the monotone prefix of the curve is what the inversion uses.
struct ReferenceTable {
    RealVector omega_grid;
    RealVector transfer_probabilities;
    double measure_time = kDefaultMeasureTime;
    std::vector<LindbladKind> kinds;
    std::uint64_t probe_fingerprint = 0;
    Eigen::Index monotone_end = 0;  // one past the last strictly increasing entry
};

struct OmegaEstimate {
    double omega_hat = 0.0;
    double low = 0.0;
    double high = 0.0;
    long long sample_size = 0;
    bool clamped = false;
};

// Three-vertex probe with weights -1 and 1 and the balanced superposition of
// its end vertices, which the coherent walk cannot move.
std::pair<HermitianGraph, StateVector> build_probe();

RealVector default_omega_grid();

// Scattering only.  At t* = 3 this is the channel whose transfer curve stays
// strictly increasing across the whole omega grid, which the inversion needs;
// richer operator mixes peak partway and lose invertibility beyond the peak.
std::vector<LindbladKind> default_estimator_kinds();

ReferenceTable build_reference(const RealVector& omega_grid, double measure_time,
                               const std::vector<LindbladKind>& kinds);

// Simulated projective measurements of the probe's middle vertex: `trials`
// Bernoulli draws against the exact transfer probability.
long long sample_transfer_hits(double transfer_probability, long long trials,
                               std::uint64_t seed);

// Exact transfer probability of the probe at the table's measure time.
double probe_transfer_probability(const ReferenceTable& table, double omega);

OmegaEstimate estimate_omega(const ReferenceTable& table, long long hits, long long trials,
                             double confidence = 0.95);

}  // namespace chiralwalk

#endif  // CHIRALWALK_ESTIMATOR_HPP_

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

#ifndef CHIRALWALK_UNITARY_HPP_
#define CHIRALWALK_UNITARY_HPP_

#include <vector>

#include "chiralwalk/graph.hpp"

namespace chiralwalk {

// Normalized pure state over the vertex set, 1-based accessors.
class StateVector {
   public:
    explicit StateVector(ComplexVector amplitudes);

    static StateVector basis(int dimension, int vertex);
    static StateVector uniform_over(int dimension, const std::vector<int>& vertices);

    const ComplexVector& amplitudes() const { return amplitudes_; }
    Eigen::Index size() const { return amplitudes_.size(); }

    Complex amplitude(int vertex) const;
    double probability(int vertex) const;

   private:
    ComplexVector amplitudes_;
};

// Eigendecomposition of a Hermitian Hamiltonian, reused across times.  The
// eigenvector phases are pinned (largest-modulus component real positive) so
// repeated construction from the same matrix gives the same factors.
class SpectralPropagator {
   public:
    explicit SpectralPropagator(const HermitianGraph& g);

    const RealVector& eigenvalues() const { return eigenvalues_; }
    const ComplexMatrix& eigenvectors() const { return eigenvectors_; }
    Eigen::Index dimension() const { return eigenvalues_.size(); }

    ComplexMatrix unitary(double t) const;
    StateVector evolve(const StateVector& initial, double t) const;

   private:
    RealVector eigenvalues_;
    ComplexMatrix eigenvectors_;
};

struct ProbabilityTrace {
    RealVector times;
    RealMatrix probabilities;  // one row per time, one column per vertex
};

void validate_trace(const ProbabilityTrace& trace, double row_sum_tolerance = 1e-10);

ProbabilityTrace trace_probabilities(const SpectralPropagator& propagator,
                                     const StateVector& initial, const RealVector& times);

struct TrsReport {
    bool within_tolerance = false;
    double max_violation = 0.0;
};

// Compares site-to-site transport probabilities |U_ji|^2 against the
// transpose direction over the given times.
TrsReport check_trs(const SpectralPropagator& propagator, const RealVector& times,
                    double tolerance = 1e-10);

// Partial sum of the exponential series, kept as an independent check on the
// spectral path.  Refuses parameter ranges where the alternating terms are
// large enough to wash out double precision.
ComplexVector taylor_series_state(const HermitianGraph& g, const StateVector& initial, double t,
                                  int terms);

RealVector time_grid(double start, double stop, double step);

}  // namespace chiralwalk

#endif  // CHIRALWALK_UNITARY_HPP_

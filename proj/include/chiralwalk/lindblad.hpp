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

#ifndef CHIRALWALK_LINDBLAD_HPP_
#define CHIRALWALK_LINDBLAD_HPP_

#include <vector>

#include "chiralwalk/graph.hpp"
#include "chiralwalk/unitary.hpp"

namespace chiralwalk {

enum class LindbladKind {
    Scattering,   // sqrt(|g_uv|) |v><u| for every ordered pair with g_uv != 0
    Dephasing,    // |v><v| for every vertex
    Dissipation,  // sqrt(|g_uv|) |v><u| in one direction per edge
};

struct LindbladOperator {
    ComplexMatrix matrix;
    LindbladKind kind;
};

enum class DissipationTarget {
    LowerIndex,
    HigherIndex,
};

std::vector<LindbladOperator> standard_lindblads(
    const HermitianGraph& g, const std::vector<LindbladKind>& kinds,
    DissipationTarget target = DissipationTarget::LowerIndex);

// Jump operators plus the mixing weight omega between the coherent part
// (weight 1 - omega) and the dissipative part (weight omega).
class LindbladSet {
   public:
    LindbladSet(std::vector<LindbladOperator> operators, double omega);

    const std::vector<LindbladOperator>& operators() const { return operators_; }
    double omega() const { return omega_; }
    Eigen::Index dimension() const { return dimension_; }

   private:
    std::vector<LindbladOperator> operators_;
    double omega_ = 0.0;
    Eigen::Index dimension_ = 0;
};

// Density operator with the physical contracts enforced on construction:
// Hermitian to 1e-10, unit trace to 1e-10, eigenvalues above -1e-8.
class DensityMatrix {
   public:
    explicit DensityMatrix(ComplexMatrix rho);

    static DensityMatrix pure(const StateVector& state);

    const ComplexMatrix& matrix() const { return rho_; }
    Eigen::Index dimension() const { return rho_.rows(); }

    double population(int vertex) const;

   private:
    ComplexMatrix rho_;
};

// Column-stacking superoperator for the mixed generator.  Dimensions above
// n^2 = 4096 are refused; use the adaptive integrator instead.
ComplexMatrix build_superoperator(const HermitianGraph& g, const LindbladSet& set);

// Generator applied directly to a density matrix, without vectorizing.
ComplexMatrix apply_generator(const HermitianGraph& g, const LindbladSet& set,
                              const ComplexMatrix& rho);

enum class QswMethod {
    Auto,
    SuperoperatorExp,
    AdaptiveRk,
};

struct QswOptions {
    QswMethod method = QswMethod::Auto;
    bool keep_states = false;
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
};

struct QswResult {
    ProbabilityTrace trace;
    std::vector<ComplexMatrix> states;  // filled when keep_states is set
    double min_eigenvalue = 0.0;        // most negative population eigenvalue seen
};

// Evolves rho0 through the requested times (ascending, first >= 0) and
// records the diagonal populations.  Trace and Hermiticity are enforced at
// every output time; eigenvalues below -1e-8 abort the run.
QswResult qsw_evolve(const HermitianGraph& g, const LindbladSet& set, const DensityMatrix& rho0,
                     const RealVector& times, const QswOptions& options = {});

}  // namespace chiralwalk

#endif  // CHIRALWALK_LINDBLAD_HPP_

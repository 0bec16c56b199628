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

#include "chiralwalk/unitary.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <string>

namespace chiralwalk {

namespace {

void check_state_vertex(int vertex, Eigen::Index n) {
    if (vertex < 1 || vertex > n) {
        throw IndexOutOfRangeError("vertex " + std::to_string(vertex) + " outside 1.." +
                                   std::to_string(n));
    }
}

}  // namespace

StateVector::StateVector(ComplexVector amplitudes) : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() < 1) {
        throw InvalidParamsError("state vector must be nonempty");
    }
    const double norm = amplitudes_.norm();
    if (std::abs(norm - 1.0) > 1e-12) {
        throw InvalidParamsError("state vector norm " + std::to_string(norm) +
                                 " deviates from 1 by more than 1e-12");
    }
}

StateVector StateVector::basis(int dimension, int vertex) {
    if (dimension < 1) throw InvalidParamsError("dimension must be >= 1");
    check_state_vertex(vertex, dimension);
    ComplexVector amp = ComplexVector::Zero(dimension);
    amp(vertex - 1) = Complex{1.0, 0.0};
    return StateVector(std::move(amp));
}

StateVector StateVector::uniform_over(int dimension, const std::vector<int>& vertices) {
    if (dimension < 1) throw InvalidParamsError("dimension must be >= 1");
    if (vertices.empty()) throw InvalidParamsError("uniform_over needs at least one vertex");
    ComplexVector amp = ComplexVector::Zero(dimension);
    const double a = 1.0 / std::sqrt(static_cast<double>(vertices.size()));
    for (int v : vertices) {
        check_state_vertex(v, dimension);
        if (amp(v - 1) != Complex{0.0, 0.0}) {
            throw DuplicateEdgeError("vertex " + std::to_string(v) + " listed twice");
        }
        amp(v - 1) = Complex{a, 0.0};
    }
    return StateVector(std::move(amp));
}

Complex StateVector::amplitude(int vertex) const {
    check_state_vertex(vertex, amplitudes_.size());
    return amplitudes_(vertex - 1);
}

double StateVector::probability(int vertex) const {
    return std::norm(amplitude(vertex));
}

SpectralPropagator::SpectralPropagator(const HermitianGraph& g) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(g.weights());
    if (solver.info() != Eigen::Success) {
        throw DecompositionFailureError("eigendecomposition did not converge");
    }
    eigenvalues_ = solver.eigenvalues();
    eigenvectors_ = solver.eigenvectors();

    // Pin each eigenvector's global phase so that its largest-modulus
    // component (first index on ties) is real and positive.
    const Eigen::Index n = eigenvectors_.rows();
    for (Eigen::Index k = 0; k < eigenvectors_.cols(); ++k) {
        Eigen::Index pivot = 0;
        double best = -1.0;
        for (Eigen::Index r = 0; r < n; ++r) {
            const double mag = std::abs(eigenvectors_(r, k));
            if (mag > best + 1e-14) {
                best = mag;
                pivot = r;
            }
        }
        const Complex lead = eigenvectors_(pivot, k);
        if (std::abs(lead) > 0.0) {
            eigenvectors_.col(k) *= std::conj(lead) / std::abs(lead);
        }
    }

    const double residual =
        (eigenvectors_ * eigenvalues_.asDiagonal() * eigenvectors_.adjoint() - g.weights())
            .cwiseAbs()
            .maxCoeff();
    const double orthogonality =
        (eigenvectors_.adjoint() * eigenvectors_ - ComplexMatrix::Identity(n, n))
            .cwiseAbs()
            .maxCoeff();
    if (residual > 1e-10 || orthogonality > 1e-10) {
        throw DecompositionFailureError("eigendecomposition residual too large");
    }
}

ComplexMatrix SpectralPropagator::unitary(double t) const {
    const Eigen::Index n = dimension();
    ComplexVector phases(n);
    for (Eigen::Index k = 0; k < n; ++k) phases(k) = std::polar(1.0, -eigenvalues_(k) * t);
    return eigenvectors_ * phases.asDiagonal() * eigenvectors_.adjoint();
}

StateVector SpectralPropagator::evolve(const StateVector& initial, double t) const {
    if (initial.size() != dimension()) {
        throw DimensionMismatchError("state dimension " + std::to_string(initial.size()) +
                                     " does not match Hamiltonian dimension " +
                                     std::to_string(dimension()));
    }
    if (t == 0.0) return initial;
    ComplexVector modes = eigenvectors_.adjoint() * initial.amplitudes();
    for (Eigen::Index k = 0; k < modes.size(); ++k) {
        modes(k) *= std::polar(1.0, -eigenvalues_(k) * t);
    }
    ComplexVector amp = eigenvectors_ * modes;
    amp /= amp.norm();
    return StateVector(std::move(amp));
}

void validate_trace(const ProbabilityTrace& trace, double row_sum_tolerance) {
    if (trace.probabilities.rows() != trace.times.size()) {
        throw DimensionMismatchError("trace has " + std::to_string(trace.probabilities.rows()) +
                                     " rows for " + std::to_string(trace.times.size()) +
                                     " times");
    }
    for (Eigen::Index r = 1; r < trace.times.size(); ++r) {
        if (trace.times(r) <= trace.times(r - 1)) {
            throw InvalidParamsError("trace times must be strictly increasing");
        }
    }
    for (Eigen::Index r = 0; r < trace.probabilities.rows(); ++r) {
        if (trace.probabilities.row(r).minCoeff() < -row_sum_tolerance) {
            throw NumericError("negative probability at time index " + std::to_string(r));
        }
        if (std::abs(trace.probabilities.row(r).sum() - 1.0) > row_sum_tolerance) {
            throw NumericError("probability row " + std::to_string(r) + " does not sum to 1");
        }
    }
}

ProbabilityTrace trace_probabilities(const SpectralPropagator& propagator,
                                     const StateVector& initial, const RealVector& times) {
    if (times.size() < 1) {
        throw InvalidParamsError("need at least one time point");
    }
    ProbabilityTrace trace;
    trace.times = times;
    trace.probabilities.resize(times.size(), propagator.dimension());
    for (Eigen::Index r = 0; r < times.size(); ++r) {
        const StateVector state = propagator.evolve(initial, times(r));
        trace.probabilities.row(r) = state.amplitudes().cwiseAbs2().transpose();
    }
    validate_trace(trace);
    return trace;
}

TrsReport check_trs(const SpectralPropagator& propagator, const RealVector& times,
                    double tolerance) {
    TrsReport report;
    for (Eigen::Index r = 0; r < times.size(); ++r) {
        const ComplexMatrix u = propagator.unitary(times(r));
        const RealMatrix p = u.cwiseAbs2();
        report.max_violation =
            std::max(report.max_violation, (p - p.transpose()).cwiseAbs().maxCoeff());
    }
    report.within_tolerance = report.max_violation <= tolerance;
    return report;
}

ComplexVector taylor_series_state(const HermitianGraph& g, const StateVector& initial, double t,
                                  int terms) {
    if (terms < 50) {
        throw ConvergenceDomainError("need at least 50 series terms, got " +
                                     std::to_string(terms));
    }
    const double scale = std::abs(t) * g.max_weighted_degree();
    if (scale >= 30.0) {
        throw ConvergenceDomainError("series argument bound " + std::to_string(scale) +
                                     " exceeds the supported range");
    }
    if (initial.size() != g.vertex_count()) {
        throw DimensionMismatchError("state dimension does not match graph");
    }

    const Complex step{0.0, -t};
    ComplexVector term = initial.amplitudes();
    ComplexVector sum = term;
    for (int k = 1; k <= terms; ++k) {
        term = (g.weights() * term) * (step / static_cast<double>(k));
        sum += term;
    }
    return sum;
}

RealVector time_grid(double start, double stop, double step) {
    if (!(step > 0.0) || !(stop >= start)) {
        throw InvalidParamsError("time grid needs step > 0 and stop >= start");
    }
    // The small slack keeps an exact multiple of `step` from being dropped
    // when the division lands just below the integer.
    const auto count = static_cast<Eigen::Index>(std::floor((stop - start) / step + 1e-9)) + 1;
    RealVector times(count);
    for (Eigen::Index k = 0; k < count; ++k) times(k) = start + step * static_cast<double>(k);
    return times;
}

}  // namespace chiralwalk

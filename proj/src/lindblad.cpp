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

#include "chiralwalk/lindblad.hpp"

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>

namespace chiralwalk {

namespace {

constexpr double kTraceTolerance = 1e-8;
constexpr double kHermTolerance = 1e-10;
constexpr double kEigenFloor = -1e-8;

double min_population_eigenvalue(const ComplexMatrix& rho) {
    const ComplexMatrix symmetrized = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(symmetrized,
                                                        Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

void check_output_state(const ComplexMatrix& rho, double t, double* min_eigenvalue) {
    const double trace_error = std::abs(rho.trace() - Complex{1.0, 0.0});
    if (trace_error > kTraceTolerance) {
        throw IntegrationFailureError("trace drifted by " + std::to_string(trace_error) +
                                      " at t = " + std::to_string(t));
    }
    const double herm_error = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    if (herm_error > kHermTolerance) {
        throw IntegrationFailureError("state lost Hermiticity by " +
                                      std::to_string(herm_error) + " at t = " +
                                      std::to_string(t));
    }
    const double min_eig = min_population_eigenvalue(rho);
    *min_eigenvalue = std::min(*min_eigenvalue, min_eig);
    if (min_eig < kEigenFloor) {
        throw IntegrationFailureError("state eigenvalue " + std::to_string(min_eig) +
                                      " below the positivity floor at t = " + std::to_string(t));
    }
}

}  // namespace

std::vector<LindbladOperator> standard_lindblads(const HermitianGraph& g,
                                                 const std::vector<LindbladKind>& kinds,
                                                 DissipationTarget target) {
    const int n = g.vertex_count();
    std::vector<LindbladOperator> out;
    std::vector<LindbladKind> distinct;
    for (LindbladKind kind : kinds) {
        if (std::find(distinct.begin(), distinct.end(), kind) == distinct.end()) {
            distinct.push_back(kind);
        }
    }

    for (LindbladKind kind : distinct) {
        switch (kind) {
            case LindbladKind::Scattering:
                for (int u = 1; u <= n; ++u) {
                    for (int v = 1; v <= n; ++v) {
                        const Complex w = (u == v) ? Complex{0.0, 0.0} : g.weight(u, v);
                        if (w == Complex{0.0, 0.0}) continue;
                        ComplexMatrix m = ComplexMatrix::Zero(n, n);
                        m(v - 1, u - 1) = std::sqrt(std::abs(w));
                        out.push_back({std::move(m), kind});
                    }
                }
                break;
            case LindbladKind::Dephasing:
                for (int v = 1; v <= n; ++v) {
                    ComplexMatrix m = ComplexMatrix::Zero(n, n);
                    m(v - 1, v - 1) = Complex{1.0, 0.0};
                    out.push_back({std::move(m), kind});
                }
                break;
            case LindbladKind::Dissipation:
                for (const WeightedEdge& e : g.edges()) {
                    const int from = (target == DissipationTarget::LowerIndex) ? e.j : e.i;
                    const int to = (target == DissipationTarget::LowerIndex) ? e.i : e.j;
                    ComplexMatrix m = ComplexMatrix::Zero(n, n);
                    m(to - 1, from - 1) = std::sqrt(std::abs(e.weight));
                    out.push_back({std::move(m), kind});
                }
                break;
        }
    }
    return out;
}

LindbladSet::LindbladSet(std::vector<LindbladOperator> operators, double omega)
    : operators_(std::move(operators)), omega_(omega) {
    if (!(omega >= 0.0 && omega <= 1.0)) {
        throw InvalidParamsError("omega must lie in [0, 1], got " + std::to_string(omega));
    }
    for (const LindbladOperator& op : operators_) {
        if (op.matrix.rows() != op.matrix.cols() || op.matrix.rows() < 1) {
            throw DimensionMismatchError("jump operators must be square and nonempty");
        }
        if (dimension_ == 0) {
            dimension_ = op.matrix.rows();
        } else if (op.matrix.rows() != dimension_) {
            throw DimensionMismatchError("jump operators have mixed dimensions");
        }
    }
}

DensityMatrix::DensityMatrix(ComplexMatrix rho) : rho_(std::move(rho)) {
    if (rho_.rows() != rho_.cols() || rho_.rows() < 1) {
        throw InvalidParamsError("density matrix must be square and nonempty");
    }
    if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > kHermTolerance) {
        throw InvalidParamsError("density matrix is not Hermitian");
    }
    if (std::abs(rho_.trace() - Complex{1.0, 0.0}) > 1e-10) {
        throw InvalidParamsError("density matrix trace deviates from 1");
    }
    if (min_population_eigenvalue(rho_) < kEigenFloor) {
        throw InvalidParamsError("density matrix has a negative eigenvalue");
    }
}

DensityMatrix DensityMatrix::pure(const StateVector& state) {
    return DensityMatrix(state.amplitudes() * state.amplitudes().adjoint());
}

double DensityMatrix::population(int vertex) const {
    if (vertex < 1 || vertex > rho_.rows()) {
        throw IndexOutOfRangeError("vertex " + std::to_string(vertex) + " outside 1.." +
                                   std::to_string(rho_.rows()));
    }
    return rho_(vertex - 1, vertex - 1).real();
}

ComplexMatrix build_superoperator(const HermitianGraph& g, const LindbladSet& set) {
    const Eigen::Index n = g.vertex_count();
    if (set.dimension() != 0 && set.dimension() != n) {
        throw DimensionMismatchError("jump operators do not match the graph dimension");
    }
    if (n * n > 4096) {
        throw TooLargeError("superoperator would be " + std::to_string(n * n) + "^2; limit is 4096^2");
    }
    const ComplexMatrix identity = ComplexMatrix::Identity(n, n);
    const ComplexMatrix& h = g.weights();
    const double omega = set.omega();

    ComplexMatrix m = Complex{0.0, -(1.0 - omega)} *
                      (kroneckerProduct(identity, h) - kroneckerProduct(h.transpose(), identity))
                          .eval();
    for (const LindbladOperator& op : set.operators()) {
        const ComplexMatrix& l = op.matrix;
        const ComplexMatrix gram = l.adjoint() * l;
        m += omega * (kroneckerProduct(l.conjugate(), l).eval() -
                      0.5 * kroneckerProduct(identity, gram).eval() -
                      0.5 * kroneckerProduct(gram.transpose(), identity).eval());
    }
    return m;
}

ComplexMatrix apply_generator(const HermitianGraph& g, const LindbladSet& set,
                              const ComplexMatrix& rho) {
    const Eigen::Index n = g.vertex_count();
    if (rho.rows() != n || rho.cols() != n) {
        throw DimensionMismatchError("state does not match the graph dimension");
    }
    if (set.dimension() != 0 && set.dimension() != n) {
        throw DimensionMismatchError("jump operators do not match the graph dimension");
    }
    const ComplexMatrix& h = g.weights();
    const double omega = set.omega();

    ComplexMatrix out = Complex{0.0, -(1.0 - omega)} * (h * rho - rho * h);
    for (const LindbladOperator& op : set.operators()) {
        const ComplexMatrix& l = op.matrix;
        const ComplexMatrix gram = l.adjoint() * l;
        out += omega * (l * rho * l.adjoint() - 0.5 * (gram * rho + rho * gram));
    }
    return out;
}

namespace {

// Dormand-Prince 5(4) with the first-same-as-last reuse.  The state is the
// full density matrix; the error is a scaled RMS over its entries.
class DormandPrinceStepper {
   public:
    DormandPrinceStepper(const HermitianGraph& g, const LindbladSet& set, double abs_tol,
                         double rel_tol)
        : g_(g), set_(set), abs_tol_(abs_tol), rel_tol_(rel_tol) {
        for (const LindbladOperator& op : set.operators()) {
            grams_.push_back(op.matrix.adjoint() * op.matrix);
        }
    }

    ComplexMatrix rhs(const ComplexMatrix& rho) const {
        const double omega = set_.omega();
        ComplexMatrix out =
            Complex{0.0, -(1.0 - omega)} * (g_.weights() * rho - rho * g_.weights());
        for (std::size_t k = 0; k < grams_.size(); ++k) {
            const ComplexMatrix& l = set_.operators()[k].matrix;
            out += omega * (l * rho * l.adjoint() - 0.5 * (grams_[k] * rho + rho * grams_[k]));
        }
        return out;
    }

    // Advances rho in place from t_from to t_to.
    void integrate(ComplexMatrix& rho, double t_from, double t_to) {
        if (t_to <= t_from) return;
        double t = t_from;
        double h = std::min(t_to - t_from, 0.05);
        ComplexMatrix k1 = rhs(rho);
        long steps = 0;

        while (t < t_to) {
            if (++steps > 2000000) {
                throw IntegrationFailureError("step budget exhausted near t = " +
                                              std::to_string(t));
            }
            h = std::min(h, t_to - t);
            if (h < 1e-13 * std::max(1.0, std::abs(t))) {
                throw IntegrationFailureError("step size underflow near t = " +
                                              std::to_string(t));
            }

            const ComplexMatrix k2 = rhs(rho + h * (a21 * k1));
            const ComplexMatrix k3 = rhs(rho + h * (a31 * k1 + a32 * k2));
            const ComplexMatrix k4 = rhs(rho + h * (a41 * k1 + a42 * k2 + a43 * k3));
            const ComplexMatrix k5 = rhs(rho + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
            const ComplexMatrix k6 =
                rhs(rho + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
            const ComplexMatrix next =
                rho + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
            const ComplexMatrix k7 = rhs(next);
            const ComplexMatrix error =
                h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

            double sum = 0.0;
            for (Eigen::Index c = 0; c < rho.cols(); ++c) {
                for (Eigen::Index r = 0; r < rho.rows(); ++r) {
                    const double scale =
                        abs_tol_ +
                        rel_tol_ * std::max(std::abs(rho(r, c)), std::abs(next(r, c)));
                    const double ratio = std::abs(error(r, c)) / scale;
                    sum += ratio * ratio;
                }
            }
            const double err = std::sqrt(sum / static_cast<double>(rho.size()));

            if (err <= 1.0) {
                t += h;
                rho = next;
                k1 = k7;
            }
            const double factor =
                (err == 0.0) ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
            h *= factor;
        }
    }

   private:
    static constexpr double a21 = 1.0 / 5.0;
    static constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
    static constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
    static constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                            a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
    static constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                            a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
    static constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                            b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
    static constexpr double e1 = 35.0 / 384.0 - 5179.0 / 57600.0;
    static constexpr double e3 = 500.0 / 1113.0 - 7571.0 / 16695.0;
    static constexpr double e4 = 125.0 / 192.0 - 393.0 / 640.0;
    static constexpr double e5 = -2187.0 / 6784.0 + 92097.0 / 339200.0;
    static constexpr double e6 = 11.0 / 84.0 - 187.0 / 2100.0;
    static constexpr double e7 = -1.0 / 40.0;

    const HermitianGraph& g_;
    const LindbladSet& set_;
    double abs_tol_;
    double rel_tol_;
    std::vector<ComplexMatrix> grams_;
};

}  // namespace

QswResult qsw_evolve(const HermitianGraph& g, const LindbladSet& set, const DensityMatrix& rho0,
                     const RealVector& times, const QswOptions& options) {
    const Eigen::Index n = g.vertex_count();
    if (rho0.dimension() != n) {
        throw DimensionMismatchError("initial state does not match the graph dimension");
    }
    if (set.dimension() != 0 && set.dimension() != n) {
        throw DimensionMismatchError("jump operators do not match the graph dimension");
    }
    if (times.size() < 1 || times(0) < 0.0) {
        throw InvalidParamsError("need at least one time, all >= 0");
    }
    for (Eigen::Index k = 1; k < times.size(); ++k) {
        if (times(k) <= times(k - 1)) {
            throw InvalidParamsError("times must be strictly increasing");
        }
    }

    QswMethod method = options.method;
    if (method == QswMethod::Auto) {
        method = (n <= 16) ? QswMethod::SuperoperatorExp : QswMethod::AdaptiveRk;
    }

    QswResult result;
    result.trace.times = times;
    result.trace.probabilities.resize(times.size(), n);
    result.min_eigenvalue = 1.0;
    if (options.keep_states) result.states.reserve(static_cast<std::size_t>(times.size()));

    ComplexMatrix rho = rho0.matrix();

    if (method == QswMethod::SuperoperatorExp) {
        const ComplexMatrix m = build_superoperator(g, set);
        ComplexVector state = Eigen::Map<const ComplexVector>(rho.data(), n * n);
        std::map<std::uint64_t, ComplexMatrix> exp_cache;

        double current = 0.0;
        for (Eigen::Index k = 0; k < times.size(); ++k) {
            const double dt = times(k) - current;
            if (dt > 0.0) {
                const auto key = std::bit_cast<std::uint64_t>(dt);
                auto it = exp_cache.find(key);
                if (it == exp_cache.end()) {
                    it = exp_cache.emplace(key, ComplexMatrix((m * dt).exp())).first;
                }
                state = it->second * state;
                current = times(k);
            }
            rho = Eigen::Map<const ComplexMatrix>(state.data(), n, n);
            check_output_state(rho, times(k), &result.min_eigenvalue);
            result.trace.probabilities.row(k) = rho.diagonal().real().transpose();
            if (options.keep_states) result.states.push_back(rho);
        }
    } else {
        DormandPrinceStepper stepper(g, set, options.abs_tol, options.rel_tol);
        double current = 0.0;
        for (Eigen::Index k = 0; k < times.size(); ++k) {
            stepper.integrate(rho, current, times(k));
            current = times(k);
            check_output_state(rho, times(k), &result.min_eigenvalue);
            result.trace.probabilities.row(k) = rho.diagonal().real().transpose();
            if (options.keep_states) result.states.push_back(rho);
        }
    }
    return result;
}

}  // namespace chiralwalk

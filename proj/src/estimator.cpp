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

#include "chiralwalk/estimator.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "chiralwalk/io.hpp"

namespace chiralwalk {

namespace {

// Acklam's rational approximation to the inverse normal CDF, tightened with
// one Halley step through erfc.  Good to full double precision on (0, 1).
double inverse_normal_cdf(double p) {
    static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                   -2.759285104469687e+02, 1.383577518672690e+02,
                                   -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                   -1.556989798598866e+02, 6.680131188771972e+01,
                                   -1.328068155288572e+01};
    static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                   -2.400758277161838e+00, -2.549732539343734e+00,
                                   4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                   2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    double x = 0.0;
    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - p_low) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }

    const double e = 0.5 * std::erfc(-x / std::numbers::sqrt2) - p;
    const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(x * x / 2.0);
    return x - u / (1.0 + x * u / 2.0);
}

// Maps a transfer probability back to omega through the table's strictly
// increasing prefix.  Values outside the covered range clamp to the ends.
double invert_probability(const ReferenceTable& table, double probability, bool* clamped) {
    const Eigen::Index m = table.monotone_end;
    const RealVector& p = table.transfer_probabilities;
    const RealVector& w = table.omega_grid;

    if (probability <= p(0)) {
        if (probability < p(0)) *clamped = true;
        return w(0);
    }
    if (probability >= p(m - 1)) {
        if (probability > p(m - 1)) *clamped = true;
        return w(m - 1);
    }
    Eigen::Index hi = 1;
    while (p(hi) < probability) ++hi;
    const double fraction = (probability - p(hi - 1)) / (p(hi) - p(hi - 1));
    return w(hi - 1) + fraction * (w(hi) - w(hi - 1));
}

}  // namespace

std::pair<HermitianGraph, StateVector> build_probe() {
    HermitianGraph g(3, {{1, 2, Complex{-1.0, 0.0}}, {2, 3, Complex{1.0, 0.0}}});
    return {std::move(g), StateVector::uniform_over(3, {1, 3})};
}

RealVector default_omega_grid() { return time_grid(0.0, 1.0, 0.05); }

std::vector<LindbladKind> default_estimator_kinds() { return {LindbladKind::Scattering}; }

ReferenceTable build_reference(const RealVector& omega_grid, double measure_time,
                               const std::vector<LindbladKind>& kinds) {
    if (omega_grid.size() < 2 || omega_grid(0) != 0.0) {
        throw InvalidParamsError("omega grid must start at 0 and hold at least two points");
    }
    for (Eigen::Index k = 0; k < omega_grid.size(); ++k) {
        if (omega_grid(k) < 0.0 || omega_grid(k) > 1.0) {
            throw InvalidParamsError("omega grid entries must lie in [0, 1]");
        }
        if (k > 0 && omega_grid(k) <= omega_grid(k - 1)) {
            throw InvalidParamsError("omega grid must be strictly ascending");
        }
    }
    if (!(measure_time > 0.0)) {
        throw InvalidParamsError("measure time must be positive");
    }

    const auto [probe, initial] = build_probe();
    const std::vector<LindbladOperator> ops = standard_lindblads(probe, kinds);
    const DensityMatrix rho0 = DensityMatrix::pure(initial);
    RealVector times(1);
    times(0) = measure_time;

    ReferenceTable table;
    table.omega_grid = omega_grid;
    table.transfer_probabilities.resize(omega_grid.size());
    table.measure_time = measure_time;
    table.kinds = kinds;
    table.probe_fingerprint = graph_fingerprint(probe);

    for (Eigen::Index k = 0; k < omega_grid.size(); ++k) {
        LindbladSet set(ops, omega_grid(k));
        const QswResult run = qsw_evolve(probe, set, rho0, times);
        table.transfer_probabilities(k) = run.trace.probabilities(0, 1);
    }

    if (table.transfer_probabilities(0) > 1e-10) {
        throw NumericError("probe dark state leaked at omega = 0");
    }

    // Increments at the integrator's noise level do not count as increasing;
    // otherwise a channel mix that never moves the probe could slip through.
    Eigen::Index m = 1;
    while (m < omega_grid.size() && table.transfer_probabilities(m) >
                                        table.transfer_probabilities(m - 1) + 1e-12) {
        ++m;
    }
    table.monotone_end = m;
    if (m < 2) {
        throw NonMonotoneRangeError("transfer curve is not increasing anywhere on the grid");
    }
    return table;
}

long long sample_transfer_hits(double transfer_probability, long long trials,
                               std::uint64_t seed) {
    if (trials < 1) {
        throw DegenerateTrialsError("need at least one trial");
    }
    if (transfer_probability < 0.0 || transfer_probability > 1.0) {
        throw InvalidParamsError("transfer probability must lie in [0, 1]");
    }
    // Uniform doubles are formed from the top 53 bits so the stream does not
    // depend on the standard library's distribution implementation.
    std::mt19937_64 rng(seed);
    long long hits = 0;
    for (long long k = 0; k < trials; ++k) {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        if (u < transfer_probability) ++hits;
    }
    return hits;
}

double probe_transfer_probability(const ReferenceTable& table, double omega) {
    if (omega < 0.0 || omega > 1.0) {
        throw InvalidParamsError("omega must lie in [0, 1]");
    }
    const auto [probe, initial] = build_probe();
    LindbladSet set(standard_lindblads(probe, table.kinds), omega);
    RealVector times(1);
    times(0) = table.measure_time;
    const QswResult run = qsw_evolve(probe, set, DensityMatrix::pure(initial), times);
    return run.trace.probabilities(0, 1);
}

OmegaEstimate estimate_omega(const ReferenceTable& table, long long hits, long long trials,
                             double confidence) {
    if (trials < 1 || hits < 0 || hits > trials) {
        throw DegenerateTrialsError("hits must lie in 0..trials and trials must be positive");
    }
    if (!(confidence > 0.0 && confidence < 1.0)) {
        throw InvalidParamsError("confidence must lie strictly between 0 and 1");
    }
    if (table.monotone_end < 2 || table.monotone_end > table.omega_grid.size() ||
        table.transfer_probabilities.size() != table.omega_grid.size()) {
        throw NonMonotoneTableError("reference table has no usable increasing prefix");
    }
    for (Eigen::Index k = 1; k < table.monotone_end; ++k) {
        if (table.transfer_probabilities(k) <= table.transfer_probabilities(k - 1)) {
            throw NonMonotoneTableError("reference table prefix is not strictly increasing");
        }
    }

    const double n = static_cast<double>(trials);
    const double p_hat = static_cast<double>(hits) / n;
    const double z = inverse_normal_cdf(0.5 + confidence / 2.0);
    const double z2 = z * z;

    // Wilson score interval.
    const double denom = 1.0 + z2 / n;
    const double center = (p_hat + z2 / (2.0 * n)) / denom;
    const double half =
        (z / denom) * std::sqrt(p_hat * (1.0 - p_hat) / n + z2 / (4.0 * n * n));
    const double p_low = std::max(0.0, center - half);
    const double p_high = std::min(1.0, center + half);

    OmegaEstimate estimate;
    estimate.sample_size = trials;
    estimate.omega_hat = invert_probability(table, p_hat, &estimate.clamped);
    estimate.low = invert_probability(table, p_low, &estimate.clamped);
    estimate.high = invert_probability(table, p_high, &estimate.clamped);
    return estimate;
}

}  // namespace chiralwalk

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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <limits>
#include <utility>

#include "chiralwalk/chiral.hpp"
#include "chiralwalk/unitary.hpp"
#include "oracles.hpp"

using namespace chiralwalk;

namespace {

constexpr double kPi = 3.14159265358979323846;

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("phases are normalized into [0, 2pi)") {
    ChiralPhaseAssignment phases({{1, 2, -kPi / 2}, {2, 3, 5 * kPi}, {3, 4, 0.0}});
    CHECK(phases.size() == 3);
    CHECK(phases.entries()[0].phase == doctest::Approx(3 * kPi / 2).epsilon(1e-14));
    CHECK(phases.entries()[1].phase == doctest::Approx(kPi).epsilon(1e-14));
    CHECK(phases.entries()[2].phase == 0.0);
}

TEST_CASE("traversal phase is signed by direction") {
    ChiralPhaseAssignment phases({{1, 2, kPi / 2}});
    CHECK(phases.traversal_phase(1, 2) == doctest::Approx(kPi / 2));
    CHECK(phases.traversal_phase(2, 1) == doctest::Approx(-kPi / 2));
    CHECK(phases.traversal_phase(2, 3) == 0.0);
    CHECK(phases.covers(1, 2));
    CHECK(phases.covers(2, 1));
    CHECK(!phases.covers(2, 3));
}

TEST_CASE("assignment rejections") {
    CHECK_THROWS_AS(ChiralPhaseAssignment({{1, 1, 0.5}}), SelfLoopError);
    CHECK_THROWS_AS(ChiralPhaseAssignment({{1, 2, 0.5}, {2, 1, 0.5}}), DuplicateEdgeError);
    CHECK_THROWS_AS(ChiralPhaseAssignment({{1, 2, 0.5}, {1, 2, 0.7}}), DuplicateEdgeError);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(ChiralPhaseAssignment({{1, 2, nan}}), InvalidParamsError);
}

TEST_CASE("negation conjugates every traversal phasor") {
    ChiralPhaseAssignment phases({{1, 2, kPi / 3}, {4, 3, 1.0}});
    const ChiralPhaseAssignment neg = phases.negated();
    // Stored phases stay normalized to [0, 2pi), so compare as phasors.
    for (auto [from, to] : {std::pair{1, 2}, std::pair{4, 3}, std::pair{2, 1}}) {
        const Complex product = std::polar(1.0, neg.traversal_phase(from, to)) *
                                std::polar(1.0, phases.traversal_phase(from, to));
        CHECK(std::abs(product - Complex{1.0, 0.0}) < 1e-15);
    }
}

TEST_CASE("phasing the nine-vertex star reproduces the canonical matrix") {
    auto [g, d] = merged_star_type1({4, 3});
    ChiralPhaseAssignment phases({{1, 2, kPi / 2}, {3, 4, kPi}, {5, 6, 3 * kPi / 2}});
    const HermitianGraph phased = apply_phases(g, phases);

    ComplexMatrix expected = ComplexMatrix::Zero(9, 9);
    auto put = [&expected](int i, int j, Complex w) {
        expected(i - 1, j - 1) = w;
        expected(j - 1, i - 1) = std::conj(w);
    };
    put(1, 2, Complex{0.0, 1.0});
    put(2, 9, Complex{1.0, 0.0});
    put(3, 4, Complex{-1.0, 0.0});
    put(4, 9, Complex{1.0, 0.0});
    put(5, 6, Complex{0.0, -1.0});
    put(6, 9, Complex{1.0, 0.0});
    put(7, 8, Complex{1.0, 0.0});
    put(8, 9, Complex{1.0, 0.0});

    CHECK(max_abs_diff(phased.weights(), expected) < 1e-15);
    CHECK(phased.weights() == phased.weights().adjoint().eval());

    SUBCASE("branch sums pick up one phase each") {
        const BranchPhaseSums sums = branch_phase_sums(d, phases);
        REQUIRE(sums.sums.size() == 4);
        CHECK(sums.sums[0] == doctest::Approx(kPi / 2));
        CHECK(sums.sums[1] == doctest::Approx(kPi));
        CHECK(sums.sums[2] == doctest::Approx(3 * kPi / 2));
        CHECK(sums.sums[3] == 0.0);
        CHECK(zero_transfer_residual(sums) < 1e-15);
    }
}

TEST_CASE("phases on non-edges are rejected") {
    const HermitianGraph g = path_graph(3);
    CHECK_THROWS_AS(apply_phases(g, ChiralPhaseAssignment({{1, 3, 0.4}})), PhaseOnNonEdgeError);
    CHECK_THROWS_AS(apply_phases(g, ChiralPhaseAssignment({{1, 4, 0.4}})), IndexOutOfRangeError);
}

TEST_CASE("apply_phases keeps magnitudes and Hermiticity on random graphs") {
    for (std::uint64_t trial = 0; trial < 25; ++trial) {
        const HermitianGraph g = oracle::random_graph(6, 71u + trial);
        const ChiralPhaseAssignment phases = oracle::random_phases(g, 900u + trial);
        const HermitianGraph phased = apply_phases(g, phases);
        CHECK(phased.weights() == phased.weights().adjoint().eval());
        CHECK(max_abs_diff(phased.weights().cwiseAbs(), g.weights().cwiseAbs()) < 1e-15);
        CHECK(phased.weights().diagonal().cwiseAbs().maxCoeff() == 0.0);

        const HermitianGraph round = apply_phases(phased, phases.negated());
        CHECK(max_abs_diff(round.weights(), g.weights()) < 1e-14);
    }
}

TEST_CASE("residual fixtures") {
    CHECK(zero_transfer_residual(BranchPhaseSums{{0.0}}) == 1.0);
    CHECK(zero_transfer_residual(BranchPhaseSums{{0.0, 0.0}}) == 2.0);
    CHECK(zero_transfer_residual(BranchPhaseSums{{0.0, kPi}}) < 1e-15);
    CHECK(zero_transfer_residual(BranchPhaseSums{{0.0, kPi / 2}}) ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    CHECK(zero_transfer_residual(BranchPhaseSums{{0.0, 2 * kPi / 3, 4 * kPi / 3}}) < 1e-15);
    CHECK_THROWS_AS(zero_transfer_residual(BranchPhaseSums{{}}), InvalidParamsError);
}

TEST_CASE("planner places roots of unity on the first edge of each branch") {
    auto [g, d] = merged_star_type1({4, 3});
    const ChiralPhaseAssignment plan = plan_zero_transfer(d);
    REQUIRE(plan.size() == 4);
    for (int p = 0; p < 4; ++p) {
        const PhasedEdge& e = plan.entries()[static_cast<std::size_t>(p)];
        CHECK(e.i == d.branches[static_cast<std::size_t>(p)][0]);
        CHECK(e.j == d.branches[static_cast<std::size_t>(p)][1]);
        CHECK(e.phase == doctest::Approx(2 * kPi * p / 4).epsilon(1e-14));
    }
    CHECK_NOTHROW(apply_phases(g, plan));
}

TEST_CASE("planned assignments cancel for every branch count") {
    for (int b = 2; b <= 8; ++b) {
        for (int n : {2, 3, 5}) {
            auto [g, d] = merged_star_type1({b, n});
            const BranchPhaseSums sums = branch_phase_sums(d, plan_zero_transfer(d));
            CHECK(zero_transfer_residual(sums) < 1e-12);
        }
        if (b >= 2) {
            auto [g2, d2] = merged_star_type2({b, 4});
            CHECK(zero_transfer_residual(branch_phase_sums(d2, plan_zero_transfer(d2))) < 1e-12);
        }
    }
}

TEST_CASE("planning a single branch fails") {
    BranchDecomposition d;
    d.branches = {{1, 2, 3}};
    d.source_vertices = {1};
    d.merge_vertex = 3;
    CHECK_THROWS_AS(plan_zero_transfer(d), SingleBranchError);
}

TEST_CASE("gauge map on the three-vertex path with a pi phase") {
    ComplexVector plain(3);
    plain << Complex{0.2, 0.1}, Complex{-0.4, 0.3}, Complex{0.5, -0.6};
    ChiralPhaseAssignment phases({{1, 2, kPi}});

    const ComplexVector from_first = gauge_amplitudes(plain, phases, 1);
    CHECK(std::abs(from_first(0) - plain(0)) < 1e-15);
    CHECK(std::abs(from_first(1) + plain(1)) < 1e-15);
    CHECK(std::abs(from_first(2) + plain(2)) < 1e-15);

    const ComplexVector from_second = gauge_amplitudes(plain, phases, 2);
    CHECK(std::abs(from_second(0) + plain(0)) < 1e-15);
    CHECK(std::abs(from_second(1) - plain(1)) < 1e-15);
    CHECK(std::abs(from_second(2) - plain(2)) < 1e-15);
}

TEST_CASE("gauge map rejections") {
    ComplexVector plain = ComplexVector::Zero(3);
    CHECK_THROWS_AS(gauge_amplitudes(plain, ChiralPhaseAssignment({{1, 3, 0.5}}), 1),
                    PhaseOnNonEdgeError);
    CHECK_THROWS_AS(gauge_amplitudes(plain, ChiralPhaseAssignment({{1, 2, 0.5}}), 0),
                    IndexOutOfRangeError);
    CHECK_THROWS_AS(gauge_amplitudes(plain, ChiralPhaseAssignment({{1, 2, 0.5}}), 4),
                    IndexOutOfRangeError);
}

TEST_CASE("gauge map matches direct evolution under the phased Hamiltonian") {
    std::mt19937_64 rng(1234u);
    for (int n : {2, 3, 5, 8}) {
        const HermitianGraph plain_path = path_graph(n);
        std::vector<PhasedEdge> entries;
        for (int v = 1; v < n; ++v) {
            entries.push_back({v, v + 1, oracle::uniform(rng, 0.0, 2 * kPi)});
        }
        const ChiralPhaseAssignment phases(entries);
        const HermitianGraph phased_path = apply_phases(plain_path, phases);

        SpectralPropagator plain_prop(plain_path);
        SpectralPropagator phased_prop(phased_path);
        for (int start = 1; start <= n; ++start) {
            const StateVector init = StateVector::basis(n, start);
            for (double t : {0.4, 1.7, 6.3}) {
                const ComplexVector direct = phased_prop.evolve(init, t).amplitudes();
                const ComplexVector plain = plain_prop.evolve(init, t).amplitudes();
                const ComplexVector gauged = gauge_amplitudes(plain, phases, start);
                CHECK((direct - gauged).cwiseAbs().maxCoeff() < 1e-12);
                CHECK((gauged.cwiseAbs2() - plain.cwiseAbs2()).cwiseAbs().maxCoeff() < 1e-14);
            }
        }
    }
}

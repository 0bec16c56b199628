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

#include <array>
#include <cmath>

#include "chiralwalk/estimator.hpp"
#include "chiralwalk/io.hpp"
#include "oracles.hpp"

using namespace chiralwalk;

namespace {

// Transfer probabilities of the scattering-only reference at t* = 3 on the
// default grid, recorded from the superoperator-exponential path.  These pin
// the full physics stack; a change here means the dynamics changed.
constexpr std::array<double, 21> kScatteringCurve = {
    0.0,
    0.07382814979202912,
    0.1311158851265705,
    0.1734431921425787,
    0.2037015060201767,
    0.2252429976178502,
    0.2411865710583475,
    0.2539903378917009,
    0.2652916607129313,
    0.2759543468770851,
    0.2862404204965977,
    0.2960287443147749,
    0.3050221234937963,
    0.3129083357094021,
    0.3194621016079676,
    0.3245908964241223,
    0.3283368201259401,
    0.3308502570642955,
    0.3323503505675611,
    0.3330841513793762,
    0.3332921967319710,
};

ReferenceTable default_table() {
    return build_reference(default_omega_grid(), kDefaultMeasureTime,
                           default_estimator_kinds());
}

}  // namespace

TEST_CASE("the probe starts in a dark state of its Hamiltonian") {
    auto [probe, initial] = build_probe();
    CHECK(probe.vertex_count() == 3);
    CHECK(probe.weight(1, 2) == Complex{-1.0, 0.0});
    CHECK(probe.weight(2, 3) == Complex{1.0, 0.0});
    CHECK(!probe.has_edge(1, 3));
    CHECK(initial.amplitude(2) == Complex{0.0, 0.0});
    CHECK((probe.weights() * initial.amplitudes()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("defaults") {
    const RealVector grid = default_omega_grid();
    CHECK(grid.size() == 21);
    CHECK(grid(0) == 0.0);
    CHECK(grid(20) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(default_estimator_kinds() == std::vector<LindbladKind>{LindbladKind::Scattering});
    CHECK(kDefaultMeasureTime == 3.0);
}

TEST_CASE("reference curve matches the recorded values") {
    const ReferenceTable table = default_table();
    REQUIRE(table.transfer_probabilities.size() == 21);
    CHECK(std::abs(table.transfer_probabilities(0)) < 1e-10);
    for (Eigen::Index k = 1; k < 21; ++k) {
        CHECK(table.transfer_probabilities(k) ==
              doctest::Approx(kScatteringCurve[static_cast<std::size_t>(k)]).epsilon(1e-9));
    }
    CHECK(table.monotone_end == 21);
    CHECK(table.measure_time == 3.0);
    CHECK(table.kinds == default_estimator_kinds());
    auto [probe, initial] = build_probe();
    CHECK(table.probe_fingerprint == graph_fingerprint(probe));
}

TEST_CASE("richer channel mixes lose monotonicity past their peak") {
    const ReferenceTable table =
        build_reference(default_omega_grid(), kDefaultMeasureTime,
                        {LindbladKind::Scattering, LindbladKind::Dephasing,
                         LindbladKind::Dissipation});
    CHECK(table.monotone_end == 9);
    CHECK(table.transfer_probabilities(8) > table.transfer_probabilities(20));
}

TEST_CASE("short measure times respond linearly in omega") {
    const ReferenceTable table =
        build_reference(default_omega_grid(), 0.01, default_estimator_kinds());
    CHECK(table.monotone_end == 21);
    for (Eigen::Index k = 10; k < 21; ++k) {
        const double expected = 0.01 * table.omega_grid(k);
        CHECK(table.transfer_probabilities(k) ==
              doctest::Approx(expected).epsilon(0.05));
    }
}

TEST_CASE("a channel that never moves the probe is rejected") {
    RealVector grid(2);
    grid << 0.0, 1.0;
    CHECK_THROWS_AS(build_reference(grid, kDefaultMeasureTime, {LindbladKind::Dephasing}),
                    NonMonotoneRangeError);
}

TEST_CASE("reference grid validation") {
    const auto kinds = default_estimator_kinds();
    RealVector no_zero(2);
    no_zero << 0.1, 0.5;
    CHECK_THROWS_AS(build_reference(no_zero, 3.0, kinds), InvalidParamsError);

    RealVector single(1);
    single << 0.0;
    CHECK_THROWS_AS(build_reference(single, 3.0, kinds), InvalidParamsError);

    RealVector unsorted(3);
    unsorted << 0.0, 0.5, 0.5;
    CHECK_THROWS_AS(build_reference(unsorted, 3.0, kinds), InvalidParamsError);

    RealVector outside(2);
    outside << 0.0, 1.5;
    CHECK_THROWS_AS(build_reference(outside, 3.0, kinds), InvalidParamsError);

    RealVector fine = default_omega_grid();
    CHECK_THROWS_AS(build_reference(fine, 0.0, kinds), InvalidParamsError);
    CHECK_THROWS_AS(build_reference(fine, -1.0, kinds), InvalidParamsError);
}

TEST_CASE("exact transfer probabilities agree with the tabulated nodes") {
    const ReferenceTable table = default_table();
    for (Eigen::Index k : {0, 5, 10, 20}) {
        CHECK(probe_transfer_probability(table, table.omega_grid(k)) ==
              doctest::Approx(table.transfer_probabilities(k)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(probe_transfer_probability(table, -0.1), InvalidParamsError);
    CHECK_THROWS_AS(probe_transfer_probability(table, 1.1), InvalidParamsError);
}

TEST_CASE("sampling is deterministic in the seed") {
    const long long a = sample_transfer_hits(0.3, 5000, 99u);
    const long long b = sample_transfer_hits(0.3, 5000, 99u);
    CHECK(a == b);

    CHECK(sample_transfer_hits(0.0, 1000, 1u) == 0);
    CHECK(sample_transfer_hits(1.0, 1000, 1u) == 1000);

    const long long big = sample_transfer_hits(0.3, 100000, 7u);
    CHECK(big > 27000);
    CHECK(big < 33000);

    CHECK_THROWS_AS(sample_transfer_hits(0.3, 0, 1u), DegenerateTrialsError);
    CHECK_THROWS_AS(sample_transfer_hits(-0.1, 10, 1u), InvalidParamsError);
    CHECK_THROWS_AS(sample_transfer_hits(1.1, 10, 1u), InvalidParamsError);
}

TEST_CASE("estimates invert the reference curve") {
    const ReferenceTable table = default_table();

    SUBCASE("noise-free counts sit on the curve") {
        // Feed exact expected counts so the only error is interpolation.
        for (double omega : {0.25, 0.5, 0.75}) {
            const double p = probe_transfer_probability(table, omega);
            const long long trials = 1000000;
            const long long hits = std::llround(p * static_cast<double>(trials));
            const OmegaEstimate est = estimate_omega(table, hits, trials);
            CHECK(est.omega_hat == doctest::Approx(omega).epsilon(1e-3));
            CHECK(!est.clamped);
            CHECK(est.low <= est.omega_hat);
            CHECK(est.omega_hat <= est.high);
        }
    }

    SUBCASE("sampled counts land inside the interval") {
        const double true_omega = 0.3;
        const double p = probe_transfer_probability(table, true_omega);
        const long long trials = 100000;
        const long long hits = sample_transfer_hits(p, trials, 2026u);
        const OmegaEstimate est = estimate_omega(table, hits, trials, 0.99);
        CHECK(est.sample_size == trials);
        CHECK(est.omega_hat == doctest::Approx(true_omega).epsilon(0.1));
        CHECK(est.low <= true_omega);
        CHECK(true_omega <= est.high);
        CHECK(!est.clamped);
    }

    SUBCASE("estimates grow with the hit count") {
        double previous = -1.0;
        for (long long hits = 5000; hits <= 30000; hits += 5000) {
            const OmegaEstimate est = estimate_omega(table, hits, 100000);
            CHECK(est.omega_hat >= previous);
            CHECK(est.low <= est.omega_hat);
            CHECK(est.omega_hat <= est.high);
            previous = est.omega_hat;
        }
    }
}

TEST_CASE("counts beyond the curve clamp to the grid ends") {
    const ReferenceTable table = default_table();

    const OmegaEstimate all = estimate_omega(table, 1000, 1000);
    CHECK(all.omega_hat == 1.0);
    CHECK(all.high == 1.0);
    CHECK(all.clamped);

    const OmegaEstimate none = estimate_omega(table, 0, 1000);
    CHECK(none.omega_hat < 1e-10);
    CHECK(none.low <= none.omega_hat);
    CHECK(!none.clamped);
}

TEST_CASE("estimator input validation") {
    const ReferenceTable table = default_table();
    CHECK_THROWS_AS(estimate_omega(table, -1, 100), DegenerateTrialsError);
    CHECK_THROWS_AS(estimate_omega(table, 101, 100), DegenerateTrialsError);
    CHECK_THROWS_AS(estimate_omega(table, 5, 0), DegenerateTrialsError);
    CHECK_THROWS_AS(estimate_omega(table, 5, 100, 0.0), InvalidParamsError);
    CHECK_THROWS_AS(estimate_omega(table, 5, 100, 1.0), InvalidParamsError);

    ReferenceTable broken = table;
    broken.monotone_end = 1;
    CHECK_THROWS_AS(estimate_omega(broken, 5, 100), NonMonotoneTableError);

    ReferenceTable tampered = table;
    tampered.transfer_probabilities(3) = tampered.transfer_probabilities(2);
    CHECK_THROWS_AS(estimate_omega(tampered, 5, 100), NonMonotoneTableError);
}

TEST_CASE("interval widths shrink with the sample size") {
    const ReferenceTable table = default_table();
    const double p = probe_transfer_probability(table, 0.5);
    double last_width = 2.0;
    for (long long trials : {1000LL, 10000LL, 100000LL}) {
        const long long hits = std::llround(p * static_cast<double>(trials));
        const OmegaEstimate est = estimate_omega(table, hits, trials);
        const double width = est.high - est.low;
        CHECK(width < last_width);
        CHECK(width > 0.0);
        last_width = width;
    }
}

// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <vector>

#include "catch2/catch_amalgamated.hpp"
#include "rdars/channel.hpp"
#include "rdars/scenario.hpp"

using namespace rdars;

TEST_CASE("path loss formula and golden value") {
    PathLossParams p{30.0, 2.0, 0.0};
    CHECK(path_loss_db(p, 100.0, 0.0) == Catch::Approx(70.0).margin(1e-12));
    CHECK(path_loss_db(p, 1.0, 0.0) == Catch::Approx(30.0).margin(1e-12));
    CHECK(path_loss_db(p, 100.0, 2.5) == Catch::Approx(72.5).margin(1e-12));

    // Frozen golden constant for the urban-micro direct-link geometry.
    PathLossParams ub{30.0, 3.1, 0.0};
    CHECK(path_loss_db(ub, 200.45, 0.0) == Catch::Approx(101.36218787818275).margin(1e-9));

    CHECK_THROWS_AS(path_loss_db(p, 0.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(path_loss_db(p, -3.0, 0.0), std::domain_error);
}

TEST_CASE("path loss is strictly increasing in distance and exponent") {
    double prev = -1e300;
    for (double d : {0.5, 1.0, 3.0, 10.0, 55.0, 200.0, 1234.5}) {
        const double v = path_loss_db({30.0, 2.7, 0.0}, d, 0.0);
        CHECK(v > prev);
        prev = v;
    }
    prev = -1e300;
    for (double e : {0.5, 1.0, 2.0, 3.1, 4.0}) {
        const double v = path_loss_db({30.0, e, 0.0}, 150.0, 0.0);
        CHECK(v > prev);
        prev = v;
    }
}

TEST_CASE("steering vector is unit modulus and matches the frozen convention") {
    NodeGeometry geom{{0, 0, 0}, 3, 5, 0.37};
    const cvec v = array_response(geom, {1.234, -0.521});
    REQUIRE(v.size() == 15);
    for (const auto& z : v) CHECK(std::abs(z) == Catch::Approx(1.0).margin(1e-12));

    // Zero electrical spacing collapses every phase.
    NodeGeometry flat{{0, 0, 0}, 2, 3, 0.0};
    for (const auto& z : array_response(flat, {0.7, 2.9})) {
        CHECK(z.real() == Catch::Approx(1.0).margin(1e-12));
        CHECK(z.imag() == Catch::Approx(0.0).margin(1e-12));
    }

    // 2x2 array, half-wavelength spacing, azimuth = elevation = pi/2:
    // phases are {0, 0, pi, pi} in row-major order. This freezes the
    // row/column index convention.
    NodeGeometry sq{{0, 0, 0}, 2, 2, 0.5};
    const cvec g = array_response(sq, {std::numbers::pi / 2, std::numbers::pi / 2});
    CHECK(std::arg(g[0]) == Catch::Approx(0.0).margin(1e-9));
    CHECK(std::arg(g[1]) == Catch::Approx(0.0).margin(1e-9));
    CHECK(std::abs(std::arg(g[2])) == Catch::Approx(std::numbers::pi).margin(1e-9));
    CHECK(std::abs(std::arg(g[3])) == Catch::Approx(std::numbers::pi).margin(1e-9));
}

TEST_CASE("rayleigh sampling hits the stated moments") {
    Xoshiro256 rng(1234);
    const std::size_t n = 1000000;
    const cvec v = sample_rayleigh(rng, n, 1.0);
    double power = 0.0;
    double re = 0.0;
    double im = 0.0;
    for (const auto& z : v) {
        power += std::norm(z);
        re += z.real();
        im += z.imag();
    }
    CHECK(power / n == Catch::Approx(1.0).epsilon(0.01));
    CHECK(std::abs(re / n) < 0.01);
    CHECK(std::abs(im / n) < 0.01);

    Xoshiro256 rng2(99);
    const cvec w = sample_rayleigh(rng2, n, 4.0);
    double mag = 0.0;
    for (const auto& z : w) mag += std::abs(z);
    CHECK(mag / n == Catch::Approx(std::sqrt(std::numbers::pi)).epsilon(0.01));
}

namespace {

/// Two-sample Kolmogorov-Smirnov statistic on sorted samples.
double ks_statistic(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double d = 0.0;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] <= b[j])
            ++i;
        else
            ++j;
        const double fa = static_cast<double>(i) / a.size();
        const double fb = static_cast<double>(j) / b.size();
        d = std::max(d, std::abs(fa - fb));
    }
    return d;
}

}  // namespace

TEST_CASE("rician draw statistics") {
    LinkStatistics los_stats;
    los_stats.gain = 1.0;
    los_stats.rician_factor = 10.0;
    los_stats.los_angles_in = AngleSet{0.3, 1.1};

    NodeGeometry geom{{0, 0, 0}, 4, 4, 0.5};
    CMatrix los(4, 4);
    const cvec steer = array_response(geom, *los_stats.los_angles_in);
    for (std::size_t i = 0; i < 16; ++i) los.data[i] = steer[i];

    SECTION("per-entry second moment equals the gain for any K") {
        Xoshiro256 rng(5);
        double power = 0.0;
        const std::size_t reps = 62500;  // 62500 * 16 = 1e6 entries
        for (std::size_t r = 0; r < reps; ++r) {
            const CMatrix draw = sample_rician(rng, 4, 4, los_stats, los);
            for (const auto& z : draw.data) power += std::norm(z);
        }
        CHECK(power / (reps * 16.0) == Catch::Approx(1.0).epsilon(0.01));
    }

    SECTION("huge K collapses onto the LoS matrix") {
        LinkStatistics det = los_stats;
        det.rician_factor = 1e8;
        Xoshiro256 rng(6);
        const CMatrix draw = sample_rician(rng, 4, 4, det, los);
        for (std::size_t i = 0; i < 16; ++i)
            CHECK(std::abs(draw.data[i] - los.data[i]) < 1e-3);
    }

    SECTION("K = 0 matches rayleigh in distribution (two-sample KS)") {
        LinkStatistics nolos;
        nolos.gain = 2.0;
        nolos.rician_factor = 0.0;
        Xoshiro256 rng(7);
        const std::size_t n = 100000;
        std::vector<double> mags_a;
        std::vector<double> mags_b;
        mags_a.reserve(n);
        mags_b.reserve(n);
        const CMatrix draw = sample_rician(rng, n, 1, nolos, CMatrix{});
        for (const auto& z : draw.data) mags_a.push_back(std::abs(z));
        Xoshiro256 rng2(8);
        for (const auto& z : sample_rayleigh(rng2, n, 2.0)) mags_b.push_back(std::abs(z));
        const double d = ks_statistic(std::move(mags_a), std::move(mags_b));
        // significance 0.01: c(alpha) * sqrt((n+m)/(n*m))
        const double threshold = 1.6276 * std::sqrt(2.0 / n);
        CHECK(d < threshold);
    }

    SECTION("dimension mismatch is rejected") {
        Xoshiro256 rng(9);
        CHECK_THROWS_AS(sample_rician(rng, 3, 3, los_stats, los), std::invalid_argument);
    }
}

TEST_CASE("draw_realization composes the link budget") {
    Scenario s;
    s.shadow_sigma_db = 0.0;
    s.bs.array_rows = s.bs.array_cols = 1;
    s.rdars.array_rows = 2;
    s.rdars.array_cols = 2;
    s.rician_delta = 0.0;
    s.rician_epsilon = 0.0;
    s.prepare();

    SECTION("fixed seed gives bit-identical realizations") {
        Xoshiro256 r1 = derive_stream(77, StreamTag::trial, 0);
        Xoshiro256 r2 = derive_stream(77, StreamTag::trial, 0);
        CHECK(draw_realization(s, r1) == draw_realization(s, r2));
    }

    SECTION("empty surface leaves only the direct link") {
        Scenario empty = s;
        empty.rdars.array_rows = 0;
        empty.connected_count = 0;
        empty.prepare();
        Xoshiro256 rng(3);
        const ChannelRealization real = draw_realization(empty, rng);
        CHECK(real.h_rdars_bs.data.empty());
        CHECK(real.h_ue_rdars.empty());
        REQUIRE(real.h_ue_bs.size() == 1);
        CHECK(std::norm(real.h_ue_bs[0]) > 0.0);
    }

    SECTION("direct-link power matches the hand-evaluated path loss") {
        // Independent oracle: the log-distance expression evaluated here.
        const double dist = std::sqrt(200.0 * 200.0 + 8.5 * 8.5);
        const double pl_db = 30.0 + 31.0 * std::log10(dist);
        const double expected = std::pow(10.0, -pl_db / 10.0);
        double power = 0.0;
        const std::size_t trials = 200000;
        for (std::size_t t = 0; t < trials; ++t) {
            Xoshiro256 rng = derive_stream(11, StreamTag::trial, t);
            power += std::norm(draw_realization(s, rng).h_ue_bs[0]);
        }
        CHECK(power / trials == Catch::Approx(expected).epsilon(0.01));
    }
}

// SPDX-License-Identifier: Apache-2.0
//
// rdars-sim: link-level simulation and closed-form rate analysis for
// reconfigurable distributed antenna / reflecting surface aided uplinks.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RDARS_RNG_HPP
#define RDARS_RNG_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>

namespace rdars {

/// SplitMix64 step; used for seeding and stream derivation.
inline constexpr std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// xoshiro256** by Blackman & Vigna (public domain reference design).
/// Satisfies UniformRandomBitGenerator; all draws are reproducible across
/// platforms since no standard-library distributions are involved.
class Xoshiro256 {
  public:
    using result_type = std::uint64_t;

    explicit Xoshiro256(std::uint64_t seed = 1) {
        std::uint64_t sm = seed;
        for (auto& w : s_) w = splitmix64(sm);
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<std::uint64_t>::max(); }

    result_type operator()() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform on (0, 1]; never returns 0 so log() is always finite.
    double uniform_pos() {
        const std::uint64_t bits = (*this)() >> 11;  // 53 random bits
        return (static_cast<double>(bits) + 1.0) * 0x1.0p-53;
    }

    /// Uniform on [0, 1).
    double uniform() {
        return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
    }

  private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    std::uint64_t s_[4]{};
};

/// Purpose tags keep independent sub-streams of one master seed apart.
enum class StreamTag : std::uint64_t {
    trial = 0x747269616cULL,      // per-realization fading draws
    angles = 0x616e676c65ULL,     // scenario AoA/AoD draw, fixed once
    shadowing = 0x73686164ULL,    // scenario shadow fading draw
    oracle = 0x6f7261636cULL,     // test-side sampling oracles
};

/// Derives a statistically independent stream for (master, tag, index).
/// Counter-based: stream identity depends only on the arguments, never on
/// how many other streams exist or which worker asks first.
inline Xoshiro256 derive_stream(std::uint64_t master_seed, StreamTag tag, std::uint64_t index) {
    std::uint64_t h = master_seed;
    (void)splitmix64(h);
    h ^= static_cast<std::uint64_t>(tag) * 0xD1B54A32D192ED03ULL;
    (void)splitmix64(h);
    h ^= index * 0x9E3779B97F4A7C15ULL;
    std::uint64_t seed = splitmix64(h);
    return Xoshiro256(seed);
}

/// One standard normal via Box-Muller (trig form). Self-contained on purpose:
/// std::normal_distribution output differs between standard libraries.
struct NormalSampler {
    double operator()(Xoshiro256& rng) {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = rng.uniform_pos();
        const double u2 = rng.uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double phi = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(phi);
        have_spare_ = true;
        return r * std::cos(phi);
    }

  private:
    double spare_ = 0.0;
    bool have_spare_ = false;
};

/// Standard normal without pair caching; stateless convenience.
inline double normal(Xoshiro256& rng) {
    const double u1 = rng.uniform_pos();
    const double u2 = rng.uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

/// Circularly symmetric complex normal with E|z|^2 = 1.
inline std::complex<double> complex_normal(Xoshiro256& rng) {
    const double u1 = rng.uniform_pos();
    const double u2 = rng.uniform();
    const double r = std::sqrt(-std::log(u1));  // |z| for unit total variance
    const double phi = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(phi), r * std::sin(phi)};
}

}  // namespace rdars

#endif

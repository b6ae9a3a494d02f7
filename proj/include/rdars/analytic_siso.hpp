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

#ifndef RDARS_ANALYTIC_SISO_HPP
#define RDARS_ANALYTIC_SISO_HPP

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "rdars/quadrature.hpp"
#include "rdars/units.hpp"

namespace rdars {

// Single-antenna analysis convention: alpha, beta, gamma are AMPLITUDE
// parameters. The linear per-element power gains are alpha^2 (UE-surface),
// beta^2 (surface-BS) and gamma^2 (UE-BS direct). The multi-antenna
// expressions in analytic_simo.hpp use the power-gain convention instead;
// amplitude_from_gain below converts.

inline double amplitude_from_gain(double linear_power_gain) {
    return std::sqrt(linear_power_gain);
}

/// Inputs of the single-antenna moment expressions.
struct SisoMomentInputs {
    std::size_t n_total = 0;  // N
    std::size_t a = 0;        // connected count
    double alpha = 1.0;       // UE-surface amplitude
    double beta = 1.0;        // surface-BS amplitude
    double gamma = 1.0;       // UE-BS direct amplitude
    double transmit_snr = 1.0;

    void validate() const {
        if (a > n_total) throw std::invalid_argument("connected count exceeds n_total");
        if (!(alpha > 0.0) || !(beta > 0.0) || !(gamma > 0.0))
            throw std::invalid_argument("amplitudes must be > 0");
        if (!(transmit_snr > 0.0)) throw std::invalid_argument("transmit_snr must be > 0");
    }
};

/// First four moments of the direct-link envelope |h| with h ~ CN(0, g^2):
/// (sqrt(pi)/2) g, g^2, (3 sqrt(pi)/4) g^3, 2 g^4.
inline std::array<double, 4> gamma1_moments(double gamma) {
    if (!(gamma > 0.0)) throw std::invalid_argument("amplitude must be > 0");
    const double sqrt_pi = std::sqrt(std::numbers::pi);
    return {0.5 * sqrt_pi * gamma, gamma * gamma, 0.75 * sqrt_pi * gamma * gamma * gamma,
            2.0 * gamma * gamma * gamma * gamma};
}

namespace detail {

// Moments of one envelope product |x||y| with unit amplitudes. Only pi
// enters, so the partition sums below stay constexpr.
inline constexpr double kProdM1 = std::numbers::pi / 4.0;
inline constexpr double kProdM2 = 1.0;
inline constexpr double kProdM3 = 9.0 * std::numbers::pi / 16.0;
inline constexpr double kProdM4 = 4.0;

}  // namespace detail

/// Third-moment constant of the reflected envelope sum, closed polynomial in
/// m = N - a.
inline constexpr double c3_closed(double m) {
    constexpr double pi = std::numbers::pi;
    return m * (9.0 * pi / 16.0) + m * (m - 1.0) * (3.0 * pi / 4.0) +
           m * (m - 1.0) * (m - 2.0) * (pi * pi * pi / 64.0);
}

/// Fourth-moment constant, closed polynomial in m = N - a.
inline constexpr double c4_closed(double m) {
    constexpr double pi = std::numbers::pi;
    return 4.0 * m + m * (m - 1.0) * (9.0 * pi * pi / 16.0) + 3.0 * m * (m - 1.0) +
           m * (m - 1.0) * (m - 2.0) * (6.0 * pi * pi / 16.0) +
           m * (m - 1.0) * (m - 2.0) * (m - 3.0) * (pi * pi * pi * pi / 256.0);
}

/// Same constants built term by term from the index partitions of the
/// multinomial expansion: each pattern contributes
/// (multinomial coefficient) x (number of index assignments) x (product of
/// per-element envelope moments).
inline constexpr double c3_partition(double m) {
    using namespace detail;
    const double p3 = m * kProdM3;                                   // x_i^3
    const double p21 = 3.0 * m * (m - 1.0) * kProdM2 * kProdM1;      // x_i^2 x_j
    const double p111 = m * (m - 1.0) * (m - 2.0) * kProdM1 * kProdM1 * kProdM1;
    return p3 + p21 + p111;
}

inline constexpr double c4_partition(double m) {
    using namespace detail;
    const double p4 = m * kProdM4;
    const double p31 = 4.0 * m * (m - 1.0) * kProdM3 * kProdM1;
    const double p22 = 3.0 * m * (m - 1.0) * kProdM2 * kProdM2;
    const double p211 = 6.0 * m * (m - 1.0) * (m - 2.0) * kProdM2 * kProdM1 * kProdM1;
    const double p1111 =
        m * (m - 1.0) * (m - 2.0) * (m - 3.0) * kProdM1 * kProdM1 * kProdM1 * kProdM1;
    return p4 + p31 + p22 + p211 + p1111;
}

namespace detail {

inline constexpr bool close_rel(double x, double y) {
    const double diff = x > y ? x - y : y - x;
    const double mag = (x > 0 ? x : -x) + (y > 0 ? y : -y);
    return diff <= 1e-12 * (mag > 1.0 ? mag : 1.0);
}

static_assert(close_rel(c3_closed(1.0), c3_partition(1.0)));
static_assert(close_rel(c3_closed(7.0), c3_partition(7.0)));
static_assert(close_rel(c4_closed(1.0), c4_partition(1.0)));
static_assert(close_rel(c4_closed(13.0), c4_partition(13.0)));

}  // namespace detail

/// First four moments of the reflected envelope sum over the N - a
/// reflecting elements.
inline std::array<double, 4> gamma2_moments(std::size_t n, std::size_t a, double alpha,
                                            double beta) {
    if (a > n) throw std::invalid_argument("connected count exceeds n_total");
    const double m = static_cast<double>(n - a);
    constexpr double pi = std::numbers::pi;
    const double ab = alpha * beta;
    const double ab2 = ab * ab;
    return {m * (pi / 4.0) * ab, m * (1.0 + (pi * pi / 16.0) * (m - 1.0)) * ab2,
            c3_closed(m) * ab2 * ab, c4_closed(m) * ab2 * ab2};
}

/// First two moments of the distribution gain: a Gamma(a, alpha^2) variable.
inline std::array<double, 2> gamma3_moments(std::size_t a, double alpha) {
    const double av = static_cast<double>(a);
    const double a2 = alpha * alpha;
    return {av * a2, av * (av + 1.0) * a2 * a2};
}

/// First and second moments of the received SNR.
struct SisoSnrMoments {
    double mean = 0.0;
    double second = 0.0;
};

enum class MomentRoute {
    composition,  // built from the envelope moments and independence
    printed,      // the flattened expressions, transcription typo resolved
};

/// Moments of the received SNR under optimal instantaneous phase shifts.
/// The composition route assembles E[((g1+g2)^2 + g3)^k] from the envelope
/// moments; the printed route evaluates the flattened polynomials. The two
/// agree to rounding (the flattened second moment carries the resolved
/// exponent fix on its third-moment cross term; see tests).
inline SisoSnrMoments snr_moments_siso(const SisoMomentInputs& in,
                                       MomentRoute route = MomentRoute::composition) {
    in.validate();
    const double snr = in.transmit_snr;
    constexpr double pi = std::numbers::pi;
    const double sqrt_pi = std::sqrt(pi);
    const double nn = static_cast<double>(in.n_total);
    const double av = static_cast<double>(in.a);
    const double m = nn - av;

    if (route == MomentRoute::composition) {
        const auto m1 = gamma1_moments(in.gamma);
        const auto m2 = gamma2_moments(in.n_total, in.a, in.alpha, in.beta);
        const auto m3 = gamma3_moments(in.a, in.alpha);
        const double sq = m1[1] + 2.0 * m1[0] * m2[0] + m2[1];  // E[(g1+g2)^2]
        const double quart = m1[3] + 4.0 * m1[2] * m2[0] + 6.0 * m1[1] * m2[1] +
                             4.0 * m1[0] * m2[2] + m2[3];       // E[(g1+g2)^4]
        SisoSnrMoments out;
        out.mean = snr * (sq + m3[0]);
        out.second = snr * snr * (quart + 2.0 * sq * m3[0] + m3[1]);
        return out;
    }

    const double a2 = in.alpha * in.alpha;
    const double b2 = in.beta * in.beta;
    const double g2 = in.gamma * in.gamma;
    const double ab = in.alpha * in.beta;
    SisoSnrMoments out;
    out.mean = snr * (nn * nn * (pi * pi / 16.0) * a2 * b2 +
                      a2 * b2 *
                          (nn * (1.0 - (pi * pi / 8.0) * av - pi * pi / 16.0) +
                           (pi * pi / 16.0) * av * (av + 1.0) - av) +
                      ab * in.gamma * (pi / 4.0) * sqrt_pi * m + av * a2 + g2);
    const double c3 = c3_closed(m);
    const double c4 = c4_closed(m);
    const double pair_factor = 1.0 + (pi * pi / 16.0) * (m - 1.0);
    out.second =
        snr * snr *
        (2.0 * g2 * g2 + 6.0 * m * pair_factor * g2 * a2 * b2 +
         (3.0 * pi / 4.0) * sqrt_pi * m * g2 * in.gamma * ab + c4 * a2 * a2 * b2 * b2 +
         2.0 * sqrt_pi * c3 * in.gamma * a2 * in.alpha * b2 * in.beta + 2.0 * av * g2 * a2 +
         2.0 * m * pair_factor * av * a2 * a2 * b2 +
         (pi / 2.0) * sqrt_pi * m * av * a2 * in.alpha * in.gamma * in.beta +
         av * (av + 1.0) * a2 * a2);
    return out;
}

/// Gamma SNR surrogate with the first two moments matched.
struct GammaApprox {
    double k = 1.0;  // shape
    double p = 1.0;  // scale
};

inline GammaApprox gamma_match(double mean, double second_moment) {
    if (!(mean > 0.0)) throw std::domain_error("mean must be > 0");
    const double variance = second_moment - mean * mean;
    if (!(variance > 0.0)) throw std::domain_error("second moment implies non-positive variance");
    return {mean * mean / variance, variance / mean};
}

/// Ergodic rate of the Gamma surrogate, E[log2(1 + X)], X ~ Gamma(k, p).
inline double ergodic_rate_gamma(const GammaApprox& approx) {
    return gamma_log2_expectation(approx.k, approx.p);
}

enum class BoundForm {
    derived,  // log2(1 + E[snr]) with the composition-route mean
    printed,  // the flattened bound as published, kept for curve replay
};

/// Jensen upper bound on the ergodic rate. The printed variant differs from
/// the derived mean in one cross-term coefficient (a^2 where the moment
/// composition yields a) and is retained only to replay previously published
/// curves; the derived form is the default and the one with the guaranteed
/// ordering against ergodic_rate_gamma.
inline double rate_upper_bound_siso(const SisoMomentInputs& in,
                                    BoundForm form = BoundForm::derived) {
    in.validate();
    if (form == BoundForm::derived)
        return log2_1p(snr_moments_siso(in, MomentRoute::composition).mean);
    constexpr double pi = std::numbers::pi;
    const double sqrt_pi = std::sqrt(pi);
    const double nn = static_cast<double>(in.n_total);
    const double av = static_cast<double>(in.a);
    const double m = nn - av;
    const double a2 = in.alpha * in.alpha;
    const double b2 = in.beta * in.beta;
    const double g2 = in.gamma * in.gamma;
    const double mean =
        in.transmit_snr *
        (nn * nn * (pi * pi / 16.0) * a2 * b2 +
         a2 * b2 *
             (nn * (1.0 - (pi * pi / 8.0) * av * av - pi * pi / 16.0) +
              (pi * pi / 16.0) * (av * av + av - 1.0)) +
         in.gamma * in.alpha * in.beta * (pi / 4.0) * sqrt_pi * m + av * a2 + g2);
    return log2_1p(mean);
}

/// Average received SNRs of the three architectures under the same link
/// statistics: the surface-aided system with a connected elements, the fully
/// passive surface (a = 0), and the wired remote antennas alone.
struct MeanSnrs {
    double rdars = 0.0;
    double ris = 0.0;
    double das = 0.0;
};

inline MeanSnrs mean_snrs(const SisoMomentInputs& in) {
    in.validate();
    constexpr double pi = std::numbers::pi;
    const double sqrt_pi = std::sqrt(pi);
    const double nn = static_cast<double>(in.n_total);
    const double av = static_cast<double>(in.a);
    const double m = nn - av;
    const double a2 = in.alpha * in.alpha;
    const double b2 = in.beta * in.beta;
    const double g2 = in.gamma * in.gamma;
    const double ab = in.alpha * in.beta;
    const auto reflected = [&](double cnt) {
        return cnt * (pi / 4.0) * sqrt_pi * in.gamma * ab +
               cnt * (1.0 + (pi * pi / 16.0) * (cnt - 1.0)) * a2 * b2;
    };
    MeanSnrs out;
    out.rdars = in.transmit_snr * (g2 + reflected(m) + av * a2);
    out.ris = in.transmit_snr * (g2 + reflected(nn));
    out.das = in.transmit_snr * (g2 + av * a2);
    return out;
}

/// Largest element count for which the a-connected system still beats the
/// fully passive one on average received SNR:
/// (8/pi^2)(1/beta^2 - 1) + (a+1)/2 - (2 sqrt(pi)/pi) * gamma/(alpha*beta).
inline double ris_crossover_n(double alpha, double beta, double gamma, std::size_t a) {
    if (!(alpha > 0.0) || !(beta > 0.0) || !(gamma >= 0.0))
        throw std::invalid_argument("invalid amplitudes");
    constexpr double pi = std::numbers::pi;
    return (8.0 / (pi * pi)) * (1.0 / (beta * beta) - 1.0) + (static_cast<double>(a) + 1.0) / 2.0 -
           (2.0 * std::sqrt(pi) / pi) * (gamma / (alpha * beta));
}

}  // namespace rdars

#endif

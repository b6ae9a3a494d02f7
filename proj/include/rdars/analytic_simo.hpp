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

#ifndef RDARS_ANALYTIC_SIMO_HPP
#define RDARS_ANALYTIC_SIMO_HPP

#include <array>
#include <cstddef>
#include <stdexcept>

#include "rdars/snr_engine.hpp"
#include "rdars/units.hpp"

namespace rdars {

// Multi-antenna analysis convention: alpha, beta, gamma are LINEAR per-entry
// POWER gains of the UE-surface, surface-BS and direct links (unlike the
// amplitude convention of analytic_siso.hpp). delta and epsilon are the
// Rician factors of the surface-BS and UE-surface links. The derived
// coefficients c = beta*alpha/((delta+1)(epsilon+1)) and d = alpha/(epsilon+1)
// recur throughout.

struct SimoRateInputs {
    std::size_t l_antennas = 1;
    std::size_t n_total = 0;
    std::size_t a = 0;
    double alpha = 1.0;  // UE-surface power gain
    double beta = 1.0;   // surface-BS power gain
    double gamma = 1.0;  // UE-BS direct power gain
    double delta = 0.0;  // Rician factor, surface-BS
    double epsilon = 0.0;  // Rician factor, UE-surface
    double power = 1.0;
    NoiseModel noise;
    double f_abs = 0.0;  // |f|, the coherent reflection sum magnitude

    double c_coef() const { return beta * alpha / ((delta + 1.0) * (epsilon + 1.0)); }
    double d_coef() const { return alpha / (epsilon + 1.0); }

    void validate() const {
        if (l_antennas < 1) throw std::invalid_argument("l_antennas must be >= 1");
        if (a > n_total) throw std::invalid_argument("connected count exceeds n_total");
        if (!(alpha > 0.0) || !(beta > 0.0) || !(gamma > 0.0))
            throw std::invalid_argument("link gains must be > 0");
        if (!(delta >= 0.0) || !(epsilon >= 0.0))
            throw std::invalid_argument("Rician factors must be >= 0");
        if (!(power > 0.0)) throw std::invalid_argument("power must be > 0");
        noise.validate();
        const double m = static_cast<double>(n_total - a);
        if (!(f_abs >= 0.0) || f_abs > m + 1e-9 * (m + 1.0))
            throw std::invalid_argument("|f| must lie in [0, N - a]");
    }
};

/// E[||h_tilde||^4]: fourth moment of the stacked receive vector. Flattened
/// form of the fourteen-term expectation decomposition.
inline double e_signal(const SimoRateInputs& in) {
    in.validate();
    const double l = static_cast<double>(in.l_antennas);
    const double av = static_cast<double>(in.a);
    const double m = static_cast<double>(in.n_total - in.a);
    const double de = in.delta;
    const double ep = in.epsilon;
    const double c = in.c_coef();
    const double d = in.d_coef();
    const double f2 = in.f_abs * in.f_abs;
    const double f4 = f2 * f2;
    const double g = in.gamma;

    const double braces =
        l * (de * ep) * (de * ep) * f4 +
        2.0 * de * ep * f2 *
            (2.0 * l * m * de + l * m * ep + l * m + 2.0 * l + m * ep + m + 2.0) +
        l * m * m * (2.0 * de * de + ep * ep + 2.0 * de * ep + 2.0 * de + 2.0 * ep + 1.0) +
        m * m * (ep * ep + 2.0 * de * ep + 2.0 * de + 2.0 * ep + 1.0) +
        l * m * (2.0 * de + 2.0 * ep + 1.0) + m * (2.0 * de + 2.0 * ep + 1.0);

    return l * c * c * braces +
           l * c *
               (2.0 * de * ep * f2 * ((l + 1.0) * g + av * in.alpha) +
                2.0 * m * (l + 1.0) * (ep + de + 1.0) * g) +
           2.0 * l * av * (m * c * in.alpha * (ep + de + 1.0) + in.alpha * g) +
           l * (l + 1.0) * g * g + av * d * d * ((ep + 1.0) * (ep + 1.0) * av + 2.0 * ep + 1.0);
}

/// The fourteen expectations whose sum is e_signal, in the order of the
/// fourth-moment expansion: the pure reflected-block term, the four
/// reflected/direct cross powers, the four connected-block powers, and the
/// five mixed cross terms. Each is individually checkable by sampling.
inline std::array<double, 14> e_signal_terms(const SimoRateInputs& in) {
    in.validate();
    const double l = static_cast<double>(in.l_antennas);
    const double av = static_cast<double>(in.a);
    const double m = static_cast<double>(in.n_total - in.a);
    const double de = in.delta;
    const double ep = in.epsilon;
    const double c = in.c_coef();
    const double d = in.d_coef();
    const double f2 = in.f_abs * in.f_abs;
    const double g = in.gamma;

    // Mean squared norm of the reflected block divided by L.
    const double w = c * (de * ep * f2 + m * de + m * (ep + 1.0));

    // Second moments of the scalar LoS-aligned component s and the
    // elementwise Rician mixture t across the reflecting elements.
    const double e_s4 = de * de * (ep * ep * f2 * f2 + 4.0 * ep * m * f2 + 2.0 * m * m);
    const double e_s2t2 = de * (ep * f2 * (m * (ep + 1.0) + 2.0) + m * (m - 1.0) * (ep + 1.0) +
                                m * (ep + 2.0));
    const double e_t4 = m * (ep * ep + 4.0 * ep + 2.0) + m * (m - 1.0) * (ep + 1.0) * (ep + 1.0);

    std::array<double, 14> t{};
    t[0] = c * c * (l * l * e_s4 + 2.0 * l * (l + 1.0) * e_s2t2 + l * (l + 1.0) * e_t4);
    t[1] = g * l * w;                    // reflected block against direct
    t[2] = t[1];                         // conjugate pairing, same value
    t[3] = g * g * l * (l + 1.0);        // direct-link fourth moment
    t[4] = d * d * ep * ep * av * av;    // LoS part of the connected block
    t[5] = d * d * ep * av;
    t[6] = t[5];
    t[7] = d * d * av * (av + 1.0);      // scattered part of the connected block
    t[8] = 2.0 * g * l * l * w;          // reflected x direct cross
    t[9] = 2.0 * d * ep * av * l * w;    // reflected x connected (LoS)
    t[10] = 2.0 * d * av * l * w;        // reflected x connected (scattered)
    t[11] = 2.0 * d * ep * av * g * l;   // direct x connected (LoS)
    t[12] = 2.0 * d * av * g * l;        // direct x connected (scattered)
    t[13] = 2.0 * d * d * ep * av * av;  // within-connected cross
    return t;
}

/// E[h_tilde^H R h_tilde]: mean noise-weighted power of the stacked vector.
inline double e_noise(const SimoRateInputs& in) {
    in.validate();
    const double l = static_cast<double>(in.l_antennas);
    const double av = static_cast<double>(in.a);
    const double m = static_cast<double>(in.n_total - in.a);
    const double c = in.c_coef();
    const double d = in.d_coef();
    const double f2 = in.f_abs * in.f_abs;
    return in.noise.sigma_b_sq * l *
               (f2 * c * in.delta * in.epsilon + m * c * in.delta +
                (m * c * (in.epsilon + 1.0) + in.gamma)) +
           in.noise.sigma_r_sq * av * d * (in.epsilon + 1.0);
}

/// Moment-ratio approximation of the ergodic achievable rate:
/// log2(1 + P * E[||h||^4] / E[h^H R h]).
inline double ergodic_rate_simo_approx(const SimoRateInputs& in) {
    return log2_1p(in.power * e_signal(in) / e_noise(in));
}

}  // namespace rdars

#endif

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

#ifndef RDARS_SNR_ENGINE_HPP
#define RDARS_SNR_ENGINE_HPP

#include <cmath>
#include <complex>
#include <stdexcept>

#include "rdars/channel.hpp"
#include "rdars/rdars_config.hpp"
#include "rdars/units.hpp"

namespace rdars {

/// Linear noise powers at the BS antennas and at connected surface elements.
struct NoiseModel {
    double sigma_b_sq = 1.0;
    double sigma_r_sq = 1.0;

    void validate() const {
        if (!(sigma_b_sq > 0.0) || !(sigma_r_sq > 0.0))
            throw std::invalid_argument("noise powers must be > 0");
    }
};

/// Instantaneous received SNR split into its two additive components.
/// total = transmit_snr * (reflection_gain + distribution_gain) in the
/// single-antenna equal-noise setting.
struct SnrBreakdown {
    double total = 0.0;
    double reflection_gain = 0.0;    // |h_ue_bs + h_rdars_bs^H B h_ue_rdars|^2
    double distribution_gain = 0.0;  // sum over connected elements of |h_ue_rdars|^2
};

/// Composite reflected-plus-direct scalar channel for the single-antenna BS:
/// the first (and only) entry of H B h plus the direct coefficient.
inline cplx composite_scalar_channel(const ChannelRealization& real,
                                     const RdarsConfiguration& config) {
    const cvec b = effective_reflection(config);
    cplx reflected = 0.0;
    for (std::size_t i = 0; i < config.n_total; ++i)
        reflected += real.h_rdars_bs.at(0, i) * b[i] * real.h_ue_rdars[i];
    return real.h_ue_bs[0] + reflected;
}

/// Received SNR for the single-antenna BS under MRC with equal noise powers,
/// evaluated directly from the complex channel coefficients.
inline SnrBreakdown received_snr_siso(const ChannelRealization& real,
                                      const RdarsConfiguration& config, double transmit_snr) {
    if (real.h_ue_bs.size() != 1 || real.h_rdars_bs.rows != 1)
        throw std::invalid_argument("received_snr_siso requires a single-antenna BS");
    const cplx composite = composite_scalar_channel(real, config);
    SnrBreakdown out;
    out.reflection_gain = std::norm(composite);
    for (std::size_t idx : config.connected) out.distribution_gain += std::norm(real.h_ue_rdars[idx]);
    out.total = transmit_snr * (out.reflection_gain + out.distribution_gain);
    return out;
}

/// Magnitude-aligned form of the reflection gain:
/// (|h_ue_bs| + sum over reflecting i of |h_rdars_bs[i]||h_ue_rdars[i]|)^2.
/// Equals received_snr_siso's reflection gain exactly when the phases come
/// from optimal_phases_instantaneous; kept as an independent route so sign
/// and conjugation slips in the direct path cannot go unnoticed.
inline double reflection_gain_aligned(const ChannelRealization& real,
                                      const RdarsConfiguration& config) {
    const auto mask = config.connected_mask();
    double sum = std::abs(real.h_ue_bs[0]);
    for (std::size_t i = 0; i < config.n_total; ++i) {
        if (mask[i]) continue;
        sum += std::abs(real.h_rdars_bs.at(0, i)) * std::abs(real.h_ue_rdars[i]);
    }
    return sum * sum;
}

/// Stacked receive vector: top L entries H B h + d, bottom a entries the
/// connected-element rows of h.
inline cvec composite_channel_simo(const ChannelRealization& real,
                                   const RdarsConfiguration& config) {
    const std::size_t l = real.h_rdars_bs.rows;
    const std::size_t n = real.h_rdars_bs.cols;
    if (real.h_ue_rdars.size() != n || real.h_ue_bs.size() != l || config.n_total != n)
        throw std::invalid_argument("realization dimensions are inconsistent");
    const cvec b = effective_reflection(config);
    cvec bh(n);
    for (std::size_t i = 0; i < n; ++i) bh[i] = b[i] * real.h_ue_rdars[i];
    cvec h_tilde(l + config.connected_count());
    for (std::size_t r = 0; r < l; ++r) {
        cplx acc = real.h_ue_bs[r];
        for (std::size_t i = 0; i < n; ++i) acc += real.h_rdars_bs.at(r, i) * bh[i];
        h_tilde[r] = acc;
    }
    std::size_t k = l;
    for (std::size_t idx : config.connected) h_tilde[k++] = real.h_ue_rdars[idx];
    return h_tilde;
}

/// Instantaneous MRC rate log2(1 + P*||h||^4 / (h^H R h)) with the block
/// noise covariance R = blk(sigma_b^2 I_L, sigma_r^2 I_a). The squared norm
/// is accumulated once and squared, avoiding re-summation cancellation.
inline double mrc_rate_simo(const cvec& h_tilde, double power, const NoiseModel& noise,
                            std::size_t a) {
    noise.validate();
    if (h_tilde.size() < a) throw std::invalid_argument("h_tilde shorter than connected count");
    const std::size_t l = h_tilde.size() - a;
    double norm_sq = 0.0;
    double quad = 0.0;
    for (std::size_t i = 0; i < h_tilde.size(); ++i) {
        const double m = std::norm(h_tilde[i]);
        norm_sq += m;
        quad += (i < l ? noise.sigma_b_sq : noise.sigma_r_sq) * m;
    }
    if (norm_sq == 0.0) return 0.0;
    return log2_1p(power * norm_sq * norm_sq / quad);
}

}  // namespace rdars

#endif

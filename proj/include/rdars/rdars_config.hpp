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

#ifndef RDARS_RDARS_CONFIG_HPP
#define RDARS_RDARS_CONFIG_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "rdars/channel.hpp"

namespace rdars {

/// Element-mode assignment plus per-element reflection phases. `connected`
/// holds 0-based element indices operating as wired remote antennas; their
/// phase entries are kept at zero and excluded from all reflection math.
struct RdarsConfiguration {
    std::size_t n_total = 0;
    std::vector<std::size_t> connected;  // sorted, unique
    std::vector<double> phases;          // length n_total, radians, unwrapped

    std::size_t connected_count() const { return connected.size(); }
    std::size_t reflecting_count() const { return n_total - connected.size(); }

    std::vector<char> connected_mask() const {
        std::vector<char> mask(n_total, 0);
        for (std::size_t idx : connected) mask[idx] = 1;
        return mask;
    }

    void validate() const {
        if (phases.size() != n_total)
            throw std::invalid_argument("phases length must equal n_total");
        if (connected.size() > n_total)
            throw std::invalid_argument("connected count exceeds n_total");
        if (!std::is_sorted(connected.begin(), connected.end()))
            throw std::invalid_argument("connected indices must be sorted");
        for (std::size_t i = 0; i < connected.size(); ++i) {
            if (connected[i] >= n_total)
                throw std::invalid_argument("connected index out of range");
            if (i > 0 && connected[i] == connected[i - 1])
                throw std::invalid_argument("connected indices must be unique");
        }
        for (double p : phases)
            if (!std::isfinite(p)) throw std::invalid_argument("phases must be finite");
    }

    static RdarsConfiguration make(std::size_t n_total, std::size_t connected_count,
                                   std::vector<double> phases = {}) {
        RdarsConfiguration cfg;
        cfg.n_total = n_total;
        cfg.connected.resize(connected_count);
        for (std::size_t i = 0; i < connected_count; ++i) cfg.connected[i] = i;
        cfg.phases = phases.empty() ? std::vector<double>(n_total, 0.0) : std::move(phases);
        cfg.validate();
        return cfg;
    }
};

/// Per-element geometric phase of the incident-minus-departing LoS ramp.
struct AlignmentPhases {
    std::vector<double> zeta;
};

/// Diagonal of the effective reflection matrix: exp(j*phase) on reflecting
/// elements, zero on connected ones.
inline cvec effective_reflection(const RdarsConfiguration& config) {
    config.validate();
    cvec b(config.n_total);
    for (std::size_t i = 0; i < config.n_total; ++i) b[i] = std::polar(1.0, config.phases[i]);
    for (std::size_t idx : config.connected) b[idx] = 0.0;
    return b;
}

/// Phase shifts that co-phase every reflected path with the direct link:
/// arg(h_ue_bs) + arg(h_rdars_bs[i]) - arg(h_ue_rdars[i]) per reflecting
/// element. arg(0) is taken as 0, so zero-magnitude coefficients never
/// poison the computation. Connected entries are set to 0.
inline std::vector<double> optimal_phases_instantaneous(cplx h_ue_bs, const cvec& h_rdars_bs,
                                                        const cvec& h_ue_rdars,
                                                        const std::vector<std::size_t>& connected) {
    if (h_rdars_bs.size() != h_ue_rdars.size())
        throw std::invalid_argument("channel vector lengths differ");
    const std::size_t n = h_rdars_bs.size();
    std::vector<char> mask(n, 0);
    for (std::size_t idx : connected) {
        if (idx >= n) throw std::invalid_argument("connected index out of range");
        mask[idx] = 1;
    }
    const double direct = (h_ue_bs == cplx{}) ? 0.0 : std::arg(h_ue_bs);
    std::vector<double> phases(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (mask[i]) continue;
        const double a_rb = (h_rdars_bs[i] == cplx{}) ? 0.0 : std::arg(h_rdars_bs[i]);
        const double a_ur = (h_ue_rdars[i] == cplx{}) ? 0.0 : std::arg(h_ue_rdars[i]);
        phases[i] = direct + a_rb - a_ur;
    }
    return phases;
}

/// Geometric phase ramp between the incident (UE-side) and departing
/// (BS-side) LoS directions across the surface. A non-square surface uses
/// the same row/column split as the steering vector, with array_cols taking
/// the place of sqrt(N).
inline AlignmentPhases alignment_zeta(const NodeGeometry& rdars_geometry, const AngleSet& ue_angles,
                                      const AngleSet& bs_departure_angles) {
    rdars_geometry.validate();
    const std::size_t n = rdars_geometry.count();
    const std::size_t cols = rdars_geometry.array_cols;
    const double k = 2.0 * std::numbers::pi * rdars_geometry.element_spacing_ratio;
    const double row_step = std::sin(ue_angles.azimuth) * std::sin(ue_angles.elevation) -
                            std::sin(bs_departure_angles.azimuth) * std::sin(bs_departure_angles.elevation);
    const double col_step = std::cos(ue_angles.elevation) - std::cos(bs_departure_angles.elevation);
    AlignmentPhases out;
    out.zeta.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        out.zeta[i] =
            k * (static_cast<double>(i / cols) * row_step + static_cast<double>(i % cols) * col_step);
    return out;
}

/// Phases that achieve |f| = N - a: the negated geometric ramp.
inline std::vector<double> aligned_phases(const AlignmentPhases& zeta) {
    std::vector<double> phases(zeta.zeta.size());
    for (std::size_t i = 0; i < phases.size(); ++i) phases[i] = -zeta.zeta[i];
    return phases;
}

/// Coherent reflection sum f = sum over reflecting elements of
/// exp(j*(zeta_n + phase_n)). |f| <= N - a with equality under alignment.
inline cplx f_value(const RdarsConfiguration& config, const AlignmentPhases& zeta) {
    config.validate();
    if (zeta.zeta.size() != config.n_total)
        throw std::invalid_argument("zeta length must equal n_total");
    const auto mask = config.connected_mask();
    cplx f = 0.0;
    for (std::size_t i = 0; i < config.n_total; ++i) {
        if (mask[i]) continue;
        f += std::polar(1.0, zeta.zeta[i] + config.phases[i]);
    }
    return f;
}

}  // namespace rdars

#endif

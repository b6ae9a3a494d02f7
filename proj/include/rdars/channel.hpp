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

#ifndef RDARS_CHANNEL_HPP
#define RDARS_CHANNEL_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "rdars/rng.hpp"
#include "rdars/units.hpp"

namespace rdars {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;

/// Dense row-major complex matrix; large enough for L x N channel blocks,
/// small enough not to warrant a linear algebra dependency.
struct CMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    cvec data;

    CMatrix() = default;
    CMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}

    cplx& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    const cplx& at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

/// Log-distance path loss parameters: reference loss C0 at 1 m, decay
/// exponent, and log-normal shadowing spread.
struct PathLossParams {
    double c0_db = 30.0;
    double exponent = 2.0;
    double shadow_sigma_db = 0.0;

    void validate() const {
        if (!(exponent > 0.0)) throw std::invalid_argument("path loss exponent must be > 0");
        if (!(shadow_sigma_db >= 0.0)) throw std::invalid_argument("shadow_sigma_db must be >= 0");
        if (!std::isfinite(c0_db)) throw std::invalid_argument("c0_db must be finite");
    }
};

/// Position plus uniform planar array layout of one node.
struct NodeGeometry {
    double position_m[3] = {0.0, 0.0, 0.0};
    std::size_t array_rows = 1;
    std::size_t array_cols = 1;
    double element_spacing_ratio = 0.5;  // d_s / lambda

    std::size_t count() const { return array_rows * array_cols; }

    void validate() const {
        if (count() < 1) throw std::invalid_argument("array must hold at least one element");
        if (!(element_spacing_ratio >= 0.0))
            throw std::invalid_argument("element_spacing_ratio must be >= 0");
    }
};

inline double distance_m(const NodeGeometry& a, const NodeGeometry& b) {
    const double dx = a.position_m[0] - b.position_m[0];
    const double dy = a.position_m[1] - b.position_m[1];
    const double dz = a.position_m[2] - b.position_m[2];
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

/// Azimuth/elevation pair in radians, stored un-normalized.
struct AngleSet {
    double azimuth = 0.0;
    double elevation = 0.0;
};

/// Statistical description of one fading link. `gain` is the linear average
/// power per entry; `rician_factor` of zero means Rayleigh. LoS angles must
/// be present exactly when the Rician factor is positive.
struct LinkStatistics {
    double gain = 1.0;
    double rician_factor = 0.0;
    std::optional<AngleSet> los_angles_in;
    std::optional<AngleSet> los_angles_out;

    void validate() const {
        if (!(gain > 0.0)) throw std::invalid_argument("link gain must be > 0");
        if (!(rician_factor >= 0.0)) throw std::invalid_argument("rician_factor must be >= 0");
        const bool has_los = los_angles_in.has_value() || los_angles_out.has_value();
        if ((rician_factor > 0.0) != has_los)
            throw std::invalid_argument("LoS angles must be present iff rician_factor > 0");
    }
};

/// One fading draw of the three links. `h_ue_bs` has length L (one entry for
/// the single-antenna case). `h_rdars_bs` holds the forward surface-to-BS
/// matrix entering the stacked model as H B h + d; the single-antenna
/// co-phasing formula consumes its conjugated first row.
struct ChannelRealization {
    CMatrix h_rdars_bs;  // L x N
    cvec h_ue_rdars;     // N
    cvec h_ue_bs;        // L

    bool operator==(const ChannelRealization& o) const {
        return h_rdars_bs.rows == o.h_rdars_bs.rows && h_rdars_bs.cols == o.h_rdars_bs.cols &&
               h_rdars_bs.data == o.h_rdars_bs.data && h_ue_rdars == o.h_ue_rdars &&
               h_ue_bs == o.h_ue_bs;
    }
};

/// Log-distance path loss in dB at `distance_m`, with the shadow term added
/// in dB domain.
inline double path_loss_db(const PathLossParams& params, double distance_m, double shadow_db) {
    params.validate();
    if (!(distance_m > 0.0)) throw std::domain_error("distance must be > 0");
    return params.c0_db + 10.0 * params.exponent * std::log10(distance_m) + shadow_db;
}

/// UPA steering vector. Entry n (0-based) carries phase
/// 2*pi*spacing*(floor(n/cols)*sin(az)*sin(el) + (n%cols)*cos(el));
/// every entry has unit modulus. The 0-based row/column split over
/// `array_cols` is the frozen index convention.
inline cvec array_response(const NodeGeometry& geometry, const AngleSet& angles) {
    geometry.validate();
    const std::size_t n = geometry.count();
    const std::size_t cols = geometry.array_cols;
    const double k = 2.0 * std::numbers::pi * geometry.element_spacing_ratio;
    const double row_step = std::sin(angles.azimuth) * std::sin(angles.elevation);
    const double col_step = std::cos(angles.elevation);
    cvec v(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double phase =
            k * (static_cast<double>(i / cols) * row_step + static_cast<double>(i % cols) * col_step);
        v[i] = std::polar(1.0, phase);
    }
    return v;
}

/// i.i.d. circularly symmetric complex Gaussian entries with per-entry
/// variance `gain` (gain/2 in each real component).
inline cvec sample_rayleigh(Xoshiro256& rng, std::size_t length, double gain) {
    if (!(gain > 0.0)) throw std::invalid_argument("gain must be > 0");
    const double scale = std::sqrt(gain);
    cvec v(length);
    for (auto& z : v) z = scale * complex_normal(rng);
    return v;
}

/// Rician draw: sqrt(gain/(K+1)) * (sqrt(K)*los + W), W i.i.d. unit-variance
/// complex Gaussian. `los` must be rows x cols with unit-modulus entries.
inline CMatrix sample_rician(Xoshiro256& rng, std::size_t rows, std::size_t cols,
                             const LinkStatistics& stats, const CMatrix& los) {
    stats.validate();
    const double k = stats.rician_factor;
    if (k > 0.0 && (los.rows != rows || los.cols != cols))
        throw std::invalid_argument("LoS matrix dimensions do not match requested draw");
    CMatrix out(rows, cols);
    const double nlos_scale = std::sqrt(stats.gain / (k + 1.0));
    const double los_scale = nlos_scale * std::sqrt(k);
    for (std::size_t i = 0; i < rows * cols; ++i) {
        out.data[i] = nlos_scale * complex_normal(rng);
        if (k > 0.0) out.data[i] += los_scale * los.data[i];
    }
    return out;
}

}  // namespace rdars

#endif

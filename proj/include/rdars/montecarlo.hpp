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

#ifndef RDARS_MONTECARLO_HPP
#define RDARS_MONTECARLO_HPP

#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <thread>
#include <vector>

#include "rdars/scenario.hpp"
#include "rdars/snr_engine.hpp"

namespace rdars {

enum class SystemVariant {
    rdars,       // a connected elements, N - a reflecting
    ris,         // fully passive surface, a forced to 0
    das,         // reflection path zeroed, a connected elements kept
    no_surface,  // direct link only
};

inline const char* to_string(SystemVariant s) {
    switch (s) {
        case SystemVariant::rdars: return "rdars";
        case SystemVariant::ris: return "ris";
        case SystemVariant::das: return "das";
        case SystemVariant::no_surface: return "no_surface";
    }
    return "?";
}

enum class Provenance { monte_carlo, closed_form, upper_bound };

inline const char* to_string(Provenance p) {
    switch (p) {
        case Provenance::monte_carlo: return "monte-carlo";
        case Provenance::closed_form: return "closed-form";
        case Provenance::upper_bound: return "upper-bound";
    }
    return "?";
}

/// A rate value with its uncertainty and origin.
struct RateEstimate {
    double mean = 0.0;
    double ci_halfwidth_95 = 0.0;
    std::size_t n_trials = 0;
    Provenance provenance = Provenance::monte_carlo;
};

/// One simulation job: scenario, phase design, system variant, trial budget.
struct Campaign {
    Scenario scenario;
    PhasePolicy config_policy = PhasePolicy::statistical_aligned;
    SystemVariant system = SystemVariant::rdars;
    std::size_t n_trials = 10000;
    std::uint64_t master_seed = 1;
    std::size_t parallelism = 0;  // 0 = hardware concurrency

    void validate() const {
        if (n_trials < 1) throw std::invalid_argument("n_trials must be >= 1");
        if (!scenario.derived.ready) throw std::logic_error("scenario not prepared");
    }
};

inline Campaign make_campaign(const Scenario& s, SystemVariant system = SystemVariant::rdars) {
    Campaign c;
    c.scenario = s;
    c.config_policy = s.phase_policy;
    c.system = system;
    c.n_trials = s.trials;
    c.master_seed = s.seed;
    c.parallelism = s.parallelism;
    return c;
}

namespace detail {

/// Neumaier compensated accumulator; the reduction order is fixed by trial
/// index, so sums are bit-identical under any worker schedule.
struct Neumaier {
    double sum = 0.0;
    double comp = 0.0;

    void add(double v) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

inline constexpr std::size_t kChunkTrials = 1024;

/// Runs fn(trial) for trial in [0, n) and returns per-quantity sums of the
/// K outputs and their squares, reduced in fixed chunk order.
template <std::size_t K, class Fn>
inline std::array<std::array<double, K>, 2> chunked_sums(std::size_t n, std::size_t parallelism,
                                                         const Fn& fn) {
    const std::size_t n_chunks = (n + kChunkTrials - 1) / kChunkTrials;
    std::vector<std::array<std::array<double, K>, 2>> partial(n_chunks);

    std::size_t workers = parallelism == 0 ? std::thread::hardware_concurrency() : parallelism;
    if (workers == 0) workers = 1;
    workers = std::min(workers, n_chunks);

    std::atomic<std::size_t> next{0};
    const auto work = [&]() {
        for (;;) {
            const std::size_t chunk = next.fetch_add(1);
            if (chunk >= n_chunks) return;
            const std::size_t begin = chunk * kChunkTrials;
            const std::size_t end = std::min(begin + kChunkTrials, n);
            std::array<Neumaier, K> acc{};
            std::array<Neumaier, K> acc_sq{};
            std::array<double, K> vals{};
            for (std::size_t t = begin; t < end; ++t) {
                fn(t, vals);
                for (std::size_t q = 0; q < K; ++q) {
                    acc[q].add(vals[q]);
                    acc_sq[q].add(vals[q] * vals[q]);
                }
            }
            for (std::size_t q = 0; q < K; ++q) {
                partial[chunk][0][q] = acc[q].value();
                partial[chunk][1][q] = acc_sq[q].value();
            }
        }
    };

    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    std::array<std::array<double, K>, 2> out{};
    for (std::size_t s = 0; s < 2; ++s) {
        std::array<Neumaier, K> total{};
        for (std::size_t c = 0; c < n_chunks; ++c)
            for (std::size_t q = 0; q < K; ++q) total[q].add(partial[c][s][q]);
        for (std::size_t q = 0; q < K; ++q) out[s][q] = total[q].value();
    }
    return out;
}

inline constexpr double kZ95 = 1.959963984540054;

inline std::vector<std::size_t> first_connected(std::size_t a) {
    std::vector<std::size_t> idx(a);
    for (std::size_t i = 0; i < a; ++i) idx[i] = i;
    return idx;
}

}  // namespace detail

/// Instantaneous achievable rate of one realization under the given system
/// variant and phase policy.
inline double instantaneous_rate(const Scenario& s, SystemVariant system, PhasePolicy policy,
                                 const ChannelRealization& real) {
    const double power = dbm_to_watts(s.transmit_power_dbm);
    NoiseModel noise{dbm_to_watts(s.noise_bs_dbm), dbm_to_watts(s.noise_rdars_dbm)};
    const std::size_t l = s.l_antennas();
    const std::size_t n = s.n_total();

    if (system == SystemVariant::no_surface) return mrc_rate_simo(real.h_ue_bs, power, noise, 0);

    if (system == SystemVariant::das) {
        const std::size_t a = s.connected_count;
        cvec h_tilde(l + a);
        for (std::size_t r = 0; r < l; ++r) h_tilde[r] = real.h_ue_bs[r];
        for (std::size_t i = 0; i < a; ++i) h_tilde[l + i] = real.h_ue_rdars[i];
        return mrc_rate_simo(h_tilde, power, noise, a);
    }

    const std::size_t a = (system == SystemVariant::ris) ? 0 : s.connected_count;
    RdarsConfiguration config;
    config.n_total = n;
    config.connected = detail::first_connected(a);
    switch (policy) {
        case PhasePolicy::optimal_instantaneous: {
            // For a multi-antenna BS the co-phasing target is antenna 0.
            // The phase formula works in the conjugated-row convention.
            cvec h_rb_row(n);
            for (std::size_t i = 0; i < n; ++i) h_rb_row[i] = std::conj(real.h_rdars_bs.at(0, i));
            config.phases = optimal_phases_instantaneous(real.h_ue_bs[0], h_rb_row,
                                                         real.h_ue_rdars, config.connected);
            break;
        }
        case PhasePolicy::statistical_aligned:
            config.phases = aligned_phases(s.derived.zeta);
            break;
        case PhasePolicy::identity:
            config.phases.assign(n, 0.0);
            break;
    }
    const cvec h_tilde = composite_channel_simo(real, config);
    return mrc_rate_simo(h_tilde, power, noise, a);
}

/// Sample-mean rate over independent realizations. Per-trial RNG streams
/// derive from (master_seed, trial index), and the reduction follows a fixed
/// trial order, so the result is byte-identical for any parallelism.
inline RateEstimate estimate_rate(const Campaign& campaign) {
    campaign.validate();
    const auto sums = detail::chunked_sums<1>(
        campaign.n_trials, campaign.parallelism, [&](std::size_t trial, std::array<double, 1>& out) {
            Xoshiro256 rng = derive_stream(campaign.master_seed, StreamTag::trial, trial);
            const ChannelRealization real = draw_realization(campaign.scenario, rng);
            out[0] = instantaneous_rate(campaign.scenario, campaign.system, campaign.config_policy, real);
        });
    const double n = static_cast<double>(campaign.n_trials);
    RateEstimate est;
    est.n_trials = campaign.n_trials;
    est.provenance = Provenance::monte_carlo;
    est.mean = sums[0][0] / n;
    if (campaign.n_trials > 1) {
        const double var = std::max(0.0, (sums[1][0] - n * est.mean * est.mean) / (n - 1.0));
        est.ci_halfwidth_95 = detail::kZ95 * std::sqrt(var / n);
    }
    return est;
}

/// A sample moment with its standard error.
struct MomentEstimate {
    double value = 0.0;
    double std_error = 0.0;
};

namespace detail {

template <std::size_t K, class Fn>
inline std::array<MomentEstimate, K> moment_estimates(std::size_t n_trials, std::size_t parallelism,
                                                      const Fn& fn) {
    const auto sums = chunked_sums<K>(n_trials, parallelism, fn);
    const double n = static_cast<double>(n_trials);
    std::array<MomentEstimate, K> out;
    for (std::size_t q = 0; q < K; ++q) {
        out[q].value = sums[0][q] / n;
        if (n_trials > 1) {
            const double var = std::max(0.0, (sums[1][q] - n * out[q].value * out[q].value) / (n - 1.0));
            out[q].std_error = std::sqrt(var / n);
        }
    }
    return out;
}

/// Envelope of one unit-variance complex Gaussian, drawn from the uniform
/// magnitude law directly. Deliberately avoids the Box-Muller sampler used
/// by the channel module so oracle and implementation stay independent.
inline double unit_envelope(Xoshiro256& rng) { return std::sqrt(-std::log(rng.uniform_pos())); }

}  // namespace detail

/// Sample moments 1..4 of the direct-link envelope at amplitude `gamma`.
inline std::array<MomentEstimate, 4> empirical_gamma1_moments(double gamma, std::size_t n_trials,
                                                              std::uint64_t seed,
                                                              std::size_t parallelism = 0) {
    return detail::moment_estimates<4>(n_trials, parallelism,
                                       [&](std::size_t trial, std::array<double, 4>& out) {
                                           Xoshiro256 rng = derive_stream(seed, StreamTag::oracle, trial);
                                           const double x = gamma * detail::unit_envelope(rng);
                                           out[0] = x;
                                           out[1] = x * x;
                                           out[2] = out[1] * x;
                                           out[3] = out[1] * out[1];
                                       });
}

/// Sample moments 1..4 of the reflected envelope sum over N - a elements.
inline std::array<MomentEstimate, 4> empirical_gamma2_moments(std::size_t n, std::size_t a,
                                                              double alpha, double beta,
                                                              std::size_t n_trials,
                                                              std::uint64_t seed,
                                                              std::size_t parallelism = 0) {
    if (a > n) throw std::invalid_argument("connected count exceeds n_total");
    const std::size_t m = n - a;
    return detail::moment_estimates<4>(
        n_trials, parallelism, [&](std::size_t trial, std::array<double, 4>& out) {
            Xoshiro256 rng = derive_stream(seed, StreamTag::oracle, trial);
            double s = 0.0;
            for (std::size_t i = 0; i < m; ++i)
                s += alpha * beta * detail::unit_envelope(rng) * detail::unit_envelope(rng);
            out[0] = s;
            out[1] = s * s;
            out[2] = out[1] * s;
            out[3] = out[1] * out[1];
        });
}

/// Sample moments 1..2 of the distribution gain over a connected elements.
inline std::array<MomentEstimate, 2> empirical_gamma3_moments(std::size_t a, double alpha,
                                                              std::size_t n_trials,
                                                              std::uint64_t seed,
                                                              std::size_t parallelism = 0) {
    return detail::moment_estimates<2>(n_trials, parallelism,
                                       [&](std::size_t trial, std::array<double, 2>& out) {
                                           Xoshiro256 rng = derive_stream(seed, StreamTag::oracle, trial);
                                           double s = 0.0;
                                           for (std::size_t i = 0; i < a; ++i)
                                               s += alpha * alpha * (-std::log(rng.uniform_pos()));
                                           out[0] = s;
                                           out[1] = s * s;
                                       });
}

/// One-pass sampling estimates of the fourteen fourth-moment terms, the
/// stacked-vector fourth moment, and the noise quadratic form for the
/// multi-antenna model. Uses the scenario's frozen LoS geometry; connected
/// elements are the leading indices; reflection phases follow the scenario
/// policy (a fixed-phase policy is required).
struct SimoMomentSamples {
    std::array<MomentEstimate, 14> terms;
    MomentEstimate signal_fourth;  // E[||h_tilde||^4]
    MomentEstimate noise_quad;     // E[h_tilde^H R h_tilde]
};

inline SimoMomentSamples empirical_simo_fourth_moments(const Scenario& s, std::size_t n_trials,
                                                       std::uint64_t seed,
                                                       std::size_t parallelism = 0) {
    if (!s.derived.ready) throw std::logic_error("scenario not prepared");
    if (s.phase_policy == PhasePolicy::optimal_instantaneous)
        throw std::invalid_argument("fourth-moment sampling requires a fixed phase policy");
    const std::size_t l = s.l_antennas();
    const std::size_t n = s.n_total();
    const std::size_t a = s.connected_count;
    const double de = s.rician_delta;
    const double ep = s.rician_epsilon;
    const double g_rb = s.derived.gain_rdars_bs;
    const double g_ur = s.derived.gain_ue_rdars;
    const double g_ub = s.derived.gain_ue_bs;
    const double d_coef = g_ur / (ep + 1.0);
    const NoiseModel noise{dbm_to_watts(s.noise_bs_dbm), dbm_to_watts(s.noise_rdars_dbm)};

    // Fixed reflection coefficients b_i (zero on connected elements).
    cvec b(n, cplx{0.0, 0.0});
    for (std::size_t i = a; i < n; ++i) {
        const double phase =
            (s.phase_policy == PhasePolicy::statistical_aligned) ? -s.derived.zeta.zeta[i] : 0.0;
        b[i] = std::polar(1.0, phase);
    }

    const auto sums = detail::chunked_sums<16>(n_trials, parallelism, [&](std::size_t trial,
                                                                          std::array<double, 16>& out) {
        Xoshiro256 rng = derive_stream(seed, StreamTag::oracle, trial);
        // Scattered components drawn with unit variance; scalings applied on
        // composition so the LoS/NLoS split needed by the per-term estimands
        // stays available.
        CMatrix h_rb_nlos(l, n);
        for (auto& z : h_rb_nlos.data) z = complex_normal(rng);
        cvec h_ur_nlos(n);
        for (auto& z : h_ur_nlos) z = complex_normal(rng);
        cvec direct(l);
        for (auto& z : direct) z = std::sqrt(g_ub) * complex_normal(rng);

        // h = sqrt(gain/(eps+1)) (sqrt(eps) los + nlos); B h folds the
        // reflection coefficients.
        const double ur_nlos_scale = std::sqrt(g_ur / (ep + 1.0));
        const double ur_los_scale = ur_nlos_scale * std::sqrt(ep);
        cvec bh(n);
        for (std::size_t i = 0; i < n; ++i) {
            const cplx h_i =
                ur_nlos_scale * h_ur_nlos[i] + ur_los_scale * s.derived.steer_rdars_arr[i];
            bh[i] = b[i] * h_i;
        }

        const double rb_nlos_scale = std::sqrt(g_rb / (de + 1.0));
        const double rb_los_scale = rb_nlos_scale * std::sqrt(de);
        // hb = H B h with H = rb_nlos_scale * nlos + rb_los_scale * los.
        cplx dep_dot = 0.0;  // steer_dep^H (B h)
        for (std::size_t i = 0; i < n; ++i)
            dep_dot += std::conj(s.derived.steer_rdars_dep[i]) * bh[i];
        cvec hb(l);
        for (std::size_t r = 0; r < l; ++r) {
            cplx acc = 0.0;
            for (std::size_t i = 0; i < n; ++i) acc += h_rb_nlos.at(r, i) * bh[i];
            hb[r] = rb_nlos_scale * acc + rb_los_scale * s.derived.steer_bs[r] * dep_dot;
        }

        double hb_sq = 0.0;
        for (const auto& z : hb) hb_sq += std::norm(z);
        double d_sq = 0.0;
        for (const auto& z : direct) d_sq += std::norm(z);
        cplx hb_dot_d = 0.0;
        for (std::size_t r = 0; r < l; ++r) hb_dot_d += std::conj(hb[r]) * direct[r];

        // Connected-block quadratic forms of the LoS and scattered parts.
        double los_quad = 0.0;      // los^H A^H A los  (= a exactly)
        double nlos_quad = 0.0;     // nlos^H A^H A nlos
        cplx cross_quad = 0.0;      // los^H A^H A nlos
        for (std::size_t i = 0; i < a; ++i) {
            los_quad += std::norm(s.derived.steer_rdars_arr[i]);
            nlos_quad += std::norm(h_ur_nlos[i]);
            cross_quad += std::conj(s.derived.steer_rdars_arr[i]) * h_ur_nlos[i];
        }

        out[0] = hb_sq * hb_sq;
        out[1] = std::norm(hb_dot_d);
        out[2] = out[1];
        out[3] = d_sq * d_sq;
        out[4] = d_coef * d_coef * ep * ep * los_quad * los_quad;
        out[5] = d_coef * d_coef * ep * std::norm(cross_quad);
        out[6] = out[5];
        out[7] = d_coef * d_coef * nlos_quad * nlos_quad;
        out[8] = 2.0 * hb_sq * d_sq;
        out[9] = 2.0 * d_coef * ep * hb_sq * los_quad;
        out[10] = 2.0 * d_coef * hb_sq * nlos_quad;
        out[11] = 2.0 * d_coef * ep * d_sq * los_quad;
        out[12] = 2.0 * d_coef * d_sq * nlos_quad;
        out[13] = 2.0 * d_coef * d_coef * ep * los_quad * nlos_quad;

        // Full stacked vector for the totals.
        double h_tilde_sq = 0.0;
        double quad = 0.0;
        for (std::size_t r = 0; r < l; ++r) {
            const double m2 = std::norm(hb[r] + direct[r]);
            h_tilde_sq += m2;
            quad += noise.sigma_b_sq * m2;
        }
        for (std::size_t i = 0; i < a; ++i) {
            const cplx h_i =
                ur_nlos_scale * h_ur_nlos[i] + ur_los_scale * s.derived.steer_rdars_arr[i];
            const double m2 = std::norm(h_i);
            h_tilde_sq += m2;
            quad += noise.sigma_r_sq * m2;
        }
        out[14] = h_tilde_sq * h_tilde_sq;
        out[15] = quad;
    });

    const double n_d = static_cast<double>(n_trials);
    SimoMomentSamples out;
    const auto fill = [&](std::size_t q) {
        MomentEstimate e;
        e.value = sums[0][q] / n_d;
        if (n_trials > 1) {
            const double var = std::max(0.0, (sums[1][q] - n_d * e.value * e.value) / (n_d - 1.0));
            e.std_error = std::sqrt(var / n_d);
        }
        return e;
    };
    for (std::size_t q = 0; q < 14; ++q) out.terms[q] = fill(q);
    out.signal_fourth = fill(14);
    out.noise_quad = fill(15);
    return out;
}

/// Selector for the generic empirical-moment entry point.
struct MomentSelector {
    enum class Kind { gamma1, gamma2, gamma3, signal_fourth, noise_quad, term } kind;
    int term_index = 0;  // 1-based, for Kind::term
};

/// Sample moments of the selected quantity under the scenario's link
/// statistics. Envelope selectors use the single-antenna amplitude
/// convention; the fourth-moment selectors use the multi-antenna model.
inline std::vector<MomentEstimate> empirical_moments(const Scenario& s, MomentSelector selector,
                                                     std::size_t n_trials, std::uint64_t seed) {
    if (!s.derived.ready) throw std::logic_error("scenario not prepared");
    using Kind = MomentSelector::Kind;
    switch (selector.kind) {
        case Kind::gamma1: {
            const auto r = empirical_gamma1_moments(amplitude_from_gain(s.derived.gain_ue_bs),
                                                    n_trials, seed, s.parallelism);
            return {r.begin(), r.end()};
        }
        case Kind::gamma2: {
            const auto r = empirical_gamma2_moments(
                s.n_total(), s.connected_count, amplitude_from_gain(s.derived.gain_ue_rdars),
                amplitude_from_gain(s.derived.gain_rdars_bs), n_trials, seed, s.parallelism);
            return {r.begin(), r.end()};
        }
        case Kind::gamma3: {
            const auto r =
                empirical_gamma3_moments(s.connected_count, amplitude_from_gain(s.derived.gain_ue_rdars),
                                         n_trials, seed, s.parallelism);
            return {r.begin(), r.end()};
        }
        case Kind::signal_fourth:
            return {empirical_simo_fourth_moments(s, n_trials, seed, s.parallelism).signal_fourth};
        case Kind::noise_quad:
            return {empirical_simo_fourth_moments(s, n_trials, seed, s.parallelism).noise_quad};
        case Kind::term: {
            if (selector.term_index < 1 || selector.term_index > 14)
                throw std::invalid_argument("term index must be in 1..14");
            const auto r = empirical_simo_fourth_moments(s, n_trials, seed, s.parallelism);
            return {r.terms[static_cast<std::size_t>(selector.term_index - 1)]};
        }
    }
    throw std::invalid_argument("unknown selector");
}

enum class SweepAxis { n_elements, connected, power_dbm, bs_antennas, rician_delta };

inline const char* to_string(SweepAxis a) {
    switch (a) {
        case SweepAxis::n_elements: return "n_elements";
        case SweepAxis::connected: return "connected";
        case SweepAxis::power_dbm: return "power_dbm";
        case SweepAxis::bs_antennas: return "bs_antennas";
        case SweepAxis::rician_delta: return "rician_delta";
    }
    return "?";
}

/// Splits `count` into the most nearly square rows x cols factorization.
inline void set_array_count(NodeGeometry& geom, std::size_t count) {
    std::size_t rows = static_cast<std::size_t>(std::sqrt(static_cast<double>(count)));
    while (rows > 1 && count % rows != 0) --rows;
    if (rows == 0) rows = 1;
    geom.array_rows = rows;
    geom.array_cols = count / rows;
}

/// Applies one sweep-axis value to a scenario and re-derives its frozen
/// quantities.
inline Scenario apply_axis(const Scenario& base, SweepAxis axis, double value) {
    Scenario s = base;
    switch (axis) {
        case SweepAxis::n_elements:
            set_array_count(s.rdars, static_cast<std::size_t>(std::llround(value)));
            break;
        case SweepAxis::connected:
            s.connected_count = static_cast<std::size_t>(std::llround(value));
            break;
        case SweepAxis::power_dbm:
            s.transmit_power_dbm = value;
            break;
        case SweepAxis::bs_antennas:
            set_array_count(s.bs, static_cast<std::size_t>(std::llround(value)));
            break;
        case SweepAxis::rician_delta:
            s.rician_delta = value;
            break;
    }
    s.prepare();
    return s;
}

struct SweepRow {
    double axis_value = 0.0;
    SystemVariant system = SystemVariant::rdars;
    RateEstimate estimate;
};

/// Monte Carlo rate table over one axis for the requested system variants.
inline std::vector<SweepRow> sweep(const Campaign& base, SweepAxis axis,
                                   const std::vector<double>& values,
                                   const std::vector<SystemVariant>& systems = {
                                       SystemVariant::rdars, SystemVariant::ris, SystemVariant::das,
                                       SystemVariant::no_surface}) {
    std::vector<SweepRow> rows;
    rows.reserve(values.size() * systems.size());
    for (double v : values) {
        Campaign c = base;
        c.scenario = apply_axis(base.scenario, axis, v);
        for (SystemVariant sys : systems) {
            c.system = sys;
            rows.push_back({v, sys, estimate_rate(c)});
        }
    }
    return rows;
}

}  // namespace rdars

#endif

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

#ifndef RDARS_FIGURES_HPP
#define RDARS_FIGURES_HPP

#include <chrono>
#include <cmath>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "rdars/analytic_simo.hpp"
#include "rdars/analytic_siso.hpp"
#include "rdars/montecarlo.hpp"
#include "rdars/scenario.hpp"

namespace rdars {

/// One output line of a figure run.
struct ResultRow {
    double axis_value = 0.0;
    std::string system;
    double rate_mean = 0.0;  // bps/Hz, or mean SNR in dB for the fig3 preset
    double ci_halfwidth_95 = 0.0;
    std::string provenance;
    std::string scenario_hash;
};

struct FigureResult {
    std::string figure_id;
    std::string axis_name;
    Scenario base;
    std::vector<ResultRow> rows;
    double wall_time_s = 0.0;
};

namespace detail {

struct SystemSpec {
    SystemVariant variant;
    std::size_t a = 0;
    PhasePolicy policy = PhasePolicy::statistical_aligned;
    std::string label;
    bool emit_closed = true;
};

inline std::string system_label(SystemVariant v, std::size_t a, PhasePolicy policy,
                                PhasePolicy figure_policy) {
    std::string label = to_string(v);
    if (v == SystemVariant::rdars || v == SystemVariant::das) label += "_a" + std::to_string(a);
    if (policy != figure_policy && v != SystemVariant::das && v != SystemVariant::no_surface)
        label += (policy == PhasePolicy::identity ? "_identity" : "_aligned");
    return label;
}

/// Closed-form Gamma-matched rate for one system under the single-antenna
/// Rayleigh analysis. DAS keeps only the connected elements; the RIS case
/// zeroes a; the bare link keeps nothing.
inline SisoMomentInputs siso_system_inputs(const Scenario& s, SystemVariant v, std::size_t a) {
    SisoMomentInputs in = siso_inputs(s);
    in.a = a;
    switch (v) {
        case SystemVariant::rdars: break;
        case SystemVariant::ris: in.a = 0; break;
        case SystemVariant::das: in.n_total = a; in.a = a; break;
        case SystemVariant::no_surface: in.n_total = 0; in.a = 0; break;
    }
    return in;
}

inline double siso_closed_rate(const Scenario& s, SystemVariant v, std::size_t a) {
    const SisoMomentInputs in = siso_system_inputs(s, v, a);
    const SisoSnrMoments mom = snr_moments_siso(in);
    return ergodic_rate_gamma(gamma_match(mom.mean, mom.second));
}

inline double siso_bound_rate(const Scenario& s, SystemVariant v, std::size_t a) {
    return rate_upper_bound_siso(siso_system_inputs(s, v, a));
}

/// Closed-form moment-ratio rate for one system under the multi-antenna
/// Rician analysis.
inline double simo_closed_rate(const Scenario& s, SystemVariant v, std::size_t a,
                               PhasePolicy policy) {
    Scenario sc = s;
    sc.connected_count = a;
    switch (v) {
        case SystemVariant::rdars: break;
        case SystemVariant::ris: sc.connected_count = 0; break;
        case SystemVariant::das: break;
        case SystemVariant::no_surface: sc.connected_count = 0; break;
    }
    sc.prepare();
    SimoRateInputs in = simo_inputs(sc, 0.0);
    if (v == SystemVariant::das || v == SystemVariant::no_surface) {
        in.n_total = in.a;  // reflection path removed entirely
        in.f_abs = 0.0;
    } else {
        in.f_abs = (policy == PhasePolicy::identity)
                       ? identity_f_abs(sc)
                       : static_cast<double>(in.n_total - in.a);
    }
    return ergodic_rate_simo_approx(in);
}

inline std::vector<double> log_grid(double lo, double hi, std::size_t points) {
    std::set<long long> uniq;
    for (std::size_t i = 0; i < points; ++i) {
        const double x =
            lo * std::pow(hi / lo, static_cast<double>(i) / static_cast<double>(points - 1));
        uniq.insert(std::llround(x));
    }
    std::vector<double> out;
    out.reserve(uniq.size());
    for (long long v : uniq) out.push_back(static_cast<double>(v));
    return out;
}

}  // namespace detail

inline const std::vector<std::string>& figure_ids() {
    static const std::vector<std::string> ids = {"fig3", "fig4a", "fig4b", "fig5a",
                                                 "fig5b", "fig6",  "fig7"};
    return ids;
}

/// Runs one named sweep preset on top of `base`. The preset pins the swept
/// axis, the system set, the channel regime (Rayleigh for the
/// single-antenna presets, Rician for the multi-antenna ones) and disables
/// shadowing so closed-form and simulated values stay comparable; all other
/// fields come from `base`.
inline FigureResult run_figure(const std::string& figure_id, Scenario base) {
    const auto t0 = std::chrono::steady_clock::now();
    FigureResult result;
    result.figure_id = figure_id;

    using detail::SystemSpec;
    std::vector<double> axis_values;
    std::vector<SystemSpec> systems;
    SweepAxis axis = SweepAxis::n_elements;
    bool siso = false;
    bool mean_snr_only = false;

    base.shadow_sigma_db = 0.0;
    base.shadowing_per_trial = false;

    const auto pin_siso = [&]() {
        base.bs.array_rows = 1;
        base.bs.array_cols = 1;
        base.rician_delta = 0.0;
        base.rician_epsilon = 0.0;
        base.phase_policy = PhasePolicy::optimal_instantaneous;
        siso = true;
    };
    const auto pa = PhasePolicy::statistical_aligned;

    if (figure_id == "fig3") {
        pin_siso();
        mean_snr_only = true;
        base.gain_override_ue_bs_db = -70.0;
        base.gain_override_ue_rdars_db = -70.0;
        base.gain_override_rdars_bs_db = -70.0;
        base.connected_count = 1;
        axis = SweepAxis::n_elements;
        axis_values = detail::log_grid(1e2, 1e7, 50);
        systems = {{SystemVariant::rdars, 1, pa, "rdars_a1"},
                   {SystemVariant::ris, 0, pa, "ris"},
                   {SystemVariant::das, 1, pa, "das_a1"},
                   {SystemVariant::no_surface, 0, pa, "no_surface"}};
    } else if (figure_id == "fig4a") {
        pin_siso();
        axis = SweepAxis::n_elements;
        axis_values = {16, 32, 64, 128, 256, 512, 1024, 2048};
        systems = {{SystemVariant::rdars, 1, base.phase_policy, "rdars_a1"},
                   {SystemVariant::rdars, 2, base.phase_policy, "rdars_a2"},
                   {SystemVariant::das, 1, base.phase_policy, "das_a1"},
                   {SystemVariant::das, 2, base.phase_policy, "das_a2"},
                   {SystemVariant::ris, 0, base.phase_policy, "ris"}};
    } else if (figure_id == "fig4b") {
        pin_siso();
        set_array_count(base.rdars, 1024);
        axis = SweepAxis::power_dbm;
        axis_values = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16};
        systems = {{SystemVariant::rdars, 2, base.phase_policy, "rdars_a2"},
                   {SystemVariant::das, 2, base.phase_policy, "das_a2"},
                   {SystemVariant::ris, 0, base.phase_policy, "ris"},
                   {SystemVariant::no_surface, 0, base.phase_policy, "no_surface"}};
    } else if (figure_id == "fig5a") {
        // The moment-ratio closed form is tight once the reflected path
        // concentrates (element counts from 512 up at four BS antennas);
        // the low-diversity baselines get simulated rows only.
        base.phase_policy = pa;
        axis = SweepAxis::n_elements;
        axis_values = {512, 1024, 2048};
        systems = {{SystemVariant::rdars, 1, pa, "rdars_a1"},
                   {SystemVariant::rdars, 2, pa, "rdars_a2"},
                   {SystemVariant::rdars, 2, PhasePolicy::identity, "rdars_a2_identity", false},
                   {SystemVariant::ris, 0, pa, "ris"},
                   {SystemVariant::das, 1, pa, "das_a1", false},
                   {SystemVariant::das, 2, pa, "das_a2", false}};
    } else if (figure_id == "fig5b") {
        base.phase_policy = pa;
        set_array_count(base.rdars, 512);
        axis = SweepAxis::power_dbm;
        axis_values = {0, 2, 4, 6, 8, 10, 12, 14, 16};
        systems = {{SystemVariant::rdars, 1, pa, "rdars_a1"},
                   {SystemVariant::rdars, 2, pa, "rdars_a2"},
                   {SystemVariant::rdars, 2, PhasePolicy::identity, "rdars_a2_identity", false},
                   {SystemVariant::ris, 0, pa, "ris"},
                   {SystemVariant::das, 2, pa, "das_a2", false}};
    } else if (figure_id == "fig6") {
        base.phase_policy = pa;
        set_array_count(base.rdars, 512);
        axis = SweepAxis::bs_antennas;
        axis_values = {2, 4, 6, 8, 10, 12};
        systems = {{SystemVariant::rdars, 1, pa, "rdars_a1"},
                   {SystemVariant::rdars, 2, pa, "rdars_a2"},
                   {SystemVariant::das, 1, pa, "das_a1", false},
                   {SystemVariant::ris, 0, pa, "ris"}};
    } else if (figure_id == "fig7") {
        base.phase_policy = pa;
        set_array_count(base.rdars, 512);
        axis = SweepAxis::rician_delta;
        axis_values = {0, 1, 2, 4, 6, 8, 10, 14, 20};
        systems = {{SystemVariant::rdars, 1, pa, "rdars_a1"},
                   {SystemVariant::rdars, 2, pa, "rdars_a2"},
                   {SystemVariant::das, 1, pa, "das_a1", false},
                   {SystemVariant::ris, 0, pa, "ris"}};
    } else {
        throw std::invalid_argument("unknown figure id '" + figure_id + "'");
    }

    base.prepare();
    result.base = base;
    result.axis_name = to_string(axis);

    for (double value : axis_values) {
        const Scenario swept = apply_axis(base, axis, value);
        for (const SystemSpec& spec : systems) {
            Scenario sc = swept;
            sc.connected_count =
                (spec.variant == SystemVariant::ris || spec.variant == SystemVariant::no_surface)
                    ? 0
                    : spec.a;
            sc.phase_policy = spec.policy;
            sc.prepare();
            const std::string hash = scenario_hash(sc);

            if (mean_snr_only) {
                SisoMomentInputs in = detail::siso_system_inputs(sc, spec.variant, spec.a);
                const MeanSnrs ms = mean_snrs(siso_inputs(sc));
                double snr = 0.0;
                switch (spec.variant) {
                    case SystemVariant::rdars: snr = ms.rdars; break;
                    case SystemVariant::ris: snr = ms.ris; break;
                    case SystemVariant::das: snr = ms.das; break;
                    case SystemVariant::no_surface:
                        snr = in.transmit_snr * in.gamma * in.gamma;
                        break;
                }
                result.rows.push_back(
                    {value, spec.label, linear_to_db(snr), 0.0, to_string(Provenance::closed_form), hash});
                continue;
            }

            // Monte Carlo row.
            Campaign c = make_campaign(sc, spec.variant);
            c.config_policy = spec.policy;
            const RateEstimate mc = estimate_rate(c);
            result.rows.push_back({value, spec.label, mc.mean, mc.ci_halfwidth_95,
                                   to_string(Provenance::monte_carlo), hash});

            // Closed-form row.
            if (spec.emit_closed) {
                const double closed =
                    siso ? detail::siso_closed_rate(sc, spec.variant, spec.a)
                         : detail::simo_closed_rate(sc, spec.variant, spec.a, spec.policy);
                result.rows.push_back(
                    {value, spec.label, closed, 0.0, to_string(Provenance::closed_form), hash});
            }

            // Upper-bound row (single-antenna element sweep only).
            if (siso && figure_id == "fig4a") {
                const double bound = detail::siso_bound_rate(sc, spec.variant, spec.a);
                result.rows.push_back(
                    {value, spec.label, bound, 0.0, to_string(Provenance::upper_bound), hash});
            }
        }
    }

    result.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

/// CSV emission: UTF-8, comma separated, '.' decimal, stable header naming
/// the ResultRow fields. Shortest round-trip float formatting keeps reruns
/// byte-identical.
inline std::string to_csv(const FigureResult& result) {
    std::string out = "axis_value,system,rate_mean,ci_halfwidth_95,provenance,scenario_hash\n";
    for (const ResultRow& row : result.rows) {
        out += detail::format_double(row.axis_value);
        out += ',';
        out += row.system;
        out += ',';
        out += detail::format_double(row.rate_mean);
        out += ',';
        out += detail::format_double(row.ci_halfwidth_95);
        out += ',';
        out += row.provenance;
        out += ',';
        out += row.scenario_hash;
        out += '\n';
    }
    return out;
}

}  // namespace rdars

#endif

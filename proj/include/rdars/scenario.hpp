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

#ifndef RDARS_SCENARIO_HPP
#define RDARS_SCENARIO_HPP

#include <charconv>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "rdars/analytic_simo.hpp"
#include "rdars/analytic_siso.hpp"
#include "rdars/channel.hpp"
#include "rdars/rdars_config.hpp"
#include "rdars/rng.hpp"
#include "rdars/units.hpp"

namespace rdars {

/// Reflection phase design applied during simulation.
enum class PhasePolicy {
    optimal_instantaneous,  // per-realization co-phasing with the direct link
    statistical_aligned,    // fixed phases cancelling the LoS geometric ramp
    identity,               // all phase shifts zero
};

inline const char* to_string(PhasePolicy p) {
    switch (p) {
        case PhasePolicy::optimal_instantaneous: return "optimal-instantaneous";
        case PhasePolicy::statistical_aligned: return "statistical-aligned";
        case PhasePolicy::identity: return "identity";
    }
    return "?";
}

/// Full experiment description. Defaults reproduce the reference urban
/// micro setup: BS at (0,0,10) m, surface at (20,20,10) m, UE at
/// (200,0,1.5) m, 30 dB reference loss, exponents 3.1/2.5/2.0, 10 dBm
/// transmit power, -80 dBm noise, Rician factors 10.
struct Scenario {
    std::uint64_t seed = 1;
    std::size_t trials = 10000;
    std::size_t parallelism = 0;  // 0 = use hardware concurrency
    PhasePolicy phase_policy = PhasePolicy::statistical_aligned;

    double transmit_power_dbm = 10.0;
    double noise_bs_dbm = -80.0;
    double noise_rdars_dbm = -80.0;

    NodeGeometry bs{{0.0, 0.0, 10.0}, 2, 2, 0.5};
    NodeGeometry rdars{{20.0, 20.0, 10.0}, 16, 32, 0.5};
    NodeGeometry ue{{200.0, 0.0, 1.5}, 1, 1, 0.5};
    std::size_t connected_count = 1;

    double pathloss_c0_db = 30.0;
    double exponent_ue_bs = 3.1;
    double exponent_ue_rdars = 2.5;
    double exponent_rdars_bs = 2.0;
    double shadow_sigma_db = 3.0;
    bool shadowing_per_trial = false;

    double rician_delta = 10.0;
    double rician_epsilon = 10.0;

    // Explicit average power gains (dB) replacing the geometric link budget.
    std::optional<double> gain_override_ue_bs_db;
    std::optional<double> gain_override_ue_rdars_db;
    std::optional<double> gain_override_rdars_bs_db;

    std::size_t n_total() const { return rdars.count(); }
    std::size_t l_antennas() const { return bs.count(); }

    /// Scenario-level quantities fixed across all Monte Carlo trials:
    /// link gains (with the once-drawn shadow realization folded in),
    /// the frozen AoA/AoD draw, and the LoS steering vectors.
    struct Derived {
        double gain_ue_bs = 0.0;
        double gain_ue_rdars = 0.0;
        double gain_rdars_bs = 0.0;
        double shadow_ue_bs_db = 0.0;
        double shadow_ue_rdars_db = 0.0;
        double shadow_rdars_bs_db = 0.0;
        AngleSet bs_aoa;       // arrival at the BS array from the surface
        AngleSet rdars_aod;    // departure from the surface towards the BS
        AngleSet rdars_aoa;    // arrival at the surface from the UE
        AlignmentPhases zeta;  // geometric ramp of the two LoS directions
        cvec steer_bs;         // BS steering vector, length L
        cvec steer_rdars_dep;  // surface steering at the departure angles
        cvec steer_rdars_arr;  // surface steering at the arrival angles
        bool ready = false;
    };
    Derived derived;

    void prepare();
    std::vector<std::string> validation_errors() const;
};

namespace detail {

inline double parse_double_or(std::vector<std::string>& errors, const std::string& key,
                              const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        while (pos < value.size() && std::isspace(static_cast<unsigned char>(value[pos]))) ++pos;
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        errors.push_back(key + ": cannot parse '" + value + "' as a number");
        return 0.0;
    }
}

inline std::uint64_t parse_u64_or(std::vector<std::string>& errors, const std::string& key,
                                  const std::string& value) {
    std::uint64_t v = 0;
    const char* first = value.data();
    const char* last = value.data() + value.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last) {
        errors.push_back(key + ": cannot parse '" + value + "' as an unsigned integer");
        return 0;
    }
    return v;
}

inline void parse_vec3_or(std::vector<std::string>& errors, const std::string& key,
                          const std::string& value, double out[3]) {
    std::istringstream iss(value);
    double v[3];
    if (!(iss >> v[0] >> v[1] >> v[2])) {
        errors.push_back(key + ": expected three space-separated coordinates");
        return;
    }
    std::string rest;
    if (iss >> rest) {
        errors.push_back(key + ": trailing content after three coordinates");
        return;
    }
    out[0] = v[0];
    out[1] = v[1];
    out[2] = v[2];
}

inline std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

inline std::string trim(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

}  // namespace detail

inline void Scenario::prepare() {
    const double d_ub = distance_m(ue, bs);
    const double d_ur = distance_m(ue, rdars);
    const double d_rb = distance_m(rdars, bs);

    derived = Derived{};
    if (shadow_sigma_db > 0.0 && !shadowing_per_trial) {
        Xoshiro256 rng = derive_stream(seed, StreamTag::shadowing, 0);
        derived.shadow_ue_bs_db = shadow_sigma_db * normal(rng);
        derived.shadow_ue_rdars_db = shadow_sigma_db * normal(rng);
        derived.shadow_rdars_bs_db = shadow_sigma_db * normal(rng);
    }

    const auto link_gain = [&](std::optional<double> override_db, double exponent, double dist,
                               double shadow_db) {
        if (override_db) return db_to_linear(*override_db);
        PathLossParams pl{pathloss_c0_db, exponent, shadow_sigma_db};
        return db_to_linear(-path_loss_db(pl, dist, shadow_db));
    };
    derived.gain_ue_bs = link_gain(gain_override_ue_bs_db, exponent_ue_bs, d_ub, derived.shadow_ue_bs_db);
    derived.gain_ue_rdars =
        link_gain(gain_override_ue_rdars_db, exponent_ue_rdars, d_ur, derived.shadow_ue_rdars_db);
    derived.gain_rdars_bs =
        link_gain(gain_override_rdars_bs_db, exponent_rdars_bs, d_rb, derived.shadow_rdars_bs_db);

    // AoA/AoD drawn uniformly from [0, 2*pi) once per scenario and frozen.
    Xoshiro256 rng = derive_stream(seed, StreamTag::angles, 0);
    const auto draw_angles = [&rng]() {
        AngleSet a;
        a.azimuth = 2.0 * std::numbers::pi * rng.uniform();
        a.elevation = 2.0 * std::numbers::pi * rng.uniform();
        return a;
    };
    derived.bs_aoa = draw_angles();
    derived.rdars_aod = draw_angles();
    derived.rdars_aoa = draw_angles();

    derived.steer_bs = array_response(bs, derived.bs_aoa);
    if (rdars.count() > 0) {
        derived.zeta = alignment_zeta(rdars, derived.rdars_aoa, derived.rdars_aod);
        derived.steer_rdars_dep = array_response(rdars, derived.rdars_aod);
        derived.steer_rdars_arr = array_response(rdars, derived.rdars_aoa);
    }
    derived.ready = true;
}

inline std::vector<std::string> Scenario::validation_errors() const {
    std::vector<std::string> errors;
    if (trials < 1) errors.push_back("trials: must be >= 1");
    if (bs.count() < 1) errors.push_back("bs.rows/bs.cols: array must hold at least one antenna");
    if (rdars.count() < 1 && connected_count > 0)
        errors.push_back("rdars.rows/rdars.cols: empty surface cannot host connected elements");
    if (connected_count > rdars.count())
        errors.push_back("rdars.connected_count: exceeds rdars.rows*rdars.cols (a > N)");
    if (!(rdars.element_spacing_ratio > 0.0))
        errors.push_back("rdars.element_spacing_ratio: must be > 0");
    if (!(bs.element_spacing_ratio > 0.0)) errors.push_back("bs.element_spacing_ratio: must be > 0");
    if (!(exponent_ue_bs > 0.0)) errors.push_back("pathloss.exponent.ue_bs: must be > 0");
    if (!(exponent_ue_rdars > 0.0)) errors.push_back("pathloss.exponent.ue_rdars: must be > 0");
    if (!(exponent_rdars_bs > 0.0)) errors.push_back("pathloss.exponent.rdars_bs: must be > 0");
    if (!(shadow_sigma_db >= 0.0)) errors.push_back("pathloss.shadow_sigma_db: must be >= 0");
    if (!std::isfinite(pathloss_c0_db)) errors.push_back("pathloss.c0_db: must be finite");
    if (!std::isfinite(transmit_power_dbm)) errors.push_back("transmit_power_dbm: must be finite");
    if (!std::isfinite(noise_bs_dbm)) errors.push_back("noise_bs_dbm: must be finite");
    if (!std::isfinite(noise_rdars_dbm)) errors.push_back("noise_rdars_dbm: must be finite");
    if (!(rician_delta >= 0.0)) errors.push_back("rician.delta: must be >= 0");
    if (!(rician_epsilon >= 0.0)) errors.push_back("rician.epsilon: must be >= 0");
    if (!gain_override_ue_bs_db && !(distance_m(ue, bs) > 0.0))
        errors.push_back("ue.position_m: UE and BS positions coincide");
    if (!gain_override_ue_rdars_db && !(distance_m(ue, rdars) > 0.0))
        errors.push_back("ue.position_m: UE and surface positions coincide");
    if (!gain_override_rdars_bs_db && !(distance_m(rdars, bs) > 0.0))
        errors.push_back("rdars.position_m: surface and BS positions coincide");
    return errors;
}

/// Result of parsing a scenario file: either a prepared scenario or the list
/// of violated invariants, each tagged with its field path.
struct ScenarioParse {
    std::optional<Scenario> scenario;
    std::vector<std::string> errors;
    bool ok() const { return scenario.has_value() && errors.empty(); }
};

/// Parses the key = value scenario format. Unknown keys and malformed
/// values are reported with their field path; an empty file yields the
/// default scenario.
inline ScenarioParse parse_scenario(std::string_view text) {
    ScenarioParse out;
    Scenario s;
    std::vector<std::string>& errors = out.errors;
    std::map<std::string, std::string> seen;

    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view line_sv =
            text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;
        ++line_no;
        std::string line = detail::trim(line_sv);
        if (line.empty() || line[0] == '#') continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            errors.push_back("line " + std::to_string(line_no) + ": expected 'key = value'");
            continue;
        }
        const std::string key = detail::trim(std::string_view(line).substr(0, eq));
        const std::string value = detail::trim(std::string_view(line).substr(eq + 1));
        if (seen.count(key)) {
            errors.push_back(key + ": duplicate key");
            continue;
        }
        seen[key] = value;

        if (key == "seed") s.seed = detail::parse_u64_or(errors, key, value);
        else if (key == "trials") s.trials = detail::parse_u64_or(errors, key, value);
        else if (key == "parallelism") s.parallelism = detail::parse_u64_or(errors, key, value);
        else if (key == "phase_policy") {
            if (value == "optimal-instantaneous") s.phase_policy = PhasePolicy::optimal_instantaneous;
            else if (value == "statistical-aligned") s.phase_policy = PhasePolicy::statistical_aligned;
            else if (value == "identity") s.phase_policy = PhasePolicy::identity;
            else errors.push_back(key + ": unknown policy '" + value + "'");
        } else if (key == "transmit_power_dbm") s.transmit_power_dbm = detail::parse_double_or(errors, key, value);
        else if (key == "noise_bs_dbm") s.noise_bs_dbm = detail::parse_double_or(errors, key, value);
        else if (key == "noise_rdars_dbm") s.noise_rdars_dbm = detail::parse_double_or(errors, key, value);
        else if (key == "bs.position_m") detail::parse_vec3_or(errors, key, value, s.bs.position_m);
        else if (key == "bs.rows") s.bs.array_rows = detail::parse_u64_or(errors, key, value);
        else if (key == "bs.cols") s.bs.array_cols = detail::parse_u64_or(errors, key, value);
        else if (key == "bs.element_spacing_ratio") s.bs.element_spacing_ratio = detail::parse_double_or(errors, key, value);
        else if (key == "rdars.position_m") detail::parse_vec3_or(errors, key, value, s.rdars.position_m);
        else if (key == "rdars.rows") s.rdars.array_rows = detail::parse_u64_or(errors, key, value);
        else if (key == "rdars.cols") s.rdars.array_cols = detail::parse_u64_or(errors, key, value);
        else if (key == "rdars.connected_count") s.connected_count = detail::parse_u64_or(errors, key, value);
        else if (key == "rdars.element_spacing_ratio") s.rdars.element_spacing_ratio = detail::parse_double_or(errors, key, value);
        else if (key == "ue.position_m") detail::parse_vec3_or(errors, key, value, s.ue.position_m);
        else if (key == "pathloss.c0_db") s.pathloss_c0_db = detail::parse_double_or(errors, key, value);
        else if (key == "pathloss.exponent.ue_bs") s.exponent_ue_bs = detail::parse_double_or(errors, key, value);
        else if (key == "pathloss.exponent.ue_rdars") s.exponent_ue_rdars = detail::parse_double_or(errors, key, value);
        else if (key == "pathloss.exponent.rdars_bs") s.exponent_rdars_bs = detail::parse_double_or(errors, key, value);
        else if (key == "pathloss.shadow_sigma_db") s.shadow_sigma_db = detail::parse_double_or(errors, key, value);
        else if (key == "pathloss.shadowing_per_trial") {
            if (value == "true") s.shadowing_per_trial = true;
            else if (value == "false") s.shadowing_per_trial = false;
            else errors.push_back(key + ": expected true or false");
        } else if (key == "rician.delta") s.rician_delta = detail::parse_double_or(errors, key, value);
        else if (key == "rician.epsilon") s.rician_epsilon = detail::parse_double_or(errors, key, value);
        else if (key == "gain_override.ue_bs_db") s.gain_override_ue_bs_db = detail::parse_double_or(errors, key, value);
        else if (key == "gain_override.ue_rdars_db") s.gain_override_ue_rdars_db = detail::parse_double_or(errors, key, value);
        else if (key == "gain_override.rdars_bs_db") s.gain_override_rdars_bs_db = detail::parse_double_or(errors, key, value);
        else errors.push_back(key + ": unknown key");
    }

    const auto invariant_errors = s.validation_errors();
    errors.insert(errors.end(), invariant_errors.begin(), invariant_errors.end());
    if (errors.empty()) {
        s.prepare();
        out.scenario = std::move(s);
    }
    return out;
}

/// Canonical serialization: fixed key order, shortest round-trip floats.
/// parse(serialize(s)) reproduces s exactly, and serialization of the result
/// is byte-identical (idempotent canonical form).
inline std::string serialize_scenario(const Scenario& s) {
    using detail::format_double;
    std::ostringstream os;
    const auto vec3 = [&](const double p[3]) {
        return format_double(p[0]) + " " + format_double(p[1]) + " " + format_double(p[2]);
    };
    // `parallelism` is an execution knob, not an experiment input: it is
    // accepted by the parser but omitted from the canonical form so the
    // scenario hash is schedule-independent.
    os << "seed = " << s.seed << "\n";
    os << "trials = " << s.trials << "\n";
    os << "phase_policy = " << to_string(s.phase_policy) << "\n";
    os << "transmit_power_dbm = " << format_double(s.transmit_power_dbm) << "\n";
    os << "noise_bs_dbm = " << format_double(s.noise_bs_dbm) << "\n";
    os << "noise_rdars_dbm = " << format_double(s.noise_rdars_dbm) << "\n";
    os << "bs.position_m = " << vec3(s.bs.position_m) << "\n";
    os << "bs.rows = " << s.bs.array_rows << "\n";
    os << "bs.cols = " << s.bs.array_cols << "\n";
    os << "bs.element_spacing_ratio = " << format_double(s.bs.element_spacing_ratio) << "\n";
    os << "rdars.position_m = " << vec3(s.rdars.position_m) << "\n";
    os << "rdars.rows = " << s.rdars.array_rows << "\n";
    os << "rdars.cols = " << s.rdars.array_cols << "\n";
    os << "rdars.connected_count = " << s.connected_count << "\n";
    os << "rdars.element_spacing_ratio = " << format_double(s.rdars.element_spacing_ratio) << "\n";
    os << "ue.position_m = " << vec3(s.ue.position_m) << "\n";
    os << "pathloss.c0_db = " << format_double(s.pathloss_c0_db) << "\n";
    os << "pathloss.exponent.ue_bs = " << format_double(s.exponent_ue_bs) << "\n";
    os << "pathloss.exponent.ue_rdars = " << format_double(s.exponent_ue_rdars) << "\n";
    os << "pathloss.exponent.rdars_bs = " << format_double(s.exponent_rdars_bs) << "\n";
    os << "pathloss.shadow_sigma_db = " << format_double(s.shadow_sigma_db) << "\n";
    os << "pathloss.shadowing_per_trial = " << (s.shadowing_per_trial ? "true" : "false") << "\n";
    os << "rician.delta = " << format_double(s.rician_delta) << "\n";
    os << "rician.epsilon = " << format_double(s.rician_epsilon) << "\n";
    if (s.gain_override_ue_bs_db)
        os << "gain_override.ue_bs_db = " << format_double(*s.gain_override_ue_bs_db) << "\n";
    if (s.gain_override_ue_rdars_db)
        os << "gain_override.ue_rdars_db = " << format_double(*s.gain_override_ue_rdars_db) << "\n";
    if (s.gain_override_rdars_bs_db)
        os << "gain_override.rdars_bs_db = " << format_double(*s.gain_override_rdars_bs_db) << "\n";
    return os.str();
}

/// FNV-1a over the canonical serialization; binds result rows to their
/// exact inputs.
inline std::string scenario_hash(const Scenario& s) {
    const std::string text = serialize_scenario(s);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    static const char* hex = "0123456789abcdef";
    for (int i = 15; i >= 0; --i) {
        buf[i] = hex[h & 0xf];
        h >>= 4;
    }
    buf[16] = '\0';
    return std::string(buf);
}

/// One fading draw of all links. The per-trial RNG consumes, in order: the
/// three per-trial shadow values when enabled, then the surface-BS matrix
/// row-major, the UE-surface vector, and the direct vector.
inline ChannelRealization draw_realization(const Scenario& s, Xoshiro256& rng) {
    if (!s.derived.ready) throw std::logic_error("scenario not prepared");
    const std::size_t l = s.l_antennas();
    const std::size_t n = s.n_total();

    double g_ub = s.derived.gain_ue_bs;
    double g_ur = s.derived.gain_ue_rdars;
    double g_rb = s.derived.gain_rdars_bs;
    if (s.shadowing_per_trial && s.shadow_sigma_db > 0.0) {
        const double z_ub = s.shadow_sigma_db * normal(rng);
        const double z_ur = s.shadow_sigma_db * normal(rng);
        const double z_rb = s.shadow_sigma_db * normal(rng);
        if (!s.gain_override_ue_bs_db) g_ub *= db_to_linear(-z_ub);
        if (!s.gain_override_ue_rdars_db) g_ur *= db_to_linear(-z_ur);
        if (!s.gain_override_rdars_bs_db) g_rb *= db_to_linear(-z_rb);
    }

    ChannelRealization real;
    real.h_rdars_bs = CMatrix(l, n);
    const double de = s.rician_delta;
    const double rb_nlos = std::sqrt(g_rb / (de + 1.0));
    const double rb_los = rb_nlos * std::sqrt(de);
    for (std::size_t r = 0; r < l; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            cplx v = rb_nlos * complex_normal(rng);
            if (de > 0.0)
                v += rb_los * s.derived.steer_bs[r] * std::conj(s.derived.steer_rdars_dep[c]);
            real.h_rdars_bs.at(r, c) = v;
        }
    }

    const double ep = s.rician_epsilon;
    const double ur_nlos = std::sqrt(g_ur / (ep + 1.0));
    const double ur_los = ur_nlos * std::sqrt(ep);
    real.h_ue_rdars.resize(n);
    for (std::size_t c = 0; c < n; ++c) {
        cplx v = ur_nlos * complex_normal(rng);
        if (ep > 0.0) v += ur_los * s.derived.steer_rdars_arr[c];
        real.h_ue_rdars[c] = v;
    }

    // The direct UE-BS link carries no Rician factor: always Rayleigh.
    real.h_ue_bs.resize(l);
    const double ub_scale = std::sqrt(g_ub);
    for (std::size_t r = 0; r < l; ++r) real.h_ue_bs[r] = ub_scale * complex_normal(rng);
    return real;
}

/// Single-antenna analysis inputs (amplitude convention) for this scenario.
inline SisoMomentInputs siso_inputs(const Scenario& s) {
    if (!s.derived.ready) throw std::logic_error("scenario not prepared");
    if (s.noise_bs_dbm != s.noise_rdars_dbm)
        throw std::invalid_argument(
            "single-antenna closed forms assume equal BS and surface noise powers");
    SisoMomentInputs in;
    in.n_total = s.n_total();
    in.a = s.connected_count;
    in.alpha = amplitude_from_gain(s.derived.gain_ue_rdars);
    in.beta = amplitude_from_gain(s.derived.gain_rdars_bs);
    in.gamma = amplitude_from_gain(s.derived.gain_ue_bs);
    in.transmit_snr = db_to_linear(s.transmit_power_dbm - s.noise_bs_dbm);
    return in;
}

/// Multi-antenna analysis inputs (power-gain convention). `f_abs` is the
/// coherent reflection sum magnitude implied by the chosen phase policy.
inline SimoRateInputs simo_inputs(const Scenario& s, double f_abs) {
    if (!s.derived.ready) throw std::logic_error("scenario not prepared");
    SimoRateInputs in;
    in.l_antennas = s.l_antennas();
    in.n_total = s.n_total();
    in.a = s.connected_count;
    in.alpha = s.derived.gain_ue_rdars;
    in.beta = s.derived.gain_rdars_bs;
    in.gamma = s.derived.gain_ue_bs;
    in.delta = s.rician_delta;
    in.epsilon = s.rician_epsilon;
    in.power = dbm_to_watts(s.transmit_power_dbm);
    in.noise.sigma_b_sq = dbm_to_watts(s.noise_bs_dbm);
    in.noise.sigma_r_sq = dbm_to_watts(s.noise_rdars_dbm);
    in.f_abs = f_abs;
    return in;
}

/// |f| of the identity phase configuration with the first `a` elements
/// connected: magnitude of the plain geometric-ramp sum.
inline double identity_f_abs(const Scenario& s) {
    if (!s.derived.ready) throw std::logic_error("scenario not prepared");
    cplx f = 0.0;
    for (std::size_t i = s.connected_count; i < s.n_total(); ++i)
        f += std::polar(1.0, s.derived.zeta.zeta[i]);
    return std::abs(f);
}

}  // namespace rdars

#endif

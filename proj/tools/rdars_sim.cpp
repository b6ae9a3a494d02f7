// SPDX-License-Identifier: Apache-2.0
//
// rdars-sim command-line front end: scenario validation, named figure
// sweeps emitting CSV + JSON sidecars, and ad-hoc closed-form calculators.
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

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rdars/rdars.hpp"
#include "rdars/version.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitNumeric = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Loads a scenario file (default scenario when no path given) and applies
/// key=value overrides through the same parser so every field keeps its
/// validation.
rdars::Scenario load_scenario(const std::optional<std::string>& path,
                              const std::vector<std::string>& overrides,
                              std::optional<std::uint64_t> seed) {
    std::string text = path ? read_file(*path) : std::string{};
    {
        const auto parsed = rdars::parse_scenario(text);
        if (!parsed.ok()) {
            for (const auto& e : parsed.errors) std::cerr << "scenario error: " << e << "\n";
            throw std::invalid_argument("scenario validation failed");
        }
        text = rdars::serialize_scenario(*parsed.scenario);
    }
    for (const std::string& ov : overrides) {
        const auto eq = ov.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("override '" + ov + "' is not key=value");
        const std::string key = ov.substr(0, eq);
        // Drop any previous assignment of the key, then append the override.
        std::istringstream lines(text);
        std::string line;
        std::string kept;
        while (std::getline(lines, line)) {
            const auto before = line.substr(0, line.find('='));
            const auto trimmed = before.substr(0, before.find_last_not_of(" \t") + 1);
            if (trimmed != key) kept += line + "\n";
        }
        text = kept + key + " = " + ov.substr(eq + 1) + "\n";
    }
    auto parsed = rdars::parse_scenario(text);
    if (!parsed.ok()) {
        for (const auto& e : parsed.errors) std::cerr << "scenario error: " << e << "\n";
        throw std::invalid_argument("scenario validation failed");
    }
    rdars::Scenario s = *parsed.scenario;
    if (seed) {
        s.seed = *seed;
        s.prepare();
    }
    return s;
}

int cmd_validate(const std::string& path) {
    const auto parsed = rdars::parse_scenario(read_file(path));
    if (!parsed.ok()) {
        for (const auto& e : parsed.errors) std::cerr << e << "\n";
        return kExitValidation;
    }
    std::cout << rdars::serialize_scenario(*parsed.scenario);
    return kExitOk;
}

int cmd_figure(const std::string& id, const rdars::Scenario& base, const std::string& out_path,
               const std::vector<std::string>& overrides) {
    const rdars::FigureResult result = rdars::run_figure(id, base);

    std::ofstream csv(out_path, std::ios::binary);
    if (!csv) throw std::invalid_argument("cannot write '" + out_path + "'");
    csv << rdars::to_csv(result);
    csv.close();

    const auto now = std::chrono::system_clock::now();
    const std::time_t now_t = std::chrono::system_clock::to_time_t(now);
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now_t));

    json sidecar;
    sidecar["figure"] = result.figure_id;
    sidecar["axis"] = result.axis_name;
    sidecar["seed"] = result.base.seed;
    sidecar["tool_version"] = rdars::kVersion;
    sidecar["git_describe"] = rdars::kGitDescribe;
    sidecar["timestamp_utc"] = stamp;
    sidecar["wall_time_s"] = result.wall_time_s;
    sidecar["scenario"] = rdars::serialize_scenario(result.base);
    sidecar["scenario_hash"] = rdars::scenario_hash(result.base);
    sidecar["overrides"] = overrides;
    std::ofstream js(out_path + ".json", std::ios::binary);
    js << sidecar.dump(2) << "\n";

    std::cout << out_path << " (" << result.rows.size() << " rows, "
              << result.wall_time_s << " s)\n";
    return kExitOk;
}

json echo_siso_inputs(const rdars::SisoMomentInputs& in) {
    return json{{"n_total", in.n_total},   {"a", in.a},
                {"alpha", in.alpha},       {"beta", in.beta},
                {"gamma", in.gamma},       {"transmit_snr", in.transmit_snr}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rdars-sim: simulation and closed-form analysis of RDARS-aided uplinks"};
    app.set_version_flag("--version", std::string(rdars::kVersion));
    app.require_subcommand(1);

    // validate
    std::string validate_path;
    auto* validate = app.add_subcommand("validate", "check a scenario file, print canonical form");
    validate->add_option("file", validate_path, "scenario file")->required();

    // figure
    std::string figure_id;
    std::string figure_out = "figure.csv";
    std::optional<std::string> figure_scenario;
    std::vector<std::string> figure_overrides;
    std::optional<std::uint64_t> figure_seed;
    auto* figure = app.add_subcommand("figure", "run a named sweep preset, emit CSV + JSON sidecar");
    figure->add_option("id", figure_id, "one of fig3 fig4a fig4b fig5a fig5b fig6 fig7")->required();
    figure->add_option("--out", figure_out, "output CSV path");
    figure->add_option("--scenario", figure_scenario, "base scenario file (default: built-in)");
    figure->add_option("--override", figure_overrides, "scenario override key=value (repeatable)");
    figure->add_option("--seed", figure_seed, "override the scenario seed");

    // calc
    auto* calc = app.add_subcommand("calc", "closed-form calculators, JSON to stdout");
    calc->require_subcommand(1);
    calc->fallthrough();
    std::optional<std::string> calc_scenario;
    std::vector<std::string> calc_overrides;
    calc->add_option("--scenario", calc_scenario, "scenario file supplying link budget defaults");
    calc->add_option("--override", calc_overrides, "scenario override key=value (repeatable)");

    auto* snr_moments_cmd = calc->add_subcommand("snr-moments", "received-SNR moments and Gamma fit");
    auto* gamma_fit_cmd = calc->add_subcommand("gamma-fit", "Gamma parameters from two moments");
    auto* rate_siso_cmd = calc->add_subcommand("rate-siso", "Gamma-matched ergodic rate, 1-antenna BS");
    auto* rate_simo_cmd = calc->add_subcommand("rate-simo", "moment-ratio ergodic rate, L-antenna BS");
    auto* bound_cmd = calc->add_subcommand("bound", "Jensen upper bound on the ergodic rate");
    auto* threshold_cmd = calc->add_subcommand("threshold", "element count where the passive surface catches up");
    for (auto* sub : {snr_moments_cmd, gamma_fit_cmd, rate_siso_cmd, rate_simo_cmd, bound_cmd, threshold_cmd})
        sub->fallthrough();

    double fit_mean = 0.0, fit_second = 0.0;
    gamma_fit_cmd->add_option("--mean", fit_mean, "first moment of the SNR")->required();
    gamma_fit_cmd->add_option("--second-moment", fit_second, "second moment of the SNR")->required();

    bool bound_printed = false;
    bound_cmd->add_flag("--printed-form", bound_printed,
                        "use the published flattened coefficients instead of the derived mean");

    std::optional<double> f_abs_opt;
    rate_simo_cmd->add_option("--f-abs", f_abs_opt,
                              "coherent reflection sum |f| (default: from the phase policy)");

    try {
        app.parse(argc, argv);

        if (*validate) return cmd_validate(validate_path);

        if (*figure) {
            const rdars::Scenario base = load_scenario(figure_scenario, figure_overrides, figure_seed);
            return cmd_figure(figure_id, base, figure_out, figure_overrides);
        }

        // calc subcommands
        const rdars::Scenario s = load_scenario(calc_scenario, calc_overrides, std::nullopt);
        json out;
        if (*gamma_fit_cmd) {
            const rdars::GammaApprox fit = rdars::gamma_match(fit_mean, fit_second);
            out["inputs"] = {{"mean", fit_mean}, {"second_moment", fit_second}};
            out["shape_k"] = fit.k;
            out["scale_p"] = fit.p;
        } else if (*snr_moments_cmd) {
            const auto in = rdars::siso_inputs(s);
            const auto mom = rdars::snr_moments_siso(in);
            const auto fit = rdars::gamma_match(mom.mean, mom.second);
            out["inputs"] = echo_siso_inputs(in);
            out["mean_snr"] = mom.mean;
            out["second_moment"] = mom.second;
            out["shape_k"] = fit.k;
            out["scale_p"] = fit.p;
        } else if (*rate_siso_cmd) {
            const auto in = rdars::siso_inputs(s);
            const auto mom = rdars::snr_moments_siso(in);
            const auto fit = rdars::gamma_match(mom.mean, mom.second);
            out["inputs"] = echo_siso_inputs(in);
            out["mean_snr"] = mom.mean;
            out["shape_k"] = fit.k;
            out["scale_p"] = fit.p;
            out["rate_bpshz"] = rdars::ergodic_rate_gamma(fit);
        } else if (*rate_simo_cmd) {
            double f_abs = 0.0;
            if (f_abs_opt) {
                f_abs = *f_abs_opt;
            } else if (s.phase_policy == rdars::PhasePolicy::identity) {
                f_abs = rdars::identity_f_abs(s);
            } else {
                f_abs = static_cast<double>(s.n_total() - s.connected_count);
            }
            const auto in = rdars::simo_inputs(s, f_abs);
            out["inputs"] = {{"l_antennas", in.l_antennas}, {"n_total", in.n_total},
                             {"a", in.a},                   {"alpha", in.alpha},
                             {"beta", in.beta},             {"gamma", in.gamma},
                             {"delta", in.delta},           {"epsilon", in.epsilon},
                             {"power_w", in.power},         {"f_abs", in.f_abs}};
            out["e_signal"] = rdars::e_signal(in);
            out["e_noise"] = rdars::e_noise(in);
            out["rate_bpshz"] = rdars::ergodic_rate_simo_approx(in);
        } else if (*bound_cmd) {
            const auto in = rdars::siso_inputs(s);
            out["inputs"] = echo_siso_inputs(in);
            out["form"] = bound_printed ? "printed" : "derived";
            out["bound_bpshz"] = rdars::rate_upper_bound_siso(
                in, bound_printed ? rdars::BoundForm::printed : rdars::BoundForm::derived);
        } else if (*threshold_cmd) {
            const auto in = rdars::siso_inputs(s);
            out["inputs"] = echo_siso_inputs(in);
            out["crossover_n"] = rdars::ris_crossover_n(in.alpha, in.beta, in.gamma, in.a);
        }
        std::cout << out.dump(2) << "\n";
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return kExitNumeric;
    }
}

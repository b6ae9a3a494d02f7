// SPDX-License-Identifier: Apache-2.0
//
// End-to-end acceptance suite. Each test prints one PASS/FAIL line for its
// criterion so the run reads as a checklist; failures also fail the binary.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "catch2/catch_amalgamated.hpp"
#include "rdars/rdars.hpp"

using namespace rdars;

namespace {

struct Stopwatch {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("ACCEPTANCE criterion %2d: %s  %s\n", criterion, pass ? "PASS" : "FAIL",
                detail.c_str());
    std::fflush(stdout);
}

Scenario siso_reference(std::size_t n, std::size_t a, double power_dbm, std::uint64_t seed) {
    Scenario s;
    s.bs.array_rows = s.bs.array_cols = 1;
    set_array_count(s.rdars, n);
    s.connected_count = a;
    s.rician_delta = 0.0;
    s.rician_epsilon = 0.0;
    s.shadow_sigma_db = 0.0;
    s.phase_policy = PhasePolicy::optimal_instantaneous;
    s.transmit_power_dbm = power_dbm;
    s.trials = 10000;
    s.seed = seed;
    s.prepare();
    return s;
}

Scenario simo_reference(std::size_t n, std::size_t a, std::size_t l, PhasePolicy policy,
                        std::uint64_t seed, double delta = 10.0) {
    Scenario s;
    set_array_count(s.bs, l);
    set_array_count(s.rdars, n);
    s.connected_count = a;
    s.rician_delta = delta;
    s.rician_epsilon = 10.0;
    s.shadow_sigma_db = 0.0;
    s.phase_policy = policy;
    s.trials = 10000;
    s.seed = seed;
    s.prepare();
    return s;
}

double mc_rate(const Scenario& s, SystemVariant v) {
    Campaign c = make_campaign(s, v);
    return estimate_rate(c).mean;
}

char buf[512];

}  // namespace

TEST_CASE("criterion 1: single-antenna headline rates at 1024 elements") {
    Stopwatch watch;
    const std::uint64_t seed = 20240901;
    const double rdars = mc_rate(siso_reference(1024, 2, 10.0, seed), SystemVariant::rdars);
    const double das = mc_rate(siso_reference(1024, 2, 10.0, seed), SystemVariant::das);
    const double ris = mc_rate(siso_reference(1024, 0, 10.0, seed), SystemVariant::ris);
    const double elapsed = watch.seconds();
    const bool pass = std::abs(rdars - 2.9) <= 0.15 && std::abs(das - 2.3) <= 0.15 &&
                      std::abs(ris - 1.8) <= 0.15 && elapsed < 120.0;
    std::snprintf(buf, sizeof buf,
                  "rdars=%.3f (want 2.9+-0.15)  das=%.3f (want 2.3+-0.15)  ris=%.3f (want "
                  "1.8+-0.15)  %.1f s",
                  rdars, das, ris, elapsed);
    report(1, pass, buf);
    CHECK(rdars == Catch::Approx(2.9).margin(0.15));
    CHECK(das == Catch::Approx(2.3).margin(0.15));
    CHECK(ris == Catch::Approx(1.8).margin(0.15));
    CHECK(elapsed < 120.0);
}

TEST_CASE("criterion 2: transmit power needed for 2 bps/Hz") {
    const std::uint64_t seed = 424242;
    const auto bisect_power = [&](std::size_t a, SystemVariant v) {
        double lo = -5.0;
        double hi = 20.0;
        while (hi - lo > 0.1) {
            const double mid = 0.5 * (lo + hi);
            (mc_rate(siso_reference(1024, a, mid, seed), v) < 2.0 ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    };
    const double p_rdars = bisect_power(2, SystemVariant::rdars);
    const double p_das = bisect_power(2, SystemVariant::das);
    const double p_ris = bisect_power(0, SystemVariant::ris);
    const bool pass =
        std::abs(p_rdars - 6.0) <= 1.0 && std::abs(p_das - 9.0) <= 1.0 && std::abs(p_ris - 11.0) <= 1.0;
    std::snprintf(buf, sizeof buf,
                  "P*(rdars a2)=%.2f dBm (want 6+-1)  P*(das a2)=%.2f (want 9+-1)  P*(ris)=%.2f "
                  "(want 11+-1)",
                  p_rdars, p_das, p_ris);
    report(2, pass, buf);
    CHECK(p_rdars == Catch::Approx(6.0).margin(1.0));
    CHECK(p_das == Catch::Approx(9.0).margin(1.0));
    CHECK(p_ris == Catch::Approx(11.0).margin(1.0));
}

TEST_CASE("criterion 3: element-count threshold where the passive surface catches up") {
    const double amp = std::pow(10.0, -3.5);
    const double threshold = ris_crossover_n(amp, amp, amp, 1);
    const bool threshold_ok = std::abs(threshold - 8.1e6) <= 0.02 * 8.1e6;

    SisoMomentInputs in;
    in.a = 1;
    in.alpha = in.beta = in.gamma = amp;
    in.transmit_snr = 1e9;
    std::size_t lo = 1000;
    std::size_t hi = 100000000;
    while (hi - lo > 1) {
        const std::size_t mid = lo + (hi - lo) / 2;
        in.n_total = mid;
        const auto ms = mean_snrs(in);
        (ms.rdars > ms.ris ? lo : hi) = mid;
    }
    const double crossing = static_cast<double>(lo);
    const bool crossing_ok = std::abs(crossing - threshold) <= 0.05 * threshold;
    std::snprintf(buf, sizeof buf, "threshold=%.4g (want 8.1e6+-2%%)  mean-SNR crossing=%.4g",
                  threshold, crossing);
    report(3, threshold_ok && crossing_ok, buf);
    CHECK(threshold == Catch::Approx(8.1e6).epsilon(0.02));
    CHECK(crossing == Catch::Approx(threshold).epsilon(0.05));
}

TEST_CASE("criterion 4: antenna-count comparisons at 512 elements") {
    const std::uint64_t seed = 8675309;
    const double rdars_l4a1 =
        mc_rate(simo_reference(512, 1, 4, PhasePolicy::statistical_aligned, seed), SystemVariant::rdars);
    const double das_l4a1 =
        mc_rate(simo_reference(512, 1, 4, PhasePolicy::statistical_aligned, seed), SystemVariant::das);
    const double gap = rdars_l4a1 - das_l4a1;

    const double rdars_l4a2 =
        mc_rate(simo_reference(512, 2, 4, PhasePolicy::statistical_aligned, seed), SystemVariant::rdars);

    std::size_t l_star = 0;
    for (std::size_t l : {8, 9, 10, 11, 12}) {
        const double ris =
            mc_rate(simo_reference(512, 0, l, PhasePolicy::statistical_aligned, seed), SystemVariant::ris);
        if (ris >= 3.0) {
            l_star = l;
            break;
        }
    }
    const bool pass = std::abs(gap - 0.9) <= 0.15 && l_star >= 9 && l_star <= 11 &&
                      std::abs(rdars_l4a2 - 3.0) <= 0.15;
    std::snprintf(buf, sizeof buf,
                  "rdars(L=4,a=1)-das gap=%.3f (want 0.9+-0.15)  ris L*=%zu (want 10+-1)  "
                  "rdars(L+a=6)=%.3f (want 3+-0.15)",
                  gap, l_star, rdars_l4a2);
    report(4, pass, buf);
    CHECK(gap == Catch::Approx(0.9).margin(0.15));
    CHECK(l_star >= 9);
    CHECK(l_star <= 11);
    CHECK(rdars_l4a2 == Catch::Approx(3.0).margin(0.15));
}

TEST_CASE("criterion 5: phase-design and passive-surface gaps at 512 elements") {
    const std::uint64_t seed = 8675309;
    const double aligned =
        mc_rate(simo_reference(512, 2, 4, PhasePolicy::statistical_aligned, seed), SystemVariant::rdars);
    const double identity =
        mc_rate(simo_reference(512, 2, 4, PhasePolicy::identity, seed), SystemVariant::rdars);
    const double ris =
        mc_rate(simo_reference(512, 0, 4, PhasePolicy::statistical_aligned, seed), SystemVariant::ris);
    const double phase_gap = aligned - identity;
    const double ris_gap = aligned - ris;
    const bool pass = std::abs(phase_gap - 0.5) <= 0.1 && std::abs(ris_gap - 1.0) <= 0.15;
    std::snprintf(buf, sizeof buf,
                  "aligned-vs-identity gap=%.3f (want 0.5+-0.1)  rdars-vs-ris gap=%.3f (want "
                  "1.0+-0.15)",
                  phase_gap, ris_gap);
    report(5, pass, buf);
    CHECK(phase_gap == Catch::Approx(0.5).margin(0.1));
    CHECK(ris_gap == Catch::Approx(1.0).margin(0.15));
}

TEST_CASE("criterion 6: envelope moment oracle across randomized parameter tuples") {
    Stopwatch watch;
    const std::size_t samples = 10000000;
    Xoshiro256 tuple_rng(60601);
    bool all_pass = true;
    int checked = 0;
    for (int tuple = 0; tuple < 20; ++tuple) {
        const std::size_t n = 2 + tuple_rng() % 23;
        const std::size_t a = tuple_rng() % (n + 1);
        const double alpha = 0.3 + 1.7 * tuple_rng.uniform();
        const double beta = 0.3 + 1.7 * tuple_rng.uniform();
        const double gamma = 0.3 + 1.7 * tuple_rng.uniform();
        const std::uint64_t seed = 100000 + static_cast<std::uint64_t>(tuple) * 1000;

        const auto g1 = empirical_gamma1_moments(gamma, samples, seed);
        const auto g1_closed = gamma1_moments(gamma);
        for (int i = 0; i < 4; ++i, ++checked)
            all_pass &= std::abs(g1_closed[i] - g1[i].value) <= 3.0 * g1[i].std_error + 1e-12;

        const auto g2 = empirical_gamma2_moments(n, a, alpha, beta, samples, seed + 1);
        const auto g2_closed = gamma2_moments(n, a, alpha, beta);
        for (int i = 0; i < 4; ++i, ++checked)
            all_pass &= std::abs(g2_closed[i] - g2[i].value) <= 3.0 * g2[i].std_error + 1e-12;

        const auto g3 = empirical_gamma3_moments(a, alpha, samples, seed + 2);
        const auto g3_closed = gamma3_moments(a, alpha);
        for (int i = 0; i < 2; ++i, ++checked)
            all_pass &= std::abs(g3_closed[i] - g3[i].value) <= 3.0 * g3[i].std_error + 1e-12;
    }
    const double elapsed = watch.seconds();
    const bool pass = all_pass && elapsed < 300.0;
    std::snprintf(buf, sizeof buf, "%d moment comparisons at 3 standard errors, %.1f s (budget 300)",
                  checked, elapsed);
    report(6, pass, buf);
    CHECK(all_pass);
    CHECK(elapsed < 300.0);
}

TEST_CASE("criterion 7: fourth-moment term decomposition against sampling") {
    const std::size_t samples = 10000000;
    bool all_pass = true;
    std::string detail;
    struct Instance {
        std::size_t l, n, a;
        double delta, epsilon;
    };
    for (const Instance inst : {Instance{2, 6, 1, 3.0, 3.0}, Instance{4, 16, 2, 10.0, 10.0}}) {
        Scenario s;
        set_array_count(s.bs, inst.l);
        set_array_count(s.rdars, inst.n);
        s.connected_count = inst.a;
        s.rician_delta = inst.delta;
        s.rician_epsilon = inst.epsilon;
        s.gain_override_ue_bs_db = 0.0;
        s.gain_override_ue_rdars_db = 0.0;
        s.gain_override_rdars_bs_db = 0.0;
        s.phase_policy = PhasePolicy::statistical_aligned;
        s.seed = 90210 + inst.n;
        s.prepare();

        const auto sampled = empirical_simo_fourth_moments(s, samples, s.seed + 1);
        SimoRateInputs in = simo_inputs(s, static_cast<double>(inst.n - inst.a));
        const auto closed_terms = e_signal_terms(in);
        int worst_term = -1;
        double worst_sigmas = 0.0;
        for (int t = 0; t < 14; ++t) {
            const double err = std::abs(closed_terms[t] - sampled.terms[t].value);
            const double tol = 3.0 * sampled.terms[t].std_error + 1e-12;
            if (err > tol) all_pass = false;
            const double sigmas =
                sampled.terms[t].std_error > 0 ? err / sampled.terms[t].std_error : 0.0;
            if (sigmas > worst_sigmas) {
                worst_sigmas = sigmas;
                worst_term = t + 1;
            }
            CHECK(err <= tol);
        }
        const double sig_err = std::abs(e_signal(in) - sampled.signal_fourth.value);
        const double noise_err = std::abs(e_noise(in) - sampled.noise_quad.value);
        all_pass &= sig_err <= 3.0 * sampled.signal_fourth.std_error;
        all_pass &= noise_err <= 3.0 * sampled.noise_quad.std_error;
        CHECK(sig_err <= 3.0 * sampled.signal_fourth.std_error);
        CHECK(noise_err <= 3.0 * sampled.noise_quad.std_error);
        std::snprintf(buf, sizeof buf, "[L=%zu N=%zu a=%zu worst term %d at %.2f se] ", inst.l,
                      inst.n, inst.a, worst_term, worst_sigmas);
        detail += buf;
    }
    report(7, all_pass, detail + "totals within 3 se");
}

TEST_CASE("criterion 8: closed forms track the simulation on both element sweeps") {
    bool all_pass = true;
    double worst = 0.0;
    std::string worst_where = "-";
    for (const char* fig : {"fig4a", "fig5a"}) {
        Scenario base;
        base.trials = 10000;
        base.seed = 13131313;
        base.prepare();
        const FigureResult result = run_figure(fig, base);
        for (const ResultRow& mc : result.rows) {
            if (mc.provenance != "monte-carlo") continue;
            for (const ResultRow& closed : result.rows) {
                if (closed.provenance != "closed-form" || closed.system != mc.system ||
                    closed.axis_value != mc.axis_value)
                    continue;
                const double err = std::abs(closed.rate_mean - mc.rate_mean);
                const double tol = std::max(0.1, 3.0 * mc.ci_halfwidth_95);
                if (err > tol) all_pass = false;
                if (err > worst) {
                    worst = err;
                    worst_where = std::string(fig) + " " + mc.system + " N=" +
                                  std::to_string(static_cast<long long>(mc.axis_value));
                }
                CHECK(err <= tol);
            }
        }
    }
    std::snprintf(buf, sizeof buf, "worst |closed - sim| = %.3f bps/Hz at %s (allowance 0.1)",
                  worst, worst_where.c_str());
    report(8, all_pass, buf);
}

TEST_CASE("criterion 9: Jensen ordering holds exactly for randomized inputs") {
    Xoshiro256 rng(990099);
    bool all_pass = true;
    for (int iter = 0; iter < 200; ++iter) {
        SisoMomentInputs in;
        in.n_total = 1 + rng() % 4096;
        in.a = rng() % (in.n_total + 1);
        in.alpha = std::pow(10.0, -4.0 * rng.uniform());
        in.beta = std::pow(10.0, -4.0 * rng.uniform());
        in.gamma = std::pow(10.0, -4.0 * rng.uniform());
        in.transmit_snr = std::pow(10.0, 10.0 * rng.uniform() - 1.0);
        const auto mom = snr_moments_siso(in);
        const double rate = ergodic_rate_gamma(gamma_match(mom.mean, mom.second));
        const double bound = rate_upper_bound_siso(in);
        if (!(bound >= rate) || !(rate >= 0.0)) all_pass = false;
        REQUIRE(bound >= rate);
        REQUIRE(rate >= 0.0);
    }
    report(9, all_pass, "bound >= Gamma rate >= 0 across 200 randomized parameter sets");
}

TEST_CASE("criterion 10: figure output is byte-identical across reruns and worker counts") {
    Scenario base;
    base.trials = 1000;
    base.seed = 55555;
    base.prepare();

    Scenario serial = base;
    serial.parallelism = 1;
    const std::string csv_a = to_csv(run_figure("fig4b", serial));
    const std::string csv_b = to_csv(run_figure("fig4b", serial));
    Scenario wide = base;
    wide.parallelism = 16;
    const std::string csv_c = to_csv(run_figure("fig4b", wide));

    const bool pass = (csv_a == csv_b) && (csv_a == csv_c) && !csv_a.empty();
    std::snprintf(buf, sizeof buf, "%zu-byte CSV identical across rerun and 1-vs-16 workers",
                  csv_a.size());
    report(10, pass, buf);
    CHECK(csv_a == csv_b);
    CHECK(csv_a == csv_c);
}

// SPDX-License-Identifier: Apache-2.0

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "catch2/catch_amalgamated.hpp"
#include "rdars/figures.hpp"

using namespace rdars;

namespace {

Scenario quick_base() {
    Scenario s;
    s.trials = 400;
    s.seed = 2024;
    s.prepare();
    return s;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

#ifdef RDARS_SIM_BIN
int run_cli(const std::string& args) {
    const std::string cmd = std::string(RDARS_SIM_BIN) + " " + args;
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}
#endif

}  // namespace

TEST_CASE("unknown figure ids are rejected") {
    CHECK_THROWS_AS(run_figure("fig99", quick_base()), std::invalid_argument);
}

TEST_CASE("figure reruns are byte-identical and scheduling independent") {
    Scenario base = quick_base();
    set_array_count(base.rdars, 64);
    base.prepare();

    Scenario p1 = base;
    p1.parallelism = 1;
    const std::string csv_serial = to_csv(run_figure("fig4b", p1));
    Scenario p16 = base;
    p16.parallelism = 16;
    const std::string csv_wide = to_csv(run_figure("fig4b", p16));
    CHECK(csv_serial == csv_wide);

    const std::string again = to_csv(run_figure("fig4b", p1));
    CHECK(csv_serial == again);
}

TEST_CASE("reference comparison preset emits the expected systems and ordering") {
    Scenario base = quick_base();
    const FigureResult result = run_figure("fig3", base);
    REQUIRE(!result.rows.empty());
    for (const auto& row : result.rows) CHECK(row.provenance == "closed-form");

    // At 1024 elements the reconfigurable surface tops both baselines, and
    // the bare link sits at transmit SNR times direct gain: 20 dB.
    double rdars = 0.0, ris = 0.0, das = 0.0, bare = 0.0;
    double closest = 1e9;
    double n_near_1024 = 0.0;
    for (const auto& row : result.rows)
        if (std::abs(row.axis_value - 1024.0) < closest) {
            closest = std::abs(row.axis_value - 1024.0);
            n_near_1024 = row.axis_value;
        }
    for (const auto& row : result.rows) {
        if (row.axis_value != n_near_1024) continue;
        if (row.system == "rdars_a1") rdars = row.rate_mean;
        if (row.system == "ris") ris = row.rate_mean;
        if (row.system == "das_a1") das = row.rate_mean;
        if (row.system == "no_surface") bare = row.rate_mean;
    }
    CHECK(rdars >= ris);
    CHECK(rdars >= das);
    CHECK(bare == Catch::Approx(20.0).margin(1e-9));
}

TEST_CASE("csv schema is stable") {
    FigureResult r;
    r.rows.push_back({4.0, "ris", 1.5, 0.01, "monte-carlo", "deadbeefdeadbeef"});
    const std::string csv = to_csv(r);
    CHECK(csv.substr(0, csv.find('\n')) ==
          "axis_value,system,rate_mean,ci_halfwidth_95,provenance,scenario_hash");
    CHECK(csv.find("4,ris,1.5,0.01,monte-carlo,deadbeefdeadbeef") != std::string::npos);
}

#ifdef RDARS_SIM_BIN

TEST_CASE("command line: validate") {
    const std::string good = "/tmp/rdars_test_scenario_good.txt";
    {
        std::ofstream out(good);
        out << "seed = 9\nrdars.rows = 8\nrdars.cols = 8\n";
    }
    CHECK(run_cli("validate " + good + " > /tmp/rdars_validate_out.txt") == 0);
    const std::string canonical = slurp("/tmp/rdars_validate_out.txt");
    CHECK(canonical.find("seed = 9") != std::string::npos);
    CHECK(canonical.find("rdars.rows = 8") != std::string::npos);

    const std::string bad = "/tmp/rdars_test_scenario_bad.txt";
    {
        std::ofstream out(bad);
        out << "rdars.rows = 2\nrdars.cols = 2\nrdars.connected_count = 9\n";
    }
    CHECK(run_cli("validate " + bad + " 2>/dev/null") == 1);
}

TEST_CASE("command line: calculators emit JSON") {
    CHECK(run_cli("calc gamma-fit --mean 2 --second-moment 6 > /tmp/rdars_fit.json") == 0);
    const std::string text = slurp("/tmp/rdars_fit.json");
    CHECK(text.find("\"shape_k\": 2.0") != std::string::npos);
    CHECK(text.find("\"scale_p\": 1.0") != std::string::npos);
    CHECK(run_cli("calc gamma-fit --mean 2 --second-moment 3 2>/dev/null") == 1);
}

TEST_CASE("command line: figure emits CSV plus sidecar, reruns identical") {
    const std::string out = "/tmp/rdars_fig4b.csv";
    const std::string args = "figure fig4b --out " + out +
                             " --seed 31 --override trials=200 --override rdars.rows=8 "
                             "--override rdars.cols=8 > /dev/null";
    REQUIRE(run_cli(args) == 0);
    const std::string first = slurp(out);
    CHECK(first.substr(0, first.find('\n')) ==
          "axis_value,system,rate_mean,ci_halfwidth_95,provenance,scenario_hash");
    const std::string sidecar = slurp(out + ".json");
    CHECK(sidecar.find("\"figure\": \"fig4b\"") != std::string::npos);
    CHECK(sidecar.find("\"seed\": 31") != std::string::npos);

    REQUIRE(run_cli(args) == 0);
    CHECK(slurp(out) == first);

    CHECK(run_cli("figure fig99 --out /tmp/rdars_none.csv 2>/dev/null") == 1);
}

#endif

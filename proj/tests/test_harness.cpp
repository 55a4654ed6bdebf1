#include "vortexsim/scenario.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

using namespace vsim;

namespace {

std::string small_config(const char* extra_sections = "") {
    std::ostringstream s;
    s << "{ \"sim\": { \"l_x\": 8, \"l_y\": 16, \"n_kx\": 3, \"n_ky\": 1, "
         "\"t_start\": -30, \"t_end\": 30 }, "
         "\"pulse\": { \"shape\": \"bipolar-derivative\", \"e_max\": 0.1, \"m_min\": 0.8, "
         "\"t_p\": 3, \"t_center_m_offset\": -2.1 }"
      << extra_sections << " }";
    return s.str();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("fnv1a64 reference vectors") {
    CHECK(fnv1a64("") == 0xcbf29ce484222325ull);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);
    CHECK(fnv1a64("foobar") == 0x85944171f73967e8ull);
}

TEST_CASE("config parsing: defaults, hash stability, error reporting") {
    const Scenario sc = scenario_from_json_text(small_config());
    CHECK(sc.sim.l_x == 8.0);
    CHECK(sc.sim.m0 == 1.0);               // default
    CHECK(sc.sim.tol == 1e-10);            // default
    CHECK(sc.outputs.samples_per_period == 40);
    CHECK(sc.evolve.method == EvolveMethod::MagnusGl4);
    CHECK(sc.pulse.t_center_m() == doctest::Approx(-2.1).epsilon(1e-14));
    CHECK(sc.config_hash != 0);
    // hash is canonical: whitespace-insensitive, key-order-insensitive
    const Scenario sc2 = scenario_from_json_text(
        "{\"pulse\":{\"t_p\":3,\"m_min\":0.8,\"e_max\":0.1,\"t_center_m_offset\":-2.1,"
        "\"shape\":\"bipolar-derivative\"},"
        "\"sim\":{\"t_end\":30,\"t_start\":-30,\"n_ky\":1,\"n_kx\":3,\"l_y\":16,\"l_x\":8}}");
    CHECK(sc2.config_hash == sc.config_hash);
    // ... but any value change moves it
    CHECK(scenario_from_json_text(small_config(", \"outputs\": {\"dump_modes\": true}"))
              .config_hash != sc.config_hash);

    CHECK_THROWS(scenario_from_json_text("{ not json"));
    CHECK_THROWS(scenario_from_json_text("{ \"simulation\": {} }"));       // unknown section
    CHECK_THROWS(scenario_from_json_text("{ \"sim\": { \"lx\": 8 } }"));   // unknown key
    CHECK_THROWS(scenario_from_json_text(
        small_config(", \"evolve\": { \"method\": \"euler\" }")));
    CHECK_THROWS(scenario_from_json_text(
        small_config(", \"sweep\": { \"axis\": \"m0\", \"values\": [1, 2] }")));
    CHECK_THROWS(scenario_from_json_text(
        small_config(", \"sweep\": { \"axis\": \"l_x\", \"values\": [2, 2] }")));
    CHECK_THROWS(load_scenario("/nonexistent/path/config.json"));
}

TEST_CASE("null-pulse run transports nothing and stays in vacuum") {
    Scenario sc = scenario_from_json_text(
        "{ \"sim\": { \"l_x\": 8, \"l_y\": 16, \"n_kx\": 2, \"n_ky\": 1, "
        "\"t_start\": -10, \"t_end\": 10 }, "
        "\"pulse\": { \"e_max\": 0, \"m_min\": 1, \"t_p\": 1 } }");
    const RunResult r = run_simulate(sc);
    CHECK(std::abs(r.n_transported) < 1e-12);
    CHECK(r.n_total_final < 1e-10);
    CHECK(r.max_n_k < 1e-10);
    CHECK(r.n_transported_pred == 0.0);
    CHECK(r.adiabaticity_margin == 0.0);
    CHECK(r.version == kVersion);
    CHECK(r.config_hash == sc.config_hash);
    CHECK(r.times.size() == r.j_x.size());
    CHECK(r.times.size() == r.n_total.size());
    // sampling grid: at least min_samples_pulse across t_p = 1 over the span
    CHECK(r.times.size() >= 400);
}

TEST_CASE("expand_sweep semantics") {
    const Scenario base = scenario_from_json_text(
        small_config(", \"sweep\": { \"axis\": \"l_x\", \"values\": [6, 8, 12] }"));
    const auto pts = expand_sweep(base);
    REQUIRE(pts.size() == 3);
    CHECK(pts[0].first == 6.0);
    CHECK(pts[0].second.sim.l_x == 6.0);
    CHECK(pts[0].second.sim.l_y == 12.0); // aspect ratio 2 preserved
    CHECK(pts[2].second.sim.l_y == 24.0);
    CHECK(pts[1].second.sweep.axis.empty()); // points are not themselves sweeps

    const Scenario tp = scenario_from_json_text(
        small_config(", \"sweep\": { \"axis\": \"t_p\", \"values\": [3, 6] }"));
    const auto tpts = expand_sweep(tp);
    CHECK(tpts[1].second.pulse.t_p() == 6.0);
    // the M-dip offset scales with t_p (shape-preserving rescale)
    CHECK(tpts[1].second.pulse.t_center_m() == doctest::Approx(-4.2).epsilon(1e-12));
    CHECK_THROWS(expand_sweep(scenario_from_json_text(small_config())));
}

TEST_CASE("run artifacts: CSV layout and JSON summary round-trip") {
    Scenario sc = scenario_from_json_text(
        "{ \"sim\": { \"l_x\": 8, \"l_y\": 16, \"n_kx\": 2, \"n_ky\": 0, "
        "\"t_start\": -25, \"t_end\": 25 }, "
        "\"pulse\": { \"e_max\": 0.1, \"m_min\": 0.8, \"t_p\": 3, "
        "\"t_center_m_offset\": -2.1 } }");
    const RunResult r = run_simulate(sc);
    write_run_csv(r, "test_run.csv");
    write_run_json(sc, r, "test_run.json");

    std::ifstream csv("test_run.csv");
    std::string header;
    std::getline(csv, header);
    CHECK(header == "t,j_x,n_total,e_tilde,m_of_t");
    std::size_t rows = 0;
    for (std::string line; std::getline(csv, line);) ++rows;
    CHECK(rows == r.times.size());

    const std::string js = slurp("test_run.json");
    CHECK(js.find("\"config_hash\"") != std::string::npos);
    CHECK(js.find(kVersion) != std::string::npos);
    CHECK(js.find("\"n_transported\"") != std::string::npos);
    CHECK(js.find("\"max_wronskian_drift\"") != std::string::npos);
    std::remove("test_run.csv");
    std::remove("test_run.json");
}

TEST_CASE("determinism: serial and parallel runs write identical bytes") {
    Scenario sc = scenario_from_json_text(
        "{ \"sim\": { \"l_x\": 8, \"l_y\": 16, \"n_kx\": 3, \"n_ky\": 1, "
        "\"t_start\": -25, \"t_end\": 25 }, "
        "\"pulse\": { \"e_max\": 0.1, \"m_min\": 0.8, \"t_p\": 3, "
        "\"t_center_m_offset\": -2.1 } }");
    sc.evolve.parallel = false;
    const RunResult a = run_simulate(sc);
    write_run_csv(a, "det_a.csv");
    sc.evolve.parallel = true;
    const RunResult b = run_simulate(sc);
    write_run_csv(b, "det_b.csv");
    CHECK(slurp("det_a.csv") == slurp("det_b.csv"));
    CHECK(slurp("det_a.csv").size() > 1000);
    std::remove("det_a.csv");
    std::remove("det_b.csv");
}

TEST_CASE("run_verify suites") {
    std::ostringstream out;
    CHECK(run_verify("lattice-sum", out) == 0);
    CHECK(run_verify("materials", out) == 0);
    CHECK(run_verify("saddle", out) == 0);
    CHECK(out.str().find("PASS") != std::string::npos);
    CHECK(out.str().find("FAIL ") == std::string::npos);
    CHECK_THROWS(run_verify("no-such-suite", out));
}

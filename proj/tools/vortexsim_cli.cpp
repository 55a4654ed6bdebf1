#include "vortexsim/estimates.hpp"
#include "vortexsim/fermion_core.hpp"
#include "vortexsim/instanton.hpp"
#include "vortexsim/scenario.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace vsim;

namespace {

void apply_threads(int threads) {
#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#else
    (void)threads;
#endif
}

Scenario load_with_overrides(const std::string& config, double tol) {
    Scenario sc = load_scenario(config);
    if (tol > 0.0) {
        sc.sim.tol = tol;
        sc.evolve.tol = tol;
    }
    return sc;
}

void write_modes_csv(const Scenario& sc, const RunResult& r, const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    std::fprintf(f, "nx,ny,k_x,k_y,n_k\n");
    std::size_t i = 0;
    for (int nx = -sc.sim.n_kx; nx <= sc.sim.n_kx; ++nx)
        for (int ny = -sc.sim.n_ky; ny <= sc.sim.n_ky; ++ny, ++i)
            std::fprintf(f, "%d,%d,%.17g,%.17g,%.17g\n", nx, ny, sc.sim.kx(nx), sc.sim.ky(ny),
                         r.n_k_final[i]);
    std::fclose(f);
}

int cmd_simulate(const std::string& config, const std::string& out, double tol) {
    const Scenario sc = load_with_overrides(config, tol);
    const RunResult r = run_simulate(sc);
    fs::create_directories(out);
    write_run_json(sc, r, (fs::path(out) / "run.json").string());
    write_run_csv(r, (fs::path(out) / "run.csv").string());
    if (sc.outputs.dump_modes) write_modes_csv(sc, r, (fs::path(out) / "run_modes.csv").string());
    std::cout << "n_transported = " << r.n_transported << " (predicted " << r.n_transported_pred
              << "), n_total_final = " << r.n_total_final << "\n";
    return 0;
}

int cmd_sweep(const std::string& config, const std::string& out, double tol) {
    const Scenario sc = load_with_overrides(config, tol);
    const auto points = expand_sweep(sc);
    fs::create_directories(out);
    std::vector<std::pair<double, RunResult>> rows;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const RunResult r = run_simulate(points[i].second);
        char stem[32];
        std::snprintf(stem, sizeof stem, "point_%03zu", i);
        write_run_json(points[i].second, r, (fs::path(out) / (std::string(stem) + ".json")).string());
        write_run_csv(r, (fs::path(out) / (std::string(stem) + ".csv")).string());
        rows.emplace_back(points[i].first, r);
    }
    write_sweep_csv(rows, sc.sweep.axis, (fs::path(out) / "sweep.csv").string());
    std::cout << "sweep complete: " << rows.size() << " points\n";
    return 0;
}

int cmd_estimate(double d_nm, double xi_nm, double delta_nm, double gap_k, double l_x_nm,
                 double t_p_s, double enhance, const std::string& out) {
    const PhysicalConstants pc;
    const MaterialParams mat = make_material_nm(d_nm, xi_nm, delta_nm, gap_k);
    for (const auto& w : mat.validate()) std::cerr << "warning: " << w << "\n";
    const ConditionReport r = check_conditions(mat, pc, l_x_nm * 1e-7, t_p_s, enhance);
    json j;
    j["version"] = kVersion;
    j["lambda_nm"] = r.lambda_compton * 1e7;
    j["m0_erg"] = r.m0_phys;
    j["m0_hz"] = r.m0_phys / pc.hbar;
    j["c1_cm_s"] = r.c1_phys;
    j["m_vortex_g"] = r.m_vortex;
    j["ratio_lx_lambda"] = r.ratio_lx_lambda;
    j["gap_reduction"] = r.gap_reduction;
    j["t_p_bound_quasiparticle_s"] = r.t_p_bound_quasiparticle;
    j["t_p_bound_vortex_s"] = r.t_p_bound_vortex;
    for (const auto& c : r.checks)
        j["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"margin", c.margin}});
    std::cout << j.dump(2) << "\n";
    if (!out.empty()) {
        fs::create_directories(out);
        std::ofstream f(fs::path(out) / "estimate.json");
        f << j.dump(2) << "\n";
    }
    return 0;
}

int cmd_instanton(double m_freq, double l_x, double c1, double k_f, double omega0, double d,
                  double c_coeff, const std::string& out) {
    json j;
    j["version"] = kVersion;
    const InstantonResult r = saddle(m_freq, l_x, c1);
    j["saddle"] = {{"v_e_star", r.v_e_star}, {"tau1", r.tau1},       {"s_e", r.s_e},
                   {"exponent_with_entropy", r.exponent_with_entropy},
                   {"tau0_estimate", r.tau0_estimate},               {"branch", r.branch}};
    if (k_f > 0.0) {
        const InstantonResult e = saddle_effective(m_freq, l_x, {k_f, omega0, d}, c_coeff);
        j["saddle_effective"] = {{"v_e_star", e.v_e_star}, {"tau1", e.tau1}, {"s_e", e.s_e},
                                 {"exponent_with_entropy", e.exponent_with_entropy},
                                 {"branch", e.branch}};
        j["longitudinal_action"] =
            longitudinal_fermion_action(l_x, k_f, omega0, 1.0 / m_freq, d);
        const TransversePhase tp = transverse_phase(l_x, l_x, k_f, d, omega0, r.tau1);
        j["transverse_imag_action_per_lx_y"] = tp.imag_action / (l_x * l_x);
        j["transverse_rel_correction"] = tp.rel_correction;
    }
    std::cout << j.dump(2) << "\n";
    if (!out.empty()) {
        fs::create_directories(out);
        std::ofstream f(fs::path(out) / "instanton.json");
        f << j.dump(2) << "\n";
    }
    return 0;
}

int cmd_fermions(double gap, double v_f, double k_f, double k_z, double v_peak, double tau,
                 double t_end, double x_kick, const std::string& out) {
    CoreBand band;
    band.gap = gap;
    band.v_f = v_f;
    band.k_f = k_f;
    fs::create_directories(out);
    const double omega0 = band.omega0(k_z);
    // occupation boundary for the smooth pulse
    const VelocityProfile pulse = VelocityProfile::gaussian(v_peak, 0.0, tau);
    const FermionOccupation occ = vlasov_evolve(
        [](double l) { return l > 0.0 ? 1.0 : 0.0; }, pulse, band, k_z, t_end);
    {
        std::FILE* f = std::fopen((fs::path(out) / "boundary.csv").string().c_str(), "w");
        if (!f) throw std::runtime_error("cannot write boundary.csv");
        std::fprintf(f, "phi,boundary_shift\n");
        for (std::size_t i = 0; i < occ.phi_grid.size(); ++i)
            std::fprintf(f, "%.17g,%.17g\n", occ.phi_grid[i], occ.boundary_shift[i]);
        std::fclose(f);
    }
    // momentum time series for a delta kick of displacement x
    {
        std::FILE* f = std::fopen((fs::path(out) / "momentum.csv").string().c_str(), "w");
        if (!f) throw std::runtime_error("cannot write momentum.csv");
        std::fprintf(f, "t,p_x,p_y\n");
        const double period = 2.0 * M_PI / band.omega0(0.0);
        const int n = 300;
        for (int i = 0; i <= n; ++i) {
            const double t = 3.0 * period * i / n;
            const Momentum p = momentum_transfer(x_kick, t, band, 1.0);
            std::fprintf(f, "%.17g,%.17g,%.17g\n", t, p.p_x, p.p_y);
        }
        std::fclose(f);
    }
    std::cout << "wrote boundary.csv and momentum.csv (omega0(k_z) = " << omega0 << ")\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"vortexsim: induced vortex tunneling in a superconducting wire"};
    app.require_subcommand(1);
    std::string config, out = ".";
    int threads = 0;
    double tol = 0.0;
    app.add_option("--threads", threads, "worker thread count (0 = library default)");
    app.add_option("--tol", tol, "override integrator relative tolerance");
    app.add_option("--out", out, "output directory");

    auto* sim = app.add_subcommand("simulate", "run one scenario");
    sim->add_option("--config", config, "scenario JSON")->required();
    auto* swp = app.add_subcommand("sweep", "run the scenario's sweep axis");
    swp->add_option("--config", config, "scenario JSON with sweep section")->required();

    auto* est = app.add_subcommand("estimate", "material estimates and condition checks");
    double d_nm = 10, xi_nm = 30, delta_nm = 100, gap_k = 10, l_x_nm = 1000, t_p_s = 1e-9,
           enhance = 1.0;
    est->add_option("--d-nm", d_nm, "film thickness, nm");
    est->add_option("--xi-nm", xi_nm, "coherence length, nm");
    est->add_option("--delta-nm", delta_nm, "London length, nm");
    est->add_option("--gap-k", gap_k, "gap, kelvin");
    est->add_option("--l-x-nm", l_x_nm, "circumference, nm");
    est->add_option("--t-p-s", t_p_s, "pulse timescale, s");
    est->add_option("--log-enhancement", enhance, "optional M0 multiplier");

    auto* ins = app.add_subcommand("instanton", "saddle-point report");
    double m_freq = 1.0, l_x = 100.0, c1 = 1.0, k_f = 0.0, omega0 = 0.0, d = 0.0, c_coeff = 1.0;
    ins->add_option("--m", m_freq, "vortex frequency M");
    ins->add_option("--l-x", l_x, "circumference");
    ins->add_option("--c1", c1, "limiting speed");
    ins->add_option("--k-f", k_f, "Fermi wavenumber (enables fermion terms)");
    ins->add_option("--omega0", omega0, "minigap at k_z = 0");
    ins->add_option("--d", d, "film thickness");
    ins->add_option("--c-coeff", c_coeff, "order-one coefficient C");

    auto* fer = app.add_subcommand("fermions", "core-fermion kinetics outputs");
    double gap = 0.4, v_f = 1.0, kf2 = 1.0, k_z = 0.3, v_peak = 0.05, tau = 2.0, t_end = 10.0,
           x_kick = 0.1;
    fer->add_option("--gap", gap, "gap Delta");
    fer->add_option("--v-f", v_f, "Fermi velocity");
    fer->add_option("--k-f", kf2, "Fermi wavenumber");
    fer->add_option("--k-z", k_z, "axial wavenumber");
    fer->add_option("--v-peak", v_peak, "peak vortex velocity");
    fer->add_option("--tau", tau, "velocity pulse width");
    fer->add_option("--t-end", t_end, "observation time");
    fer->add_option("--x-kick", x_kick, "delta-kick displacement for momentum series");

    auto* ver = app.add_subcommand("verify", "run self-check suites");
    std::string suite = "all";
    ver->add_option("suite", suite, "lattice-sum | materials | fermion | saddle | all");

    CLI11_PARSE(app, argc, argv);
    apply_threads(threads);
    try {
        if (sim->parsed()) return cmd_simulate(config, out, tol);
        if (swp->parsed()) return cmd_sweep(config, out, tol);
        if (est->parsed())
            return cmd_estimate(d_nm, xi_nm, delta_nm, gap_k, l_x_nm, t_p_s, enhance,
                                out == "." ? "" : out);
        if (ins->parsed())
            return cmd_instanton(m_freq, l_x, c1, k_f, omega0, d, c_coeff, out == "." ? "" : out);
        if (fer->parsed())
            return cmd_fermions(gap, v_f, kf2, k_z, v_peak, tau, t_end, x_kick, out);
        if (ver->parsed()) return run_verify(suite, std::cout) == 0 ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

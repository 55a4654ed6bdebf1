#include "vortexsim/scenario.hpp"

#include "vortexsim/estimates.hpp"
#include "vortexsim/fermion_core.hpp"
#include "vortexsim/instanton.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace vsim {

using nlohmann::json;

std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

namespace {

void require_known_keys(const json& j, const char* section,
                        std::initializer_list<const char*> known) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : known)
            if (it.key() == k) ok = true;
        if (!ok)
            throw std::invalid_argument(std::string("config: unknown key '") + it.key() +
                                        "' in section '" + section + "'");
    }
}

template <typename T>
T get_or(const json& j, const char* key, T def) {
    auto it = j.find(key);
    return it == j.end() ? def : it->get<T>();
}

PulseProfile parse_pulse(const json& jp, double m0) {
    require_known_keys(jp, "pulse",
                       {"shape", "e_max", "m_min", "t_p", "t_center", "t_center_m_offset",
                        "samples"});
    const std::string shape = get_or<std::string>(jp, "shape", "bipolar-derivative");
    if (shape == "custom-sampled") {
        if (!jp.contains("samples"))
            throw std::invalid_argument("config: custom-sampled pulse needs 'samples'");
        std::vector<PulseSample> s;
        for (const auto& row : jp.at("samples")) {
            if (!row.is_array() || row.size() != 3)
                throw std::invalid_argument("config: each pulse sample must be [t, e_tilde, m]");
            s.push_back({row[0].get<double>(), row[1].get<double>(), row[2].get<double>()});
        }
        return PulseProfile::make_custom(m0, std::move(s));
    }
    return make_pulse(shape, m0, get_or<double>(jp, "e_max", 0.0),
                      get_or<double>(jp, "m_min", m0), get_or<double>(jp, "t_p", 1.0),
                      get_or<double>(jp, "t_center", 0.0),
                      get_or<double>(jp, "t_center_m_offset", 0.0));
}

} // namespace

Scenario scenario_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config: ") + e.what());
    }
    require_known_keys(j, "<top>", {"sim", "pulse", "outputs", "evolve", "sweep"});
    Scenario sc;
    const json js = get_or<json>(j, "sim", json::object());
    require_known_keys(js, "sim",
                       {"m0", "c1", "l_x", "l_y", "n_kx", "n_ky", "k_cut", "tol", "t_start",
                        "t_end"});
    sc.sim.m0 = get_or<double>(js, "m0", 1.0);
    sc.sim.c1 = get_or<double>(js, "c1", 1.0);
    sc.sim.l_x = get_or<double>(js, "l_x", 10.0);
    sc.sim.l_y = get_or<double>(js, "l_y", 10.0 * sc.sim.l_x);
    sc.sim.n_kx = get_or<int>(js, "n_kx", 32);
    sc.sim.n_ky = get_or<int>(js, "n_ky", 8);
    sc.sim.k_cut = get_or<double>(js, "k_cut", 0.0);
    sc.sim.tol = get_or<double>(js, "tol", 1e-10);
    sc.sim.t_start = get_or<double>(js, "t_start", -50.0);
    sc.sim.t_end = get_or<double>(js, "t_end", 50.0);
    sc.sim.validate();

    sc.pulse = parse_pulse(get_or<json>(j, "pulse", json::object()), sc.sim.m0);

    const json jo = get_or<json>(j, "outputs", json::object());
    require_known_keys(jo, "outputs", {"samples_per_period", "min_samples_pulse", "dump_modes"});
    sc.outputs.samples_per_period = get_or<int>(jo, "samples_per_period", 40);
    sc.outputs.min_samples_pulse = get_or<int>(jo, "min_samples_pulse", 400);
    sc.outputs.dump_modes = get_or<bool>(jo, "dump_modes", false);
    if (sc.outputs.samples_per_period < 4 || sc.outputs.min_samples_pulse < 4)
        throw std::invalid_argument("config: sampling densities too low");

    const json je = get_or<json>(j, "evolve", json::object());
    require_known_keys(je, "evolve", {"method", "parallel"});
    const std::string method = get_or<std::string>(je, "method", "magnus-gl4");
    if (method == "magnus-gl4")
        sc.evolve.method = EvolveMethod::MagnusGl4;
    else if (method == "rk-dp54")
        sc.evolve.method = EvolveMethod::RkDp54;
    else
        throw std::invalid_argument("config: unknown evolve method '" + method + "'");
    sc.evolve.parallel = get_or<bool>(je, "parallel", true);
    sc.evolve.tol = sc.sim.tol;

    if (j.contains("sweep")) {
        const json jw = j.at("sweep");
        require_known_keys(jw, "sweep", {"axis", "values"});
        sc.sweep.axis = jw.at("axis").get<std::string>();
        if (sc.sweep.axis != "l_x" && sc.sweep.axis != "t_p")
            throw std::invalid_argument("config: sweep axis must be 'l_x' or 't_p'");
        sc.sweep.values = jw.at("values").get<std::vector<double>>();
        for (std::size_t i = 1; i < sc.sweep.values.size(); ++i)
            if (sc.sweep.values[i] <= sc.sweep.values[i - 1])
                throw std::invalid_argument("config: sweep values must be strictly increasing");
    }

    sc.config_hash = fnv1a64(j.dump()); // canonical: sorted keys, fixed float form
    return sc;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return scenario_from_json_text(ss.str());
}

RunResult run_simulate(const Scenario& sc) {
    const SimulationParams& p = sc.sim;
    ModeEnsemble ens = init_modes(p, sc.pulse);

    const double span = p.t_end - p.t_start;
    const double h_osc = 2.0 * M_PI / (p.m0 * sc.outputs.samples_per_period);
    const double h_pulse = sc.pulse.t_p() / sc.outputs.min_samples_pulse;
    const long n_steps = std::max(2L, static_cast<long>(std::ceil(span / std::min(h_osc, h_pulse))));

    RunResult r;
    r.times.reserve(n_steps + 1);
    r.config_hash = sc.config_hash;
    r.version = kVersion;
    for (long i = 0; i <= n_steps; ++i) {
        const double t = p.t_start + span * static_cast<double>(i) / static_cast<double>(n_steps);
        if (i > 0) evolve(ens, sc.pulse, t, sc.evolve);
        r.times.push_back(t);
        r.j_x.push_back(vortex_current(ens, sc.pulse, t));
        r.n_total.push_back(residual_excitation(ens, sc.pulse, t));
        r.e_tilde.push_back(sc.pulse.e_tilde(t));
        r.m_of_t.push_back(sc.pulse.m(t));
    }
    transported_number(r);
    r.n_total_final = r.n_total.back();
    r.n_k_final.reserve(ens.modes.size());
    const double v = p.volume();
    for (const Mode& m : ens.modes) {
        const double w = std::sqrt(omega_sq(m.k_x, m.k_y, sc.pulse, p.t_end, p));
        const double nk = occupation(m, w, v);
        r.n_k_final.push_back(nk);
        if (nk > r.max_n_k) r.max_n_k = nk;
    }
    r.max_wronskian_drift = ens.max_wronskian_drift();
    r.adiabaticity_margin = adiabaticity_margin(sc.pulse, p);
    r.n_transported_pred = predicted_transport(sc.pulse, p);
    return r;
}

std::vector<std::pair<double, Scenario>> expand_sweep(const Scenario& sc) {
    if (sc.sweep.axis.empty() || sc.sweep.values.empty())
        throw std::invalid_argument("expand_sweep: scenario has no sweep section");
    std::vector<std::pair<double, Scenario>> out;
    const double aspect = sc.sim.l_y / sc.sim.l_x;
    for (double v : sc.sweep.values) {
        Scenario s = sc;
        s.sweep = {};
        if (sc.sweep.axis == "l_x") {
            s.sim.l_x = v;
            s.sim.l_y = aspect * v;
        } else { // t_p
            if (sc.pulse.shape() == PulseShape::CustomSampled)
                throw std::invalid_argument("expand_sweep: cannot sweep t_p of a sampled pulse");
            const double off = sc.pulse.t_center_m() - sc.pulse.t_center();
            s.pulse = PulseProfile::make(sc.pulse.shape(), sc.pulse.m0(), sc.pulse.e_max(),
                                         sc.pulse.m_min(), v, sc.pulse.t_center(),
                                         sc.pulse.t_center() + off * v / sc.pulse.t_p());
        }
        out.emplace_back(v, std::move(s));
    }
    return out;
}

namespace {
void write_row(std::FILE* f, const double* vals, int n) {
    for (int i = 0; i < n; ++i) std::fprintf(f, "%s%.17g", i ? "," : "", vals[i]);
    std::fprintf(f, "\n");
}
} // namespace

void write_run_csv(const RunResult& r, const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    std::fprintf(f, "t,j_x,n_total,e_tilde,m_of_t\n");
    for (std::size_t i = 0; i < r.times.size(); ++i) {
        const double row[5] = {r.times[i], r.j_x[i], r.n_total[i], r.e_tilde[i], r.m_of_t[i]};
        write_row(f, row, 5);
    }
    std::fclose(f);
}

void write_run_json(const Scenario& sc, const RunResult& r, const std::string& path) {
    json j;
    j["version"] = r.version;
    j["config_hash"] = r.config_hash;
    j["sim"] = {{"m0", sc.sim.m0},       {"c1", sc.sim.c1},   {"l_x", sc.sim.l_x},
                {"l_y", sc.sim.l_y},     {"n_kx", sc.sim.n_kx}, {"n_ky", sc.sim.n_ky},
                {"k_cut", sc.sim.k_cut}, {"tol", sc.sim.tol}, {"t_start", sc.sim.t_start},
                {"t_end", sc.sim.t_end}};
    j["pulse"] = {{"shape", pulse_shape_name(sc.pulse.shape())},
                  {"e_max", sc.pulse.e_max()},
                  {"m_min", sc.pulse.m_min()},
                  {"t_p", sc.pulse.t_p()},
                  {"t_center", sc.pulse.t_center()},
                  {"t_center_m", sc.pulse.t_center_m()}};
    j["result"] = {{"n_transported", r.n_transported},
                   {"n_transported_richardson_error", r.richardson_error()},
                   {"n_transported_pred", r.n_transported_pred},
                   {"n_total_final", r.n_total_final},
                   {"max_n_k", r.max_n_k},
                   {"max_wronskian_drift", r.max_wronskian_drift},
                   {"adiabaticity_margin", r.adiabaticity_margin},
                   {"samples", r.times.size()}};
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << j.dump(2) << "\n";
}

void write_sweep_csv(const std::vector<std::pair<double, RunResult>>& rows,
                     const std::string& axis, const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    std::fprintf(f, "%s,n_transported,n_transported_pred,n_total_final,max_n_k,max_wronskian_drift\n",
                 axis.c_str());
    for (const auto& [v, r] : rows) {
        const double row[6] = {v,         r.n_transported,        r.n_transported_pred,
                               r.n_total_final, r.max_n_k, r.max_wronskian_drift};
        write_row(f, row, 6);
    }
    std::fclose(f);
}

namespace {

struct Verify {
    std::ostream& os;
    int failures = 0;
    void check(const std::string& name, bool pass, const std::string& detail) {
        os << (pass ? "PASS " : "FAIL ") << name << " (" << detail << ")\n";
        if (!pass) ++failures;
    }
};

std::string num(double v) {
    std::ostringstream s;
    s.precision(6);
    s << v;
    return s.str();
}

void verify_lattice(Verify& v) {
    for (double b : {1.0, 2.0, 5.0, 10.0}) {
        const double q = lattice_sum(b);
        const double ref = lattice_sum_direct(b);
        const double rel = std::abs(q - ref) / ref;
        v.check("lattice-sum b=" + num(b), rel < 1e-10, "rel err " + num(rel));
    }
}

void verify_materials(Verify& v) {
    const PhysicalConstants pc;
    const MaterialParams mat = make_material_nm(10.0, 30.0, 100.0, 10.0);
    const ConditionReport r = check_conditions(mat, pc, 1e-4, 1e-9);
    v.check("lambda ~ 35 nm", std::abs(r.lambda_compton / 35e-7 - 1.0) < 0.1,
            num(r.lambda_compton * 1e7) + " nm");
    v.check("L_x/lambda ~ 30", std::abs(r.ratio_lx_lambda / 30.0 - 1.0) < 0.1,
            num(r.ratio_lx_lambda));
    v.check("gap reduction ~ 5", std::abs(r.gap_reduction / 5.0 - 1.0) < 0.15,
            num(r.gap_reduction));
    v.check("quasiparticle bound ~ 4e-12 s",
            r.t_p_bound_quasiparticle > 2e-12 && r.t_p_bound_quasiparticle < 8e-12,
            num(r.t_p_bound_quasiparticle) + " s");
    v.check("vortex bound ~ 1e-14 s", r.t_p_bound_vortex > 5e-15 && r.t_p_bound_vortex < 2e-14,
            num(r.t_p_bound_vortex) + " s");
}

void verify_fermion(Verify& v) {
    CoreBand band;
    band.gap = 0.4;
    band.v_f = 1.0;
    band.k_f = 1.0;
    const double k_z = 0.3;
    const double omega0 = band.omega0(k_z);
    const double kp = band.k_perp(k_z);
    const VelocityProfile pulse = VelocityProfile::gaussian(0.05, 0.0, 0.8 / omega0);
    const double t_end = pulse.support_end() + 2.0 / omega0;
    const int sign = resolve_cross_product_sign(pulse, band, k_z);
    double worst = 0.0;
    for (int i = 0; i < 16; ++i) {
        const double phi = 2.0 * M_PI * i / 16;
        const double a = boundary_shift_analytic(phi, t_end, pulse, omega0, kp);
        const double c = boundary_shift_characteristics(phi, t_end, pulse, omega0, kp,
                                                        pulse.support_begin(), 1e-11, sign);
        worst = std::max(worst, std::abs(a - c) / kp);
    }
    v.check("fermion analytic vs characteristics", worst < 1e-6,
            "max |dl|/k_perp " + num(worst));
}

void verify_saddle(Verify& v) {
    double prev_gap = 1e300;
    bool ok = true;
    for (double a : {100.0, 400.0, 1600.0}) {
        const InstantonResult r = saddle(a, 1.0, 1.0);
        const double vdev = std::abs(r.v_e_star - std::sqrt(a)) / std::sqrt(a);
        const double gap = r.s_e - a;
        if (vdev > 0.05 || gap >= 5.0 || gap > prev_gap + 1e-12) ok = false;
        prev_gap = gap;
        v.check("saddle A=" + num(a), vdev <= 0.05 && gap < 5.0,
                "v* dev " + num(vdev) + ", s_e - A " + num(gap));
    }
    v.check("saddle gap non-growing", ok, "monotonicity across A");
}

} // namespace

int run_verify(const std::string& suite, std::ostream& os) {
    Verify v{os};
    const bool all = suite == "all";
    if (all || suite == "lattice-sum") verify_lattice(v);
    if (all || suite == "materials") verify_materials(v);
    if (all || suite == "fermion") verify_fermion(v);
    if (all || suite == "saddle") verify_saddle(v);
    if (!all && suite != "lattice-sum" && suite != "materials" && suite != "fermion" &&
        suite != "saddle")
        throw std::invalid_argument("run_verify: unknown suite '" + suite + "'");
    os << (v.failures == 0 ? "all checks passed\n" : "FAILURES: " + std::to_string(v.failures) + "\n");
    return v.failures;
}

} // namespace vsim

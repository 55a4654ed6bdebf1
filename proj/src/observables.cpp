#include "vortexsim/observables.hpp"

#include "vortexsim/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace vsim {

double occupation(const Mode& m, double omega_now, double volume) {
    const double f2 = std::norm(m.f);
    const double fd2 = std::norm(m.f_dot);
    return volume / (2.0 * omega_now) * (fd2 + omega_now * omega_now * f2) - 0.5;
}

double vortex_current(const ModeEnsemble& ens, const PulseProfile& pulse, double t) {
    const SimulationParams& p = ens.params;
    const double et = pulse.e_tilde(t);
    const double kc2 = p.k_cut_effective() * p.k_cut_effective() * (1.0 + 1e-12);
    double s = 0.0;
    for (const Mode& m : ens.modes) {
        if (m.k_x * m.k_x + m.k_y * m.k_y > kc2) continue;
        s += (m.k_x - et) * std::norm(m.f);
    }
    return 2.0 * p.c1 * p.c1 * s;
}

double residual_excitation(const ModeEnsemble& ens, const PulseProfile& pulse, double t) {
    const SimulationParams& p = ens.params;
    const double v = p.volume();
    const double kc2 = p.k_cut_effective() * p.k_cut_effective() * (1.0 + 1e-12);
    double s = 0.0;
    for (const Mode& m : ens.modes) {
        if (m.k_x * m.k_x + m.k_y * m.k_y > kc2) continue;
        const double w = std::sqrt(omega_sq(m.k_x, m.k_y, pulse, t, p));
        s += occupation(m, w, v);
    }
    return s;
}

void transported_number(RunResult& r) {
    const std::size_t n = r.times.size();
    if (n != r.j_x.size()) throw std::invalid_argument("transported_number: ragged history");
    if (n < 3) throw std::invalid_argument("transported_number: need at least 3 samples");
    r.n_transported = trapezoid(r.times.data(), r.j_x.data(), n);
    std::vector<double> th, jh;
    for (std::size_t i = 0; i < n; i += 2) {
        th.push_back(r.times[i]);
        jh.push_back(r.j_x[i]);
    }
    if (th.back() != r.times.back()) { // keep the final endpoint
        th.push_back(r.times.back());
        jh.push_back(r.j_x.back());
    }
    r.n_transported_half = trapezoid(th.data(), jh.data(), th.size());
}

} // namespace vsim

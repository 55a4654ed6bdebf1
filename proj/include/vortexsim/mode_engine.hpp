#pragma once

#include "vortexsim/params.hpp"
#include "vortexsim/pulse.hpp"

#include <complex>
#include <vector>

namespace vsim {

// One Bogoliubov mode of the order-parameter phase field.  f carries the
// normalization 1/sqrt(V); the vacuum Wronskian f fdot* - fdot f* = i/V is an
// exact invariant of the evolution.
struct Mode {
    double k_x = 0.0;
    double k_y = 0.0;
    std::complex<double> f;
    std::complex<double> f_dot;
};

struct ModeEnsemble {
    SimulationParams params;
    std::vector<Mode> modes; // k_x-major, k_y-minor, each from -n_k to +n_k
    double t = 0.0;
    std::vector<double> wronskian_drift; // running max |V*W - i| per mode

    double max_wronskian_drift() const;
};

// Instantaneous dispersion w(t) = c1^2 ky^2 + c1^2 (kx - Etilde)^2 + M^2.
double omega_sq(double k_x, double k_y, const PulseProfile& pulse, double t,
                const SimulationParams& p);

// Vacuum initial conditions f = (2 w V)^{-1/2}, fdot = -i w f at p.t_start.
// Refuses a start time inside pulse support (the adiabatic vacuum would be
// ill-defined there).
ModeEnsemble init_modes(const SimulationParams& p, const PulseProfile& pulse);

enum class EvolveMethod {
    MagnusGl4, // unimodular 4th-order Magnus propagator, production kernel
    RkDp54,    // adaptive Dormand-Prince 5(4), serial reference
};

struct EvolveOptions {
    EvolveMethod method = EvolveMethod::MagnusGl4;
    double tol = 1e-10;   // relative tolerance per mode
    bool parallel = true; // OpenMP over modes; reductions stay mode-ordered
};

// Advance every mode from ens.t to t_target.  Magnus steps are capped at
// phase omega*h <= 1.5 per substep: fixed-step oscillator maps develop a
// spurious parametric resonance near omega*h = pi, and the cap keeps all
// modes clear of it.  Throws if any mode's Wronskian drift exceeds 1e3*tol.
void evolve(ModeEnsemble& ens, const PulseProfile& pulse, double t_target,
            const EvolveOptions& opt = {});

// |V (f fdot* - fdot f*) - i| for one mode.
double wronskian_residual(const Mode& m, double volume);

} // namespace vsim

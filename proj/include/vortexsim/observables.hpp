#pragma once

#include "vortexsim/mode_engine.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace vsim {

// Per-mode adiabatic occupation against the instantaneous vacuum.
double occupation(const Mode& m, double omega_now, double volume);

// <J_x>(t) = 2 c1^2 sum_k (k_x - Etilde) |f_k|^2, modes with |k| > k_cut
// dropped.  Accumulated in mode storage order: deterministic across thread
// counts.
double vortex_current(const ModeEnsemble& ens, const PulseProfile& pulse, double t);

// Total excitation number sum_k n_k at time t.
double residual_excitation(const ModeEnsemble& ens, const PulseProfile& pulse, double t);

// Sampled history of one run plus end-of-run diagnostics.
struct RunResult {
    std::vector<double> times;
    std::vector<double> j_x;
    std::vector<double> n_total;
    std::vector<double> e_tilde;
    std::vector<double> m_of_t;

    std::vector<double> n_k_final; // per-mode occupation at t_end, mode storage order

    double n_transported = 0.0;     // integral of J_x dt (vortices per unit y length)
    double n_transported_half = 0.0; // same integral on every other sample
    double n_total_final = 0.0;
    double max_n_k = 0.0;
    double max_wronskian_drift = 0.0;
    double adiabaticity_margin = 0.0;
    double n_transported_pred = 0.0; // adiabatic-oracle prediction
    std::uint64_t config_hash = 0;
    std::string version;

    double richardson_error() const { return (n_transported - n_transported_half) / 3.0; }
};

// Composite trapezoid of j over times; also fills n_transported_half from the
// even-index subsample so callers can check grid convergence.
void transported_number(RunResult& r);

} // namespace vsim

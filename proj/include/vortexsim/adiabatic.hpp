#pragma once

#include "vortexsim/params.hpp"
#include "vortexsim/pulse.hpp"

#include <complex>

namespace vsim {

// Closed-form adiabatic/WKB predictions, kept strictly independent of the
// dynamic engine so they can serve as its oracle.
struct AdiabaticPrediction {
    double n_transported_pred = 0.0;
    double margin = 0.0;      // max |omega_dot| / omega^2
    double b_min = 0.0;       // min_t M(t) L_x / (2 c1)
    bool touch = false;       // min_t M(t) <= c1/L_x, i.e. b_min <= 1/2
    double tp_ratio = 0.0;    // (t_p/2pi) / (L_x/c1)
    double lx_over_lambda = 0.0; // L_x M0 / c1
};

double adiabaticity_margin(const PulseProfile& pulse, const SimulationParams& p);

std::complex<double> wkb_mode(double k_x, double k_y, const PulseProfile& pulse, double t,
                              const SimulationParams& p);

struct LinearResponse {
    double full;        // (c1^2/V) sum_k (k_x - E)/omega_k
    double first_order; // -(c1^2 E/V) sum_{ky} m^2 sum_{kx} (c1^2 kx^2 + m^2)^{-3/2}
};
LinearResponse current_linear_response(const PulseProfile& pulse, const SimulationParams& p,
                                       double t);

// Symmetric-window k_x sum and the matching k_x integral, window shifted by
// `shift` lattice units; their difference is the lattice part whose
// periodicity in Etilde (period 2pi/L_x) is checked in tests.
struct WindowedCurrent {
    double sum;
    double integral;
    double lattice_part() const { return sum - integral; }
};
WindowedCurrent current_kx_window(const PulseProfile& pulse, const SimulationParams& p, double t,
                                  int shift);

// sum_n (pi^2 n^2 + b^2)^{-3/2} via the integral representation
// (2/pi b^2)(1 + int_b^inf w dw / (sqrt(w^2-b^2) sinh^2 w)), endpoint
// singularity removed by w = b cosh u.
double lattice_sum(double b);

// Leading relative finite-size correction 2 sqrt(pi b) e^{-2b}.
double lattice_sum_correction(double b);

// Brute-force partial sum with an analytic midpoint tail bound; the
// independent oracle for lattice_sum.
double lattice_sum_direct(double b, long n_terms = 2000000);

// N_pred = -(1/pi) int dt Etilde(t) M(t) exp(-M(t) L_x / c1).
double predicted_transport(const PulseProfile& pulse, const SimulationParams& p);

// d ln|N_pred| / d L_x by central difference (oracle for the exponential
// slope -M*/c1 of the transported number).
double predicted_transport_slope(const PulseProfile& pulse, const SimulationParams& p,
                                 double rel_step = 1e-4);

AdiabaticPrediction operating_conditions(const PulseProfile& pulse, const SimulationParams& p);

} // namespace vsim

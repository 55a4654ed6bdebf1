#pragma once

#include <span>
#include <string>

namespace vsim {

// Euclidean single-vortex action at constant velocity v_e (in units of c1):
// kinetic = (M L_x / c1) sqrt(1 + v_e^2)/v_e, entropy = ln v_e.
struct ActionParts {
    double kinetic = 0.0;
    double entropy = 0.0;
    double total() const { return kinetic + entropy; }
};

ActionParts action_constant_velocity(double m_freq, double l_x, double v_e, double c1);

struct InstantonResult {
    double v_e_star = 0.0; // saddle Euclidean velocity, units of c1
    double tau1 = 0.0;     // traversal time L_x/(v_e* c1)
    double s_e = 0.0;      // saddle exponent, entropy excluded
    double exponent_with_entropy = 0.0;
    double tau0_estimate = 0.0; // pair creation/annihilation time ~ 1/M
    std::string branch;
};

// Minimizes kinetic + entropy over v_e.  The stationarity condition is
// v sqrt(1+v^2) = M L_x/c1, so v_e* ~ sqrt(M L_x/c1) and s_e = A + 1/2 + o(1).
InstantonResult saddle(double m_freq, double l_x, double c1);

struct FermionEnv {
    double k_f = 0.0;
    double omega0_0 = 0.0; // minigap at k_z = 0
    double d = 0.0;        // film thickness
};

// Fermion-corrected effective action (c1 = 1 units for the fermion term):
// A + A/(2 v^2) + C L_x^3 k_F^3 omega0(0) d/(16 v) + ln v.
struct EffectiveActionParts {
    double mass = 0.0;
    double velocity = 0.0;
    double fermion = 0.0;
    double entropy = 0.0;
    double total() const { return mass + velocity + fermion + entropy; }
};

EffectiveActionParts effective_action(double m_freq, double l_x, double v_e,
                                      const FermionEnv& env, double c_coeff);

InstantonResult saddle_effective(double m_freq, double l_x, const FermionEnv& env,
                                 double c_coeff);

// (d/16) L_x^2 k_F^3 omega0(0) tau.
double longitudinal_fermion_action(double l_x, double k_f, double omega0_0, double tau, double d);

// Order-of-magnitude form (k_F L_x)^2 (gap/eps_F)^2 / 64 obtained by
// substituting tau ~ 1/M and M ~ k_F d eps_F.
double longitudinal_action_estimate(double k_f, double l_x, double gap_over_eps_f);

struct TransversePhase {
    double imag_action = 0.0;    // (k_F^3 d / 3 pi) L_x y
    double rel_correction = 0.0; // (omega0 tau1)^2 scale of the dropped terms
};

TransversePhase transverse_phase(double l_x, double y, double k_f, double d, double omega0_0,
                                 double tau1);

struct MagnusAdjustment {
    double k_f_adjusted = 0.0;
    double fractional_shift = 0.0;
};

// Solves k_F^3 d / 3 pi = magnus_coefficient for k_F.
MagnusAdjustment magnus_compensating_kf(double k_f_outside, double magnus_coefficient, double d);

// S_E ~ (1/c1) int_0^{L_x} M(x) dx for a uniform periodic sample of M(x).
double path_averaged_action(std::span<const double> m_of_x, double l_x, double c1);

} // namespace vsim

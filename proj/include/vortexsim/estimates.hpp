#pragma once

#include "vortexsim/constants.hpp"
#include "vortexsim/params.hpp"

#include <string>
#include <vector>

namespace vsim {

// hbar M0 ~ e^2 d / (16 alpha^2 delta^2)  (energy, erg).
double estimate_m0(const MaterialParams& mat, const PhysicalConstants& pc);

struct VortexMass {
    double m_em = 0.0;          // hbar^2 d / (16 e^2 xi^2)
    double m_consistency = 0.0; // hbar M0 / c1^2
};
VortexMass estimate_vortex_mass(const MaterialParams& mat, const PhysicalConstants& pc);

// c1 ~ (xi/delta) c.
double estimate_c1(const MaterialParams& mat, const PhysicalConstants& pc);

// lambda ~ 16 alpha xi delta / d  (the vortex "Compton wavelength" c1/M0).
double estimate_lambda(const MaterialParams& mat, const PhysicalConstants& pc);

struct ConditionCheck {
    std::string name;
    bool pass = false;
    double margin = 0.0; // ratio of the satisfied side to the bound; >1 passes
};

struct ConditionReport {
    double lambda_compton = 0.0; // cm
    double m0_phys = 0.0;        // hbar M0, erg
    double c1_phys = 0.0;        // cm/s
    double m_vortex = 0.0;       // g
    double ratio_lx_lambda = 0.0;
    double gap_reduction = 0.0;  // sqrt(L_x/lambda)
    double gap_reduced = 0.0;    // gap / gap_reduction
    double xi_reduced = 0.0;     // xi * gap_reduction
    double t_p_bound_quasiparticle = 0.0; // hbar / reduced gap, s
    double t_p_bound_vortex = 0.0;        // L_x / c1, s
    std::vector<ConditionCheck> checks;
};

// Evaluates every operating-window inequality for a circumference l_x (cm)
// and pulse timescale t_p (s).  The optional multiplicative factor on M0
// stands in for the order-one logarithmic enhancement from long-range vortex
// interaction (no default model).
ConditionReport check_conditions(const MaterialParams& mat, const PhysicalConstants& pc,
                                 double l_x, double t_p, double m0_log_enhancement = 1.0);

} // namespace vsim

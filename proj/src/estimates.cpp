#include "vortexsim/estimates.hpp"

#include <cmath>
#include <stdexcept>

namespace vsim {

double estimate_m0(const MaterialParams& mat, const PhysicalConstants& pc) {
    mat.validate();
    return pc.e * pc.e * mat.d / (16.0 * pc.alpha_em * pc.alpha_em * mat.delta_london *
                                  mat.delta_london);
}

VortexMass estimate_vortex_mass(const MaterialParams& mat, const PhysicalConstants& pc) {
    mat.validate();
    VortexMass m;
    m.m_em = pc.hbar * pc.hbar * mat.d / (16.0 * pc.e * pc.e * mat.xi * mat.xi);
    const double c1 = estimate_c1(mat, pc);
    m.m_consistency = estimate_m0(mat, pc) / (c1 * c1);
    return m;
}

double estimate_c1(const MaterialParams& mat, const PhysicalConstants& pc) {
    mat.validate();
    return mat.xi / mat.delta_london * pc.c;
}

double estimate_lambda(const MaterialParams& mat, const PhysicalConstants& pc) {
    mat.validate();
    return 16.0 * pc.alpha_em * mat.xi * mat.delta_london / mat.d;
}

ConditionReport check_conditions(const MaterialParams& mat, const PhysicalConstants& pc,
                                 double l_x, double t_p, double m0_log_enhancement) {
    if (l_x <= 0.0 || t_p <= 0.0 || m0_log_enhancement <= 0.0)
        throw std::invalid_argument("check_conditions: l_x, t_p, enhancement must be positive");
    ConditionReport r;
    r.m0_phys = estimate_m0(mat, pc) * m0_log_enhancement;
    r.c1_phys = estimate_c1(mat, pc);
    r.lambda_compton = r.c1_phys * pc.hbar / r.m0_phys;
    r.m_vortex = estimate_vortex_mass(mat, pc).m_em;
    r.ratio_lx_lambda = l_x / r.lambda_compton;
    r.gap_reduction = std::sqrt(r.ratio_lx_lambda);
    r.gap_reduced = mat.gap / r.gap_reduction;
    r.xi_reduced = mat.xi * r.gap_reduction;
    r.t_p_bound_quasiparticle = pc.hbar / r.gap_reduced;
    r.t_p_bound_vortex = l_x / r.c1_phys;
    const double tp2pi = t_p / (2.0 * M_PI);
    r.checks.push_back({"error-suppression L_x > lambda", r.ratio_lx_lambda > 1.0,
                        r.ratio_lx_lambda});
    r.checks.push_back({"adiabatic vs quasiparticles t_p/2pi > hbar/gap_reduced",
                        tp2pi > r.t_p_bound_quasiparticle, tp2pi / r.t_p_bound_quasiparticle});
    r.checks.push_back({"adiabatic vs vortex motion t_p/2pi > L_x/c1",
                        tp2pi > r.t_p_bound_vortex, tp2pi / r.t_p_bound_vortex});
    r.checks.push_back({"reduced core fits xi_reduced < L_x", r.xi_reduced < l_x,
                        l_x / r.xi_reduced});
    return r;
}

} // namespace vsim

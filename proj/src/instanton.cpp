#include "vortexsim/instanton.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace vsim {

namespace {

// golden-section minimum of a unimodal function on [a,b], relative tol on x
double golden_min(const std::function<double(double)>& f, double a, double b, double rel_tol) {
    constexpr double r = 0.6180339887498949;
    double x1 = b - r * (b - a), x2 = a + r * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > rel_tol * (std::abs(a) + std::abs(b))) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - r * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + r * (b - a);
            f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

} // namespace

ActionParts action_constant_velocity(double m_freq, double l_x, double v_e, double c1) {
    if (v_e <= 0.0 || m_freq <= 0.0 || l_x <= 0.0 || c1 <= 0.0)
        throw std::invalid_argument("action_constant_velocity: inputs must be positive");
    const double a = m_freq * l_x / c1;
    return {a * std::sqrt(1.0 + v_e * v_e) / v_e, std::log(v_e)};
}

InstantonResult saddle(double m_freq, double l_x, double c1) {
    const double a = m_freq * l_x / c1;
    if (a <= 1.0) throw std::invalid_argument("saddle: need M L_x / c1 > 1");
    auto obj = [&](double v) { return action_constant_velocity(m_freq, l_x, v, c1).total(); };
    const double hi = 10.0 * std::sqrt(a) + 10.0;
    const double v_star = golden_min(obj, 1e-3, hi, 1e-12);
    if (v_star > 0.999 * hi) throw std::runtime_error("saddle: failed to bracket the minimum");
    InstantonResult r;
    r.v_e_star = v_star;
    r.tau1 = l_x / (v_star * c1);
    r.s_e = action_constant_velocity(m_freq, l_x, v_star, c1).kinetic;
    r.exponent_with_entropy = r.s_e + std::log(v_star);
    r.tau0_estimate = 1.0 / m_freq;
    r.branch = "velocity";
    return r;
}

EffectiveActionParts effective_action(double m_freq, double l_x, double v_e,
                                      const FermionEnv& env, double c_coeff) {
    if (v_e <= 0.0) throw std::invalid_argument("effective_action: v_e must be positive");
    const double a = m_freq * l_x; // c1 = 1 units of the fermion-corrected form
    EffectiveActionParts p;
    p.mass = a;
    p.velocity = a / (2.0 * v_e * v_e);
    p.fermion = c_coeff * l_x * l_x * l_x * env.k_f * env.k_f * env.k_f * env.omega0_0 * env.d /
                (16.0 * v_e);
    p.entropy = std::log(v_e);
    return p;
}

InstantonResult saddle_effective(double m_freq, double l_x, const FermionEnv& env,
                                 double c_coeff) {
    auto obj = [&](double lv) {
        return effective_action(m_freq, l_x, std::exp(lv), env, c_coeff).total();
    };
    const double lv_star = golden_min(obj, std::log(1e-3), std::log(1e9), 1e-12);
    const double v_star = std::exp(lv_star);
    const EffectiveActionParts p = effective_action(m_freq, l_x, v_star, env, c_coeff);
    InstantonResult r;
    r.v_e_star = v_star;
    r.tau1 = l_x / v_star;
    r.s_e = p.total() - p.entropy;
    r.exponent_with_entropy = p.total();
    r.tau0_estimate = 1.0 / m_freq;
    r.branch = p.fermion > p.velocity ? "fermion" : "velocity";
    return r;
}

double longitudinal_fermion_action(double l_x, double k_f, double omega0_0, double tau, double d) {
    if (l_x < 0 || k_f < 0 || omega0_0 < 0 || tau < 0 || d < 0)
        throw std::invalid_argument("longitudinal_fermion_action: negative input");
    return d / 16.0 * l_x * l_x * k_f * k_f * k_f * omega0_0 * tau;
}

double longitudinal_action_estimate(double k_f, double l_x, double gap_over_eps_f) {
    const double kl = k_f * l_x;
    return kl * kl * gap_over_eps_f * gap_over_eps_f / 64.0;
}

TransversePhase transverse_phase(double l_x, double y, double k_f, double d, double omega0_0,
                                 double tau1) {
    TransversePhase t;
    t.imag_action = k_f * k_f * k_f * d / (3.0 * M_PI) * l_x * y;
    t.rel_correction = omega0_0 * tau1 * omega0_0 * tau1;
    return t;
}

MagnusAdjustment magnus_compensating_kf(double k_f_outside, double magnus_coefficient, double d) {
    if (magnus_coefficient <= 0.0 || d <= 0.0)
        throw std::invalid_argument("magnus_compensating_kf: coefficient and d must be positive");
    MagnusAdjustment m;
    m.k_f_adjusted = std::cbrt(3.0 * M_PI * magnus_coefficient / d);
    m.fractional_shift = m.k_f_adjusted / k_f_outside - 1.0;
    return m;
}

double path_averaged_action(std::span<const double> m_of_x, double l_x, double c1) {
    if (m_of_x.empty()) throw std::invalid_argument("path_averaged_action: empty profile");
    double s = 0.0;
    for (double m : m_of_x) {
        if (m < 0.0) throw std::invalid_argument("path_averaged_action: negative M sample");
        s += m;
    }
    // uniform periodic samples on [0, L_x): the trapezoid rule collapses to the mean
    return s / static_cast<double>(m_of_x.size()) * l_x / c1;
}

} // namespace vsim

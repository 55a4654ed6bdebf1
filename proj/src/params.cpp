#include "vortexsim/params.hpp"

#include "vortexsim/constants.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace vsim {

namespace {
std::string fmt(double v) {
    std::ostringstream os;
    os.precision(4);
    os << v;
    return os.str();
}
} // namespace

std::vector<std::string> MaterialParams::validate(double eps_f_rel_tol) const {
    if (d <= 0 || xi <= 0 || delta_london <= 0 || gap <= 0 || k_f <= 0 || v_f <= 0 || eps_f <= 0)
        throw std::invalid_argument("MaterialParams: all entries must be positive");
    std::vector<std::string> w;
    if (!(d < xi))
        w.push_back("thin-film ordering violated: d = " + fmt(d) + " >= xi = " + fmt(xi));
    if (!(xi < delta_london))
        w.push_back("dirty-limit ordering violated: xi = " + fmt(xi) +
                    " >= delta_london = " + fmt(delta_london));
    // degenerate-gas consistency: eps_f ~ hbar k_f v_f / 2
    const PhysicalConstants pc;
    const double eps_ref = 0.5 * pc.hbar * k_f * v_f;
    if (std::abs(eps_f - eps_ref) > eps_f_rel_tol * eps_ref)
        w.push_back("eps_f inconsistent with hbar k_f v_f / 2 by more than " +
                    fmt(eps_f_rel_tol * 100) + "%");
    if (!(gap < 0.1 * eps_f))
        w.push_back("gap is not small compared to eps_f; BCS-limit formulas are suspect");
    return w;
}

MaterialParams make_material_nm(double d_nm, double xi_nm, double delta_nm, double gap_kelvin,
                                double k_f_inv_cm, double v_f_cm_s) {
    if (d_nm <= 0 || xi_nm <= 0 || delta_nm <= 0 || gap_kelvin <= 0 || k_f_inv_cm <= 0 ||
        v_f_cm_s <= 0)
        throw std::invalid_argument("make_material_nm: all parameters must be positive");
    const PhysicalConstants pc;
    MaterialParams m;
    m.d = d_nm * 1e-7;
    m.xi = xi_nm * 1e-7;
    m.delta_london = delta_nm * 1e-7;
    m.gap = gap_kelvin * pc.k_b;
    m.k_f = k_f_inv_cm;
    m.v_f = v_f_cm_s;
    m.eps_f = 0.5 * pc.hbar * k_f_inv_cm * v_f_cm_s;
    return m;
}

std::vector<std::string> SimulationParams::validate(double cutoff_factor,
                                                    double aspect_factor) const {
    if (m0 <= 0 || c1 <= 0) throw std::invalid_argument("SimulationParams: m0, c1 must be positive");
    if (l_x <= 0 || l_y <= 0) throw std::invalid_argument("SimulationParams: l_x, l_y must be positive");
    if (n_kx < 1 || n_ky < 0) throw std::invalid_argument("SimulationParams: bad grid size");
    if (tol <= 0 || tol >= 1e-2)
        throw std::invalid_argument("SimulationParams: tol must be in (0, 1e-2)");
    if (!(t_start < t_end)) throw std::invalid_argument("SimulationParams: t_start >= t_end");
    std::vector<std::string> w;
    const double kc = k_cut_effective();
    if (kc * c1 < cutoff_factor * m0)
        w.push_back("UV cutoff c1*k_cut = " + fmt(kc * c1) + " is below " + fmt(cutoff_factor) +
                    "*M0; mode sums may be under-converged");
    if (l_y < aspect_factor * l_x)
        w.push_back("l_y = " + fmt(l_y) + " is below " + fmt(aspect_factor) +
                    "*l_x; the k_y sum is a poor proxy for the continuum");
    if (k_cut > 0.0 && k_cut > 2.0 * M_PI * n_kx / l_x)
        w.push_back("requested k_cut exceeds the k_x grid edge; grid edge will bind");
    return w;
}

} // namespace vsim

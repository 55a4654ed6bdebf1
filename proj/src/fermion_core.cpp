#include "vortexsim/fermion_core.hpp"

#include "vortexsim/detail/ode.hpp"
#include "vortexsim/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace vsim {

double CoreBand::k_perp(double k_z) const {
    if (std::abs(k_z) >= k_f) throw std::domain_error("CoreBand: |k_z| must be below k_f");
    return std::sqrt(k_f * k_f - k_z * k_z);
}

double CoreBand::omega0(double k_z) const { return gap * gap / (2.0 * v_f * k_perp(k_z)); }

VelocityProfile VelocityProfile::gaussian(double v_peak, double t_center, double tau) {
    if (tau <= 0.0) throw std::invalid_argument("VelocityProfile: tau must be positive");
    VelocityProfile p;
    p.v_peak_ = v_peak;
    p.t_center_ = t_center;
    p.tau_ = tau;
    p.x_ = v_peak * tau * std::sqrt(M_PI); // integrated displacement
    return p;
}

VelocityProfile VelocityProfile::delta(double displacement, double t0) {
    VelocityProfile p;
    p.is_delta_ = true;
    p.x_ = displacement;
    p.t_center_ = t0;
    return p;
}

double VelocityProfile::v(double t) const {
    if (is_delta_) throw std::logic_error("VelocityProfile: delta profile has no pointwise v");
    const double u = (t - t_center_) / tau_;
    return v_peak_ * std::exp(-u * u);
}

double VelocityProfile::v_dot(double t) const {
    if (is_delta_) throw std::logic_error("VelocityProfile: delta profile has no pointwise v");
    const double u = (t - t_center_) / tau_;
    return -2.0 * u / tau_ * v_peak_ * std::exp(-u * u);
}

double VelocityProfile::support_begin() const {
    return is_delta_ ? t_center_ : t_center_ - 6.0 * tau_;
}

double VelocityProfile::support_end() const {
    return is_delta_ ? t_center_ : t_center_ + 6.0 * tau_;
}

double response_kernel(double phi, double t, const VelocityProfile& v, double omega0) {
    return v.v(t) * std::cos(phi) + v.v_dot(t) / omega0 * std::sin(phi);
}

double boundary_shift_analytic(double phi, double t, const VelocityProfile& v, double omega0,
                               double k_perp) {
    if (v.is_delta()) {
        if (t <= v.t0()) return 0.0;
        return k_perp * v.displacement() * std::sin(omega0 * (t - v.t0()) + phi);
    }
    const double ta = v.support_begin();
    if (t <= ta) return 0.0;
    const double conv = integrate(
        [&](double tp) {
            return std::sin(omega0 * (t - tp)) / omega0 * response_kernel(phi, tp, v, omega0);
        },
        ta, t, 1e-11, 1e-15 * std::abs(v.displacement()) + 1e-300);
    return k_perp * omega0 * conv;
}

int occupation_analytic(double phi, double l, double t, const VelocityProfile& v,
                        const CoreBand& band, double k_z) {
    const double kp = band.k_perp(k_z);
    return l + boundary_shift_analytic(phi, t, v, band.omega0(k_z), kp) > 0.0 ? 1 : 0;
}

double occupation_analytic_init(const std::function<double(double)>& n0, double phi, double l,
                                double t, const VelocityProfile& v, const CoreBand& band,
                                double k_z) {
    const double kp = band.k_perp(k_z);
    return n0(l + boundary_shift_analytic(phi, t, v, band.omega0(k_z), kp));
}

double boundary_shift_characteristics(double phi, double t_end, const VelocityProfile& v,
                                      double omega0, double k_perp, double t_start, double tol,
                                      int sign) {
    if (v.is_delta())
        throw std::invalid_argument("boundary_shift_characteristics: needs a smooth profile");
    // along the characteristic arriving at (phi, t_end): phi(t) = phi + omega0 (t_end - t);
    // dl/dt = sign * (-k_perp v(t) sin(phi(t))); the step sits at l = -(l_end - l_start)
    std::array<double, 1> l = {0.0};
    detail::integrate_dp54<1>(
        [&](double t, const std::array<double, 1>&, std::array<double, 1>& dl) {
            const double ph = phi + omega0 * (t_end - t);
            dl[0] = sign * (-k_perp * v.v(t) * std::sin(ph));
        },
        t_start, t_end, l, tol, 1e-15 * (std::abs(k_perp * v.displacement()) + 1.0));
    return -l[0];
}

int resolve_cross_product_sign(const VelocityProfile& v, const CoreBand& band, double k_z) {
    const double omega0 = band.omega0(k_z);
    const double kp = band.k_perp(k_z);
    const VelocityProfile probe =
        v.is_delta() ? VelocityProfile::gaussian(1.0, 0.0, 0.37 / omega0) : v;
    const double t_end = probe.support_end() + 1.3 / omega0;
    const double phi = 0.83; // generic angle, away from symmetry points
    const double ref = boundary_shift_analytic(phi, t_end, probe, omega0, kp);
    const double scale = std::abs(kp * probe.displacement()) + 1e-300;
    for (int sign : {+1, -1}) {
        const double got = boundary_shift_characteristics(phi, t_end, probe, omega0, kp,
                                                          probe.support_begin(), 1e-11, sign);
        if (std::abs(got - ref) < 1e-6 * scale) return sign;
    }
    throw std::runtime_error(
        "resolve_cross_product_sign: neither orientation reproduces the analytic solution");
}

FermionOccupation vlasov_evolve(const std::function<double(double)>& n0,
                                const VelocityProfile& v, const CoreBand& band, double k_z,
                                double t_end, int n_phi, int n_l, double l_span, double tol) {
    if (n_phi < 4 || n_l < 2) throw std::invalid_argument("vlasov_evolve: grid too small");
    const double omega0 = band.omega0(k_z);
    const double kp = band.k_perp(k_z);
    const int sign = resolve_cross_product_sign(v, band, k_z);
    const double t_start = std::min(v.support_begin(), t_end) - 1e-9;

    FermionOccupation occ;
    occ.t = t_end;
    occ.k_z = k_z;
    occ.phi_grid.resize(n_phi);
    occ.boundary_shift.resize(n_phi);
    occ.points.reserve(static_cast<std::size_t>(n_phi) * n_l);
    for (int ip = 0; ip < n_phi; ++ip) {
        const double phi = 2.0 * M_PI * ip / n_phi;
        occ.phi_grid[ip] = phi;
        double shift;
        if (v.is_delta()) {
            shift = t_end > v.t0() ? kp * v.displacement() * std::sin(omega0 * (t_end - v.t0()) + phi)
                                   : 0.0;
        } else {
            shift = boundary_shift_characteristics(phi, t_end, v, omega0, kp, t_start, tol, sign);
        }
        occ.boundary_shift[ip] = shift;
        for (int il = 0; il < n_l; ++il) {
            const double l = -l_span + 2.0 * l_span * il / (n_l - 1);
            occ.points.push_back({phi, l, n0(l + shift)});
        }
    }
    return occ;
}

Momentum momentum_transfer_mode(double x, double t, const CoreBand& band, double k_z, double d) {
    const double kp2 = band.k_f * band.k_f - k_z * k_z;
    if (kp2 <= 0.0) return {0.0, 0.0};
    const double w = band.omega0(k_z) * t;
    const double pref = d * x / (4.0 * M_PI) * kp2;
    return {pref * std::sin(w), pref * std::cos(w)};
}

Momentum momentum_transfer(double x, double t, const CoreBand& band, double d) {
    if (x == 0.0) return {0.0, 0.0};
    // k_z = k_f sin(psi): integrand k_f^3 cos^3(psi) * trig(omega0(0) t / cos psi);
    // tail truncated where the cos^3 amplitude bounds it below 1e-12 relative
    const double w0t = band.gap * band.gap / (2.0 * band.v_f * band.k_f) * t;
    const double kf3 = band.k_f * band.k_f * band.k_f;
    const double psi_max = std::acos(1e-3);
    const double abs_floor = 1e-13 * kf3 + 1e-300;
    const double ix = integrate(
        [&](double psi) {
            const double c = std::cos(psi);
            return kf3 * c * c * c * std::sin(w0t / c);
        },
        -psi_max, psi_max, 1e-10, abs_floor);
    const double iy = integrate(
        [&](double psi) {
            const double c = std::cos(psi);
            return kf3 * c * c * c * std::cos(w0t / c);
        },
        -psi_max, psi_max, 1e-10, abs_floor);
    const double pref = d * x / (4.0 * M_PI);
    return {pref * ix, pref * iy};
}

} // namespace vsim

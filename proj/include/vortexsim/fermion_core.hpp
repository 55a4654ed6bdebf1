#pragma once

#include <functional>
#include <vector>

namespace vsim {

// Anomalous core-fermion branch; minigap omega0(k_z) = gap^2 / (2 v_f k_perp).
struct CoreBand {
    double gap = 0.0;
    double v_f = 0.0;
    double k_f = 0.0;

    double k_perp(double k_z) const;
    double omega0(double k_z) const;
};

// Vortex velocity v(t) along x: a Gaussian pulse or an idealized delta kick
// of integrated displacement x.
class VelocityProfile {
  public:
    static VelocityProfile gaussian(double v_peak, double t_center, double tau);
    static VelocityProfile delta(double displacement, double t0);

    bool is_delta() const { return is_delta_; }
    double v(double t) const;     // throws for the delta profile
    double v_dot(double t) const; // analytic derivative
    double displacement() const { return x_; }
    double t0() const { return t_center_; }
    double support_begin() const;
    double support_end() const;

  private:
    bool is_delta_ = false;
    double v_peak_ = 0.0;
    double t_center_ = 0.0;
    double tau_ = 1.0;
    double x_ = 0.0;
};

// h(phi; t) = v(t) cos(phi) + (v_dot(t)/omega0) sin(phi).
double response_kernel(double phi, double t, const VelocityProfile& v, double omega0);

// Shift of the occupation step in l at observation angle phi and time t,
// computed from the retarded-kernel convolution
//   k_perp * omega0 * int dt' G_R(t - t') h(phi; t'),  G_R = sin(omega0 dt)/omega0.
// Delta profiles use the closed form k_perp * x * sin(omega0 (t - t0) + phi).
double boundary_shift_analytic(double phi, double t, const VelocityProfile& v, double omega0,
                               double k_perp);

// Zero-temperature step solution n = theta(l + shift); returns 0 or 1.
int occupation_analytic(double phi, double l, double t, const VelocityProfile& v,
                        const CoreBand& band, double k_z);

// Finite-temperature extension: arbitrary initial function of l, shifted the
// same way; reduces to occupation_analytic when n0 is the step.
double occupation_analytic_init(const std::function<double(double)>& n0, double phi, double l,
                                double t, const VelocityProfile& v, const CoreBand& band,
                                double k_z);

// Same shift from an independent route: integrating the characteristics of
// the kinetic equation dphi/dt = -omega0, dl/dt = k x v, backward from
// (phi, l, t_end).  `sign` is the k x v orientation (+1 for -k_perp v sin(phi)).
double boundary_shift_characteristics(double phi, double t_end, const VelocityProfile& v,
                                      double omega0, double k_perp, double t_start, double tol,
                                      int sign);

// Startup self-check fixing the k x v sign convention against the analytic
// solution; throws if neither orientation matches.
int resolve_cross_product_sign(const VelocityProfile& v, const CoreBand& band, double k_z);

struct CharPoint {
    double phi = 0.0;
    double l = 0.0;
    double n = 0.0;
};

struct FermionOccupation {
    double t = 0.0;
    double k_z = 0.0;
    std::vector<CharPoint> points;       // n_phi x n_l grid, phi-major
    std::vector<double> boundary_shift;  // per phi column, from characteristics
    std::vector<double> phi_grid;
};

FermionOccupation vlasov_evolve(const std::function<double(double)>& n0,
                                const VelocityProfile& v, const CoreBand& band, double k_z,
                                double t_end, int n_phi = 64, int n_l = 33, double l_span = 2.0,
                                double tol = 1e-10);

struct Momentum {
    double p_x = 0.0;
    double p_y = 0.0;
};

// Total momentum given to the fermions by a delta displacement x:
// p_x = (d/2) x int dk_z/2pi k_perp^2 sin(omega0(k_z) t); cos for p_y.
Momentum momentum_transfer(double x, double t, const CoreBand& band, double d);

// Per-k_z momentum density (integrand of the above including the 1/2pi).
Momentum momentum_transfer_mode(double x, double t, const CoreBand& band, double k_z, double d);

} // namespace vsim

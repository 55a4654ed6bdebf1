#pragma once

#include <cmath>
#include <string>
#include <vector>

namespace vsim {

// Physical film parameters.  Lengths in cm, energies in erg, consistent with
// PhysicalConstants; helpers below accept the more natural nm/K inputs.
struct MaterialParams {
    double d;            // film thickness
    double xi;           // GL coherence length
    double delta_london; // London screening length
    double gap;          // quasiparticle gap (energy)
    double k_f;          // Fermi wavenumber (1/cm)
    double v_f;          // Fermi velocity (cm/s)
    double eps_f;        // Fermi energy (erg)

    // Hard errors for non-positive inputs; returns human-readable warnings for
    // soft regime violations (d < xi < delta expected, eps_f vs k_f v_f).
    std::vector<std::string> validate(double eps_f_rel_tol = 0.2) const;
};

MaterialParams make_material_nm(double d_nm, double xi_nm, double delta_nm, double gap_kelvin,
                                double k_f_inv_cm = 1e8, double v_f_cm_s = 1e8);

// Dimensionless run description.  The dynamic modules are scale-free; the
// recommended convention is m0 = c1 = 1 (lengths in c1/m0, times in 1/m0).
struct SimulationParams {
    double m0 = 1.0;   // unperturbed half pair-production frequency
    double c1 = 1.0;   // limiting speed
    double l_x = 10.0; // circumference
    double l_y = 100.0;
    int n_kx = 32; // grid is {2 pi n / L : |n| <= n_k}
    int n_ky = 8;
    double k_cut = 0.0; // UV cutoff; 0 means "use the grid edge"
    double tol = 1e-10; // integrator relative tolerance
    double t_start = -50.0;
    double t_end = 50.0;

    double volume() const { return l_x * l_y; }
    double kx(int n) const { return 2.0 * M_PI * n / l_x; }
    double ky(int n) const { return 2.0 * M_PI * n / l_y; }
    int n_modes() const { return (2 * n_kx + 1) * (2 * n_ky + 1); }
    double k_cut_effective() const {
        return k_cut > 0.0 ? k_cut : 2.0 * M_PI * n_kx / l_x;
    }

    std::vector<std::string> validate(double cutoff_factor = 10.0,
                                      double aspect_factor = 10.0) const;
};

} // namespace vsim

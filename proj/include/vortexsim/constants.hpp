#pragma once

#include <cmath>
#include <stdexcept>

namespace vsim {

// Physical constants in Gaussian-cgs units (erg, cm, s, K).  The dynamic
// modules never touch these; only the material-estimate bridge does.
struct PhysicalConstants {
    double hbar = 1.054571817e-27;     // erg s
    double c = 2.99792458e10;          // cm/s
    double e = 4.80320425e-10;         // esu
    double alpha_em = 7.2973525693e-3; // fine-structure constant
    double k_b = 1.380649e-16;         // erg/K
    double g = 0.0;                    // 2e/(hbar c), inverse flux quantum scale

    PhysicalConstants() { g = 2.0 * e / (hbar * c); }

    void validate() const {
        if (hbar <= 0 || c <= 0 || e <= 0 || alpha_em <= 0 || k_b <= 0 || g <= 0)
            throw std::invalid_argument("PhysicalConstants: all constants must be positive");
        const double g_expected = 2.0 * e / (hbar * c);
        if (std::abs(g - g_expected) > 1e-12 * g_expected)
            throw std::invalid_argument("PhysicalConstants: g must equal 2e/(hbar c)");
    }
};

} // namespace vsim

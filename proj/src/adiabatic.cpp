#include "vortexsim/adiabatic.hpp"

#include "vortexsim/quadrature.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>

namespace vsim {

double adiabaticity_margin(const PulseProfile& pulse, const SimulationParams& p) {
    if (pulse.is_null()) return 0.0;
    const double ta = pulse.support_begin();
    const double tb = pulse.support_end();
    const int nt = 4001;
    const double c2 = p.c1 * p.c1;
    double best = 0.0;
    for (int it = 0; it < nt; ++it) {
        const double t = ta + (tb - ta) * it / (nt - 1);
        const double e = pulse.e_tilde(t);
        const double ed = pulse.e_tilde_dot(t);
        const double m = pulse.m(t);
        const double md = pulse.m_dot(t);
        for (int nx = -p.n_kx; nx <= p.n_kx; ++nx) {
            const double kxe = p.kx(nx) - e;
            const double c2kx2 = c2 * kxe * kxe;
            for (int ny = -p.n_ky; ny <= p.n_ky; ++ny) {
                const double ky = p.ky(ny);
                const double w2 = c2 * ky * ky + c2kx2 + m * m;
                const double wdot2 = std::abs(-c2 * kxe * ed + m * md); // = |w2_dot|/2
                const double mg = wdot2 / (w2 * std::sqrt(w2));
                if (mg > best) best = mg;
            }
        }
    }
    return best;
}

std::complex<double> wkb_mode(double k_x, double k_y, const PulseProfile& pulse, double t,
                              const SimulationParams& p) {
    const double c2 = p.c1 * p.c1;
    auto omega = [&](double s) {
        const double kxe = k_x - pulse.e_tilde(s);
        const double m = pulse.m(s);
        return std::sqrt(c2 * (k_y * k_y + kxe * kxe) + m * m);
    };
    const double phase = integrate(omega, p.t_start, t, 1e-12, 1e-14);
    const double amp = 1.0 / std::sqrt(2.0 * omega(t) * p.volume());
    return amp * std::exp(std::complex<double>(0.0, -phase));
}

LinearResponse current_linear_response(const PulseProfile& pulse, const SimulationParams& p,
                                       double t) {
    const double c2 = p.c1 * p.c1;
    const double e = pulse.e_tilde(t);
    const double mm = pulse.m(t);
    double full = 0.0, lin = 0.0;
    for (int ny = -p.n_ky; ny <= p.n_ky; ++ny) {
        const double ky = p.ky(ny);
        const double m2 = c2 * ky * ky + mm * mm; // Eq.-style transverse mass
        double frow = 0.0, lrow = 0.0;
        for (int nx = -p.n_kx; nx <= p.n_kx; ++nx) {
            const double kx = p.kx(nx);
            const double kxe = kx - e;
            frow += kxe / std::sqrt(c2 * kxe * kxe + m2);
            const double d = c2 * kx * kx + m2;
            lrow += 1.0 / (d * std::sqrt(d));
        }
        full += frow;
        lin += m2 * lrow;
    }
    const double pref = c2 / p.volume();
    return {pref * full, -pref * e * lin};
}

WindowedCurrent current_kx_window(const PulseProfile& pulse, const SimulationParams& p, double t,
                                  int shift) {
    const double c2 = p.c1 * p.c1;
    const double e = pulse.e_tilde(t);
    const double mm = pulse.m(t);
    const double pref = c2 / p.volume();
    const double dk = 2.0 * M_PI / p.l_x;
    double sum = 0.0, intg = 0.0;
    for (int ny = -p.n_ky; ny <= p.n_ky; ++ny) {
        const double ky = p.ky(ny);
        const double m2 = c2 * ky * ky + mm * mm;
        for (int nx = -p.n_kx + shift; nx <= p.n_kx + shift; ++nx) {
            const double kxe = p.kx(nx) - e;
            sum += kxe / std::sqrt(c2 * kxe * kxe + m2);
        }
        // same window, sum replaced by (L_x/2pi) * integral; antiderivative of
        // (k-e)/omega is sqrt(c1^2 (k-e)^2 + m^2)/c1^2
        const double ka = dk * (-p.n_kx + shift) - 0.5 * dk;
        const double kb = dk * (p.n_kx + shift) + 0.5 * dk;
        const double fa = std::sqrt(c2 * (ka - e) * (ka - e) + m2) / c2;
        const double fb = std::sqrt(c2 * (kb - e) * (kb - e) + m2) / c2;
        intg += (fb - fa) / dk;
    }
    return {pref * sum, pref * intg};
}

double lattice_sum(double b) {
    if (b <= 0.0) throw std::invalid_argument("lattice_sum: b must be positive");
    // I(b) = b * int_0^umax cosh u / sinh^2(b cosh u) du; integrand dies like
    // exp(-2 b cosh u)
    const double umax = std::acosh(std::max(2.0, 700.0 / (2.0 * b)));
    const double corr = b * integrate(
                                [b](double u) {
                                    const double ch = std::cosh(u);
                                    const double sh = std::sinh(b * ch);
                                    return ch / (sh * sh);
                                },
                                0.0, umax, 1e-12, 1e-300);
    return 2.0 / (M_PI * b * b) * (1.0 + corr);
}

double lattice_sum_correction(double b) {
    return 2.0 * std::sqrt(M_PI * b) * std::exp(-2.0 * b);
}

double lattice_sum_direct(double b, long n_terms) {
    if (b <= 0.0) throw std::invalid_argument("lattice_sum_direct: b must be positive");
    if (n_terms < 100) throw std::invalid_argument("lattice_sum_direct: too few terms");
    const double b2 = b * b;
    double s = 0.0;
    for (long n = n_terms; n >= 1; --n) { // ascending magnitude for fp accuracy
        const double q = M_PI * M_PI * static_cast<double>(n) * static_cast<double>(n) + b2;
        s += 1.0 / (q * std::sqrt(q));
    }
    s *= 2.0;
    s += 1.0 / (b2 * b);
    // midpoint tail: 2 * int_{N+1/2}^inf (pi^2 n^2 + b^2)^{-3/2} dn
    const double nh = static_cast<double>(n_terms) + 0.5;
    s += 2.0 * (1.0 / (M_PI * b2) - nh / (b2 * std::sqrt(M_PI * M_PI * nh * nh + b2)));
    return s;
}

double predicted_transport(const PulseProfile& pulse, const SimulationParams& p) {
    if (pulse.is_null()) return 0.0;
    const double bmin = pulse.m_min() * p.l_x / (2.0 * p.c1);
    if (bmin < 2.0)
        std::cerr << "predicted_transport: b' = " << bmin
                  << " < 2; exponential-correction terms are not negligible\n";
    const double lc = p.l_x / p.c1;
    auto integrand = [&](double t) {
        const double m = pulse.m(t);
        return pulse.e_tilde(t) * m * std::exp(-m * lc);
    };
    const double ta = pulse.support_begin();
    const double tb = pulse.support_end();
    const double floor = 1e-16 * pulse.e_max() * pulse.m0() * (tb - ta) + 1e-300;
    return -integrate(integrand, ta, tb, 1e-11, floor) / M_PI;
}

double predicted_transport_slope(const PulseProfile& pulse, const SimulationParams& p,
                                 double rel_step) {
    SimulationParams hi = p, lo = p;
    hi.l_x = p.l_x * (1.0 + rel_step);
    lo.l_x = p.l_x * (1.0 - rel_step);
    const double nh = predicted_transport(pulse, hi);
    const double nl = predicted_transport(pulse, lo);
    if (nh == 0.0 || nl == 0.0 || (nh > 0) != (nl > 0))
        throw std::domain_error("predicted_transport_slope: transport vanishes or changes sign");
    return std::log(std::abs(nh) / std::abs(nl)) / (2.0 * rel_step * p.l_x);
}

AdiabaticPrediction operating_conditions(const PulseProfile& pulse, const SimulationParams& p) {
    AdiabaticPrediction a;
    a.margin = adiabaticity_margin(pulse, p);
    a.b_min = pulse.m_min() * p.l_x / (2.0 * p.c1);
    a.touch = pulse.m_min() <= p.c1 / p.l_x;
    a.tp_ratio = (pulse.t_p() / (2.0 * M_PI)) / (p.l_x / p.c1);
    a.lx_over_lambda = p.l_x * pulse.m0() / p.c1;
    a.n_transported_pred = predicted_transport(pulse, p);
    return a;
}

} // namespace vsim

#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace vsim {

// Adaptive Gauss-Kronrod 15(7) quadrature on a finite interval.
// Bisects until the local Kronrod-Gauss discrepancy meets the apportioned
// tolerance.  Good to ~1e-13 relative on smooth integrands; endpoint
// singularities must be removed by substitution before calling.
namespace gk {

// QUADPACK dqk15 abscissae/weights (positive half)
inline constexpr double xgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr double wgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double wg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename F>
inline void kernel(F&& f, double a, double b, double& result, double& err) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double resg = wg[3] * fc;
    double resk = wgk[7] * fc;
    for (int j = 0; j < 7; ++j) {
        const double x = h * xgk[j];
        const double fsum = f(c - x) + f(c + x);
        resk += wgk[j] * fsum;
        if (j % 2 == 1) resg += wg[j / 2] * fsum;
    }
    result = resk * h;
    err = std::abs((resk - resg) * h);
}

template <typename F>
inline double adapt(F&& f, double a, double b, double rel_tol, double abs_tol, int depth) {
    double r, e;
    kernel(f, a, b, r, e);
    if (e <= abs_tol || e <= rel_tol * std::abs(r) || depth >= 52) return r;
    const double c = 0.5 * (a + b);
    return adapt(f, a, c, rel_tol, 0.5 * abs_tol, depth + 1) +
           adapt(f, c, b, rel_tol, 0.5 * abs_tol, depth + 1);
}

} // namespace gk

template <typename F>
inline double integrate(F&& f, double a, double b, double rel_tol = 1e-10,
                        double abs_tol = 1e-14) {
    if (!(a <= b)) return -integrate(f, b, a, rel_tol, abs_tol);
    if (a == b) return 0.0;
    return gk::adapt(f, a, b, rel_tol, abs_tol, 0);
}

// Composite trapezoid over an ordered sample grid; throws on a non-monotone
// time grid.
inline double trapezoid(const double* x, const double* y, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
        if (!(x[i] > x[i - 1])) throw std::invalid_argument("trapezoid: grid not increasing");
        s += 0.5 * (y[i] + y[i - 1]) * (x[i] - x[i - 1]);
    }
    return s;
}

} // namespace vsim

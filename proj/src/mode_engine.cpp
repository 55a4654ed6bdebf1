#include "vortexsim/mode_engine.hpp"

#include "vortexsim/detail/ode.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace vsim {

double omega_sq(double k_x, double k_y, const PulseProfile& pulse, double t,
                const SimulationParams& p) {
    const double kxe = k_x - pulse.e_tilde(t);
    const double m = pulse.m(t);
    return p.c1 * p.c1 * (k_y * k_y + kxe * kxe) + m * m;
}

double wronskian_residual(const Mode& m, double volume) {
    const std::complex<double> w = m.f * std::conj(m.f_dot) - m.f_dot * std::conj(m.f);
    return std::abs(volume * w - std::complex<double>(0.0, 1.0));
}

double ModeEnsemble::max_wronskian_drift() const {
    double r = 0.0;
    for (double d : wronskian_drift) r = std::max(r, d);
    return r;
}

ModeEnsemble init_modes(const SimulationParams& p, const PulseProfile& pulse) {
    p.validate(); // throws on hard errors; warnings ignored here
    const double t0 = p.t_start;
    // the vacuum ansatz needs quiescent drives at t_start
    const double e_scale = std::max(std::abs(pulse.e_max()), 1e-300);
    if (std::abs(pulse.e_tilde(t0)) > 1e-8 * e_scale ||
        std::abs(pulse.m(t0) - pulse.m0()) > 1e-8 * pulse.m0()) {
        std::ostringstream os;
        os << "init_modes: t_start = " << t0 << " lies inside pulse support (support begins at "
           << pulse.support_begin() << ")";
        throw std::invalid_argument(os.str());
    }
    ModeEnsemble ens;
    ens.params = p;
    ens.t = t0;
    ens.modes.reserve(static_cast<std::size_t>(p.n_modes()));
    const double v = p.volume();
    for (int nx = -p.n_kx; nx <= p.n_kx; ++nx) {
        for (int ny = -p.n_ky; ny <= p.n_ky; ++ny) {
            Mode m;
            m.k_x = p.kx(nx);
            m.k_y = p.ky(ny);
            const double w = std::sqrt(omega_sq(m.k_x, m.k_y, pulse, t0, p));
            m.f = std::complex<double>(1.0 / std::sqrt(2.0 * w * v), 0.0);
            m.f_dot = std::complex<double>(0.0, -w) * m.f;
            ens.modes.push_back(m);
        }
    }
    ens.wronskian_drift.assign(ens.modes.size(), 0.0);
    return ens;
}

namespace {

struct Prop2 { // real 2x2 propagator for (f, fdot)
    double a11, a12, a21, a22;
    void apply(std::complex<double>& f, std::complex<double>& fd) const {
        const std::complex<double> nf = a11 * f + a12 * fd;
        fd = a21 * f + a22 * fd;
        f = nf;
    }
};

// GL4 Magnus propagator for one step of ddot(f) = -w(t) f given the frequency
// squared at the two Gauss nodes.  Exactly unimodular, so the Wronskian is
// conserved to rounding regardless of step size.
inline Prop2 magnus_prop(double w1, double w2, double h) {
    const double wbar = 0.5 * (w1 + w2);
    const double a = std::sqrt(3.0) * h * h * (w2 - w1) / 12.0;
    const double th2 = h * h * wbar - a * a;
    double cth, snc; // cos(theta), sin(theta)/theta continued through theta^2 < 0
    if (th2 > 1e-12) {
        const double th = std::sqrt(th2);
        cth = std::cos(th);
        snc = std::sin(th) / th;
    } else if (th2 < -1e-12) {
        const double th = std::sqrt(-th2);
        cth = std::cosh(th);
        snc = std::sinh(th) / th;
    } else {
        cth = 1.0 - th2 / 2.0 + th2 * th2 / 24.0;
        snc = 1.0 - th2 / 6.0 + th2 * th2 / 120.0;
    }
    return {cth + snc * a, snc * h, -snc * h * wbar, cth - snc * a};
}

constexpr double kGauss = 0.28867513459481287; // sqrt(3)/6

// Pulse values at the Gauss nodes of n equal substeps of [t0, t1]; shared by
// every mode with the same substep count, so the transcendental pulse
// evaluations are amortized over the whole ensemble.
struct NodeTable {
    long n = 0;
    double h = 0.0;
    std::vector<double> e;  // Etilde, 2 per substep
    std::vector<double> m2; // M^2, 2 per substep
};

NodeTable make_table(long n, double t0, double t1, const PulseProfile& pulse) {
    NodeTable tb;
    tb.n = n;
    tb.h = (t1 - t0) / static_cast<double>(n);
    tb.e.resize(2 * n);
    tb.m2.resize(2 * n);
    for (long i = 0; i < n; ++i) {
        const double ts = t0 + i * tb.h;
        const double ta = ts + tb.h * (0.5 - kGauss);
        const double tc = ts + tb.h * (0.5 + kGauss);
        tb.e[2 * i] = pulse.e_tilde(ta);
        tb.e[2 * i + 1] = pulse.e_tilde(tc);
        const double ma = pulse.m(ta);
        const double mc = pulse.m(tc);
        tb.m2[2 * i] = ma * ma;
        tb.m2[2 * i + 1] = mc * mc;
    }
    return tb;
}

inline void propagate(std::complex<double>& f, std::complex<double>& fd, double k_x,
                      double c2, double c2ky2, const NodeTable& tb) {
    for (long i = 0; i < tb.n; ++i) {
        const double d1 = k_x - tb.e[2 * i];
        const double d2 = k_x - tb.e[2 * i + 1];
        const double w1 = c2ky2 + c2 * d1 * d1 + tb.m2[2 * i];
        const double w2 = c2ky2 + c2 * d2 * d2 + tb.m2[2 * i + 1];
        magnus_prop(w1, w2, tb.h).apply(f, fd);
    }
}

long cap_substeps(const Mode& m, const PulseProfile& pulse, const SimulationParams& p,
                  double span) {
    // static frequency bound; the dip only lowers M, the drive only shifts k_x.
    // phase cap 1.5 < pi/2 keeps every substep clear of the stepping resonance
    const double kxm = std::abs(m.k_x) + pulse.e_max();
    const double w_ub = std::sqrt(p.c1 * p.c1 * (m.k_y * m.k_y + kxm * kxm) +
                                  pulse.m0() * pulse.m0());
    return std::max(1L, static_cast<long>(std::ceil(w_ub * span / 1.5)));
}

// Step-doubled pass: n and 2n substeps; accept the 2n result when they agree.
// Returns false if the tolerance was not met at this n.
bool try_advance(Mode& m, double c2, const NodeTable& tb1, const NodeTable& tb2, double tol,
                 double w_now) {
    const double c2ky2 = c2 * m.k_y * m.k_y;
    std::complex<double> f1 = m.f, fd1 = m.f_dot;
    propagate(f1, fd1, m.k_x, c2, c2ky2, tb1);
    std::complex<double> f2 = m.f, fd2 = m.f_dot;
    propagate(f2, fd2, m.k_x, c2, c2ky2, tb2);
    const double sf = std::max({std::abs(f2), std::abs(fd2) / w_now, 1e-300});
    const double err =
        std::max(std::abs(f1 - f2) / sf, std::abs(fd1 - fd2) / (w_now * sf)) / 15.0;
    if (err > tol) return false;
    m.f = f2;
    m.f_dot = fd2;
    return true;
}

void evolve_mode_rk(Mode& m, double t0, double t1, const PulseProfile& pulse,
                    const SimulationParams& p, double tol) {
    std::array<double, 4> y = {m.f.real(), m.f.imag(), m.f_dot.real(), m.f_dot.imag()};
    const double k_x = m.k_x, k_y = m.k_y;
    detail::integrate_dp54<4>(
        [&](double t, const std::array<double, 4>& s, std::array<double, 4>& ds) {
            const double w = omega_sq(k_x, k_y, pulse, t, p);
            ds[0] = s[2];
            ds[1] = s[3];
            ds[2] = -w * s[0];
            ds[3] = -w * s[1];
        },
        t0, t1, y, tol, 1e-14 / p.volume());
    m.f = {y[0], y[1]};
    m.f_dot = {y[2], y[3]};
}

} // namespace

void evolve(ModeEnsemble& ens, const PulseProfile& pulse, double t_target,
            const EvolveOptions& opt) {
    if (t_target == ens.t) return;
    if (t_target < ens.t) throw std::invalid_argument("evolve: backward evolution not supported");
    if (opt.tol <= 0.0) throw std::invalid_argument("evolve: tol must be positive");
    const double t0 = ens.t;
    const double span = t_target - t0;
    const SimulationParams& p = ens.params;
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(ens.modes.size());
    std::string fail;

    if (opt.method == EvolveMethod::RkDp54) {
#pragma omp parallel for schedule(dynamic, 8) if (opt.parallel)
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            try {
                evolve_mode_rk(ens.modes[static_cast<std::size_t>(i)], t0, t_target, pulse, p,
                               opt.tol);
            } catch (const std::exception& e) {
#pragma omp critical
                fail = e.what();
            }
        }
    } else {
        // per-mode cap-based substep counts; node tables shared across modes
        std::vector<long> nsub(ens.modes.size());
        std::map<long, NodeTable> tables;
        for (std::size_t i = 0; i < ens.modes.size(); ++i) {
            nsub[i] = cap_substeps(ens.modes[i], pulse, p, span);
            tables.emplace(nsub[i], NodeTable{});
            tables.emplace(2 * nsub[i], NodeTable{});
        }
        for (auto& [cnt, tb] : tables) tb = make_table(cnt, t0, t_target, pulse);

        // exact k_y -> -k_y degeneracy: reuse the partner's result when both
        // start from the identical state (true for init_modes ensembles)
        std::vector<std::ptrdiff_t> mirror(ens.modes.size(), -1);
        const int stride = 2 * p.n_ky + 1;
        if (static_cast<std::ptrdiff_t>(ens.modes.size()) == p.n_modes()) {
            for (std::size_t i = 0; i < ens.modes.size(); ++i) {
                const int iy = static_cast<int>(i % static_cast<std::size_t>(stride));
                if (iy <= p.n_ky) continue; // ny > 0 half reuses ny < 0 half
                const std::size_t jm = i - static_cast<std::size_t>(2 * (iy - p.n_ky));
                const Mode& a = ens.modes[i];
                const Mode& b = ens.modes[jm];
                if (a.k_x == b.k_x && a.k_y == -b.k_y && a.f == b.f && a.f_dot == b.f_dot)
                    mirror[i] = static_cast<std::ptrdiff_t>(jm);
            }
        }

        const double c2 = p.c1 * p.c1;
#pragma omp parallel for schedule(dynamic, 8) if (opt.parallel)
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            if (mirror[static_cast<std::size_t>(i)] >= 0) continue;
            try {
                Mode& m = ens.modes[static_cast<std::size_t>(i)];
                const double w_now = std::sqrt(omega_sq(m.k_x, m.k_y, pulse, t0, p));
                long ns = nsub[static_cast<std::size_t>(i)];
                if (!try_advance(m, c2, tables.at(ns), tables.at(2 * ns), opt.tol, w_now)) {
                    // rare refinement path: private tables at doubled counts
                    bool done = false;
                    for (int depth = 0; depth < 24 && !done; ++depth) {
                        ns *= 2;
                        const NodeTable a = make_table(ns, t0, t_target, pulse);
                        const NodeTable b = make_table(2 * ns, t0, t_target, pulse);
                        done = try_advance(m, c2, a, b, opt.tol, w_now);
                    }
                    if (!done) throw std::runtime_error("evolve: substep refinement exhausted");
                }
            } catch (const std::exception& e) {
#pragma omp critical
                fail = e.what();
            }
        }
        for (std::size_t i = 0; i < ens.modes.size(); ++i) {
            if (mirror[i] < 0) continue;
            const Mode& src = ens.modes[static_cast<std::size_t>(mirror[i])];
            ens.modes[i].f = src.f;
            ens.modes[i].f_dot = src.f_dot;
        }
    }
    if (!fail.empty()) throw std::runtime_error(fail);
    ens.t = t_target;

    // serial scan, fixed order: diagnostics are thread-count independent
    for (std::size_t i = 0; i < ens.modes.size(); ++i) {
        const double drift = wronskian_residual(ens.modes[i], p.volume());
        double& rec = ens.wronskian_drift[i];
        rec = std::max(rec, drift);
        if (rec > 1e3 * opt.tol) {
            std::ostringstream os;
            os << "evolve: Wronskian drift " << rec << " at mode (k_x=" << ens.modes[i].k_x
               << ", k_y=" << ens.modes[i].k_y << ") exceeds 1e3*tol = " << 1e3 * opt.tol;
            throw std::runtime_error(os.str());
        }
    }
}

} // namespace vsim

#include "vortexsim/pulse.hpp"

#include <algorithm>
#include <stdexcept>

namespace vsim {

PulseShape parse_pulse_shape(const std::string& tag) {
    if (tag == "bipolar-derivative") return PulseShape::BipolarDerivative;
    if (tag == "unipolar-gaussian") return PulseShape::UnipolarGaussian;
    if (tag == "custom-sampled") return PulseShape::CustomSampled;
    throw std::invalid_argument("unknown pulse shape tag: '" + tag + "'");
}

std::string pulse_shape_name(PulseShape s) {
    switch (s) {
        case PulseShape::BipolarDerivative: return "bipolar-derivative";
        case PulseShape::UnipolarGaussian: return "unipolar-gaussian";
        case PulseShape::CustomSampled: return "custom-sampled";
    }
    return "?";
}

PulseProfile PulseProfile::make(PulseShape shape, double m0, double e_max, double m_min,
                                double t_p, double t_center, double t_center_m) {
    if (t_p <= 0.0) throw std::invalid_argument("make_pulse: t_p must be positive");
    if (m_min <= 0.0) throw std::invalid_argument("make_pulse: m_min must be positive");
    if (m_min > m0) throw std::invalid_argument("make_pulse: m_min must not exceed m0");
    if (shape == PulseShape::CustomSampled)
        throw std::invalid_argument("make_pulse: custom-sampled needs make_custom");
    PulseProfile p;
    p.shape_ = shape;
    p.m0_ = m0;
    p.e_max_ = e_max;
    p.m_min_ = m_min;
    p.t_p_ = t_p;
    p.t_center_ = t_center;
    p.t_center_m_ = t_center_m;
    return p;
}

PulseProfile PulseProfile::make_custom(double m0, std::vector<PulseSample> samples) {
    if (samples.size() < 4)
        throw std::invalid_argument("make_custom: need at least 4 samples");
    for (std::size_t i = 1; i < samples.size(); ++i)
        if (samples[i].t <= samples[i - 1].t)
            throw std::invalid_argument("make_custom: sample times must be increasing");
    for (const auto& s : samples)
        if (s.m <= 0.0) throw std::invalid_argument("make_custom: M(t) must stay positive");

    PulseProfile p;
    p.shape_ = PulseShape::CustomSampled;
    p.m0_ = m0;
    p.samples_ = std::move(samples);
    const auto& v = p.samples_;
    const std::size_t n = v.size();
    p.de_.resize(n);
    p.dm_.resize(n);
    // centered finite-difference slopes for C1 Hermite interpolation
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t a = i == 0 ? 0 : i - 1;
        const std::size_t b = i + 1 == n ? i : i + 1;
        const double dt = v[b].t - v[a].t;
        p.de_[i] = (v[b].e_tilde - v[a].e_tilde) / dt;
        p.dm_[i] = (v[b].m - v[a].m) / dt;
    }
    p.m_min_ = std::min_element(v.begin(), v.end(), [](auto& x, auto& y) { return x.m < y.m; })->m;
    double emx = 0.0;
    for (const auto& s : v) emx = std::max(emx, std::abs(s.e_tilde));
    p.e_max_ = emx;
    p.t_p_ = v.back().t - v.front().t;
    p.t_center_ = 0.5 * (v.front().t + v.back().t);
    p.t_center_m_ = p.t_center_;
    return p;
}

std::size_t PulseProfile::locate(double t) const {
    auto it = std::upper_bound(samples_.begin(), samples_.end(), t,
                               [](double x, const PulseSample& s) { return x < s.t; });
    if (it == samples_.begin()) return 0;
    std::size_t i = static_cast<std::size_t>(it - samples_.begin()) - 1;
    return std::min(i, samples_.size() - 2);
}

namespace {

// cubic Hermite value and derivative on [t0,t1]
inline void hermite(double t, double t0, double t1, double y0, double y1, double s0, double s1,
                    double& y, double& dy) {
    const double h = t1 - t0;
    const double u = (t - t0) / h;
    const double u2 = u * u, u3 = u2 * u;
    y = (2 * u3 - 3 * u2 + 1) * y0 + (u3 - 2 * u2 + u) * h * s0 + (-2 * u3 + 3 * u2) * y1 +
        (u3 - u2) * h * s1;
    dy = ((6 * u2 - 6 * u) * y0 + (3 * u2 - 4 * u + 1) * h * s0 + (-6 * u2 + 6 * u) * y1 +
          (3 * u2 - 2 * u) * h * s1) /
         h;
}

constexpr double kSqrt2e = 2.3316439815971242; // sqrt(2 e); peak-normalizes u exp(-u^2)

} // namespace

double PulseProfile::e_tilde(double t) const {
    switch (shape_) {
        case PulseShape::BipolarDerivative: {
            const double u = (t - t_center_) / t_p_;
            return -e_max_ * kSqrt2e * u * std::exp(-u * u);
        }
        case PulseShape::UnipolarGaussian: {
            const double u = (t - t_center_) / t_p_;
            return e_max_ * std::exp(-u * u);
        }
        case PulseShape::CustomSampled: {
            if (t <= samples_.front().t) return samples_.front().e_tilde;
            if (t >= samples_.back().t) return samples_.back().e_tilde;
            const std::size_t i = locate(t);
            double y, dy;
            hermite(t, samples_[i].t, samples_[i + 1].t, samples_[i].e_tilde,
                    samples_[i + 1].e_tilde, de_[i], de_[i + 1], y, dy);
            return y;
        }
    }
    return 0.0;
}

double PulseProfile::e_tilde_dot(double t) const {
    switch (shape_) {
        case PulseShape::BipolarDerivative: {
            const double u = (t - t_center_) / t_p_;
            return -e_max_ * kSqrt2e * (1.0 - 2.0 * u * u) * std::exp(-u * u) / t_p_;
        }
        case PulseShape::UnipolarGaussian: {
            const double u = (t - t_center_) / t_p_;
            return -2.0 * u * e_max_ * std::exp(-u * u) / t_p_;
        }
        case PulseShape::CustomSampled: {
            if (t <= samples_.front().t || t >= samples_.back().t) return 0.0;
            const std::size_t i = locate(t);
            double y, dy;
            hermite(t, samples_[i].t, samples_[i + 1].t, samples_[i].e_tilde,
                    samples_[i + 1].e_tilde, de_[i], de_[i + 1], y, dy);
            return dy;
        }
    }
    return 0.0;
}

double PulseProfile::m(double t) const {
    if (shape_ == PulseShape::CustomSampled) {
        if (t <= samples_.front().t) return samples_.front().m;
        if (t >= samples_.back().t) return samples_.back().m;
        const std::size_t i = locate(t);
        double y, dy;
        hermite(t, samples_[i].t, samples_[i + 1].t, samples_[i].m, samples_[i + 1].m, dm_[i],
                dm_[i + 1], y, dy);
        return y;
    }
    const double u = (t - t_center_m_) / t_p_;
    return m0_ - (m0_ - m_min_) * std::exp(-u * u);
}

double PulseProfile::m_dot(double t) const {
    if (shape_ == PulseShape::CustomSampled) {
        if (t <= samples_.front().t || t >= samples_.back().t) return 0.0;
        const std::size_t i = locate(t);
        double y, dy;
        hermite(t, samples_[i].t, samples_[i + 1].t, samples_[i].m, samples_[i + 1].m, dm_[i],
                dm_[i + 1], y, dy);
        return dy;
    }
    const double u = (t - t_center_m_) / t_p_;
    return (m0_ - m_min_) * 2.0 * u * std::exp(-u * u) / t_p_;
}

double PulseProfile::support_begin() const {
    if (shape_ == PulseShape::CustomSampled) return samples_.front().t;
    // exp(-6^2) ~ 2e-16: both drives are at their asymptotes to machine precision
    return std::min(t_center_, t_center_m_) - 6.0 * t_p_;
}

double PulseProfile::support_end() const {
    if (shape_ == PulseShape::CustomSampled) return samples_.back().t;
    return std::max(t_center_, t_center_m_) + 6.0 * t_p_;
}

PulseProfile make_pulse(const std::string& shape, double m0, double e_max, double m_min,
                        double t_p, double t_center, double t_center_m_offset) {
    return PulseProfile::make(parse_pulse_shape(shape), m0, e_max, m_min, t_p, t_center,
                              t_center + t_center_m_offset);
}

PulsePoint evaluate_pulse(const PulseProfile& p, double t) {
    return {p.e_tilde(t), p.m(t), p.m_dot(t)};
}

} // namespace vsim

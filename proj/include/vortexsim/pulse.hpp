#pragma once

#include <cmath>
#include <string>
#include <vector>

namespace vsim {

enum class PulseShape {
    BipolarDerivative, // E ~ derivative of a Gaussian bump, integral exactly zero
    UnipolarGaussian,  // E ~ Gaussian bump
    CustomSampled,     // tabulated E(t) and M(t), C1 Hermite interpolation
};

PulseShape parse_pulse_shape(const std::string& tag);
std::string pulse_shape_name(PulseShape s);

// Tabulated profile sample for the custom-sampled shape.
struct PulseSample {
    double t;
    double e_tilde;
    double m;
};

// The two drives of a run: the reduced electric field Etilde(t) (a wavenumber)
// and the half pair-production frequency M(t).  M(t) dips from m0 to m_min as
// a Gaussian centered at t_center_m; the dip center may be offset from the
// E-pulse center (the two drives are independent inputs).
class PulseProfile {
  public:
    PulseProfile() = default;

    static PulseProfile make(PulseShape shape, double m0, double e_max, double m_min,
                             double t_p, double t_center, double t_center_m);
    static PulseProfile make_custom(double m0, std::vector<PulseSample> samples);

    double e_tilde(double t) const;
    double e_tilde_dot(double t) const;
    double m(double t) const;
    double m_dot(double t) const;

    PulseShape shape() const { return shape_; }
    double m0() const { return m0_; }
    double e_max() const { return e_max_; }
    double m_min() const { return m_min_; }
    double t_p() const { return t_p_; }
    double t_center() const { return t_center_; }
    double t_center_m() const { return t_center_m_; }

    bool is_null() const { return e_max_ == 0.0 && m_min_ == m0_; }

    // Earliest/latest time at which either drive deviates noticeably from its
    // asymptote; used to place integration windows and validate t_start.
    double support_begin() const;
    double support_end() const;

  private:
    PulseShape shape_ = PulseShape::BipolarDerivative;
    double m0_ = 1.0;
    double e_max_ = 0.0;
    double m_min_ = 1.0;
    double t_p_ = 1.0;
    double t_center_ = 0.0;
    double t_center_m_ = 0.0;

    // custom-sampled table with precomputed Hermite slopes
    std::vector<PulseSample> samples_;
    std::vector<double> de_, dm_;
    std::size_t locate(double t) const;
};

struct PulsePoint {
    double e_tilde;
    double m;
    double m_dot;
};

PulseProfile make_pulse(const std::string& shape, double m0, double e_max, double m_min,
                        double t_p, double t_center, double t_center_m_offset = 0.0);
PulsePoint evaluate_pulse(const PulseProfile& p, double t);

} // namespace vsim

#pragma once

// Path loss with Rayleigh fading: P_r = P_t * Z / (d / d_ref)^a, Z ~ Exp(1),
// d_ref = 1 m. Formulas work in linear units; inputs may be given in dBm.

#include <functional>

#include "gase/mathkernel.hpp"

namespace gase {

double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

/// Strictly positive transmit (or threshold) power.
class PowerLevel {
 public:
  static PowerLevel from_watts(double watts);
  static PowerLevel from_dbm(double dbm);

  double watts() const noexcept { return watts_; }
  double dbm() const { return watts_to_dbm(watts_); }

  PowerLevel scaled(double factor) const { return from_watts(watts_ * factor); }

  friend bool operator==(const PowerLevel&, const PowerLevel&) = default;

 private:
  explicit PowerLevel(double watts) : watts_(watts) {}
  double watts_;
};

struct PropagationEnvironment {
  double path_loss_exponent;     // a
  double noise_power_w;          // N
  double detection_threshold_w;  // P_min

  static constexpr double reference_distance_m = 1.0;

  static PropagationEnvironment from_dbm(double path_loss_exponent,
                                         double noise_dbm,
                                         double detection_threshold_dbm);

  void validate() const;
};

/// Average received SNR P_t / (d^a N).
double mean_snr(const PropagationEnvironment& env, PowerLevel p_t,
                double distance_m);

/// Rayleigh affected area (2 pi / a) Gamma(2 / a) (P_t / P_min)^(2 / a).
double affected_area_single(const PropagationEnvironment& env, PowerLevel p_t);

/// Complementary cdf of the fading power gain, P{Z >= z}.
using FadingCcdf = std::function<double(double)>;

/// 2 pi int_0^inf ccdf(P_min r^a / P_t) r dr for an arbitrary fading law.
/// Throws ConvergenceError when the integral does not settle (heavy tails).
double affected_area_generic(const PropagationEnvironment& env, PowerLevel p_t,
                             const FadingCcdf& fading_ccdf,
                             const math::QuadratureSpec& spec = {});

}  // namespace gase

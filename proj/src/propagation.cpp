#include "gase/propagation.hpp"

#include <cmath>
#include <sstream>

#include "gase/errors.hpp"

namespace gase {

double dbm_to_watts(double dbm) {
  if (!std::isfinite(dbm)) throw DomainError("dbm_to_watts: non-finite input");
  return std::pow(10.0, (dbm - 30.0) / 10.0);
}

double watts_to_dbm(double watts) {
  if (!(watts > 0.0) || !std::isfinite(watts)) {
    std::ostringstream os;
    os << "watts_to_dbm: power must be finite and > 0, got " << watts;
    throw DomainError(os.str());
  }
  return 10.0 * std::log10(watts) + 30.0;
}

PowerLevel PowerLevel::from_watts(double watts) {
  if (!(watts > 0.0) || !std::isfinite(watts)) {
    std::ostringstream os;
    os << "PowerLevel: power must be finite and > 0 W, got " << watts;
    throw DomainError(os.str());
  }
  return PowerLevel(watts);
}

PowerLevel PowerLevel::from_dbm(double dbm) {
  return from_watts(dbm_to_watts(dbm));
}

PropagationEnvironment PropagationEnvironment::from_dbm(
    double path_loss_exponent, double noise_dbm,
    double detection_threshold_dbm) {
  PropagationEnvironment env{path_loss_exponent, dbm_to_watts(noise_dbm),
                             dbm_to_watts(detection_threshold_dbm)};
  env.validate();
  return env;
}

void PropagationEnvironment::validate() const {
  if (!(path_loss_exponent > 0.0) || !std::isfinite(path_loss_exponent)) {
    throw DomainError("PropagationEnvironment: path-loss exponent must be > 0");
  }
  if (!(noise_power_w > 0.0) || !std::isfinite(noise_power_w)) {
    throw DomainError("PropagationEnvironment: noise power must be > 0");
  }
  if (!(detection_threshold_w > 0.0) || !std::isfinite(detection_threshold_w)) {
    throw DomainError("PropagationEnvironment: detection threshold must be > 0");
  }
}

double mean_snr(const PropagationEnvironment& env, PowerLevel p_t,
                double distance_m) {
  if (!(distance_m > 0.0) || !std::isfinite(distance_m)) {
    throw DomainError("mean_snr: distance must be finite and > 0");
  }
  return p_t.watts() /
         (std::pow(distance_m, env.path_loss_exponent) * env.noise_power_w);
}

double affected_area_single(const PropagationEnvironment& env, PowerLevel p_t) {
  env.validate();
  const double a = env.path_loss_exponent;
  return 2.0 * math::kPi / a * math::gamma_fn(2.0 / a) *
         std::pow(p_t.watts() / env.detection_threshold_w, 2.0 / a);
}

double affected_area_generic(const PropagationEnvironment& env, PowerLevel p_t,
                             const FadingCcdf& fading_ccdf,
                             const math::QuadratureSpec& spec) {
  env.validate();
  const double a = env.path_loss_exponent;
  // r = R0 u with R0 = (P_t / P_min)^(1/a) turns the argument into u^a.
  const double r0 = std::pow(p_t.watts() / env.detection_threshold_w, 1.0 / a);
  const auto r = math::integrate_semi_infinite(
      [&](double u) { return fading_ccdf(std::pow(u, a)) * u; }, spec);
  return 2.0 * math::kPi * r0 * r0 * r.value;
}

}  // namespace gase

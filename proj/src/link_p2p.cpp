#include "gase/link_p2p.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "gase/errors.hpp"

namespace gase {

double GaseBreakdown::component(const std::string& name) const {
  for (const auto& [key, value] : components) {
    if (key == name) return value;
  }
  throw std::out_of_range("GaseBreakdown: no component named " + name);
}

void P2pScenario::validate() const {
  env.validate();
  if (!(distance_m > 0.0) || !std::isfinite(distance_m)) {
    throw DomainError("P2pScenario: distance must be finite and > 0");
  }
}

double P2pScenario::inverse_mean_snr() const {
  return 1.0 / mean_snr(env, p_t, distance_m);
}

double ergodic_capacity_p2p(const P2pScenario& s) {
  s.validate();
  return math::scaled_e1(s.inverse_mean_snr()) / math::kLn2;
}

GaseBreakdown gase_p2p(const P2pScenario& s) {
  GaseBreakdown out;
  out.capacity = ergodic_capacity_p2p(s);
  out.area = affected_area_single(s.env, s.p_t);
  out.gase = out.capacity / out.area;
  out.components = {{"mean_snr", mean_snr(s.env, s.p_t, s.distance_m)}};
  return out;
}

double optimal_power_residual(double path_loss_exponent, double x) {
  return (x + 2.0 / path_loss_exponent) * math::scaled_e1(x) - 1.0;
}

PowerLevel optimal_power_p2p(const PropagationEnvironment& env,
                             double distance_m, RootBracket bracket) {
  env.validate();
  const double a = env.path_loss_exponent;
  if (!(a > 2.0)) {
    std::ostringstream os;
    os << "optimal_power_p2p: GASE has no interior maximum for a = " << a
       << " (requires a > 2)";
    throw NoInteriorOptimumError(os.str());
  }
  if (!(distance_m > 0.0)) {
    throw DomainError("optimal_power_p2p: distance must be > 0");
  }
  if (!(bracket.x_lo > 0.0) || !(bracket.x_hi > bracket.x_lo)) {
    throw DomainError("optimal_power_p2p: invalid bracket");
  }
  // Root in log x: the residual spans many decades.
  const double log_x = math::find_root_bracketed(
      [a](double lx) { return optimal_power_residual(a, std::exp(lx)); },
      std::log(bracket.x_lo), std::log(bracket.x_hi), 1e-14);
  const double x_star = std::exp(log_x);
  const double scale = std::pow(distance_m, a) * env.noise_power_w;
  return PowerLevel::from_watts(scale / x_star);
}

PowerLevel optimal_power_p2p(const PropagationEnvironment& env,
                             double distance_m, PowerLevel p_lo,
                             PowerLevel p_hi) {
  env.validate();
  const double scale =
      std::pow(distance_m, env.path_loss_exponent) * env.noise_power_w;
  return optimal_power_p2p(env, distance_m,
                           RootBracket{scale / p_hi.watts(), scale / p_lo.watts()});
}

}  // namespace gase

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gase/propagation.hpp"

namespace gase {

/// Capacity (bps/Hz), affected area (m^2) and their ratio (bps/Hz/m^2),
/// plus labelled sub-terms for multi-phase or multi-branch scenarios.
struct GaseBreakdown {
  double capacity = 0.0;
  double area = 0.0;
  double gase = 0.0;
  std::vector<std::pair<std::string, double>> components;

  /// Value of a named component; throws std::out_of_range if absent.
  double component(const std::string& name) const;
};

struct P2pScenario {
  PropagationEnvironment env;
  PowerLevel p_t;
  double distance_m;

  void validate() const;
  /// d^a N / P_t, the reciprocal mean SNR.
  double inverse_mean_snr() const;
};

double ergodic_capacity_p2p(const P2pScenario& s);

GaseBreakdown gase_p2p(const P2pScenario& s);

/// Optimal transmit power searched in the dimensionless x = d^a N / P_t.
struct RootBracket {
  double x_lo = 1e-6;
  double x_hi = 1e3;
};

/// Solves (x + 2/a) F(x) = 1 for x* and returns P* = d^a N / x*.
/// Requires a > 2; otherwise throws NoInteriorOptimumError.
PowerLevel optimal_power_p2p(const PropagationEnvironment& env,
                             double distance_m, RootBracket bracket = {});

/// Same, with the bracket expressed as a transmit-power range.
PowerLevel optimal_power_p2p(const PropagationEnvironment& env,
                             double distance_m, PowerLevel p_lo,
                             PowerLevel p_hi);

/// Residual (x + 2/a) F(x) - 1 of the optimality condition.
double optimal_power_residual(double path_loss_exponent, double x);

}  // namespace gase

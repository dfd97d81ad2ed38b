#pragma once

// Three-node cooperation: per realization the source either transmits
// directly (capacity log2(1 + G_SD)) or relays (capacity (1/2) log2(1 + G_eq)),
// whichever is larger. Direct mode wins iff G_SD^2 + 2 G_SD > G_eq.
// No combining at the destination in relay mode.

#include "gase/relay_dualhop.hpp"

namespace gase {

struct CoopScenario {
  PropagationEnvironment env;
  PowerLevel p_s;
  PowerLevel p_r;
  double d_sd;
  double d_sr;
  double d_rd;

  void validate() const;
  double mean_snr_sd() const;
  double mean_snr_sr() const;
  double mean_snr_rd() const;
  /// Relay-link view (S-R and R-D hops) of the same powers and geometry.
  DualHopScenario relay_link() const;
  /// 1/gbar_SR + 1/gbar_RD
  double alpha1() const;
  /// 2 alpha1 + 1/gbar_SD
  double alpha2() const;
  /// 1/sqrt(gbar_SR gbar_RD)
  double beta1() const;
  /// alpha1 + 1/gbar_SD
  double beta2() const;
};

/// int_0^inf exp(-a1 t^2 - a2 t) dt = (1/2) sqrt(pi/a1) erfcx(a2 / (2 sqrt a1)).
double special_integral_D(double a1, double a2);

/// int_0^inf x e^{-b2 s - linear t} K1(x) dt with s = t^2 + 2t, x = 2 b1 s.
/// linear = 0 is the bare definition; the direct-mode probability needs the
/// S-D density term e^{-t / gbar_SD}, which is linear in t.
double special_integral_A(double b1, double b2, double linear = 0.0,
                          const math::QuadratureSpec& spec = {1e-11, 0.0, 2000});

double prob_relay(const CoopScenario& s, RelayProtocol p);
/// 1 - prob_relay, so the two always sum to one.
double prob_direct(const CoopScenario& s, RelayProtocol p);

/// Density of G_C = G_SD^2 + 2 G_SD given direct mode.
Density conditional_pdf_direct(const CoopScenario& s, RelayProtocol p);
/// Density of G_C = G_eq given relay mode.
Density conditional_pdf_relay(const CoopScenario& s, RelayProtocol p);

double conditional_capacity_direct(const CoopScenario& s, RelayProtocol p);
double conditional_capacity_relay(const CoopScenario& s, RelayProtocol p);

struct CoopResult {
  double p_direct = 0.0;
  double p_relay = 0.0;
  double c_direct = 0.0;
  double c_relay = 0.0;
  /// p_direct c_direct + p_relay c_relay
  double capacity = 0.0;
  double area_s = 0.0;
  double area_r = 0.0;
  /// p_d C_d / A_S + p_r (C_r / 2) (1/A_S + 1/A_R)
  double gase = 0.0;

  GaseBreakdown breakdown() const;
};

CoopResult gase_coop(const CoopScenario& s, RelayProtocol p);

}  // namespace gase

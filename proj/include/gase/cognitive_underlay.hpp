#pragma once

// Underlay spectrum sharing: the secondary pair transmits in parallel with the
// primary pair only while its interference at the primary receiver,
// P2 Z_SP / d_SP^a, stays below I_th. Otherwise the primary link runs alone.

#include "gase/link_p2p.hpp"

namespace gase {

struct CognitiveScenario {
  PropagationEnvironment env;
  PowerLevel p1;  // primary transmitter
  PowerLevel p2;  // secondary transmitter
  double d_p;     // S_P -> D_P
  double d_s;     // S_S -> D_S
  double d_sp;    // S_S -> D_P (interference on the primary)
  double d_ps;    // S_P -> D_S (interference on the secondary)
  double d0;      // S_P <-> S_S
  double i_th_w;

  /// Distances positive, I_th > 0, and the triangle bounds
  /// |d0 - d_p| <= d_sp <= d0 + d_p and |d0 - d_s| <= d_ps <= d0 + d_s.
  void validate() const;

  /// (P1 / P2) (d_SP / d_P)^a
  double rho_p() const;
  /// (P2 / P1) (d_PS / d_S)^a
  double rho_s() const;
  double kappa_p() const { return d_sp / d_p; }
  double kappa_s() const { return d_ps / d_s; }

  /// d_P = d_S = d and d_SP = d_PS = kappa d; d0 defaults to d.
  static CognitiveScenario with_kappa(const PropagationEnvironment& env,
                                      PowerLevel p1, PowerLevel p2, double d,
                                      double kappa, double i_th_w,
                                      double d0 = 0.0);
};

/// 1 - exp(-I_th d_SP^a / P2)
double prob_parallel(const CognitiveScenario& s);

/// E ln(1 + X / (u + Y / rho)) for independent unit exponentials X, Y:
/// rho/(1-rho) [F(u rho) - F(u)], or 1 - u F(u) when |rho - 1| < 1e-9.
double interference_capacity_nats(double u, double rho);

/// E[log2(1 + Gamma_p) | P2 Z_SP / d_SP^a < I_th].
double primary_capacity_parallel(const CognitiveScenario& s);

/// Limit of primary_capacity_parallel as I_th -> infinity.
double primary_capacity_x_channel(const CognitiveScenario& s);

/// E[log2(1 + Gamma_s)]; the constraint does not involve the secondary's draws.
double secondary_capacity_parallel(const CognitiveScenario& s);

/// P{X >= threshold} for X the sum of two independent exponentials with means
/// mu_p and mu_s. An infinite mean gives 1.
double two_source_exceedance(double mu_p, double mu_s, double threshold);

struct AreaQuadratureOptions {
  double rel_tol = 1e-4;
  int max_subdivisions = 2000;
};

/// Polar integral of two_source_exceedance over the plane, S_P at the origin
/// and S_S at distance d0.
double affected_area_parallel(const CognitiveScenario& s,
                              const AreaQuadratureOptions& opt = {});

/// eta_CR = P eta_pt + (1 - P) eta_st. `capacity` is the mean total spectral
/// efficiency P (C_p + C_s) + (1 - P) C_p2p and `area` is capacity / gase.
GaseBreakdown gase_cognitive(const CognitiveScenario& s);
/// Same with a precomputed parallel-transmission area (it does not depend on
/// I_th, so threshold sweeps can reuse it).
GaseBreakdown gase_cognitive(const CognitiveScenario& s, double area_parallel);

/// (C_p' + C_s) / A_parallel
GaseBreakdown gase_x_channel(const CognitiveScenario& s);
GaseBreakdown gase_x_channel(const CognitiveScenario& s, double area_parallel);

}  // namespace gase

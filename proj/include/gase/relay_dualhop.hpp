#pragma once

// Dual-hop S -> R -> D relaying under half-duplex: the source and relay
// transmit in alternate slots, so each hop's footprint is counted separately.

#include <functional>

#include "gase/link_p2p.hpp"

namespace gase {

enum class RelayProtocol { DF, AF };

const char* to_string(RelayProtocol p);

struct DualHopScenario {
  PropagationEnvironment env;
  PowerLevel p_s;
  PowerLevel p_r;
  double d_sr;
  double d_rd;

  void validate() const;
  double mean_snr_sr() const;
  double mean_snr_rd() const;
  /// 1/gbar_SR + 1/gbar_RD
  double alpha1() const;
  /// 1/sqrt(gbar_SR gbar_RD)
  double beta1() const;
};

using Density = std::function<double(double)>;

/// Exponential density of min(Gamma_SR, Gamma_RD), rate alpha1.
Density df_equivalent_snr_pdf(const DualHopScenario& s);

/// Density 2 b g e^{-a g} [a K1(2 b g) + 2 b K0(2 b g)] of the harmonic-mean
/// SNR Gamma_1 Gamma_2 / (Gamma_1 + Gamma_2), used as the AF approximation.
Density af_equivalent_snr_pdf(const DualHopScenario& s);

/// Pointwise forms in terms of (alpha1, beta1); valid for gamma >= 0.
double af_pdf(double alpha1, double beta1, double gamma);
/// P{Gamma_eq > gamma} = 2 b g e^{-a g} K1(2 b g).
double af_ccdf(double alpha1, double beta1, double gamma);

/// (1 / (2 ln 2)) F(alpha1)
double ergodic_capacity_df(const DualHopScenario& s);

/// (1/2) int log2(1 + g) f_AF(g) dg by adaptive quadrature.
double ergodic_capacity_af(const DualHopScenario& s,
                           const math::QuadratureSpec& spec = {1e-10, 0.0, 2000});

double ergodic_capacity_dualhop(const DualHopScenario& s, RelayProtocol p);

/// eta_R = (C / 2) (1 / A_SR + 1 / A_RD). `area` holds the equivalent area
/// C / eta_R; the per-hop areas and mean SNRs are in `components`.
GaseBreakdown gase_dualhop(const DualHopScenario& s, RelayProtocol p);

/// Explicit DF expression
/// F(alpha1) a P_min^(2/a) (P_S^(-2/a) + P_R^(-2/a)) / (8 pi ln2 Gamma(2/a)).
double gase_df_closed_form(const DualHopScenario& s);

struct RelayOptimum {
  PowerLevel p_s;
  PowerLevel p_r;
  double gase;
  int evaluations;
};

/// Box-constrained maximizer of eta_R over P_S, P_R in [p_max 1e-12, p_max]:
/// coordinate descent with golden-section line searches on log-power axes
/// from 8 fixed starts.
RelayOptimum optimize_relay_powers(const PropagationEnvironment& env,
                                   double d_sr, double d_rd, PowerLevel p_max,
                                   RelayProtocol protocol);

}  // namespace gase

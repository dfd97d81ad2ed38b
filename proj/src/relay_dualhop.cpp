#include "gase/relay_dualhop.hpp"

#include <array>
#include <cmath>

#include "gase/errors.hpp"

namespace gase {

namespace {

struct LineMax {
  double x;
  double f;
};

// Golden-section maximization on [lo, hi]; endpoints are compared explicitly
// so that boundary optima are returned exactly.
template <class F>
LineMax golden_max(F&& f, double lo, double hi, double tol, int& evals) {
  const double invphi = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double c = b - invphi * (b - a), d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  evals += 2;
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
    ++evals;
  }
  LineMax best = fc >= fd ? LineMax{c, fc} : LineMax{d, fd};
  for (double edge : {lo, hi}) {
    const double fe = f(edge);
    ++evals;
    if (fe > best.f) best = {edge, fe};
  }
  return best;
}

}  // namespace

const char* to_string(RelayProtocol p) {
  return p == RelayProtocol::DF ? "df" : "af";
}

void DualHopScenario::validate() const {
  env.validate();
  if (!(d_sr > 0.0) || !std::isfinite(d_sr) || !(d_rd > 0.0) ||
      !std::isfinite(d_rd)) {
    throw DomainError("DualHopScenario: hop distances must be finite and > 0");
  }
}

double DualHopScenario::mean_snr_sr() const { return mean_snr(env, p_s, d_sr); }
double DualHopScenario::mean_snr_rd() const { return mean_snr(env, p_r, d_rd); }

double DualHopScenario::alpha1() const {
  return 1.0 / mean_snr_sr() + 1.0 / mean_snr_rd();
}

double DualHopScenario::beta1() const {
  return 1.0 / std::sqrt(mean_snr_sr() * mean_snr_rd());
}

Density df_equivalent_snr_pdf(const DualHopScenario& s) {
  s.validate();
  const double a1 = s.alpha1();
  return [a1](double g) { return g < 0.0 ? 0.0 : a1 * std::exp(-a1 * g); };
}

double af_pdf(double alpha1, double beta1, double gamma) {
  if (gamma < 0.0) return 0.0;
  if (gamma == 0.0) return alpha1;  // x K1(x) -> 1
  const double x = 2.0 * beta1 * gamma;
  // e^{-a g} K(2 b g) = e^{-(a + 2 b) g} Kscaled(2 b g)
  return x * std::exp(-(alpha1 + 2.0 * beta1) * gamma) *
         (alpha1 * math::bessel_k1_scaled(x) +
          2.0 * beta1 * math::bessel_k0_scaled(x));
}

double af_ccdf(double alpha1, double beta1, double gamma) {
  if (gamma <= 0.0) return 1.0;
  const double x = 2.0 * beta1 * gamma;
  return x * std::exp(-(alpha1 + 2.0 * beta1) * gamma) *
         math::bessel_k1_scaled(x);
}

Density af_equivalent_snr_pdf(const DualHopScenario& s) {
  s.validate();
  const double a1 = s.alpha1(), b1 = s.beta1();
  return [a1, b1](double g) { return af_pdf(a1, b1, g); };
}

double ergodic_capacity_df(const DualHopScenario& s) {
  s.validate();
  return math::scaled_e1(s.alpha1()) / (2.0 * math::kLn2);
}

double ergodic_capacity_af(const DualHopScenario& s,
                           const math::QuadratureSpec& spec) {
  s.validate();
  const double a1 = s.alpha1(), b1 = s.beta1();
  const auto r = math::integrate_semi_infinite(
      [=](double g) { return std::log1p(g) * af_pdf(a1, b1, g); }, spec,
      1.0 / a1);
  return r.value / (2.0 * math::kLn2);
}

double ergodic_capacity_dualhop(const DualHopScenario& s, RelayProtocol p) {
  return p == RelayProtocol::DF ? ergodic_capacity_df(s) : ergodic_capacity_af(s);
}

GaseBreakdown gase_dualhop(const DualHopScenario& s, RelayProtocol p) {
  GaseBreakdown out;
  out.capacity = ergodic_capacity_dualhop(s, p);
  const double a_sr = affected_area_single(s.env, s.p_s);
  const double a_rd = affected_area_single(s.env, s.p_r);
  out.gase = 0.5 * out.capacity * (1.0 / a_sr + 1.0 / a_rd);
  out.area = out.capacity / out.gase;
  out.components = {{"area_sr", a_sr},
                    {"area_rd", a_rd},
                    {"mean_snr_sr", s.mean_snr_sr()},
                    {"mean_snr_rd", s.mean_snr_rd()}};
  return out;
}

double gase_df_closed_form(const DualHopScenario& s) {
  s.validate();
  const double a = s.env.path_loss_exponent;
  const double pmin = s.env.detection_threshold_w;
  return math::scaled_e1(s.alpha1()) * a * std::pow(pmin, 2.0 / a) *
         (std::pow(s.p_s.watts(), -2.0 / a) + std::pow(s.p_r.watts(), -2.0 / a)) /
         (8.0 * math::kPi * math::kLn2 * math::gamma_fn(2.0 / a));
}

RelayOptimum optimize_relay_powers(const PropagationEnvironment& env,
                                   double d_sr, double d_rd, PowerLevel p_max,
                                   RelayProtocol protocol) {
  env.validate();
  const double hi = std::log(p_max.watts());
  const double lo = hi + std::log(1e-12);
  int evals = 0;
  auto objective = [&](double u, double v) {
    const DualHopScenario s{env, PowerLevel::from_watts(std::exp(u)),
                            PowerLevel::from_watts(std::exp(v)), d_sr, d_rd};
    return gase_dualhop(s, protocol).gase;
  };
  // Starts as fractions of the log box measured from its lower corner.
  constexpr std::array<std::array<double, 2>, 8> starts{{{1.0, 1.0},
                                                         {0.5, 0.5},
                                                         {0.75, 0.75},
                                                         {0.25, 0.25},
                                                         {1.0, 0.5},
                                                         {0.5, 1.0},
                                                         {0.9, 0.6},
                                                         {0.6, 0.9}}};
  const double tol = 1e-9 * (hi - lo);
  double best_u = hi, best_v = hi;
  double best_f = -1.0;
  for (const auto& st : starts) {
    double u = lo + st[0] * (hi - lo);
    double v = lo + st[1] * (hi - lo);
    double f = objective(u, v);
    ++evals;
    for (int sweep = 0; sweep < 500; ++sweep) {
      const double u_old = u, v_old = v, f_old = f;
      const auto mu = golden_max([&](double x) { return objective(x, v); }, lo, hi,
                                 tol, evals);
      if (mu.f > f) { u = mu.x; f = mu.f; }
      const auto mv = golden_max([&](double y) { return objective(u, y); }, lo, hi,
                                 tol, evals);
      if (mv.f > f) { v = mv.x; f = mv.f; }
      if (std::abs(u - u_old) <= 10 * tol && std::abs(v - v_old) <= 10 * tol) break;
      if (f - f_old <= 1e-15 * std::abs(f)) break;
    }
    if (f > best_f) {
      best_f = f;
      best_u = u;
      best_v = v;
    }
  }
  return {PowerLevel::from_watts(std::exp(best_u)),
          PowerLevel::from_watts(std::exp(best_v)), best_f, evals};
}

}  // namespace gase

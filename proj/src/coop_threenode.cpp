#include "gase/coop_threenode.hpp"

#include <cmath>

#include "gase/errors.hpp"

namespace gase {

namespace {

const math::QuadratureSpec kSpec{1e-10, 0.0, 4000};

// Below this mode probability the "1 minus" difference forms cancel badly and
// the ratio-of-integrals forms take over.
constexpr double kCancellationGuard = 0.01;

// sqrt(1 + g) - 1 without cancellation at small g
double xi_of(double g) { return g / (1.0 + std::sqrt(1.0 + g)); }

double semi_inf(const math::Integrand& f, double scale) {
  return math::integrate_semi_infinite(f, kSpec, scale).value;
}

// F_eq(g) and P{G_eq > g} for the relay link
double eq_cdf(const CoopScenario& s, RelayProtocol p, double g) {
  if (p == RelayProtocol::DF) return -std::expm1(-s.alpha1() * g);
  return 1.0 - af_ccdf(s.alpha1(), s.beta1(), g);
}

double eq_pdf(const CoopScenario& s, RelayProtocol p, double g) {
  if (p == RelayProtocol::DF) return s.alpha1() * std::exp(-s.alpha1() * g);
  return af_pdf(s.alpha1(), s.beta1(), g);
}

// P{direct} as int f_SD(x) F_eq(x^2 + 2x) dx, free of the 1 - P_r cancellation.
double prob_direct_by_quadrature(const CoopScenario& s, RelayProtocol p) {
  const double g_sd = s.mean_snr_sd();
  return semi_inf(
             [&](double x) {
               return std::exp(-x / g_sd) * eq_cdf(s, p, x * x + 2.0 * x);
             },
             g_sd) /
         g_sd;
}

double direct_normalizer(const CoopScenario& s, RelayProtocol p) {
  const double pd = prob_direct(s, p);
  return pd >= kCancellationGuard ? pd : prob_direct_by_quadrature(s, p);
}

}  // namespace

void CoopScenario::validate() const {
  env.validate();
  for (double d : {d_sd, d_sr, d_rd}) {
    if (!(d > 0.0) || !std::isfinite(d)) {
      throw DomainError("CoopScenario: distances must be finite and > 0");
    }
  }
}

double CoopScenario::mean_snr_sd() const { return mean_snr(env, p_s, d_sd); }
double CoopScenario::mean_snr_sr() const { return mean_snr(env, p_s, d_sr); }
double CoopScenario::mean_snr_rd() const { return mean_snr(env, p_r, d_rd); }

DualHopScenario CoopScenario::relay_link() const {
  return {env, p_s, p_r, d_sr, d_rd};
}

double CoopScenario::alpha1() const {
  return 1.0 / mean_snr_sr() + 1.0 / mean_snr_rd();
}
double CoopScenario::alpha2() const { return 2.0 * alpha1() + 1.0 / mean_snr_sd(); }
double CoopScenario::beta1() const {
  return 1.0 / std::sqrt(mean_snr_sr() * mean_snr_rd());
}
double CoopScenario::beta2() const { return alpha1() + 1.0 / mean_snr_sd(); }

double special_integral_D(double a1, double a2) {
  if (!(a1 > 0.0) || !(a2 >= 0.0) || !std::isfinite(a1) || !std::isfinite(a2)) {
    throw DomainError("special_integral_D: requires a1 > 0 and a2 >= 0");
  }
  const double r = std::sqrt(a1);
  return 0.5 * std::sqrt(math::kPi) / r * math::erfcx(a2 / (2.0 * r));
}

double special_integral_A(double b1, double b2, double linear,
                          const math::QuadratureSpec& spec) {
  if (!(b1 > 0.0) || !(b2 > 0.0) || !(linear >= 0.0)) {
    throw DomainError("special_integral_A: requires b1 > 0, b2 > 0, linear >= 0");
  }
  auto f = [=](double t) {
    const double sq = t * (t + 2.0);
    if (sq == 0.0) return 1.0;  // x K1(x) -> 1
    const double x = 2.0 * b1 * sq;
    return x * std::exp(-(b2 + 2.0 * b1) * sq - linear * t) *
           math::bessel_k1_scaled(x);
  };
  // t where t^2 + 2t reaches the decay length of the exponent
  double scale = std::sqrt(1.0 + 1.0 / (b2 + 2.0 * b1)) - 1.0;
  if (linear > 0.0) scale = std::min(scale, 1.0 / linear);
  return math::integrate_semi_infinite(f, spec, scale).value;
}

double prob_relay(const CoopScenario& s, RelayProtocol p) {
  s.validate();
  const double g_sd = s.mean_snr_sd();
  if (p == RelayProtocol::DF) return special_integral_D(s.alpha1(), s.alpha2()) / g_sd;
  return special_integral_A(s.beta1(), s.alpha1(), 1.0 / g_sd) / g_sd;
}

double prob_direct(const CoopScenario& s, RelayProtocol p) {
  return 1.0 - prob_relay(s, p);
}

Density conditional_pdf_direct(const CoopScenario& s, RelayProtocol p) {
  s.validate();
  const double g_sd = s.mean_snr_sd();
  const double norm = direct_normalizer(s, p);
  return [s, p, g_sd, norm](double g) {
    if (g < 0.0) return 0.0;
    const double xi = xi_of(g);
    return std::exp(-xi / g_sd) / g_sd * eq_cdf(s, p, g) / (2.0 * (xi + 1.0) * norm);
  };
}

Density conditional_pdf_relay(const CoopScenario& s, RelayProtocol p) {
  s.validate();
  const double g_sd = s.mean_snr_sd();
  const double norm = prob_relay(s, p);
  return [s, p, g_sd, norm](double g) {
    if (g < 0.0) return 0.0;
    return eq_pdf(s, p, g) * -std::expm1(-xi_of(g) / g_sd) / norm;
  };
}

double conditional_capacity_direct(const CoopScenario& s, RelayProtocol p) {
  s.validate();
  const double g_sd = s.mean_snr_sd();
  if (p == RelayProtocol::DF) {
    const double a1 = s.alpha1(), a2 = s.alpha2();
    if (prob_direct(s, p) >= kCancellationGuard) {
      const double tail = semi_inf(
          [=](double t) { return std::log1p(t) * std::exp(-a1 * t * t - a2 * t); },
          std::min(1.0 / a2, 1.0 / std::sqrt(a1)));
      return (g_sd * math::scaled_e1(1.0 / g_sd) - tail) /
             (math::kLn2 * (g_sd - special_integral_D(a1, a2)));
    }
    auto weight = [=](double x) {
      return std::exp(-x / g_sd) * -std::expm1(-a1 * (x * x + 2.0 * x));
    };
    const double num = semi_inf([&](double x) { return std::log1p(x) * weight(x); }, g_sd);
    const double den = semi_inf(weight, g_sd);
    return num / (den * math::kLn2);
  }
  const auto pdf = conditional_pdf_direct(s, p);
  return semi_inf([&](double g) { return 0.5 * std::log2(1.0 + g) * pdf(g); },
                  g_sd * g_sd + 2.0 * g_sd);
}

double conditional_capacity_relay(const CoopScenario& s, RelayProtocol p) {
  s.validate();
  const double g_sd = s.mean_snr_sd();
  const double a1 = s.alpha1();
  if (p == RelayProtocol::DF) {
    const double d = special_integral_D(a1, s.alpha2());
    if (prob_relay(s, p) >= kCancellationGuard) {
      const double tail = semi_inf(
          [=](double t) {
            return std::log1p(t) * std::exp(-a1 * t - xi_of(t) / g_sd);
          },
          1.0 / a1);
      return g_sd / (2.0 * math::kLn2 * d) * (math::scaled_e1(a1) - a1 * tail);
    }
    auto weight = [=](double t) {
      return std::exp(-a1 * t) * -std::expm1(-xi_of(t) / g_sd);
    };
    const double num = semi_inf([&](double t) { return std::log1p(t) * weight(t); }, 1.0 / a1);
    const double den = semi_inf(weight, 1.0 / a1);
    return num / (2.0 * math::kLn2 * den);
  }
  const auto pdf = conditional_pdf_relay(s, p);
  return semi_inf([&](double g) { return 0.5 * std::log2(1.0 + g) * pdf(g); }, 1.0 / a1);
}

GaseBreakdown CoopResult::breakdown() const {
  GaseBreakdown out;
  out.capacity = capacity;
  out.gase = gase;
  out.area = capacity / gase;
  out.components = {{"p_direct", p_direct}, {"p_relay", p_relay},
                    {"c_direct", c_direct}, {"c_relay", c_relay},
                    {"area_s", area_s},     {"area_r", area_r}};
  return out;
}

CoopResult gase_coop(const CoopScenario& s, RelayProtocol p) {
  s.validate();
  CoopResult r;
  r.p_relay = prob_relay(s, p);
  r.p_direct = 1.0 - r.p_relay;
  // A mode with zero probability contributes nothing; skip its integrals.
  r.c_direct = r.p_direct > 0.0 ? conditional_capacity_direct(s, p) : 0.0;
  r.c_relay = r.p_relay > 0.0 ? conditional_capacity_relay(s, p) : 0.0;
  r.capacity = r.p_direct * r.c_direct + r.p_relay * r.c_relay;
  r.area_s = affected_area_single(s.env, s.p_s);
  r.area_r = affected_area_single(s.env, s.p_r);
  r.gase = r.p_direct * r.c_direct / r.area_s +
           r.p_relay * 0.5 * r.c_relay * (1.0 / r.area_s + 1.0 / r.area_r);
  return r;
}

}  // namespace gase

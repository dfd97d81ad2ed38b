#include "gase/cognitive_underlay.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "gase/errors.hpp"

namespace gase {

namespace {

constexpr double kRhoUnity = 1e-9;
// Between kRhoUnity and this, the difference F(u rho) - F(u) cancels badly
// and the kernel is integrated directly.
constexpr double kRhoNearUnity = 1e-3;

// rho u int_0^inf e^{-x} / ((u rho + x)(u + x)) dx, the difference quotient
// written as a single integral.
double interference_capacity_integral(double u, double rho) {
  const double v = u * rho;
  const auto r = math::integrate_semi_infinite(
      [=](double x) { return std::exp(-x) / ((v + x) * (u + x)); },
      {1e-13, 0.0, 2000}, std::min(1.0, u));
  return v * r.value;
}

// G(u, rho) - G(u + t, rho) as
//   rho t int_0^inf (e^{-y} - e^{-rho y}) / ((rho - 1)(u + y)(u + t + y)) dy
// with the exponential factor written e^{-min(1, rho) y} y phi(|rho - 1| y),
// phi(z) = (1 - e^{-z}) / z. No cancellation in t or in rho - 1.
double interference_capacity_drop(double u, double t, double rho) {
  const double lo = std::min(1.0, rho), eps = std::abs(rho - 1.0);
  auto f = [=](double y) {
    const double z = eps * y;
    const double phi = z == 0.0 ? 1.0 : -std::expm1(-z) / z;
    return y * std::exp(-lo * y) * phi / ((u + y) * (u + t + y));
  };
  const auto r = math::integrate_semi_infinite(f, {1e-12, 0.0, 2000},
                                               std::min(u + t, 1.0 / lo));
  return rho * t * r.value;
}

void check_triangle(double d0, double d, double d_cross, const char* name,
                    std::vector<std::string>& errs) {
  const double slack = 1e-12 * (d0 + d);
  if (d_cross < std::abs(d0 - d) - slack || d_cross > d0 + d + slack) {
    std::ostringstream os;
    os << name << " = " << d_cross << " m violates |d0 - d| <= " << name
       << " <= d0 + d with d0 = " << d0 << " m, d = " << d << " m";
    errs.push_back(os.str());
  }
}

}  // namespace

void CognitiveScenario::validate() const {
  env.validate();
  for (double d : {d_p, d_s, d_sp, d_ps}) {
    if (!(d > 0.0) || !std::isfinite(d)) {
      throw DomainError("CognitiveScenario: link distances must be finite and > 0");
    }
  }
  if (!(d0 >= 0.0) || !std::isfinite(d0)) {
    throw DomainError("CognitiveScenario: d0 must be finite and >= 0");
  }
  if (!(i_th_w > 0.0) || std::isnan(i_th_w)) {
    throw DomainError("CognitiveScenario: interference threshold must be > 0");
  }
  std::vector<std::string> errs;
  check_triangle(d0, d_p, d_sp, "d_sp", errs);
  check_triangle(d0, d_s, d_ps, "d_ps", errs);
  if (!errs.empty()) {
    std::string msg = "CognitiveScenario: geometry is not realizable:";
    for (const auto& e : errs) msg += "\n  " + e;
    throw DomainError(msg);
  }
}

double CognitiveScenario::rho_p() const {
  return p1.watts() / p2.watts() * std::pow(d_sp / d_p, env.path_loss_exponent);
}

double CognitiveScenario::rho_s() const {
  return p2.watts() / p1.watts() * std::pow(d_ps / d_s, env.path_loss_exponent);
}

CognitiveScenario CognitiveScenario::with_kappa(const PropagationEnvironment& env,
                                                PowerLevel p1, PowerLevel p2,
                                                double d, double kappa,
                                                double i_th_w, double d0) {
  CognitiveScenario s{env,       p1,        p2,        d,
                      d,         kappa * d, kappa * d, d0 > 0.0 ? d0 : d,
                      i_th_w};
  s.validate();
  return s;
}

double prob_parallel(const CognitiveScenario& s) {
  s.validate();
  const double c = s.i_th_w * std::pow(s.d_sp, s.env.path_loss_exponent) /
                   s.p2.watts();
  return -std::expm1(-c);
}

double interference_capacity_nats(double u, double rho) {
  if (!(u > 0.0) || !(rho > 0.0)) {
    throw DomainError("interference_capacity_nats: requires u > 0 and rho > 0");
  }
  if (std::abs(rho - 1.0) < kRhoUnity) return 1.0 - u * math::scaled_e1(u);
  if (std::abs(rho - 1.0) < kRhoNearUnity) return interference_capacity_integral(u, rho);
  return rho / (1.0 - rho) * (math::scaled_e1(u * rho) - math::scaled_e1(u));
}

double primary_capacity_parallel(const CognitiveScenario& s) {
  s.validate();
  const double a = s.env.path_loss_exponent;
  const double rho = s.rho_p();
  const double u = std::pow(s.d_p, a) * s.env.noise_power_w / s.p1.watts();
  const double t = std::pow(s.d_p, a) * s.i_th_w / s.p1.watts();
  const double c = std::pow(s.d_sp, a) * s.i_th_w / s.p2.watts();
  if (!std::isfinite(t) || !std::isfinite(c)) return primary_capacity_x_channel(s);
  // Joint mean G(u) - e^{-c} G(u + t) divided by P = 1 - e^{-c}, rearranged
  // as G(u) + e^{-c} (G(u) - G(u + t)) / P so the small-threshold limit
  // G(u) - G'(u) / rho stays accurate.
  const double g_u = interference_capacity_nats(u, rho);
  const double diff = interference_capacity_drop(u, t, rho);
  const double weight = std::exp(-c) / -std::expm1(-c);
  return (g_u + weight * diff) / math::kLn2;
}

double primary_capacity_x_channel(const CognitiveScenario& s) {
  s.validate();
  const double u = std::pow(s.d_p, s.env.path_loss_exponent) *
                   s.env.noise_power_w / s.p1.watts();
  return interference_capacity_nats(u, s.rho_p()) / math::kLn2;
}

double secondary_capacity_parallel(const CognitiveScenario& s) {
  s.validate();
  const double u = std::pow(s.d_s, s.env.path_loss_exponent) *
                   s.env.noise_power_w / s.p2.watts();
  return interference_capacity_nats(u, s.rho_s()) / math::kLn2;
}

double two_source_exceedance(double mu_p, double mu_s, double threshold) {
  if (!(mu_p >= 0.0) || !(mu_s >= 0.0) || !(threshold > 0.0)) {
    throw DomainError("two_source_exceedance: requires means >= 0 and threshold > 0");
  }
  const double hi = std::max(mu_p, mu_s), lo = std::min(mu_p, mu_s);
  if (std::isinf(hi)) return 1.0;
  if (hi == 0.0) return 0.0;
  const double x = threshold / hi;
  if (lo == 0.0) return std::exp(-x);
  if (hi / lo - 1.0 < kRhoUnity) return (1.0 + x) * std::exp(-x);
  // (hi e^{-P/hi} - lo e^{-P/lo}) / (hi - lo) = e^{-x} [1 + x (1 - e^{-delta}) / delta]
  const double delta = threshold / lo - x;
  return std::exp(-x) * (1.0 + x * (-std::expm1(-delta) / delta));
}

double affected_area_parallel(const CognitiveScenario& s,
                              const AreaQuadratureOptions& opt) {
  s.validate();
  const double a = s.env.path_loss_exponent;
  const double pmin = s.env.detection_threshold_w;
  const double p1 = s.p1.watts(), p2 = s.p2.watts(), d0 = s.d0;
  const double r0 = std::pow(std::max(p1, p2) / pmin, 1.0 / a);
  const double scale = std::max(r0, d0);

  const math::QuadratureSpec inner_spec{opt.rel_tol * 1e-2, 0.0,
                                        opt.max_subdivisions};
  const math::QuadratureSpec outer_spec{opt.rel_tol, 0.0, opt.max_subdivisions};

  auto radial = [&](double theta) {
    const double h = std::sin(0.5 * theta);
    const double cross = 4.0 * d0 * h * h;
    return math::integrate_semi_infinite(
               [&](double r) {
                 const double rs2 = (r - d0) * (r - d0) + r * cross;
                 const double mu_p = r > 0.0 ? p1 / std::pow(r, a)
                                             : std::numeric_limits<double>::infinity();
                 const double mu_s = rs2 > 0.0 ? p2 / std::pow(rs2, 0.5 * a)
                                               : std::numeric_limits<double>::infinity();
                 return two_source_exceedance(mu_p, mu_s, pmin) * r;
               },
               inner_spec, scale)
        .value;
  };
  // theta and 2 pi - theta mirror each other across the S_P-S_S axis
  return 2.0 * math::integrate(radial, 0.0, math::kPi, outer_spec).value;
}

GaseBreakdown gase_cognitive(const CognitiveScenario& s) {
  return gase_cognitive(s, affected_area_parallel(s));
}

GaseBreakdown gase_cognitive(const CognitiveScenario& s, double area_parallel) {
  s.validate();
  const double prob = prob_parallel(s);
  const double c_p = primary_capacity_parallel(s);
  const double c_s = secondary_capacity_parallel(s);
  const auto single = gase_p2p({s.env, s.p1, s.d_p});
  const double eta_pt = (c_p + c_s) / area_parallel;

  GaseBreakdown out;
  out.capacity = prob * (c_p + c_s) + (1.0 - prob) * single.capacity;
  out.gase = prob * eta_pt + (1.0 - prob) * single.gase;
  out.area = out.capacity / out.gase;
  out.components = {{"p_parallel", prob},
                    {"c_primary", c_p},
                    {"c_secondary", c_s},
                    {"area_parallel", area_parallel},
                    {"gase_parallel", eta_pt},
                    {"c_single", single.capacity},
                    {"area_single", single.area},
                    {"gase_single", single.gase}};
  return out;
}

GaseBreakdown gase_x_channel(const CognitiveScenario& s) {
  return gase_x_channel(s, affected_area_parallel(s));
}

GaseBreakdown gase_x_channel(const CognitiveScenario& s, double area_parallel) {
  s.validate();
  const double c_p = primary_capacity_x_channel(s);
  const double c_s = secondary_capacity_parallel(s);
  GaseBreakdown out;
  out.capacity = c_p + c_s;
  out.area = area_parallel;
  out.gase = out.capacity / area_parallel;
  out.components = {{"c_primary", c_p}, {"c_secondary", c_s}};
  return out;
}

}  // namespace gase

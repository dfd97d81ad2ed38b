#pragma once

// Special functions, adaptive quadrature and bracketed root finding shared by
// every scenario module. All routines are pure and thread-safe.

#include <functional>

namespace gase::math {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kEulerGamma = 0.57721566490153286061;
inline constexpr double kLn2 = 0.69314718055994530942;

/// Exponential integral E1(x) = int_x^inf e^-t / t dt, x > 0.
double exp_integral_e1(double x);

/// F(x) = e^x E1(x). Evaluated directly from the continued fraction for
/// x > 1, so it never overflows.
double scaled_e1(double x);

/// Modified Bessel functions of the second kind, orders 0 and 1, x > 0.
double bessel_k0(double x);
double bessel_k1(double x);

/// e^x K0(x) and e^x K1(x); finite for arbitrarily large x.
double bessel_k0_scaled(double x);
double bessel_k1_scaled(double x);

double erfc(double x);

/// e^{x^2} erfc(x), the scaled complementary error function.
double erfcx(double x);

/// Gamma function for x > 0 (Lanczos, g = 7).
double gamma_fn(double x);

struct QuadratureSpec {
  double rel_tol = 1e-8;
  double abs_tol = 1e-12;
  int max_subdivisions = 2000;

  /// Throws DomainError when an invariant is violated.
  void validate() const;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int subdivisions = 0;
};

using Integrand = std::function<double(double)>;

/// Globally adaptive 21-point Gauss-Kronrod on [lo, hi].
/// Throws ConvergenceError (carrying the best estimate) if the tolerance
/// max(rel_tol * |I|, abs_tol) is not met within max_subdivisions.
QuadratureResult integrate(const Integrand& f, double lo, double hi,
                           const QuadratureSpec& spec = {});

/// Integral over [0, inf) via t = scale * u / (1 - u), u in [0, 1).
/// `scale` should be of the order of the integrand's decay length.
QuadratureResult integrate_semi_infinite(const Integrand& f,
                                         const QuadratureSpec& spec = {},
                                         double scale = 1.0);

/// Brent's method on [lo, hi]. Requires g(lo) * g(hi) < 0. Stops when
/// |g(x)| <= tol or the bracket has shrunk below tol * |x|.
double find_root_bracketed(const std::function<double(double)>& g, double lo,
                           double hi, double tol);

}  // namespace gase::math

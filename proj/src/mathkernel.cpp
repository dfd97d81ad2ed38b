#include "gase/mathkernel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "gase/errors.hpp"

namespace gase::math {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxIter = 10000;

void require_positive(double x, const char* fn) {
  if (!(x > 0.0)) {
    std::ostringstream os;
    os << fn << ": argument must be > 0, got " << x;
    throw DomainError(os.str());
  }
}

// E1 by its power series; accurate for 0 < x <= 1.
double e1_series(double x) {
  double sum = 0.0;
  double term = 1.0;  // (-x)^k / k!
  for (int k = 1; k < kMaxIter; ++k) {
    term *= -x / k;
    const double add = term / k;
    sum += add;
    if (std::abs(add) < kEps * std::abs(sum)) break;
  }
  return -kEulerGamma - std::log(x) - sum;
}

// e^x E1(x) by the modified Lentz continued fraction; x > 1.
double e1_scaled_cf(double x) {
  constexpr double tiny = 1e-300;
  double b = x + 1.0;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIter; ++i) {
    const double an = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (an * d + b);
    c = b + an / c;
    const double del = c * d;
    h *= del;
    if (std::abs(del - 1.0) < kEps) return h;
  }
  throw ConvergenceError("scaled_e1: continued fraction did not converge", h,
                         std::abs(h));
}

// Power series for K0 and K1, both scaled by e^x; accurate for 0 < x <= 2.
void bessel_k_series(double x, double& k0, double& k1) {
  const double q = 0.25 * x * x;
  const double lnh = std::log(0.5 * x);

  // I0, I1 and the digamma-weighted sums.
  double t0 = 1.0;        // q^k / (k!)^2
  double t1 = 0.5 * x;    // (x/2) q^k / (k! (k+1)!)
  double psi_k1 = -kEulerGamma;               // psi(k+1)
  double psi_k2 = -kEulerGamma + 1.0;         // psi(k+2)
  double i0 = t0, i1 = t1;
  double s0 = psi_k1 * t0;
  double s1 = (psi_k1 + psi_k2) * t1;
  for (int k = 1; k < kMaxIter; ++k) {
    t0 *= q / (static_cast<double>(k) * k);
    t1 *= q / (static_cast<double>(k) * (k + 1));
    psi_k1 += 1.0 / k;
    psi_k2 += 1.0 / (k + 1);
    i0 += t0;
    i1 += t1;
    const double a0 = psi_k1 * t0;
    const double a1 = (psi_k1 + psi_k2) * t1;
    s0 += a0;
    s1 += a1;
    if (t0 < kEps * i0 && t1 < kEps * i1) break;
  }
  const double ex = std::exp(x);
  k0 = (-lnh * i0 + s0) * ex;
  k1 = (1.0 / x + lnh * i1 - 0.5 * s1) * ex;
}

// Steed's continued fraction (Temme's CF2) for K0, K1 scaled by e^x; x > 2.
void bessel_k_cf(double x, double& k0, double& k1) {
  double b = 2.0 * (1.0 + x);
  double d = 1.0 / b;
  double h = d;
  double delh = d;
  double q1 = 0.0;
  double q2 = 1.0;
  const double a1 = 0.25;
  double q = a1;
  double c = a1;
  double a = -a1;
  double s = 1.0 + q * delh;
  int i = 2;
  for (; i <= kMaxIter; ++i) {
    a -= 2 * (i - 1);
    c = -a * c / i;
    const double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const double dels = q * delh;
    s += dels;
    if (std::abs(dels / s) < kEps) break;
  }
  if (i > kMaxIter) {
    throw ConvergenceError("bessel_k: continued fraction did not converge", s,
                           std::abs(s));
  }
  h *= a1;
  k0 = std::sqrt(kPi / (2.0 * x)) / s;
  k1 = k0 * (x + 0.5 - h) / x;
}

void bessel_k_scaled_pair(double x, double& k0, double& k1) {
  if (x <= 2.0) {
    bessel_k_series(x, k0, k1);
  } else {
    bessel_k_cf(x, k0, k1);
  }
}

}  // namespace

double exp_integral_e1(double x) {
  require_positive(x, "exp_integral_e1");
  if (x <= 1.0) return e1_series(x);
  return e1_scaled_cf(x) * std::exp(-x);
}

double scaled_e1(double x) {
  require_positive(x, "scaled_e1");
  if (x <= 1.0) return std::exp(x) * e1_series(x);
  return e1_scaled_cf(x);
}

double bessel_k0_scaled(double x) {
  require_positive(x, "bessel_k0");
  double k0, k1;
  bessel_k_scaled_pair(x, k0, k1);
  return k0;
}

double bessel_k1_scaled(double x) {
  require_positive(x, "bessel_k1");
  double k0, k1;
  bessel_k_scaled_pair(x, k0, k1);
  return k1;
}

double bessel_k0(double x) { return bessel_k0_scaled(x) * std::exp(-x); }
double bessel_k1(double x) { return bessel_k1_scaled(x) * std::exp(-x); }

double erfcx(double x) {
  if (std::isnan(x)) return x;
  if (x < 0.0) {
    // erfc(x) = 2 - erfc(-x)
    return 2.0 * std::exp(x * x) - erfcx(-x);
  }
  if (x < 2.0) {
    // erf(x) = 2/sqrt(pi) e^{-x^2} sum_n (2x^2)^n x / (1*3*...*(2n+1)),
    // a series of positive terms.
    const double x2 = x * x;
    double term = x;
    double sum = x;
    for (int n = 1; n < kMaxIter; ++n) {
      term *= 2.0 * x2 / (2 * n + 1);
      sum += term;
      if (term < kEps * sum) break;
    }
    const double erf_scaled = 2.0 / std::sqrt(kPi) * sum;  // e^{x^2} erf(x)
    return std::exp(x2) - erf_scaled;
  }
  // Lentz evaluation of x + (1/2)/(x + 1/(x + (3/2)/(x + ...))).
  constexpr double tiny = 1e-300;
  double f = x;
  double c = x;
  double d = 0.0;
  for (int n = 1; n < kMaxIter; ++n) {
    const double an = 0.5 * n;
    d = x + an * d;
    if (d == 0.0) d = tiny;
    c = x + an / c;
    if (c == 0.0) c = tiny;
    d = 1.0 / d;
    const double del = c * d;
    f *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }
  return 1.0 / (std::sqrt(kPi) * f);
}

double erfc(double x) {
  if (std::isnan(x)) return x;
  if (x < 0.0) return 2.0 - erfc(-x);
  if (x > 27.3) return 0.0;  // below the smallest subnormal
  return erfcx(x) * std::exp(-x * x);
}

double gamma_fn(double x) {
  require_positive(x, "gamma_fn");
  static constexpr std::array<double, 9> p = {
      0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
      771.32342877765313,   -176.61502916214059,   12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  if (x < 0.5) {
    return kPi / (std::sin(kPi * x) * gamma_fn(1.0 - x));
  }
  const double z = x - 1.0;
  double acc = p[0];
  for (std::size_t i = 1; i < p.size(); ++i) acc += p[i] / (z + i);
  const double t = z + 7.5;
  return std::sqrt(2.0 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) * acc;
}

// ---------------------------------------------------------------------------
// Quadrature

void QuadratureSpec::validate() const {
  if (!(rel_tol > 0.0)) throw DomainError("QuadratureSpec: rel_tol must be > 0");
  if (!(abs_tol >= 0.0)) throw DomainError("QuadratureSpec: abs_tol must be >= 0");
  if (max_subdivisions < 1) {
    throw DomainError("QuadratureSpec: max_subdivisions must be >= 1");
  }
}

namespace {

// 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK qk21).
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525452182, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Panel {
  double lo, hi, value, error;
};

bool operator<(const Panel& a, const Panel& b) { return a.error < b.error; }

Panel gauss_kronrod21(const Integrand& f, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double abs_half = std::abs(half);

  std::array<double, 10> fv1{}, fv2{};
  const double fc = f(center);
  double res_g = 0.0;
  double res_k = kWgk[10] * fc;
  double res_abs = std::abs(res_k);
  for (int j = 0; j < 5; ++j) {
    const int jtw = 2 * j + 1;
    const double absc = half * kXgk[jtw];
    const double f1 = f(center - absc);
    const double f2 = f(center + absc);
    fv1[jtw] = f1;
    fv2[jtw] = f2;
    res_g += kWg[j] * (f1 + f2);
    res_k += kWgk[jtw] * (f1 + f2);
    res_abs += kWgk[jtw] * (std::abs(f1) + std::abs(f2));
  }
  for (int j = 0; j < 5; ++j) {
    const int jtwm1 = 2 * j;
    const double absc = half * kXgk[jtwm1];
    const double f1 = f(center - absc);
    const double f2 = f(center + absc);
    fv1[jtwm1] = f1;
    fv2[jtwm1] = f2;
    res_k += kWgk[jtwm1] * (f1 + f2);
    res_abs += kWgk[jtwm1] * (std::abs(f1) + std::abs(f2));
  }
  const double res_kh = 0.5 * res_k;
  double res_asc = kWgk[10] * std::abs(fc - res_kh);
  for (int j = 0; j < 10; ++j) {
    res_asc += kWgk[j] * (std::abs(fv1[j] - res_kh) + std::abs(fv2[j] - res_kh));
  }
  const double value = res_k * half;
  res_abs *= abs_half;
  res_asc *= abs_half;
  double err = std::abs((res_k - res_g) * half);
  if (res_asc != 0.0 && err != 0.0) {
    err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));
  }
  if (res_abs > std::numeric_limits<double>::min() / (50.0 * kEps)) {
    err = std::max(50.0 * kEps * res_abs, err);
  }
  if (!std::isfinite(value)) {
    std::ostringstream os;
    os << "integrate: non-finite integrand on [" << lo << ", " << hi << "]";
    throw DomainError(os.str());
  }
  return {lo, hi, value, err};
}

}  // namespace

QuadratureResult integrate(const Integrand& f, double lo, double hi,
                           const QuadratureSpec& spec) {
  spec.validate();
  if (lo == hi) return {};

  std::vector<Panel> heap;
  heap.reserve(static_cast<std::size_t>(spec.max_subdivisions) + 2);
  heap.push_back(gauss_kronrod21(f, lo, hi));

  int subdivisions = 0;
  for (;;) {
    double total = 0.0, total_err = 0.0;
    for (const auto& p : heap) {
      total += p.value;
      total_err += p.error;
    }
    const double target = std::max(spec.rel_tol * std::abs(total), spec.abs_tol);
    if (total_err <= target) return {total, total_err, subdivisions};

    const Panel& worst = heap.front();
    const double mid = 0.5 * (worst.lo + worst.hi);
    const bool too_narrow =
        std::abs(worst.hi - worst.lo) <=
        100.0 * kEps * std::max(std::abs(mid), std::numeric_limits<double>::min());
    if (subdivisions >= spec.max_subdivisions || too_narrow) {
      std::ostringstream os;
      os << "integrate: tolerance " << target << " not reached after "
         << subdivisions << " subdivisions (error estimate " << total_err
         << ")";
      throw ConvergenceError(os.str(), total, total_err);
    }

    std::pop_heap(heap.begin(), heap.end());
    const Panel parent = heap.back();
    heap.pop_back();
    heap.push_back(gauss_kronrod21(f, parent.lo, mid));
    std::push_heap(heap.begin(), heap.end());
    heap.push_back(gauss_kronrod21(f, mid, parent.hi));
    std::push_heap(heap.begin(), heap.end());
    ++subdivisions;
  }
}

QuadratureResult integrate_semi_infinite(const Integrand& f,
                                         const QuadratureSpec& spec,
                                         double scale) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw DomainError("integrate_semi_infinite: scale must be finite and > 0");
  }
  auto mapped = [&](double u) {
    if (u >= 1.0) return 0.0;
    const double one_minus = 1.0 - u;
    const double t = scale * u / one_minus;
    const double v = f(t);
    if (v == 0.0) return 0.0;
    return v * scale / (one_minus * one_minus);
  };
  return integrate(mapped, 0.0, 1.0, spec);
}

// ---------------------------------------------------------------------------
// Root finding

double find_root_bracketed(const std::function<double(double)>& g, double lo,
                           double hi, double tol) {
  if (!(tol > 0.0)) throw DomainError("find_root_bracketed: tol must be > 0");
  double a = lo, b = hi;
  double fa = g(a), fb = g(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (!(std::isfinite(fa) && std::isfinite(fb)) || (fa > 0.0) == (fb > 0.0)) {
    std::ostringstream os;
    os << "find_root_bracketed: no sign change on [" << lo << ", " << hi
       << "] (g = " << fa << ", " << fb << ")";
    throw BracketError(os.str());
  }

  double c = a, fc = fa;
  double d = b - a, e = d;
  for (int iter = 0; iter < kMaxIter; ++iter) {
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double width_tol = 2.0 * kEps * std::abs(b) + 0.5 * tol * std::abs(b);
    const double m = 0.5 * (c - b);
    if (std::abs(fb) <= tol || std::abs(m) <= width_tol || fb == 0.0) return b;

    if (std::abs(e) < width_tol || std::abs(fa) <= std::abs(fb)) {
      d = e = m;
    } else {
      double p, q;
      double s = fb / fa;
      if (a == c) {
        p = 2.0 * m * s;
        q = 1.0 - s;
      } else {
        q = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * m * q * (q - r) - (b - a) * (r - 1.0));
        q = (q - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) {
        q = -q;
      } else {
        p = -p;
      }
      s = e;
      e = d;
      if (2.0 * p < 3.0 * m * q - std::abs(width_tol * q) &&
          p < std::abs(0.5 * s * q)) {
        d = p / q;
      } else {
        d = e = m;
      }
    }
    a = b;
    fa = fb;
    b += (std::abs(d) > width_tol) ? d : (m > 0.0 ? width_tol : -width_tol);
    fb = g(b);
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      e = d = b - a;
    }
  }
  throw ConvergenceError("find_root_bracketed: iteration limit", b,
                         std::abs(c - b));
}

}  // namespace gase::math

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_support.hpp"

#include <cmath>
#include <vector>

#include "gase/errors.hpp"
#include "gase/link_p2p.hpp"
#include "gase/mc_oracle.hpp"

using namespace gase;

namespace {

PropagationEnvironment fig1_env() {
  return PropagationEnvironment::from_dbm(4.0, -100.0, -90.0);
}

double eta(const PropagationEnvironment& env, double p_w, double d) {
  return gase_p2p({env, PowerLevel::from_watts(p_w), d}).gase;
}

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = lo * std::pow(hi / lo, double(i) / (n - 1));
  return g;
}

}  // namespace

TEST_CASE("capacity at mean SNR 10 matches Monte Carlo") {
  const P2pScenario s{fig1_env(), PowerLevel::from_watts(1.0), 1000.0};
  const double c = ergodic_capacity_p2p(s);
  CHECK(c == approx(2.9065, 1e-4));
  const auto e = mc::mc_ergodic_capacity(
      [](mc::CounterRng& r) { return 10.0 * r.exponential(); },
      mc::McConfig{2'000'000, 42, 0, 1});
  CHECK(std::abs(c - e.mean) <= 3.0 * e.std_error);
}

TEST_CASE("capacity limits and monotonicity") {
  const auto env = fig1_env();
  const double tiny = ergodic_capacity_p2p({env, PowerLevel::from_watts(1e-12), 1000.0});
  CHECK(tiny < 1e-10);
  for (double p : {1e-6, 1e-3, 1.0, 1e3}) {
    CHECK(ergodic_capacity_p2p({env, PowerLevel::from_watts(2 * p), 1000.0}) >
          ergodic_capacity_p2p({env, PowerLevel::from_watts(p), 1000.0}));
  }
  CHECK_THROWS_AS(ergodic_capacity_p2p({env, PowerLevel::from_watts(1.0), -3.0}),
                  DomainError);
}

TEST_CASE("fig1 operating point") {
  const auto g = gase_p2p({fig1_env(), PowerLevel::from_dbm(30.0), 1000.0});
  CHECK(g.capacity == approx(2.9065, 1e-4));
  CHECK(g.area == approx(2.7842e6, 1e-4));
  CHECK(g.gase == approx(1.044e-6, 1e-3));
  CHECK(g.component("mean_snr") == approx(10.0));
  CHECK_THROWS_AS(g.component("nope"), std::out_of_range);
}

TEST_CASE("GASE limits") {
  const auto env2 = PropagationEnvironment::from_dbm(2.0, -100.0, -90.0);
  const double limit = std::log2(std::exp(1.0)) * env2.detection_threshold_w /
                       (M_PI * env2.noise_power_w * 1000.0 * 1000.0);
  CHECK(limit == approx(4.592e-6, 1e-3));
  // Mean SNR here is P_t * 1e-7, so the relative gap to the limit is ~SNR.
  CHECK(eta(env2, 1e-9, 1000.0) == approx(limit, 1.1e-2));
  CHECK(eta(env2, 1e-11, 1000.0) == approx(limit, 1e-3));

  const auto env4 = fig1_env();
  const double peak = eta(env4, optimal_power_p2p(env4, 1000.0).watts(), 1000.0);
  CHECK(eta(env4, 1e-15, 1000.0) < 1e-6 * peak);
  CHECK(eta(env4, 1e9, 1000.0) < 1e-3 * peak);
}

TEST_CASE("GASE is unimodal over power for a > 2") {
  for (double a : {2.5, 3.0, 4.0, 6.0}) {
    CAPTURE(a);
    const auto env = PropagationEnvironment::from_dbm(a, -100.0, -90.0);
    const auto grid = log_grid(1e-9, 1e9, 721);
    int direction_changes = 0;
    double prev = eta(env, grid[0], 1000.0);
    int sign = 0;
    for (std::size_t i = 1; i < grid.size(); ++i) {
      const double cur = eta(env, grid[i], 1000.0);
      const double diff = cur - prev;
      if (std::abs(diff) > 1e-12 * std::max(cur, prev)) {
        const int s = diff > 0 ? 1 : -1;
        if (sign != 0 && s != sign) ++direction_changes;
        sign = s;
      }
      prev = cur;
    }
    CHECK(direction_changes == 1);
  }
}

TEST_CASE("optimal power") {
  const auto env = fig1_env();
  const auto p_star = optimal_power_p2p(env, 1000.0);
  const double x_star = 1e12 * env.noise_power_w / p_star.watts();
  // Reference root from an independent E1 implementation.
  CHECK(x_star == approx(0.258947, 1e-5));
  CHECK(p_star.watts() == approx(0.38618, 1e-4));
  CHECK(std::abs(p_star.dbm() - 25.8) < 0.1);
  CHECK(std::abs(optimal_power_residual(4.0, x_star)) < 1e-9);

  // Grid argmax oracle, refined by golden section on the grid neighbourhood.
  const auto grid = log_grid(1e-6, 1e4, 1001);
  std::size_t best = 0;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (eta(env, grid[i], 1000.0) > eta(env, grid[best], 1000.0)) best = i;
  }
  const double step = std::log(grid[1] / grid[0]);
  CHECK(std::abs(std::log(p_star.watts() / grid[best])) <= step);

  double lo = std::log(grid[best - 1]), hi = std::log(grid[best + 1]);
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int it = 0; it < 200; ++it) {
    const double m1 = hi - phi * (hi - lo), m2 = lo + phi * (hi - lo);
    if (eta(env, std::exp(m1), 1000.0) < eta(env, std::exp(m2), 1000.0)) lo = m1;
    else hi = m2;
  }
  CHECK(std::exp(0.5 * (lo + hi)) == approx(p_star.watts()).epsilon(1e-5));
}

TEST_CASE("optimal power scaling and P_min invariance") {
  auto env = fig1_env();
  const double p1 = optimal_power_p2p(env, 1000.0).watts();
  auto half = env;
  half.noise_power_w *= 0.5;
  CHECK(optimal_power_p2p(half, 1000.0).watts() == approx(0.5 * p1, 1e-10));

  auto louder = env;
  louder.detection_threshold_w *= 100.0;
  CHECK(optimal_power_p2p(louder, 1000.0).watts() == approx(p1, 1e-12));

  const auto grid = log_grid(1e-6, 1e4, 401);
  auto argmax = [&](const PropagationEnvironment& e) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < grid.size(); ++i)
      if (eta(e, grid[i], 1000.0) > eta(e, grid[best], 1000.0)) best = i;
    return best;
  };
  const auto i1 = argmax(env), i2 = argmax(louder);
  CHECK(std::abs(static_cast<long>(i1) - static_cast<long>(i2)) <= 1);
  CHECK(eta(louder, p1, 1000.0) / eta(env, p1, 1000.0) ==
        approx(std::pow(100.0, 0.5)).epsilon(1e-12));
}

TEST_CASE("optimal power refuses a <= 2 and bad brackets") {
  const auto env2 = PropagationEnvironment::from_dbm(2.0, -100.0, -90.0);
  CHECK_THROWS_AS(optimal_power_p2p(env2, 1000.0), NoInteriorOptimumError);
  const auto env = fig1_env();
  CHECK_THROWS_AS(optimal_power_p2p(env, 1000.0, RootBracket{1.0, 10.0}), BracketError);
  CHECK_THROWS_AS(optimal_power_p2p(env, 1000.0, RootBracket{-1.0, 10.0}), DomainError);
  const auto p = optimal_power_p2p(env, 1000.0, PowerLevel::from_dbm(0.0),
                                   PowerLevel::from_dbm(40.0));
  CHECK(p.watts() == approx(0.38618, 1e-4));
}

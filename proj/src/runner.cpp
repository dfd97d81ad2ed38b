#include "gase/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <stdexcept>
#include <thread>

#include "gase/errors.hpp"
#include "gase/mc_oracle.hpp"

namespace gase {

namespace {

// Runs f(0..n-1) on up to `threads` workers. Rethrows the failure with the
// lowest index, so the outcome matches a serial run.
template <class F>
void parallel_for(std::size_t n, unsigned threads, F&& f) {
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n);
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      try {
        f(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  const auto count = std::min<std::size_t>(threads, n);
  for (std::size_t t = 0; t < count; ++t) pool.emplace_back(work);
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::vector<std::string> result_columns(const GaseBreakdown& b) {
  std::vector<std::string> cols{"capacity", "area", "gase"};
  for (const auto& [name, value] : b.components) cols.push_back(name);
  return cols;
}

std::vector<Cell> result_cells(const GaseBreakdown& b) {
  std::vector<Cell> cells{b.capacity, b.area, b.gase};
  for (const auto& [name, value] : b.components) cells.emplace_back(value);
  return cells;
}

Table table_for(const ScenarioConfig& cfg, const std::vector<double>& sweep_values,
                const std::vector<GaseBreakdown>& results) {
  Table t;
  if (cfg.sweep) t.columns.push_back(cfg.sweep->parameters.front());
  const auto cols = result_columns(results.front());
  t.columns.insert(t.columns.end(), cols.begin(), cols.end());
  for (std::size_t i = 0; i < results.size(); ++i) {
    std::vector<Cell> row;
    if (cfg.sweep) row.emplace_back(sweep_values[i]);
    const auto cells = result_cells(results[i]);
    row.insert(row.end(), cells.begin(), cells.end());
    t.rows.push_back(std::move(row));
  }
  return t;
}

// ---- oracles -------------------------------------------------------------

struct Check {
  std::string quantity;
  double closed_form;
  mc::McEstimate oracle;
};

mc::McEstimate halved(mc::McEstimate e) {
  e.mean *= 0.5;
  e.std_error *= 0.5;
  return e;
}

double exp_draw(mc::CounterRng& r, double mean) { return mean * r.exponential(); }

// Equivalent relay-link SNR: min for DF; for AF the harmonic-mean law that
// the closed-form density describes.
double relay_equivalent(RelayProtocol p, double g1, double g2) {
  if (p == RelayProtocol::DF) return std::min(g1, g2);
  return g1 * g2 / (g1 + g2);
}

mc::McEstimate spatial_area(const std::vector<mc::Transmitter>& tx, double a,
                            double pmin, const mc::McConfig& mc) {
  return mc::mc_affected_area(mc::rayleigh_field(tx, a),
                              mc::certified_region(tx, a, pmin), pmin, mc);
}

std::vector<Check> checks_p2p(const ScenarioConfig& cfg, mc::McConfig mc) {
  const auto s = to_p2p(cfg);
  const auto b = gase_p2p(s);
  const double g = mean_snr(s.env, s.p_t, s.distance_m);
  std::vector<Check> out;
  mc.stream_id = 0;
  out.push_back({"capacity", b.capacity,
                 mc::mc_ergodic_capacity([g](mc::CounterRng& r) { return exp_draw(r, g); },
                                         mc)});
  mc.stream_id = 1;
  out.push_back({"area", b.area,
                 spatial_area({{0.0, 0.0, s.p_t.watts()}}, s.env.path_loss_exponent,
                              s.env.detection_threshold_w, mc)});
  return out;
}

std::vector<Check> checks_dualhop(const ScenarioConfig& cfg, mc::McConfig mc) {
  const auto s = to_dualhop(cfg);
  const auto p = *cfg.protocol;
  const auto b = gase_dualhop(s, p);
  const double g1 = s.mean_snr_sr(), g2 = s.mean_snr_rd();
  const double a = s.env.path_loss_exponent, pmin = s.env.detection_threshold_w;
  std::vector<Check> out;
  mc.stream_id = 0;
  out.push_back({"capacity", b.capacity, halved(mc::mc_ergodic_capacity(
                                             [=](mc::CounterRng& r) {
                                               return relay_equivalent(
                                                   p, exp_draw(r, g1), exp_draw(r, g2));
                                             },
                                             mc))});
  mc.stream_id = 1;
  out.push_back({"area_sr", b.component("area_sr"),
                 spatial_area({{0.0, 0.0, s.p_s.watts()}}, a, pmin, mc)});
  mc.stream_id = 2;
  out.push_back({"area_rd", b.component("area_rd"),
                 spatial_area({{0.0, 0.0, s.p_r.watts()}}, a, pmin, mc)});
  return out;
}

std::vector<Check> checks_coop(const ScenarioConfig& cfg, mc::McConfig mc) {
  const auto s = to_coop(cfg);
  const auto p = *cfg.protocol;
  const auto r = gase_coop(s, p);
  const double gsd = s.mean_snr_sd(), gsr = s.mean_snr_sr(), grd = s.mean_snr_rd();
  struct Draw {
    double sd;
    double eq;
    bool direct() const { return sd * sd + 2.0 * sd > eq; }
  };
  auto draw = [=](mc::CounterRng& rng) {
    const double sd = exp_draw(rng, gsd);
    const double eq = relay_equivalent(p, exp_draw(rng, gsr), exp_draw(rng, grd));
    return Draw{sd, eq};
  };
  std::vector<Check> out;
  mc.stream_id = 0;
  out.push_back({"p_direct", r.p_direct,
                 mc::mc_mode_probability([&](mc::CounterRng& rng) { return draw(rng).direct(); },
                                         mc)});
  mc.stream_id = 1;
  out.push_back({"capacity", r.capacity,
                 mc::mc_estimate(
                     [&](mc::CounterRng& rng) -> std::optional<double> {
                       const auto d = draw(rng);
                       return std::max(std::log2(1.0 + d.sd), 0.5 * std::log2(1.0 + d.eq));
                     },
                     mc)});
  if (r.p_direct > 0.0) {
    mc.stream_id = 2;
    out.push_back({"c_direct", r.c_direct,
                   mc::mc_estimate(
                       [&](mc::CounterRng& rng) -> std::optional<double> {
                         const auto d = draw(rng);
                         if (!d.direct()) return std::nullopt;
                         return std::log2(1.0 + d.sd);
                       },
                       mc)});
  }
  if (r.p_relay > 0.0) {
    mc.stream_id = 3;
    out.push_back({"c_relay", r.c_relay,
                   mc::mc_estimate(
                       [&](mc::CounterRng& rng) -> std::optional<double> {
                         const auto d = draw(rng);
                         if (d.direct()) return std::nullopt;
                         return 0.5 * std::log2(1.0 + d.eq);
                       },
                       mc)});
  }
  return out;
}

std::vector<Check> checks_cognitive(const ScenarioConfig& cfg, mc::McConfig mc) {
  const auto s = to_cognitive(cfg);
  const bool constrained = cfg.kind == ScenarioKind::Cognitive;
  const double a = s.env.path_loss_exponent, n = s.env.noise_power_w;
  const double p1 = s.p1.watts(), p2 = s.p2.watts();
  // fading means at each receiver
  const double sig_p = p1 / std::pow(s.d_p, a), int_p = p2 / std::pow(s.d_sp, a);
  const double sig_s = p2 / std::pow(s.d_s, a), int_s = p1 / std::pow(s.d_ps, a);
  const double i_th = s.i_th_w;
  std::vector<Check> out;
  if (constrained) {
    mc.stream_id = 0;
    out.push_back({"p_parallel", prob_parallel(s),
                   mc::mc_mode_probability(
                       [=](mc::CounterRng& r) { return exp_draw(r, int_p) < i_th; }, mc)});
  }
  mc.stream_id = 1;
  const double c_primary =
      constrained ? primary_capacity_parallel(s) : primary_capacity_x_channel(s);
  out.push_back({"c_primary", c_primary,
                 mc::mc_conditional_capacity(
                     [=](mc::CounterRng& r) -> std::optional<double> {
                       const double sig = exp_draw(r, sig_p);
                       const double intf = exp_draw(r, int_p);
                       if (intf >= i_th) return std::nullopt;
                       return sig / (intf + n);
                     },
                     mc)});
  mc.stream_id = 2;
  out.push_back({"c_secondary", secondary_capacity_parallel(s),
                 mc::mc_ergodic_capacity(
                     [=](mc::CounterRng& r) {
                       const double sig = exp_draw(r, sig_s);
                       return sig / (exp_draw(r, int_s) + n);
                     },
                     mc)});
  mc.stream_id = 3;
  out.push_back({"area_parallel", affected_area_parallel(s),
                 spatial_area({{0.0, 0.0, p1}, {s.d0, 0.0, p2}}, a,
                              s.env.detection_threshold_w, mc)});
  return out;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.11e", v);
  return buf;
}

}  // namespace

std::uint64_t resolve_seed(const ScenarioConfig& cfg, const RunOptions& opt) {
  if (opt.seed) return *opt.seed;
  if (cfg.mc_seed) return *cfg.mc_seed;
  return kDefaultSeed;
}

std::uint64_t resolve_samples(const ScenarioConfig& cfg, const RunOptions& opt) {
  if (opt.samples) return *opt.samples;
  if (cfg.mc_samples) return *cfg.mc_samples;
  return kDefaultSamples;
}

std::string Table::to_csv() const {
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    out += (i ? "," : "") + columns[i];
  }
  out += "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ",";
      if (const auto* d = std::get_if<double>(&row[i])) {
        out += format_double(*d);
      } else {
        out += std::get<std::string>(row[i]);
      }
    }
    out += "\n";
  }
  return out;
}

double Table::number(std::size_t row, const std::string& column) const {
  const auto it = std::find(columns.begin(), columns.end(), column);
  if (it == columns.end()) throw std::out_of_range("no column " + column);
  return std::get<double>(rows.at(row).at(static_cast<std::size_t>(it - columns.begin())));
}

GaseBreakdown evaluate(const ScenarioConfig& cfg) {
  switch (cfg.kind) {
    case ScenarioKind::P2P: return gase_p2p(to_p2p(cfg));
    case ScenarioKind::DualHop: return gase_dualhop(to_dualhop(cfg), *cfg.protocol);
    case ScenarioKind::Coop: return gase_coop(to_coop(cfg), *cfg.protocol).breakdown();
    case ScenarioKind::Cognitive: return gase_cognitive(to_cognitive(cfg));
    case ScenarioKind::XChannel: return gase_x_channel(to_cognitive(cfg));
  }
  throw std::logic_error("unhandled scenario kind");
}

Table run_eval(const ScenarioConfig& cfg, const RunOptions&) {
  std::vector<double> values;
  if (cfg.sweep) values.push_back(cfg.get(cfg.sweep->parameters.front()));
  return table_for(cfg, values, {evaluate(cfg)});
}

Table run_sweep(const ScenarioConfig& cfg, const RunOptions& opt) {
  if (!cfg.sweep) return run_eval(cfg, opt);
  const auto values = cfg.sweep->values();
  std::vector<GaseBreakdown> results(values.size());
  parallel_for(values.size(), opt.threads, [&](std::size_t i) {
    results[i] = evaluate(cfg.at_sweep_value(values[i]));
  });
  return table_for(cfg, values, results);
}

Table run_optimize(const ScenarioConfig& cfg, const RunOptions&) {
  Table t;
  if (cfg.kind == ScenarioKind::P2P) {
    const auto s = to_p2p(cfg);
    const auto p = optimal_power_p2p(s.env, s.distance_m);
    const auto at = gase_p2p({s.env, p, s.distance_m});
    const double x = std::pow(s.distance_m, s.env.path_loss_exponent) *
                     s.env.noise_power_w / p.watts();
    t.columns = {"p_opt_w", "p_opt_dbm", "x_opt", "residual", "capacity", "area", "gase"};
    t.rows.push_back({p.watts(), p.dbm(), x,
                      optimal_power_residual(s.env.path_loss_exponent, x), at.capacity,
                      at.area, at.gase});
    return t;
  }
  if (cfg.kind == ScenarioKind::DualHop) {
    if (!cfg.has("power.p_max_dbm")) {
      throw ConfigError({{0, "power.p_max_dbm", "required by optimize for dualhop"}});
    }
    const auto s = to_dualhop(cfg);
    const auto o = optimize_relay_powers(s.env, s.d_sr, s.d_rd,
                                         PowerLevel::from_dbm(cfg.get("power.p_max_dbm")),
                                         *cfg.protocol);
    const auto at = gase_dualhop({s.env, o.p_s, o.p_r, s.d_sr, s.d_rd}, *cfg.protocol);
    t.columns = {"p_s_opt_dbm", "p_r_opt_dbm", "capacity", "area", "gase", "evaluations"};
    t.rows.push_back({o.p_s.dbm(), o.p_r.dbm(), at.capacity, at.area, at.gase,
                      static_cast<double>(o.evaluations)});
    return t;
  }
  throw ConfigError({{0, "scenario.kind",
                      std::string("optimize supports p2p and dualhop scenarios, not ") +
                          to_string(cfg.kind)}});
}

VerifyReport run_verify(const ScenarioConfig& cfg, const RunOptions& opt) {
  mc::McConfig mc;
  mc.samples = resolve_samples(cfg, opt);
  mc.seed = resolve_seed(cfg, opt);
  mc.workers = std::max(1u, opt.threads);
  std::vector<Check> checks;
  switch (cfg.kind) {
    case ScenarioKind::P2P: checks = checks_p2p(cfg, mc); break;
    case ScenarioKind::DualHop: checks = checks_dualhop(cfg, mc); break;
    case ScenarioKind::Coop: checks = checks_coop(cfg, mc); break;
    case ScenarioKind::Cognitive:
    case ScenarioKind::XChannel: checks = checks_cognitive(cfg, mc); break;
  }
  VerifyReport rep;
  rep.table.columns = {"quantity", "closed_form", "oracle_mean", "std_error",
                       "deviation", "samples", "result"};
  for (const auto& c : checks) {
    const double dev = c.closed_form - c.oracle.mean;
    const bool ok = std::abs(dev) <= 3.0 * c.oracle.std_error;
    rep.passed = rep.passed && ok;
    rep.table.rows.push_back({c.quantity, c.closed_form, c.oracle.mean,
                              c.oracle.std_error, dev,
                              static_cast<double>(c.oracle.samples),
                              std::string(ok ? "pass" : "fail")});
  }
  return rep;
}

}  // namespace gase

#include "gase/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "gase/errors.hpp"

namespace gase {

namespace {

enum KindBit : unsigned {
  kP2p = 1u << 0,
  kDualHop = 1u << 1,
  kCoop = 1u << 2,
  kCognitive = 1u << 3,
  kXChannel = 1u << 4,
  kAll = 0x1f,
};

unsigned bit(ScenarioKind k) { return 1u << static_cast<unsigned>(k); }

enum class Bound { Any, Positive, NonNegative };

struct NumericKey {
  const char* key;
  unsigned kinds;
  unsigned required;
  Bound bound;
};

// Render order is table order.
constexpr NumericKey kNumericKeys[] = {
    {"env.a", kAll, kAll, Bound::Positive},
    {"env.noise_dbm", kAll, kAll, Bound::Any},
    {"env.pmin_dbm", kAll, kAll, Bound::Any},
    {"geometry.d", kP2p, kP2p, Bound::Positive},
    {"geometry.d_sd", kCoop, kCoop, Bound::Positive},
    {"geometry.d_sr", kDualHop | kCoop, kDualHop | kCoop, Bound::Positive},
    {"geometry.d_rd", kDualHop | kCoop, kDualHop | kCoop, Bound::Positive},
    {"geometry.d_p", kCognitive | kXChannel, kCognitive | kXChannel, Bound::Positive},
    {"geometry.d_s", kCognitive | kXChannel, kCognitive | kXChannel, Bound::Positive},
    {"geometry.d_sp", kCognitive | kXChannel, kCognitive | kXChannel, Bound::Positive},
    {"geometry.d_ps", kCognitive | kXChannel, kCognitive | kXChannel, Bound::Positive},
    {"geometry.d0", kCognitive | kXChannel, kCognitive | kXChannel, Bound::NonNegative},
    // accepted for relay layouts and ignored: only distances enter the model
    {"geometry.theta", kAll, 0, Bound::Any},
    {"power.p_t_dbm", kP2p, kP2p, Bound::Any},
    {"power.p_s_dbm", kDualHop | kCoop, kDualHop | kCoop, Bound::Any},
    {"power.p_r_dbm", kDualHop | kCoop, kDualHop | kCoop, Bound::Any},
    {"power.p1_dbm", kCognitive | kXChannel, kCognitive | kXChannel, Bound::Any},
    {"power.p2_dbm", kCognitive | kXChannel, kCognitive | kXChannel, Bound::Any},
    {"power.p_max_dbm", kDualHop, 0, Bound::Any},
    {"threshold.i_th_dbm", kCognitive, kCognitive, Bound::Any},
};

const NumericKey* find_numeric(const std::string& key) {
  for (const auto& k : kNumericKeys) {
    if (key == k.key) return &k;
  }
  return nullptr;
}

constexpr const char* kOtherKeys[] = {
    "scenario.kind", "scenario.protocol", "scenario.label", "sweep.parameter",
    "sweep.start",   "sweep.stop",        "sweep.points",   "sweep.spacing",
    "mc.samples",    "mc.seed",
};

bool is_other_key(const std::string& key) {
  return std::find(std::begin(kOtherKeys), std::end(kOtherKeys), key) !=
         std::end(kOtherKeys);
}

struct Entry {
  int line = 0;
  std::string value;
};

using Entries = std::map<std::string, Entry>;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool valid_key_syntax(const std::string& key) {
  const auto dot = key.find('.');
  if (dot == std::string::npos || dot == 0 || dot + 1 == key.size()) return false;
  if (key.find('.', dot + 1) != std::string::npos) return false;
  for (char c : key) {
    if (!(c == '.' || c == '_' || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9'))) {
      return false;
    }
  }
  return key[0] >= 'a' && key[0] <= 'z' && key[dot + 1] >= 'a' && key[dot + 1] <= 'z';
}

void tokenize(const std::string& text, Entries& out,
              std::vector<ConfigDiagnostic>& diags) {
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  Entries local;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string body = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      diags.push_back({line, "", "expected `section.key = value`"});
      continue;
    }
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (!valid_key_syntax(key)) {
      diags.push_back({line, key, "malformed key (expected section.key)"});
      continue;
    }
    if (value.empty()) {
      diags.push_back({line, key, "missing value"});
      continue;
    }
    if (auto it = local.find(key); it != local.end()) {
      diags.push_back({line, key,
                       "duplicate key (first set on line " +
                           std::to_string(it->second.line) + ")"});
      continue;
    }
    local[key] = {line, value};
  }
  for (auto& [k, e] : local) out[k] = e;
}

std::optional<double> parse_number(const std::string& s) {
  double v = 0.0;
  const char* end = s.data() + s.size();
  const auto r = std::from_chars(s.data(), end, v);
  if (r.ec != std::errc() || r.ptr != end || !std::isfinite(v)) return std::nullopt;
  return v;
}

// Integers may be written in scientific form (1e6) if exact.
std::optional<std::uint64_t> parse_count(const std::string& s) {
  std::uint64_t n = 0;
  const char* end = s.data() + s.size();
  const auto r = std::from_chars(s.data(), end, n);
  if (r.ec == std::errc() && r.ptr == end) return n;
  const auto d = parse_number(s);
  if (d && *d >= 0.0 && *d <= 9007199254740992.0 && std::floor(*d) == *d) {
    return static_cast<std::uint64_t>(*d);
  }
  return std::nullopt;
}

std::optional<ScenarioKind> parse_kind(const std::string& s) {
  if (s == "p2p") return ScenarioKind::P2P;
  if (s == "dualhop") return ScenarioKind::DualHop;
  if (s == "coop") return ScenarioKind::Coop;
  if (s == "cognitive") return ScenarioKind::Cognitive;
  if (s == "xchannel") return ScenarioKind::XChannel;
  return std::nullopt;
}

std::string format_number(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) out.push_back(trim(item));
  return out;
}

PropagationEnvironment env_of(const ScenarioConfig& c) {
  return PropagationEnvironment::from_dbm(c.get("env.a"), c.get("env.noise_dbm"),
                                          c.get("env.pmin_dbm"));
}

// Physical invariants of one fully specified point.
void check_physics(const ScenarioConfig& c, const Entries& entries,
                   const std::string& where, std::vector<ConfigDiagnostic>& diags) {
  auto line_of = [&](const std::string& key) {
    auto it = entries.find(key);
    return it == entries.end() ? 0 : it->second.line;
  };
  if (c.kind == ScenarioKind::Cognitive || c.kind == ScenarioKind::XChannel) {
    const double d0 = c.get("geometry.d0");
    for (auto [cross, own] : {std::pair{"geometry.d_sp", "geometry.d_p"},
                              std::pair{"geometry.d_ps", "geometry.d_s"}}) {
      const double dc = c.get(cross), d = c.get(own);
      const double slack = 1e-12 * (d0 + d);
      if (dc < std::abs(d0 - d) - slack || dc > d0 + d + slack) {
        std::ostringstream os;
        os << where << format_number(dc) << " m is outside the triangle bounds ["
           << format_number(std::abs(d0 - d)) << ", " << format_number(d0 + d)
           << "] set by geometry.d0 and " << own;
        diags.push_back({line_of(cross), cross, os.str()});
      }
    }
    if (!diags.empty()) return;
  }
  try {
    switch (c.kind) {
      case ScenarioKind::P2P: to_p2p(c).validate(); break;
      case ScenarioKind::DualHop: to_dualhop(c).validate(); break;
      case ScenarioKind::Coop: to_coop(c).validate(); break;
      case ScenarioKind::Cognitive:
      case ScenarioKind::XChannel: to_cognitive(c).validate(); break;
    }
  } catch (const DomainError& e) {
    diags.push_back({0, "", where + e.what()});
  }
}

ScenarioConfig interpret(const Entries& entries) {
  std::vector<ConfigDiagnostic> diags;
  ScenarioConfig cfg;
  auto entry = [&](const std::string& key) -> const Entry* {
    auto it = entries.find(key);
    return it == entries.end() ? nullptr : &it->second;
  };

  std::optional<ScenarioKind> kind;
  if (const Entry* e = entry("scenario.kind")) {
    kind = parse_kind(e->value);
    if (!kind) {
      diags.push_back({e->line, "scenario.kind",
                       "unknown kind '" + e->value +
                           "' (expected p2p, dualhop, coop, cognitive or xchannel)"});
    }
  } else {
    diags.push_back({0, "scenario.kind", "missing required key"});
  }
  if (kind) cfg.kind = *kind;

  for (const auto& [key, e] : entries) {
    const NumericKey* nk = find_numeric(key);
    if (!nk && !is_other_key(key)) {
      diags.push_back({e.line, key, "unknown key"});
      continue;
    }
    if (!nk) continue;
    if (kind && !(nk->kinds & bit(*kind))) {
      diags.push_back({e.line, key,
                       std::string("not used by ") + to_string(*kind) + " scenarios"});
      continue;
    }
    const auto v = parse_number(e.value);
    if (!v) {
      diags.push_back({e.line, key, "expected a finite number, got '" + e.value + "'"});
      continue;
    }
    if (nk->bound == Bound::Positive && !(*v > 0.0)) {
      diags.push_back({e.line, key, "must be > 0"});
      continue;
    }
    if (nk->bound == Bound::NonNegative && !(*v >= 0.0)) {
      diags.push_back({e.line, key, "must be >= 0"});
      continue;
    }
    cfg.values[key] = *v;
  }

  if (kind) {
    for (const auto& k : kNumericKeys) {
      if ((k.required & bit(*kind)) && !entry(k.key)) {
        diags.push_back({0, k.key, "missing required key"});
      }
    }
    const bool relay = *kind == ScenarioKind::DualHop || *kind == ScenarioKind::Coop;
    if (const Entry* e = entry("scenario.protocol")) {
      if (!relay) {
        diags.push_back({e->line, "scenario.protocol",
                         std::string("not used by ") + to_string(*kind) + " scenarios"});
      } else if (e->value == "df") {
        cfg.protocol = RelayProtocol::DF;
      } else if (e->value == "af") {
        cfg.protocol = RelayProtocol::AF;
      } else {
        diags.push_back({e->line, "scenario.protocol",
                         "unknown protocol '" + e->value + "' (expected df or af)"});
      }
    } else if (relay) {
      diags.push_back({0, "scenario.protocol", "missing required key"});
    }
  }

  if (const Entry* e = entry("scenario.label")) {
    const bool ok = std::all_of(e->value.begin(), e->value.end(), [](char c) {
      return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' ||
             c == '.';
    });
    if (ok) {
      cfg.label = e->value;
    } else {
      diags.push_back({e->line, "scenario.label",
                       "labels may only contain letters, digits, '_', '-' and '.'"});
    }
  }

  const bool any_sweep = std::any_of(entries.begin(), entries.end(), [](const auto& kv) {
    return kv.first.rfind("sweep.", 0) == 0;
  });
  if (any_sweep) {
    SweepSpec sw;
    bool ok = true;
    for (const char* key : {"sweep.parameter", "sweep.start", "sweep.stop", "sweep.points"}) {
      if (!entry(key)) {
        diags.push_back({0, key, "missing required key (a sweep block is present)"});
        ok = false;
      }
    }
    if (const Entry* e = entry("sweep.parameter")) {
      sw.parameters = split_list(e->value);
      for (const auto& p : sw.parameters) {
        const NumericKey* nk = find_numeric(p);
        if (!nk || p == "geometry.theta" || (kind && !(nk->kinds & bit(*kind)))) {
          diags.push_back({e->line, "sweep.parameter",
                           "'" + p + "' is not a sweepable parameter of this scenario"});
          ok = false;
        }
      }
    }
    for (auto [key, dst] : {std::pair{"sweep.start", &sw.start},
                            std::pair{"sweep.stop", &sw.stop}}) {
      if (const Entry* e = entry(key)) {
        if (auto v = parse_number(e->value)) {
          *dst = *v;
        } else {
          diags.push_back({e->line, key, "expected a finite number, got '" + e->value + "'"});
          ok = false;
        }
      }
    }
    if (const Entry* e = entry("sweep.points")) {
      const auto n = parse_count(e->value);
      if (!n || *n < 1) {
        diags.push_back({e->line, "sweep.points", "expected an integer >= 1"});
        ok = false;
      } else {
        sw.points = *n;
      }
    }
    if (const Entry* e = entry("sweep.spacing")) {
      if (e->value == "linear") {
        sw.spacing = Spacing::Linear;
      } else if (e->value == "log") {
        sw.spacing = Spacing::Log;
        if (!(sw.start > 0.0) || !(sw.stop > 0.0)) {
          diags.push_back({e->line, "sweep.spacing",
                           "log spacing needs sweep.start and sweep.stop > 0"});
          ok = false;
        }
      } else {
        diags.push_back({e->line, "sweep.spacing",
                         "unknown spacing '" + e->value + "' (expected linear or log)"});
        ok = false;
      }
    }
    if (ok) cfg.sweep = sw;
  }

  if (const Entry* e = entry("mc.samples")) {
    const auto n = parse_count(e->value);
    if (!n || *n < 1) {
      diags.push_back({e->line, "mc.samples", "expected an integer >= 1"});
    } else {
      cfg.mc_samples = *n;
    }
  }
  if (const Entry* e = entry("mc.seed")) {
    std::uint64_t n = 0;
    const char* end = e->value.data() + e->value.size();
    const auto r = std::from_chars(e->value.data(), end, n);
    if (r.ec != std::errc() || r.ptr != end) {
      diags.push_back({e->line, "mc.seed", "expected an unsigned 64-bit integer"});
    } else {
      cfg.mc_seed = n;
    }
  }

  if (diags.empty()) {
    check_physics(cfg, entries, "", diags);
    if (cfg.sweep) {
      for (double v : cfg.sweep->values()) {
        if (!diags.empty()) break;
        check_physics(cfg.at_sweep_value(v), entries,
                      "at sweep value " + format_number(v) + ": ", diags);
      }
    }
  }
  if (!diags.empty()) {
    std::stable_sort(diags.begin(), diags.end(),
                     [](const auto& a, const auto& b) { return a.line < b.line; });
    throw ConfigError(std::move(diags));
  }
  return cfg;
}

Entries entries_of(const ScenarioConfig& cfg) {
  Entries out;
  std::vector<ConfigDiagnostic> diags;
  tokenize(render_config(cfg), out, diags);
  for (auto& [k, e] : out) e.line = 0;
  return out;
}

}  // namespace

const char* to_string(ScenarioKind k) {
  switch (k) {
    case ScenarioKind::P2P: return "p2p";
    case ScenarioKind::DualHop: return "dualhop";
    case ScenarioKind::Coop: return "coop";
    case ScenarioKind::Cognitive: return "cognitive";
    case ScenarioKind::XChannel: return "xchannel";
  }
  return "?";
}

std::vector<double> SweepSpec::values() const {
  std::vector<double> out(points);
  if (points == 1) {
    out[0] = start;
    return out;
  }
  const double n = static_cast<double>(points - 1);
  for (std::uint64_t i = 0; i < points; ++i) {
    const double f = static_cast<double>(i) / n;
    out[i] = spacing == Spacing::Linear
                 ? start + f * (stop - start)
                 : std::exp(std::log(start) + f * (std::log(stop) - std::log(start)));
  }
  out.back() = stop;
  return out;
}

double ScenarioConfig::get(const std::string& key) const {
  auto it = values.find(key);
  if (it == values.end()) throw std::out_of_range("config key not set: " + key);
  return it->second;
}

ScenarioConfig ScenarioConfig::at_sweep_value(double value) const {
  ScenarioConfig c = *this;
  if (sweep) {
    for (const auto& p : sweep->parameters) c.values[p] = value;
  }
  return c;
}

ScenarioConfig parse_config(const std::string& text) {
  Entries entries;
  std::vector<ConfigDiagnostic> diags;
  tokenize(text, entries, diags);
  if (!diags.empty()) {
    // Still report semantic problems of the well-formed lines.
    try {
      interpret(entries);
    } catch (const ConfigError& e) {
      diags.insert(diags.end(), e.diagnostics().begin(), e.diagnostics().end());
    }
    std::stable_sort(diags.begin(), diags.end(),
                     [](const auto& a, const auto& b) { return a.line < b.line; });
    throw ConfigError(std::move(diags));
  }
  return interpret(entries);
}

ScenarioConfig parse_config(const std::string& text, const ScenarioConfig& base) {
  Entries entries = entries_of(base);
  std::vector<ConfigDiagnostic> diags;
  Entries overrides;
  tokenize(text, overrides, diags);
  for (auto& [k, e] : overrides) entries[k] = e;
  if (!diags.empty()) throw ConfigError(std::move(diags));
  return interpret(entries);
}

std::string render_config(const ScenarioConfig& cfg) {
  std::ostringstream os;
  os << "scenario.kind = " << to_string(cfg.kind) << "\n";
  if (cfg.protocol) os << "scenario.protocol = " << to_string(*cfg.protocol) << "\n";
  if (!cfg.label.empty()) os << "scenario.label = " << cfg.label << "\n";
  for (const auto& k : kNumericKeys) {
    auto it = cfg.values.find(k.key);
    if (it != cfg.values.end()) os << k.key << " = " << format_number(it->second) << "\n";
  }
  if (cfg.sweep) {
    os << "sweep.parameter = ";
    for (std::size_t i = 0; i < cfg.sweep->parameters.size(); ++i) {
      os << (i ? ", " : "") << cfg.sweep->parameters[i];
    }
    os << "\nsweep.start = " << format_number(cfg.sweep->start)
       << "\nsweep.stop = " << format_number(cfg.sweep->stop)
       << "\nsweep.points = " << cfg.sweep->points << "\nsweep.spacing = "
       << (cfg.sweep->spacing == Spacing::Linear ? "linear" : "log") << "\n";
  }
  if (cfg.mc_samples) os << "mc.samples = " << *cfg.mc_samples << "\n";
  if (cfg.mc_seed) os << "mc.seed = " << *cfg.mc_seed << "\n";
  return os.str();
}

std::vector<std::string> numeric_keys(ScenarioKind k) {
  std::vector<std::string> out;
  for (const auto& nk : kNumericKeys) {
    if (nk.kinds & bit(k)) out.emplace_back(nk.key);
  }
  return out;
}

P2pScenario to_p2p(const ScenarioConfig& c) {
  return {env_of(c), PowerLevel::from_dbm(c.get("power.p_t_dbm")), c.get("geometry.d")};
}

DualHopScenario to_dualhop(const ScenarioConfig& c) {
  return {env_of(c), PowerLevel::from_dbm(c.get("power.p_s_dbm")),
          PowerLevel::from_dbm(c.get("power.p_r_dbm")), c.get("geometry.d_sr"),
          c.get("geometry.d_rd")};
}

CoopScenario to_coop(const ScenarioConfig& c) {
  return {env_of(c),
          PowerLevel::from_dbm(c.get("power.p_s_dbm")),
          PowerLevel::from_dbm(c.get("power.p_r_dbm")),
          c.get("geometry.d_sd"),
          c.get("geometry.d_sr"),
          c.get("geometry.d_rd")};
}

CognitiveScenario to_cognitive(const ScenarioConfig& c) {
  const double i_th = c.kind == ScenarioKind::Cognitive
                          ? dbm_to_watts(c.get("threshold.i_th_dbm"))
                          : std::numeric_limits<double>::infinity();
  return {env_of(c),
          PowerLevel::from_dbm(c.get("power.p1_dbm")),
          PowerLevel::from_dbm(c.get("power.p2_dbm")),
          c.get("geometry.d_p"),
          c.get("geometry.d_s"),
          c.get("geometry.d_sp"),
          c.get("geometry.d_ps"),
          c.get("geometry.d0"),
          i_th};
}

}  // namespace gase

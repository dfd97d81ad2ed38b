#include <string>
#include <vector>

#include "gase/config.hpp"
#include "gase/errors.hpp"

namespace gase {

namespace {

// Each preset is a fixed parameter set. Where several curves share one
// setup (the a values of fig1, the kappa values of fig7) each curve is its
// own member.

std::string fig1_member(int a) {
  return "scenario.kind = p2p\n"
         "scenario.label = a" + std::to_string(a) + "\n"
         "env.a = " + std::to_string(a) + "\n"
         "env.noise_dbm = -100\n"
         "env.pmin_dbm = -90\n"
         "geometry.d = 1000\n"
         "power.p_t_dbm = 30\n"
         "sweep.parameter = power.p_t_dbm\n"
         "sweep.start = -30\n"
         "sweep.stop = 70\n"
         "sweep.points = 101\n";
}

const char* const kFig3Env =
    "env.a = 4\n"
    "env.noise_dbm = -100\n"
    "env.pmin_dbm = -90\n";

const char* const kPowerSweep =
    "sweep.start = -10\n"
    "sweep.stop = 50\n"
    "sweep.points = 61\n";

std::vector<std::string> fig3() {
  const std::string relay = std::string(kFig3Env) +
                            "geometry.d_sr = 500\n"
                            "geometry.d_rd = 500\n"
                            "geometry.theta = 0\n"
                            "power.p_s_dbm = 30\n"
                            "power.p_r_dbm = 30\n"
                            "power.p_max_dbm = 50\n"
                            "sweep.parameter = power.p_s_dbm, power.p_r_dbm\n" +
                            kPowerSweep;
  return {
      "scenario.kind = p2p\nscenario.label = p2p\n" + std::string(kFig3Env) +
          "geometry.d = 1000\npower.p_t_dbm = 30\n"
          "sweep.parameter = power.p_t_dbm\n" + kPowerSweep,
      "scenario.kind = dualhop\nscenario.protocol = df\nscenario.label = dualhop_df\n" + relay,
      "scenario.kind = dualhop\nscenario.protocol = af\nscenario.label = dualhop_af\n" + relay,
  };
}

const char* const kFig4Env =
    "env.a = 4\n"
    "env.noise_dbm = -100\n"
    "env.pmin_dbm = -80\n";

std::vector<std::string> fig4() {
  const std::string coop = std::string(kFig4Env) +
                           "geometry.d_sd = 1000\n"
                           "geometry.d_sr = 500\n"
                           "geometry.d_rd = 500\n"
                           "geometry.theta = 0\n"
                           "power.p_s_dbm = 20\n"
                           "power.p_r_dbm = 10\n"
                           "sweep.parameter = power.p_s_dbm\n" +
                           kPowerSweep;
  return {
      "scenario.kind = coop\nscenario.protocol = df\nscenario.label = coop_df\n" + coop,
      "scenario.kind = coop\nscenario.protocol = af\nscenario.label = coop_af\n" + coop,
      "scenario.kind = p2p\nscenario.label = p2p\n" + std::string(kFig4Env) +
          "geometry.d = 1000\npower.p_t_dbm = 20\n"
          "sweep.parameter = power.p_t_dbm\n" + kPowerSweep,
  };
}

const char* const kCognitiveEnv =
    "env.a = 4\n"
    "env.noise_dbm = -100\n"
    "env.pmin_dbm = -100\n";

std::string pair_geometry(const std::string& kappa_d, const std::string& d0) {
  return "geometry.d_p = 100\n"
         "geometry.d_s = 100\n"
         "geometry.d_sp = " + kappa_d + "\n"
         "geometry.d_ps = " + kappa_d + "\n"
         "geometry.d0 = " + d0 + "\n";
}

std::string p2p_reference() {
  return "scenario.kind = p2p\nscenario.label = p2p\n" + std::string(kCognitiveEnv) +
         "geometry.d = 100\npower.p_t_dbm = 20\n";
}

std::vector<std::string> fig6() {
  return {
      "scenario.kind = cognitive\nscenario.label = cognitive\n" +
          std::string(kCognitiveEnv) + pair_geometry("150", "100") +
          "power.p1_dbm = 20\npower.p2_dbm = 20\n"
          "threshold.i_th_dbm = -80\n"
          "sweep.parameter = threshold.i_th_dbm\n"
          "sweep.start = -130\nsweep.stop = -30\nsweep.points = 101\n",
      "scenario.kind = xchannel\nscenario.label = xchannel\n" +
          std::string(kCognitiveEnv) + pair_geometry("150", "100") +
          "power.p1_dbm = 20\npower.p2_dbm = 20\n",
      p2p_reference(),
  };
}

// S_S sits at distance kappa d from S_P, which keeps every kappa >= 1/2
// inside the triangle bounds.
std::vector<std::string> fig7() {
  std::vector<std::string> out;
  for (const auto& [label, kd] : {std::pair{"kappa1.5", "150"},
                                  std::pair{"kappa2.5", "250"},
                                  std::pair{"kappa4", "400"}}) {
    out.push_back(std::string("scenario.kind = cognitive\nscenario.label = ") + label +
                  "\n" + kCognitiveEnv + pair_geometry(kd, kd) +
                  "power.p1_dbm = 20\npower.p2_dbm = 20\n"
                  "threshold.i_th_dbm = -80\n"
                  "sweep.parameter = power.p2_dbm\n" + kPowerSweep);
  }
  out.push_back(p2p_reference());
  return out;
}

Preset make(const std::string& name, const std::string& description,
            const std::vector<std::string>& texts) {
  Preset p{name, description, {}};
  for (const auto& t : texts) p.members.push_back(parse_config(t));
  return p;
}

}  // namespace

const std::vector<Preset>& presets() {
  static const std::vector<Preset> all = [] {
    std::vector<std::string> f1;
    for (int a : {2, 3, 4, 5}) f1.push_back(fig1_member(a));
    return std::vector<Preset>{
        make("fig1", "point-to-point GASE versus P_t for several a", f1),
        make("fig3", "dual-hop DF/AF versus point-to-point, P_S = P_R = P_t", fig3()),
        make("fig4", "three-node cooperation versus P_S at P_R = 10 dBm", fig4()),
        make("fig6", "underlay cognitive GASE versus I_th, kappa = 1.5", fig6()),
        make("fig7a", "underlay cognitive spectral efficiency versus P_2", fig7()),
        make("fig7b", "underlay cognitive GASE versus P_2", fig7()),
    };
  }();
  return all;
}

const Preset& find_preset(const std::string& name) {
  for (const auto& p : presets()) {
    if (p.name == name) return p;
  }
  std::string known;
  for (const auto& p : presets()) known += (known.empty() ? "" : ", ") + p.name;
  throw ConfigError({{0, "", "unknown preset '" + name + "' (known: " + known + ")"}});
}

}  // namespace gase

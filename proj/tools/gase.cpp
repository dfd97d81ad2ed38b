// gase <eval|sweep|optimize|verify> --config <path> [--preset <name>]
//      [--out <path.csv>] [--seed <u64>] [--samples <n>] [--threads <n>]
//
// Exit codes: 0 ok, 1 usage or configuration error, 2 verification failure,
// 3 numerical non-convergence.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "gase/config.hpp"
#include "gase/errors.hpp"
#include "gase/runner.hpp"

namespace fs = std::filesystem;

namespace {

enum Exit { kOk = 0, kUsage = 1, kVerifyFailed = 2, kNoConvergence = 3 };

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

// For several members, out.csv becomes out_<label>.csv next to it.
fs::path member_path(const fs::path& out, const gase::ScenarioConfig& m,
                     std::size_t index, std::size_t count) {
  if (count == 1) return out;
  const std::string tag = m.label.empty() ? std::to_string(index) : m.label;
  fs::path p = out;
  p.replace_filename(out.stem().string() + "_" + tag + out.extension().string());
  return p;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized area spectral efficiency calculator"};
  app.require_subcommand(1, 1);

  std::string config_path, preset_name, out_path;
  std::optional<std::uint64_t> seed, samples;
  unsigned threads = 1;
  for (const char* name : {"eval", "sweep", "optimize", "verify"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "scenario file (overrides preset keys)");
    sub->add_option("--preset", preset_name, "built-in preset (fig1, fig3, fig4, fig6, fig7a, fig7b)");
    sub->add_option("--out", out_path, "CSV output path (default: stdout)");
    sub->add_option("--seed", seed, "Monte Carlo seed");
    sub->add_option("--samples", samples, "Monte Carlo sample count")
        ->check(CLI::PositiveNumber);
    sub->add_option("--threads", threads, "worker threads (output is identical for any value)")
        ->check(CLI::Range(1u, 1024u));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  try {
    if (config_path.empty() && preset_name.empty()) {
      std::cerr << "gase " << command << ": one of --config or --preset is required\n";
      return kUsage;
    }
    std::vector<gase::ScenarioConfig> members;
    if (!preset_name.empty()) {
      const auto& preset = gase::find_preset(preset_name);
      if (config_path.empty()) {
        members = preset.members;
      } else {
        const std::string overrides = read_file(config_path);
        for (const auto& m : preset.members) {
          members.push_back(gase::parse_config(overrides, m));
        }
      }
    } else {
      members.push_back(gase::parse_config(read_file(config_path)));
    }

    gase::RunOptions opt;
    opt.seed = seed;
    opt.samples = samples;
    opt.threads = threads;

    bool verified = true;
    for (std::size_t i = 0; i < members.size(); ++i) {
      const auto& m = members[i];
      gase::Table table;
      if (command == "eval") {
        table = gase::run_eval(m, opt);
      } else if (command == "sweep") {
        table = gase::run_sweep(m, opt);
      } else if (command == "optimize") {
        table = gase::run_optimize(m, opt);
      } else {
        auto rep = gase::run_verify(m, opt);
        verified = verified && rep.passed;
        table = std::move(rep.table);
      }
      const std::string csv = table.to_csv();
      if (out_path.empty()) {
        if (members.size() > 1) std::cout << "# " << (m.label.empty() ? std::to_string(i) : m.label) << "\n";
        std::cout << csv;
      } else {
        write_file(member_path(out_path, m, i, members.size()), csv);
      }
    }
    if (!verified) {
      std::cerr << "gase verify: closed form and oracle disagree beyond 3 standard errors\n";
      return kVerifyFailed;
    }
    return kOk;
  } catch (const gase::ConfigError& e) {
    std::cerr << (config_path.empty() ? std::string("preset") : config_path) << ": "
              << e.what() << "\n";
    return kUsage;
  } catch (const gase::ConvergenceError& e) {
    std::cerr << "gase " << command << ": " << e.what()
              << " (best estimate " << e.best_estimate() << ", error estimate "
              << e.error_estimate() << ")\n";
    return kNoConvergence;
  } catch (const gase::TailCertificationError& e) {
    std::cerr << "gase " << command << ": " << e.what() << "\n";
    return kNoConvergence;
  } catch (const gase::DomainError& e) {
    std::cerr << "gase " << command << ": " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "gase " << command << ": " << e.what() << "\n";
    return kUsage;
  }
}

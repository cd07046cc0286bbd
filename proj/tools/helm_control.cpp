#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "helmcontrol/io.hpp"
#include "helmcontrol/parallel.hpp"
#include "helmcontrol/runner.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitGeometry = 3;
constexpr int kExitNumerical = 4;

struct LoadedConfig {
  std::string text;
  std::string base_dir;
  std::string label;
};

// A config argument is a file path or the name of a bundled scenario.
LoadedConfig resolve_config(const std::string& arg) {
  if (std::filesystem::exists(arg)) {
    std::ifstream in(arg);
    if (!in) throw helm::ConfigError("cannot open config file: " + arg);
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string base = ".";
    if (const auto slash = arg.find_last_of('/'); slash != std::string::npos)
      base = arg.substr(0, slash);
    return {buf.str(), base, arg};
  }
  if (const helm::BundledConfig* cfg = helm::find_bundled_config(arg))
    return {cfg->text, ".", cfg->name + " (bundled)"};
  throw helm::ConfigError("config not found: " + arg +
                          " (not a file, and not a bundled scenario name)");
}

int run_command(const std::string& config_arg, const std::string& out_override,
                double epsilon_override, int threads) {
  const LoadedConfig cfg = resolve_config(config_arg);
  helm::Scenario scenario = helm::parse_scenario(cfg.text, cfg.base_dir);
  if (!out_override.empty()) scenario.outputs.directory = out_override;
  if (epsilon_override > 0.0) scenario.solver.epsilon_rel = epsilon_override;

  const helm::RunManifest manifest =
      helm::run_scenario(scenario, cfg.text, helm::resolve_threads(threads));

  std::cout << "wrote " << manifest.files.size() << " files to " << scenario.outputs.directory
            << " (config " << manifest.config_hash << ")\n";
  for (const auto& [stage, secs] : manifest.stage_seconds)
    std::printf("  %-10s %8.2f s\n", stage.c_str(), secs);
  return kExitOk;
}

int validate_command(const std::string& config_arg) {
  const LoadedConfig cfg = resolve_config(config_arg);
  const helm::Scenario scenario = helm::parse_scenario(cfg.text, cfg.base_dir);
  const auto issues = helm::validate_scenario(scenario);
  if (issues.empty()) {
    std::cout << cfg.label << ": valid\n";
    return kExitOk;
  }
  std::cout << cfg.label << ": " << issues.size() << " issue(s)\n";
  for (const auto& issue : issues) std::cout << "  - " << issue << '\n';
  return kExitConfig;
}

int list_command() {
  for (const auto& cfg : helm::bundled_configs()) {
    const helm::Scenario s = helm::parse_scenario(cfg.text);
    std::printf("%-22s %s\n", cfg.name.c_str(), s.title.c_str());
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"helm-control: near-field synthesis with directional far-field control"};
  app.require_subcommand(1);

  std::string config_arg, out_override;
  double epsilon_override = -1.0;
  int threads = 0;  // 0 = use HELM_CONTROL_THREADS or 1

  CLI::App* run = app.add_subcommand("run", "run a scenario and write all artifacts");
  run->add_option("config", config_arg, "config file or bundled scenario name")->required();
  run->add_option("--out", out_override, "override the output directory");
  run->add_option("--epsilon-rel", epsilon_override, "override solver.epsilon_rel");
  run->add_option("--threads", threads, "worker threads (default: HELM_CONTROL_THREADS or 1)");

  CLI::App* validate = app.add_subcommand("validate", "check a config without assembling");
  validate->add_option("config", config_arg, "config file or bundled scenario name")->required();

  app.add_subcommand("list", "list bundled scenario configs");

  try {
    app.parse(argc, argv);
    if (run->parsed()) return run_command(config_arg, out_override, epsilon_override, threads);
    if (validate->parsed()) return validate_command(config_arg);
    return list_command();
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const helm::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const helm::GeometryViolation& e) {
    std::cerr << "geometry violation: " << e.what() << '\n';
    return kExitGeometry;
  } catch (const helm::SingularKernel& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const helm::NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

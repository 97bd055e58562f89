#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "config.hpp"
#include "runner.hpp"

namespace {

using namespace vfl::cli;

constexpr int kOk = 0;
constexpr int kConfigError = 2;
constexpr int kIoError = 3;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void setup_logging() {
  auto logger = spdlog::stderr_logger_mt("vfl");
  logger->set_pattern("vfl: %l: %v");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  const char* env = std::getenv("VFL_LOG");
  if (!env) return;
  const std::string level = env;
  if (level == "error") {
    spdlog::set_level(spdlog::level::err);
  } else if (level == "warn") {
    spdlog::set_level(spdlog::level::warn);
  } else if (level == "info") {
    spdlog::set_level(spdlog::level::info);
  } else if (level == "debug") {
    spdlog::set_level(spdlog::level::debug);
  } else {
    spdlog::warn("ignoring VFL_LOG={} (expected error, warn, info or debug)", level);
  }
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    if (!std::cout) throw IoError("cannot write to standard output");
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open output file '" + path + "'");
  out << text;
  out.close();
  if (!out) throw IoError("error writing output file '" + path + "'");
}

struct Common {
  std::string config;
  std::string output = "-";
  std::string json;
  int jobs = 1;
  bool no_timestamp = false;

  void attach(CLI::App* app) {
    app->add_option("--config", config, "YAML run configuration")->required();
    app->add_option("--output", output, "CSV output path, '-' for standard output");
    app->add_option("--jobs", jobs, "parallel sweep width")->check(CLI::PositiveNumber);
    app->add_flag("--no-header-timestamp", no_timestamp, "omit the '# generated' line");
  }

  [[nodiscard]] std::optional<std::string> timestamp() const {
    if (no_timestamp) return std::nullopt;
    return utc_timestamp();
  }
};

}  // namespace

int main(int argc, char** argv) {
  setup_logging();

  CLI::App app{"Vacuum forces on planar magnetodielectric structures"};
  app.require_subcommand(1);

  Common run_opts;
  std::vector<std::string> forces;
  std::string mode;
  std::string regime;
  auto* run = app.add_subcommand("run", "sweep force kinds over distances");
  run_opts.attach(run);
  run->add_option("--json", run_opts.json, "also write the rows as JSON");
  run->add_option("--force", forces,
                  "slab|screened|assisted|medium|atom|atom-vacuum|interface")
      ->delimiter(',');
  run->add_option("--mode", mode, "lorentz|minkowski|both");
  run->add_option("--regime", regime, "full|small|large|all");

  Common cmp_opts;
  auto* compare = app.add_subcommand("compare", "Lorentz split against the Minkowski force");
  cmp_opts.attach(compare);

  Common reg_opts;
  auto* regimes = app.add_subcommand("regimes", "full against asymptotic forms with slopes");
  reg_opts.attach(regimes);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  try {
    if (run->parsed()) {
      RunOptions opt;
      opt.jobs = run_opts.jobs;
      if (!forces.empty()) {
        std::vector<ForceSel> sel;
        for (const auto& f : forces) {
          const auto v = parse_force(f);
          if (!v) throw ConfigError("<command line>", 0, "--force", "unknown force '" + f + "'");
          sel.push_back(*v);
        }
        opt.forces = sel;
      }
      if (!mode.empty()) {
        opt.mode = parse_mode(mode);
        if (!opt.mode) throw ConfigError("<command line>", 0, "--mode", "unknown mode '" + mode + "'");
      }
      if (!regime.empty()) {
        opt.regime = parse_regime(regime);
        if (!opt.regime) {
          throw ConfigError("<command line>", 0, "--regime", "unknown regime '" + regime + "'");
        }
      }
      const RunConfig cfg = load_config(run_opts.config);
      const auto rows = run_sweep(cfg, opt);
      std::ostringstream csv;
      write_csv(csv, rows, run_opts.timestamp());
      emit(run_opts.output, csv.str());
      if (!run_opts.json.empty()) emit(run_opts.json, to_json(rows));
    } else if (compare->parsed()) {
      const RunConfig cfg = load_config(cmp_opts.config);
      std::ostringstream csv;
      write_compare_csv(csv, compare_modes(cfg, cmp_opts.jobs), cmp_opts.timestamp());
      emit(cmp_opts.output, csv.str());
    } else if (regimes->parsed()) {
      const RunConfig cfg = load_config(reg_opts.config);
      std::ostringstream csv;
      write_regimes_csv(csv, regime_tables(cfg, reg_opts.jobs), reg_opts.timestamp());
      emit(reg_opts.output, csv.str());
    }
  } catch (const ConfigError& e) {
    spdlog::error("{}", e.what());
    return kConfigError;
  } catch (const ConfigIoError& e) {
    spdlog::error("{}", e.what());
    return kIoError;
  } catch (const IoError& e) {
    spdlog::error("{}", e.what());
    return kIoError;
  }
  return kOk;
}

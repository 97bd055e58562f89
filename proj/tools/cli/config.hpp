#pragma once

// Run configuration loaded from a YAML file.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "vfl/asymptotics.hpp"
#include "vfl/forces.hpp"
#include "vfl/geometry.hpp"
#include "vfl/quadrature.hpp"

namespace vfl::cli {

/// Parse or validation failure; `what()` is "<file>:<line>: <key>: <message>".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string file, int line, std::string key, std::string message);

  [[nodiscard]] const std::string& key() const noexcept { return key_; }
  [[nodiscard]] int line() const noexcept { return line_; }

 private:
  std::string key_;
  int line_;
};

/// The config file could not be read.
class ConfigIoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ForceSel { slab, screened, assisted, medium, atom, atom_vacuum, interface };
enum class ModeSel { lorentz, minkowski, both };
enum class RegimeSel { full, small, large, all };
enum class Variant { general, lifshitz, thin };
enum class Spacing { log, linear };

[[nodiscard]] std::string_view to_string(ForceSel f) noexcept;
[[nodiscard]] std::optional<ForceSel> parse_force(std::string_view s) noexcept;
[[nodiscard]] std::optional<ModeSel> parse_mode(std::string_view s) noexcept;
[[nodiscard]] std::optional<RegimeSel> parse_regime(std::string_view s) noexcept;

struct Sweep {
  double d_min = 1.0;
  double d_max = 1.0;
  int points = 1;
  Spacing spacing = Spacing::log;

  [[nodiscard]] std::vector<double> grid() const;
};

struct RunConfig {
  std::string path;
  double omega_ref = 1.0;  // rad/s
  bool si_output = true;
  std::map<std::string, DispersionModel> materials;
  std::variant<CavityScene, InterfaceScene> scene;
  AtomProperties atom;
  Sweep sweep;
  std::vector<ForceSel> forces;
  ModeSel mode = ModeSel::lorentz;
  RegimeSel regime = RegimeSel::full;
  Variant variant = Variant::general;
  QuadratureSpec quadrature;

  [[nodiscard]] bool is_cavity() const noexcept { return scene.index() == 0; }
};

/// Throws ConfigIoError when the file cannot be read and ConfigError for any
/// syntax or schema problem.
[[nodiscard]] RunConfig load_config(const std::string& path);
[[nodiscard]] RunConfig parse_config(const std::string& text, const std::string& name);

}  // namespace vfl::cli

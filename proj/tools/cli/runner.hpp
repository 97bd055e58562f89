#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "config.hpp"

namespace vfl::cli {

struct Row {
  double d = 0.0;
  ForceSel kind = ForceSel::screened;
  ModeSel mode = ModeSel::lorentz;  // lorentz or minkowski
  RegimeSel regime = RegimeSel::full;
  double value = 0.0;
  std::optional<double> value_si;
  double error_estimate = 0.0;
  bool converged = true;
  int sign_toward_nearest_mirror = 0;
  std::string unit;   // SI unit of value_si
  std::string note;   // empty unless the row could not be computed
};

struct RunOptions {
  std::optional<std::vector<ForceSel>> forces;
  std::optional<ModeSel> mode;
  std::optional<RegimeSel> regime;
  int jobs = 1;
};

/// Rows ordered by d, then force kind, mode and regime in config order.
[[nodiscard]] std::vector<Row> run_sweep(const RunConfig& cfg, const RunOptions& opt);

struct CompareRow {
  double d = 0.0;
  ForceResult screened;
  ForceResult assisted;
  ForceResult minkowski;
};

/// Throws ConfigError unless the scene is a cavity.
[[nodiscard]] std::vector<CompareRow> compare_modes(const RunConfig& cfg, int jobs);

struct RegimeTable {
  ForceSel kind;
  std::vector<RegimeRow> rows;
};

/// One table per screened/assisted/medium kind in the config.
[[nodiscard]] std::vector<RegimeTable> regime_tables(const RunConfig& cfg, int jobs);

void write_csv(std::ostream& out, const std::vector<Row>& rows,
               const std::optional<std::string>& timestamp);
void write_compare_csv(std::ostream& out, const std::vector<CompareRow>& rows,
                       const std::optional<std::string>& timestamp);
void write_regimes_csv(std::ostream& out, const std::vector<RegimeTable>& tables,
                       const std::optional<std::string>& timestamp);

/// JSON array mirroring the CSV records.
[[nodiscard]] std::string to_json(const std::vector<Row>& rows);

/// UTC time in ISO 8601.
[[nodiscard]] std::string utc_timestamp();

}  // namespace vfl::cli

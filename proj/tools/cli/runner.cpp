#include "runner.hpp"

#include <fmt/chrono.h>
#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <ostream>
#include <thread>

#include "json.hpp"
#include "vfl/units.hpp"

namespace vfl::cli {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Runs body(i) for i in [0, n) on at most `jobs` threads.
template <class Body>
void parallel_for(std::size_t n, int jobs, Body body) {
  const std::size_t width = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(jobs, 1)));
  if (width <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(width);
  for (std::size_t w = 0; w < width; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) body(i);
    });
  }
}

std::string_view mode_name(ModeSel m) { return m == ModeSel::minkowski ? "minkowski" : "lorentz"; }

std::string_view regime_name(RegimeSel r) {
  switch (r) {
    case RegimeSel::small:
      return "small";
    case RegimeSel::large:
      return "large";
    default:
      return "full";
  }
}

std::vector<ModeSel> modes_of(ModeSel m) {
  if (m == ModeSel::both) return {ModeSel::lorentz, ModeSel::minkowski};
  return {m};
}

std::vector<RegimeSel> regimes_of(RegimeSel r) {
  if (r == RegimeSel::all) return {RegimeSel::full, RegimeSel::small, RegimeSel::large};
  return {r};
}

bool atom_kind(ForceSel k) { return k == ForceSel::atom || k == ForceSel::atom_vacuum; }

CavityScene at_distance(const RunConfig& cfg, double d) {
  CavityScene s = std::get<CavityScene>(cfg.scene);
  s.gap2 = d;
  return s;
}

std::optional<SmallKind> small_kind(ForceSel k, Variant v) {
  switch (k) {
    case ForceSel::screened:
      if (v == Variant::thin) return std::nullopt;
      return v == Variant::lifshitz ? SmallKind::screened_lifshitz : SmallKind::screened;
    case ForceSel::assisted:
      if (v == Variant::thin) return SmallKind::assisted_thin;
      return v == Variant::lifshitz ? SmallKind::assisted_lifshitz : SmallKind::assisted;
    case ForceSel::medium:
      return v == Variant::thin ? SmallKind::medium_thin : SmallKind::medium;
    default:
      return std::nullopt;
  }
}

std::optional<LargeKind> large_kind(ForceSel k, Variant v) {
  switch (k) {
    case ForceSel::screened:
      if (v == Variant::thin) return std::nullopt;
      return v == Variant::lifshitz ? LargeKind::screened_lifshitz : LargeKind::screened;
    case ForceSel::assisted:
      if (v == Variant::thin) return LargeKind::assisted_thin;
      return v == Variant::lifshitz ? LargeKind::assisted_lifshitz : LargeKind::assisted;
    case ForceSel::medium:
      return v == Variant::thin ? LargeKind::medium_thin : LargeKind::medium;
    default:
      return std::nullopt;
  }
}

// nullopt when the combination has no meaning and produces no row.
std::optional<ForceResult> compute(const RunConfig& cfg, ForceSel kind, ModeSel mode,
                                   RegimeSel regime, double d) {
  const QuadratureSpec& q = cfg.quadrature;
  if (kind == ForceSel::interface) {
    if (regime != RegimeSel::full) return std::nullopt;
    InterfaceScene s = std::get<InterfaceScene>(cfg.scene);
    s.a0 = d;
    s.an = d;
    if (mode == ModeSel::minkowski) return ForceResult{0.0, ForceKind::minkowski, 0.0, true};
    return interface_force(s, q);
  }
  const CavityScene s = at_distance(cfg, d);
  if (mode == ModeSel::minkowski) {
    if (regime != RegimeSel::full || atom_kind(kind)) return std::nullopt;
    if (kind == ForceSel::slab || kind == ForceSel::screened) return minkowski_slab_force(s, q);
    return ForceResult{0.0, ForceKind::minkowski, 0.0, true};
  }
  if (regime == RegimeSel::full) {
    switch (kind) {
      case ForceSel::slab:
        return slab_force(s, q);
      case ForceSel::screened:
        return screened_force(s, q);
      case ForceSel::assisted:
        return assisted_force(s, q);
      case ForceSel::medium:
        return medium_layer_force(s.mirror2, s.medium, d, s.slab.thickness, q);
      case ForceSel::atom:
        return atom_force(s.mirror2, s.medium, cfg.atom, d, q);
      case ForceSel::atom_vacuum:
        return atom_force_vacuum(s.mirror2, cfg.atom, d, q);
      case ForceSel::interface:
        break;
    }
    return std::nullopt;
  }
  if (kind == ForceSel::atom) {
    return regime == RegimeSel::small ? small_distance_atom_force(s.mirror2, s.medium, cfg.atom, d, q)
                                      : large_distance_atom_force(s.mirror2, s.medium, cfg.atom, d, q);
  }
  if (regime == RegimeSel::small) {
    const auto k = small_kind(kind, cfg.variant);
    if (!k) return std::nullopt;
    return small_distance_force(*k, s, d, q);
  }
  const auto k = large_kind(kind, cfg.variant);
  if (!k) return std::nullopt;
  return large_distance_force(*k, s, d, q);
}

int direction(const RunConfig& cfg, ForceSel kind, double d) {
  switch (kind) {
    case ForceSel::interface:
      return 0;
    case ForceSel::medium:
    case ForceSel::atom:
    case ForceSel::atom_vacuum:
      return 1;
    default:
      return nearest_mirror_direction(at_distance(cfg, d));
  }
}

int sign_of(double v) { return v > 0.0 ? 1 : v < 0.0 ? -1 : 0; }

std::vector<Row> rows_at(const RunConfig& cfg, const std::vector<ForceSel>& forces,
                         ModeSel modes, RegimeSel regimes, double d) {
  const units::Reference ref = units::reference(cfg.omega_ref);
  std::vector<Row> out;
  for (ForceSel kind : forces) {
    for (ModeSel mode : modes_of(modes)) {
      for (RegimeSel regime : regimes_of(regimes)) {
        Row row;
        row.d = d;
        row.kind = kind;
        row.mode = mode;
        row.regime = regime;
        row.unit = atom_kind(kind) ? "N" : "Pa";
        try {
          const auto r = compute(cfg, kind, mode, regime, d);
          if (!r) {
            spdlog::debug("d={} {} {} {}: not defined, skipped", d, to_string(kind),
                          mode_name(mode), regime_name(regime));
            continue;
          }
          row.value = r->value;
          row.error_estimate = r->error_estimate;
          row.converged = r->converged;
          if (!r->converged) {
            spdlog::warn("d={} {}: quadrature did not converge (error {:.3g})", d,
                         to_string(kind), r->error_estimate);
          }
        } catch (const std::invalid_argument& e) {
          spdlog::warn("d={} {} {}: {}", d, to_string(kind), regime_name(regime), e.what());
          row.value = kNaN;
          row.error_estimate = kNaN;
          row.converged = false;
          row.note = e.what();
        }
        if (cfg.si_output) {
          row.value_si = row.value * (atom_kind(kind) ? ref.atom_force() : ref.pressure());
        }
        row.sign_toward_nearest_mirror = sign_of(row.value) * direction(cfg, kind, d);
        out.push_back(std::move(row));
      }
    }
  }
  return out;
}

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{:.12e}", v);
}

void header_line(std::ostream& out, const std::optional<std::string>& timestamp) {
  if (timestamp) out << "# generated " << *timestamp << '\n';
}

}  // namespace

std::vector<Row> run_sweep(const RunConfig& cfg, const RunOptions& opt) {
  const std::vector<ForceSel> forces = opt.forces.value_or(cfg.forces);
  for (ForceSel f : forces) {
    const bool ok = cfg.is_cavity() ? f != ForceSel::interface : f == ForceSel::interface;
    if (!ok) {
      throw ConfigError(cfg.path, 0, "force",
                        std::string(to_string(f)) + " does not apply to this scene");
    }
  }
  const ModeSel mode = opt.mode.value_or(cfg.mode);
  const RegimeSel regime = opt.regime.value_or(cfg.regime);
  const auto grid = cfg.sweep.grid();
  std::vector<std::vector<Row>> per_d(grid.size());
  parallel_for(grid.size(), opt.jobs, [&](std::size_t i) {
    per_d[i] = rows_at(cfg, forces, mode, regime, grid[i]);
    spdlog::info("d={} done ({} rows)", grid[i], per_d[i].size());
  });
  std::vector<Row> rows;
  for (auto& v : per_d) {
    for (auto& r : v) rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<CompareRow> compare_modes(const RunConfig& cfg, int jobs) {
  if (!cfg.is_cavity()) {
    throw ConfigError(cfg.path, 0, "scene.type", "compare needs a cavity scene");
  }
  const auto grid = cfg.sweep.grid();
  std::vector<CompareRow> rows(grid.size());
  parallel_for(grid.size(), jobs, [&](std::size_t i) {
    const CavityScene s = at_distance(cfg, grid[i]);
    rows[i].d = grid[i];
    rows[i].screened = screened_force(s, cfg.quadrature);
    rows[i].assisted = assisted_force(s, cfg.quadrature);
    rows[i].minkowski = minkowski_slab_force(s, cfg.quadrature);
  });
  return rows;
}

std::vector<RegimeTable> regime_tables(const RunConfig& cfg, int jobs) {
  if (!cfg.is_cavity()) {
    throw ConfigError(cfg.path, 0, "scene.type", "regimes needs a cavity scene");
  }
  std::vector<ForceSel> kinds;
  for (ForceSel f : cfg.forces) {
    if (f == ForceSel::screened || f == ForceSel::assisted || f == ForceSel::medium) {
      kinds.push_back(f);
    }
  }
  if (kinds.empty()) {
    throw ConfigError(cfg.path, 0, "computation.forces",
                      "regimes supports screened, assisted and medium");
  }
  const auto grid = cfg.sweep.grid();
  std::vector<RegimeTable> tables(kinds.size());
  parallel_for(kinds.size(), jobs, [&](std::size_t i) {
    const ReportKind rk = kinds[i] == ForceSel::screened   ? ReportKind::screened
                          : kinds[i] == ForceSel::assisted ? ReportKind::assisted
                                                           : ReportKind::medium;
    tables[i].kind = kinds[i];
    tables[i].rows = regime_report(rk, std::get<CavityScene>(cfg.scene), grid, cfg.quadrature);
  });
  return tables;
}

void write_csv(std::ostream& out, const std::vector<Row>& rows,
               const std::optional<std::string>& timestamp) {
  header_line(out, timestamp);
  out << "d,kind,mode,regime,value,value_si,error_estimate,converged,sign_toward_nearest_mirror\n";
  for (const Row& r : rows) {
    out << num(r.d) << ',' << to_string(r.kind) << ',' << mode_name(r.mode) << ','
        << regime_name(r.regime) << ',' << num(r.value) << ','
        << (r.value_si ? num(*r.value_si) : std::string()) << ',' << num(r.error_estimate)
        << ',' << (r.converged ? "true" : "false") << ',' << r.sign_toward_nearest_mirror
        << '\n';
  }
}

void write_compare_csv(std::ostream& out, const std::vector<CompareRow>& rows,
                       const std::optional<std::string>& timestamp) {
  header_line(out, timestamp);
  out << "d,lorentz_screened,lorentz_assisted,lorentz_total,minkowski,"
         "ratio_assisted_screened,ratio_screened_minkowski,converged\n";
  for (const CompareRow& r : rows) {
    const double total = r.screened.value + r.assisted.value;
    const bool ok = r.screened.converged && r.assisted.converged && r.minkowski.converged;
    out << num(r.d) << ',' << num(r.screened.value) << ',' << num(r.assisted.value) << ','
        << num(total) << ',' << num(r.minkowski.value) << ','
        << num(r.assisted.value / r.screened.value) << ','
        << num(r.screened.value / r.minkowski.value) << ',' << (ok ? "true" : "false") << '\n';
  }
}

void write_regimes_csv(std::ostream& out, const std::vector<RegimeTable>& tables,
                       const std::optional<std::string>& timestamp) {
  header_line(out, timestamp);
  out << "d,kind,label,full,small,large,slope_full,slope_small,slope_large,converged\n";
  for (const auto& t : tables) {
    for (const RegimeRow& r : t.rows) {
      out << num(r.d) << ',' << to_string(t.kind) << ',' << to_string(r.label) << ','
          << num(r.full.value) << ',' << (r.small ? num(r.small->value) : std::string()) << ','
          << (r.large ? num(r.large->value) : std::string()) << ',' << num(r.slope_full) << ','
          << num(r.slope_small) << ',' << num(r.slope_large) << ','
          << (r.full.converged ? "true" : "false") << '\n';
    }
  }
}

std::string to_json(const std::vector<Row>& rows) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const Row& r : rows) {
    nlohmann::ordered_json j;
    j["d"] = r.d;
    j["kind"] = to_string(r.kind);
    j["mode"] = mode_name(r.mode);
    j["regime"] = regime_name(r.regime);
    j["value"] = r.value;
    j["value_si"] = r.value_si ? nlohmann::ordered_json(*r.value_si) : nlohmann::ordered_json();
    j["unit"] = r.unit;
    j["error_estimate"] = r.error_estimate;
    j["converged"] = r.converged;
    j["sign_toward_nearest_mirror"] = r.sign_toward_nearest_mirror;
    if (!r.note.empty()) j["note"] = r.note;
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

std::string utc_timestamp() {
  return fmt::format("{:%Y-%m-%dT%H:%M:%SZ}",
                     fmt::gmtime(std::chrono::system_clock::to_time_t(std::chrono::system_clock::now())));
}

}  // namespace vfl::cli

#include "config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <sstream>

namespace vfl::cli {

ConfigError::ConfigError(std::string file, int line, std::string key, std::string message)
    : std::runtime_error(file + ":" + std::to_string(line) + ": " + key + ": " + message),
      key_(std::move(key)),
      line_(line) {}

std::string_view to_string(ForceSel f) noexcept {
  switch (f) {
    case ForceSel::slab:
      return "slab";
    case ForceSel::screened:
      return "screened";
    case ForceSel::assisted:
      return "assisted";
    case ForceSel::medium:
      return "medium";
    case ForceSel::atom:
      return "atom";
    case ForceSel::atom_vacuum:
      return "atom-vacuum";
    case ForceSel::interface:
      return "interface";
  }
  return "unknown";
}

std::optional<ForceSel> parse_force(std::string_view s) noexcept {
  for (ForceSel f : {ForceSel::slab, ForceSel::screened, ForceSel::assisted, ForceSel::medium,
                     ForceSel::atom, ForceSel::atom_vacuum, ForceSel::interface}) {
    if (to_string(f) == s) return f;
  }
  return std::nullopt;
}

std::optional<ModeSel> parse_mode(std::string_view s) noexcept {
  if (s == "lorentz") return ModeSel::lorentz;
  if (s == "minkowski") return ModeSel::minkowski;
  if (s == "both") return ModeSel::both;
  return std::nullopt;
}

std::optional<RegimeSel> parse_regime(std::string_view s) noexcept {
  if (s == "full") return RegimeSel::full;
  if (s == "small") return RegimeSel::small;
  if (s == "large") return RegimeSel::large;
  if (s == "all") return RegimeSel::all;
  return std::nullopt;
}

std::vector<double> Sweep::grid() const {
  std::vector<double> out(static_cast<std::size_t>(points));
  if (points == 1) {
    out[0] = d_min;
    return out;
  }
  const double n = points - 1;
  for (int i = 0; i < points; ++i) {
    const double t = i / n;
    out[static_cast<std::size_t>(i)] =
        spacing == Spacing::log ? d_min * std::pow(d_max / d_min, t) : d_min + (d_max - d_min) * t;
  }
  out.back() = d_max;
  return out;
}

namespace {

class Reader {
 public:
  explicit Reader(std::string file) : file_(std::move(file)) {}

  [[noreturn]] void fail(const YAML::Node& at, const std::string& key,
                         const std::string& message) const {
    const int line = at.IsDefined() ? at.Mark().line + 1 : 0;
    throw ConfigError(file_, line, key, message);
  }

  void expect_map(const YAML::Node& n, const std::string& key) const {
    if (!n.IsMap()) fail(n, key, "expected a mapping");
  }

  void allow(const YAML::Node& n, const std::string& key,
             std::initializer_list<std::string_view> keys) const {
    expect_map(n, key);
    for (const auto& kv : n) {
      const auto name = kv.first.as<std::string>();
      if (std::find(keys.begin(), keys.end(), name) == keys.end()) {
        fail(kv.first, join(key, name), "unknown key");
      }
    }
  }

  YAML::Node require(const YAML::Node& parent, const std::string& key,
                     const std::string& name) const {
    const YAML::Node n = parent[name];
    if (!n) fail(parent, join(key, name), "missing required key");
    return n;
  }

  double number(const YAML::Node& n, const std::string& key) const {
    if (!n.IsScalar()) fail(n, key, "expected a number");
    const std::string s = n.Scalar();
    if (s == "inf" || s == ".inf" || s == "infinity") return std::numeric_limits<double>::infinity();
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used != s.size()) fail(n, key, "expected a number, got '" + s + "'");
      return v;
    } catch (const std::logic_error&) {
      fail(n, key, "expected a number, got '" + s + "'");
    }
  }

  double number_or(const YAML::Node& parent, const std::string& key, const std::string& name,
                   double fallback) const {
    const YAML::Node n = parent[name];
    return n ? number(n, join(key, name)) : fallback;
  }

  std::string text(const YAML::Node& n, const std::string& key) const {
    if (!n.IsScalar()) fail(n, key, "expected a string");
    return n.Scalar();
  }

  static std::string join(const std::string& a, const std::string& b) {
    return a.empty() ? b : a + "." + b;
  }

  const std::string& file() const noexcept { return file_; }

 private:
  std::string file_;
};

std::vector<Oscillator> oscillators(const Reader& r, const YAML::Node& n, const std::string& key) {
  std::vector<Oscillator> out;
  if (!n) return out;
  if (!n.IsSequence()) r.fail(n, key, "expected a list of oscillators");
  for (std::size_t i = 0; i < n.size(); ++i) {
    const std::string k = key + "[" + std::to_string(i) + "]";
    r.allow(n[i], k, {"resonance", "strength", "damping"});
    out.push_back({r.number(r.require(n[i], k, "resonance"), k + ".resonance"),
                   r.number(r.require(n[i], k, "strength"), k + ".strength"),
                   r.number_or(n[i], k, "damping", 0.0)});
  }
  return out;
}

DispersionModel material(const Reader& r, const YAML::Node& n, const std::string& key) {
  const std::string model = r.text(r.require(n, key, "model"), key + ".model");
  DispersionModel m;
  if (model == "constant") {
    r.allow(n, key, {"model", "epsilon", "mu"});
    m = ConstantMedium{r.number_or(n, key, "epsilon", 1.0), r.number_or(n, key, "mu", 1.0)};
  } else if (model == "drude") {
    r.allow(n, key, {"model", "plasma", "damping", "mu"});
    m = DrudeMetal{r.number(r.require(n, key, "plasma"), key + ".plasma"),
                   r.number_or(n, key, "damping", 0.0), oscillators(r, n["mu"], key + ".mu")};
  } else if (model == "lorentz") {
    r.allow(n, key, {"model", "epsilon", "mu"});
    m = LorentzMedium{oscillators(r, n["epsilon"], key + ".epsilon"),
                      oscillators(r, n["mu"], key + ".mu")};
  } else if (model == "perfect") {
    r.allow(n, key, {"model", "kind"});
    const std::string kind = n["kind"] ? r.text(n["kind"], key + ".kind") : "conducting";
    if (kind == "conducting") {
      m = PerfectMirror{MirrorKind::conducting};
    } else if (kind == "permeable") {
      m = PerfectMirror{MirrorKind::permeable};
    } else {
      r.fail(n["kind"], key + ".kind", "expected conducting or permeable");
    }
  } else {
    r.fail(n["model"], key + ".model", "unknown model '" + model + "'");
  }
  try {
    validate(m);
  } catch (const MaterialError& e) {
    r.fail(n, key, e.what());
  }
  return m;
}

struct Context {
  const Reader& r;
  const std::map<std::string, DispersionModel>& materials;

  DispersionModel lookup(const YAML::Node& n, const std::string& key) const {
    const std::string name = r.text(n, key);
    if (name == "vacuum") return vacuum();
    const auto it = materials.find(name);
    if (it == materials.end()) r.fail(n, key, "undefined material '" + name + "'");
    return it->second;
  }

  Mirror mirror(const YAML::Node& n, const std::string& key) const {
    Mirror m;
    if (n.IsScalar()) {
      m.layers.push_back({lookup(n, key), semi_infinite});
      return m;
    }
    if (!n.IsSequence() || n.size() == 0) r.fail(n, key, "expected a material or a list of layers");
    for (std::size_t i = 0; i < n.size(); ++i) {
      const std::string k = key + "[" + std::to_string(i) + "]";
      r.allow(n[i], k, {"material", "thickness"});
      const bool last = i + 1 == n.size();
      const double t = r.number_or(n[i], k, "thickness", last ? semi_infinite : -1.0);
      if (!last && !(t >= 0.0)) r.fail(n[i], k + ".thickness", "interior layers need a thickness");
      m.layers.push_back({lookup(r.require(n[i], k, "material"), k + ".material"), t});
    }
    return m;
  }
};

CavityScene cavity(const Context& c, const YAML::Node& n) {
  const Reader& r = c.r;
  r.allow(n, "scene", {"type", "medium", "mirror1", "gap1", "slab", "mirror2"});
  CavityScene s;
  if (n["medium"]) s.medium = c.lookup(n["medium"], "scene.medium");
  if (n["mirror1"]) {
    s.mirror1 = c.mirror(n["mirror1"], "scene.mirror1");
    s.gap1 = r.number(r.require(n, "scene", "gap1"), "scene.gap1");
  } else if (n["gap1"]) {
    s.gap1 = r.number(n["gap1"], "scene.gap1");
  }
  const YAML::Node slab = r.require(n, "scene", "slab");
  r.allow(slab, "scene.slab", {"material", "thickness"});
  s.slab.material = c.lookup(r.require(slab, "scene.slab", "material"), "scene.slab.material");
  s.slab.thickness = r.number(r.require(slab, "scene.slab", "thickness"), "scene.slab.thickness");
  s.mirror2 = c.mirror(r.require(n, "scene", "mirror2"), "scene.mirror2");
  s.gap2 = 1.0;
  const auto v = validate_scene(s);
  if (!v.ok()) {
    const auto& d = v.diagnostics.front();
    r.fail(n, "scene." + d.field, d.message);
  }
  return s;
}

InterfaceScene interface(const Context& c, const YAML::Node& n) {
  c.r.allow(n, "scene", {"type", "left", "right"});
  InterfaceScene s;
  s.left = c.lookup(c.r.require(n, "scene", "left"), "scene.left");
  s.right = c.lookup(c.r.require(n, "scene", "right"), "scene.right");
  return s;
}

Polarizability polarizability(const Reader& r, const YAML::Node& n, const std::string& key) {
  Polarizability p;
  if (!n) return p;
  r.allow(n, key, {"static", "resonance"});
  p.static_value = r.number(r.require(n, key, "static"), key + ".static");
  p.resonance = r.number_or(n, key, "resonance", semi_infinite);
  return p;
}

}  // namespace

RunConfig parse_config(const std::string& text, const std::string& name) {
  const Reader r(name);
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError(name, e.mark.line + 1, "<syntax>", e.msg);
  }
  if (!root.IsMap()) throw ConfigError(name, 1, "<root>", "expected a mapping");
  r.allow(root, "", {"units", "materials", "scene", "atom", "sweep", "computation", "quadrature"});

  RunConfig cfg;
  cfg.path = name;

  if (const YAML::Node u = root["units"]) {
    r.allow(u, "units", {"omega_ref", "output"});
    cfg.omega_ref = r.number_or(u, "units", "omega_ref", 1.0);
    if (!(cfg.omega_ref > 0.0) || !std::isfinite(cfg.omega_ref)) {
      r.fail(u["omega_ref"], "units.omega_ref", "must be positive");
    }
    if (u["output"]) {
      const std::string o = r.text(u["output"], "units.output");
      if (o == "si" || o == "pa") {
        cfg.si_output = true;
      } else if (o == "natural") {
        cfg.si_output = false;
      } else {
        r.fail(u["output"], "units.output", "expected si, pa or natural");
      }
    }
  }

  if (const YAML::Node m = root["materials"]) {
    r.expect_map(m, "materials");
    for (const auto& kv : m) {
      const std::string key = "materials." + kv.first.as<std::string>();
      if (kv.first.as<std::string>() == "vacuum") r.fail(kv.first, key, "'vacuum' is reserved");
      r.expect_map(kv.second, key);
      cfg.materials.emplace(kv.first.as<std::string>(), material(r, kv.second, key));
    }
  }

  const Context ctx{r, cfg.materials};
  const YAML::Node scene = r.require(root, "", "scene");
  r.expect_map(scene, "scene");
  const std::string type = scene["type"] ? r.text(scene["type"], "scene.type") : "cavity";
  if (type == "cavity") {
    cfg.scene = cavity(ctx, scene);
  } else if (type == "interface") {
    cfg.scene = interface(ctx, scene);
  } else {
    r.fail(scene["type"], "scene.type", "expected cavity or interface");
  }

  if (const YAML::Node a = root["atom"]) {
    r.allow(a, "atom", {"electric", "magnetic"});
    cfg.atom.electric = polarizability(r, a["electric"], "atom.electric");
    cfg.atom.magnetic = polarizability(r, a["magnetic"], "atom.magnetic");
    try {
      cfg.atom.validate();
    } catch (const std::invalid_argument& e) {
      r.fail(a, "atom", e.what());
    }
  }

  const YAML::Node sw = r.require(root, "", "sweep");
  r.allow(sw, "sweep", {"d_min", "d_max", "points", "spacing"});
  cfg.sweep.d_min = r.number(r.require(sw, "sweep", "d_min"), "sweep.d_min");
  cfg.sweep.d_max = r.number_or(sw, "sweep", "d_max", cfg.sweep.d_min);
  const double pts = r.number_or(sw, "sweep", "points", 1.0);
  if (!(cfg.sweep.d_min > 0.0) || !std::isfinite(cfg.sweep.d_min)) {
    r.fail(sw["d_min"], "sweep.d_min", "must be positive and finite");
  }
  if (!(cfg.sweep.d_max >= cfg.sweep.d_min) || !std::isfinite(cfg.sweep.d_max)) {
    r.fail(sw["d_max"], "sweep.d_max", "must be finite and >= d_min");
  }
  if (!(pts >= 1.0) || pts != std::floor(pts) || pts > 100000.0) {
    r.fail(sw["points"], "sweep.points", "must be a positive integer");
  }
  cfg.sweep.points = static_cast<int>(pts);
  if (sw["spacing"]) {
    const std::string s = r.text(sw["spacing"], "sweep.spacing");
    if (s == "log") {
      cfg.sweep.spacing = Spacing::log;
    } else if (s == "linear") {
      cfg.sweep.spacing = Spacing::linear;
    } else {
      r.fail(sw["spacing"], "sweep.spacing", "expected log or linear");
    }
  }

  if (const YAML::Node c = root["computation"]) {
    r.allow(c, "computation", {"forces", "mode", "regime", "variant"});
    if (const YAML::Node f = c["forces"]) {
      const auto add = [&](const YAML::Node& n, const std::string& key) {
        const std::string s = r.text(n, key);
        const auto sel = parse_force(s);
        if (!sel) r.fail(n, key, "unknown force kind '" + s + "'");
        cfg.forces.push_back(*sel);
      };
      if (f.IsSequence()) {
        for (std::size_t i = 0; i < f.size(); ++i) {
          add(f[i], "computation.forces[" + std::to_string(i) + "]");
        }
      } else {
        add(f, "computation.forces");
      }
    }
    if (c["mode"]) {
      const auto m = parse_mode(r.text(c["mode"], "computation.mode"));
      if (!m) r.fail(c["mode"], "computation.mode", "expected lorentz, minkowski or both");
      cfg.mode = *m;
    }
    if (c["regime"]) {
      const auto g = parse_regime(r.text(c["regime"], "computation.regime"));
      if (!g) r.fail(c["regime"], "computation.regime", "expected full, small, large or all");
      cfg.regime = *g;
    }
    if (c["variant"]) {
      const std::string v = r.text(c["variant"], "computation.variant");
      if (v == "general") {
        cfg.variant = Variant::general;
      } else if (v == "lifshitz") {
        cfg.variant = Variant::lifshitz;
      } else if (v == "thin") {
        cfg.variant = Variant::thin;
      } else {
        r.fail(c["variant"], "computation.variant", "expected general, lifshitz or thin");
      }
    }
  }
  if (cfg.forces.empty()) {
    cfg.forces.push_back(cfg.is_cavity() ? ForceSel::screened : ForceSel::interface);
  }
  for (ForceSel f : cfg.forces) {
    const bool ok = cfg.is_cavity() ? f != ForceSel::interface : f == ForceSel::interface;
    if (!ok) {
      r.fail(root["computation"], "computation.forces",
             std::string(to_string(f)) + " does not apply to a " + type + " scene");
    }
  }

  if (const YAML::Node q = root["quadrature"]) {
    r.allow(q, "quadrature",
            {"rel_tol_outer", "rel_tol_inner", "abs_tol", "max_subdivisions", "map"});
    auto& s = cfg.quadrature;
    s.rel_tol_outer = r.number_or(q, "quadrature", "rel_tol_outer", s.rel_tol_outer);
    s.rel_tol_inner = r.number_or(q, "quadrature", "rel_tol_inner", s.rel_tol_inner);
    s.abs_tol = r.number_or(q, "quadrature", "abs_tol", s.abs_tol);
    const double ms = r.number_or(q, "quadrature", "max_subdivisions", s.max_subdivisions);
    if (!(s.rel_tol_outer > 0.0) || !(s.rel_tol_inner > 0.0) || !(s.abs_tol >= 0.0)) {
      r.fail(q, "quadrature", "tolerances must be positive");
    }
    if (!(ms >= 1.0) || ms != std::floor(ms) || ms > 1e6) {
      r.fail(q["max_subdivisions"], "quadrature.max_subdivisions", "must be a positive integer");
    }
    s.max_subdivisions = static_cast<int>(ms);
    if (q["map"]) {
      const std::string m = r.text(q["map"], "quadrature.map");
      if (m == "rational") {
        s.map = HalfLineMap::rational;
      } else if (m == "exponential") {
        s.map = HalfLineMap::exponential;
      } else {
        r.fail(q["map"], "quadrature.map", "expected rational or exponential");
      }
    }
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigIoError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw ConfigIoError("error reading config file '" + path + "'");
  return parse_config(ss.str(), path);
}

}  // namespace vfl::cli

#include "shearhom/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "shearhom/errors.hpp"

namespace shearhom {

namespace {

using nlohmann::json;

double number(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw ConfigError(std::string("missing or non-numeric field '") + key + "'");
  }
  return j.at(key).get<double>();
}

Point center_of(const json& s) {
  if (!s.contains("center")) return {0.5, 0.5};
  const auto& c = s.at("center");
  if (!c.is_array() || c.size() != 2) throw ConfigError("'center' must be [x1, x2]");
  return {c[0].get<double>(), c[1].get<double>()};
}

Shape parse_shape(const json& s) {
  const std::string kind = s.value("kind", "");
  if (kind == "matrix") return FullCell{};
  if (kind == "square") return AxisSquare{number(s, "side"), center_of(s)};
  if (kind == "square45") return RotatedSquare45{number(s, "side"), center_of(s)};
  if (kind == "circle") return Circle{number(s, "radius"), center_of(s)};
  if (kind == "annulus") return Annulus{number(s, "inner"), number(s, "outer"), center_of(s)};
  if (kind == "layer") {
    const int n = s.value("normal", 2);
    if (n != 1 && n != 2) throw ConfigError("layer 'normal' must be 1 or 2");
    return Layer{n == 1 ? Axis::x1 : Axis::x2, number(s, "width"), s.value("center", 0.5)};
  }
  throw ConfigError("unknown shape kind '" + kind + "'");
}

SeriesConfig parse_run(const json& r) {
  SeriesConfig c;
  c.j = r.value("j", c.j);
  c.m = r.value("m", c.m);
  if (r.contains("mu0")) {
    const auto& v = r.at("mu0");
    c.mu0 = v.is_number() ? ReferenceModulus::value(v.get<double>()) : parse_mu0(v.get<std::string>());
  }
  if (r.contains("path")) c.path = parse_path(r.at("path").get<std::string>());
  return c;
}

Material role(const Config& c, std::size_t k) {
  if (k >= c.phases.size()) {
    throw ConfigError("sweep template needs at least " + std::to_string(k + 1) + " declared phases");
  }
  return c.phases[k].material;
}

}  // namespace

std::vector<double> SweepSpec::grid() const {
  if (count < 1) throw ConfigError("sweep count must be >= 1");
  if (count == 1) return {f_start};
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i) out[i] = f_start + (f_stop - f_start) * i / (count - 1);
  return out;
}

ReferenceModulus parse_mu0(const std::string& text) {
  if (text == "mid" || text == "midrange") return ReferenceModulus::midrange();
  if (text == "mean") return ReferenceModulus::mean();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || !(v > 0.0)) {
    throw ConfigError("mu0 must be 'mid', 'mean' or a positive modulus in Pa");
  }
  return ReferenceModulus::value(v);
}

ApplyPath parse_path(const std::string& text) {
  if (text == "direct") return ApplyPath::direct;
  if (text == "conv" || text == "convolution") return ApplyPath::convolution;
  throw ConfigError("path must be 'direct' or 'conv'");
}

std::string to_string(const ReferenceModulus& mu0) {
  switch (mu0.kind) {
    case ReferenceModulus::Kind::midrange:
      return "mid";
    case ReferenceModulus::Kind::mean:
      return "mean";
    case ReferenceModulus::Kind::value: {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.12g", mu0.pa);
      return buf;
    }
  }
  return "";
}

std::string to_string(ApplyPath path) { return path == ApplyPath::direct ? "direct" : "conv"; }

Config parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  Config c;
  try {
    if (doc.contains("cell")) {
      c.a1 = number(doc.at("cell"), "a1");
      c.a2 = number(doc.at("cell"), "a2");
    }
    if (!doc.contains("phases") || !doc.at("phases").is_array() || doc.at("phases").empty()) {
      throw ConfigError("'phases' must be a non-empty array");
    }
    int k = 0;
    for (const auto& p : doc.at("phases")) {
      Phase ph;
      ph.material = {number(p, "mu_pa"), number(p, "rho_kgm3")};
      ph.shape = p.contains("shape") ? parse_shape(p.at("shape")) : Shape{FullCell{}};
      ph.name = p.value("name", "phase" + std::to_string(k));
      c.phases.push_back(std::move(ph));
      ++k;
    }
    if (doc.contains("run")) {
      c.series = parse_run(doc.at("run"));
      c.kappa_deg = doc.at("run").value("kappa_deg", 0.0);
    }
    if (doc.contains("sweep")) {
      const auto& s = doc.at("sweep");
      SweepSpec spec;
      spec.shape = s.value("template", spec.shape);
      spec.f_start = s.value("f_start", spec.f_start);
      spec.f_stop = s.value("f_stop", spec.f_stop);
      spec.count = s.value("count", spec.count);
      spec.alpha = s.value("alpha", spec.alpha);
      c.sweep = spec;
    }
    if (doc.contains("converge")) {
      const auto& s = doc.at("converge");
      if (s.contains("j")) c.converge.j = s.at("j").get<std::vector<int>>();
      if (s.contains("m")) c.converge.m = s.at("m").get<std::vector<int>>();
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  c.canonical = doc.dump();
  return c;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

Lattice build_lattice(const Config& config) {
  try {
    return Lattice(config.a1, config.a2, config.phases);
  } catch (const PreconditionError& e) {
    throw ConfigError(e.what());
  }
}

Composition composition(const Config& config, const Lattice& lattice) {
  Composition c;
  const auto f = lattice.filling_fractions();
  for (std::size_t k = 0; k < config.phases.size(); ++k) {
    c.names.push_back(config.phases[k].name);
    c.materials.push_back(config.phases[k].material);
    c.fractions.push_back(f[k]);
  }
  return c;
}

SweepPoint sweep_point(const Config& config, const SweepSpec& spec, double f) {
  if (f < 0.0 || f > 1.0) throw ConfigError("sweep fraction outside [0,1]");
  const Material m0 = role(config, 0);
  const Material m1 = role(config, 1);
  const auto name = [&](std::size_t k) { return config.phases[k].name; };
  const Point mid{0.5, 0.5};

  std::vector<Phase> phases;
  Composition roles;
  const std::string& t = spec.shape;
  if (t == "coated_square" || t == "annulus") {
    const Material m2 = role(config, 2);
    const double a = spec.alpha;
    if (a < 0.0 || a > 1.0) throw ConfigError("alpha must lie in [0,1]");
    roles = {{name(0), name(1), name(2)}, {m0, m1, m2}, {1.0 - f, a * f, (1.0 - a) * f}};
    phases.push_back({m0, FullCell{}, name(0)});
    if (f > 0.0) {
      if (t == "coated_square") {
        phases.push_back({m1, AxisSquare{std::sqrt(f), mid}, name(1)});
        if (a < 1.0) phases.push_back({m2, AxisSquare{std::sqrt((1.0 - a) * f), mid}, name(2)});
      } else {
        if (f > std::numbers::pi / 4.0) throw ConfigError("annulus template needs f <= pi/4");
        const double outer = std::sqrt(f / std::numbers::pi);
        const double inner = std::sqrt((1.0 - a) * f / std::numbers::pi);
        if (inner > 0.0) {
          phases.push_back({m1, Annulus{inner, outer, mid}, name(1)});
          phases.push_back({m2, Circle{inner, mid}, name(2)});
        } else {
          phases.push_back({m1, Circle{outer, mid}, name(1)});
        }
      }
    }
  } else {
    roles = {{name(0), name(1)}, {m0, m1}, {1.0 - f, f}};
    if (t == "square") {
      phases.push_back({m0, FullCell{}, name(0)});
      if (f > 0.0) phases.push_back({m1, AxisSquare{std::sqrt(f), mid}, name(1)});
    } else if (t == "circle") {
      if (f > std::numbers::pi / 4.0) throw ConfigError("circle template needs f <= pi/4");
      phases.push_back({m0, FullCell{}, name(0)});
      if (f > 0.0) phases.push_back({m1, Circle{std::sqrt(f / std::numbers::pi), mid}, name(1)});
    } else if (t == "square45_symmetric") {
      // Beyond f = 1/2 the rotated rods would overlap; the complementary
      // material takes over as rods of area 1 - f.
      if (f <= 0.5) {
        phases.push_back({m0, FullCell{}, name(0)});
        if (f > 0.0) phases.push_back({m1, RotatedSquare45{std::sqrt(f), mid}, name(1)});
      } else {
        phases.push_back({m1, FullCell{}, name(1)});
        if (f < 1.0) phases.push_back({m0, RotatedSquare45{std::sqrt(1.0 - f), mid}, name(0)});
      }
    } else if (t == "layer") {
      phases.push_back({m0, FullCell{}, name(0)});
      if (f > 0.0) phases.push_back({m1, Layer{Axis::x2, f, 0.5}, name(1)});
    } else {
      throw ConfigError("unknown sweep template '" + t + "'");
    }
  }
  return {f, Lattice(config.a1, config.a2, std::move(phases)), std::move(roles)};
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace shearhom

#include "shearhom/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "shearhom/errors.hpp"

namespace shearhom {

namespace {

constexpr double kFractionFloor = 1e-15;
constexpr double kGeomTol = 1e-12;

double wrap(double x) {
  double w = x - std::floor(x);
  return w >= 1.0 ? 0.0 : w;
}

std::string phase_label(const std::vector<Phase>& phases, std::size_t k) {
  std::ostringstream os;
  os << "phase " << k;
  if (!phases[k].name.empty()) os << " (" << phases[k].name << ")";
  return os.str();
}

void validate_dimensions(const Shape& s, const std::string& label) {
  const auto fail = [&](const char* why) {
    throw InvalidGeometry(label + ": " + kind_name(s) + " " + why);
  };
  if (const auto* q = std::get_if<AxisSquare>(&s)) {
    if (!(q->side >= 0.0)) fail("side must be nonnegative");
  } else if (const auto* r = std::get_if<RotatedSquare45>(&s)) {
    if (!(r->side >= 0.0)) fail("side must be nonnegative");
  } else if (const auto* c = std::get_if<Circle>(&s)) {
    if (!(c->radius >= 0.0)) fail("radius must be nonnegative");
  } else if (const auto* a = std::get_if<Annulus>(&s)) {
    if (!(a->inner >= 0.0) || !(a->inner < a->outer)) fail("needs 0 <= inner < outer");
  } else if (const auto* l = std::get_if<Layer>(&s)) {
    if (!(l->width >= 0.0) || l->width > 1.0) fail("width must lie in [0,1]");
  }
  if (area(s) <= 0.0) return;
  const Box b = bounding_box(s);
  if (b.lo.x1 < -kGeomTol || b.lo.x2 < -kGeomTol || b.hi.x1 > 1.0 + kGeomTol ||
      b.hi.x2 > 1.0 + kGeomTol) {
    fail("does not fit inside the unit cell");
  }
}

// Points well inside the shape: a grid over the bounding box plus a ring of
// points hugging the boundary from inside.
std::vector<Point> interior_samples(const Shape& s) {
  constexpr double margin = 1e-9;
  const Box b = bounding_box(s);
  std::vector<Point> pts;
  constexpr int n = 48;
  for (int i = 0; i <= n; ++i) {
    for (int k = 0; k <= n; ++k) {
      const Point p{b.lo.x1 + (b.hi.x1 - b.lo.x1) * (i + 0.37) / (n + 1),
                    b.lo.x2 + (b.hi.x2 - b.lo.x2) * (k + 0.61) / (n + 1)};
      if (contains_strictly(s, p, margin)) pts.push_back(p);
    }
  }
  // Boundary-hugging ring: scan rays from the box center.
  const Point c{0.5 * (b.lo.x1 + b.hi.x1), 0.5 * (b.lo.x2 + b.hi.x2)};
  const double reach = std::hypot(b.hi.x1 - b.lo.x1, b.hi.x2 - b.lo.x2);
  constexpr int rays = 360;
  constexpr int steps = 400;
  for (int r = 0; r < rays; ++r) {
    const double th = 2.0 * std::numbers::pi * (r + 0.5) / rays;
    Point last{};
    bool found = false;
    for (int t = 0; t <= steps; ++t) {
      const double d = reach * t / steps;
      const Point p{c.x1 + d * std::cos(th), c.x2 + d * std::sin(th)};
      if (contains_strictly(s, p, margin)) {
        last = p;
        found = true;
      }
    }
    if (found) pts.push_back(last);
  }
  return pts;
}

}  // namespace

Lattice::Lattice(double a1, double a2, std::vector<Phase> phases)
    : a1_(a1), a2_(a2), phases_(std::move(phases)) {
  if (!(a1_ > 0.0) || !(a2_ > 0.0) || !std::isfinite(a1_) || !std::isfinite(a2_)) {
    throw InvalidGeometry("cell lengths a1, a2 must be positive");
  }
  if (phases_.empty()) throw InvalidGeometry("lattice needs at least one phase");
  if (!std::holds_alternative<FullCell>(phases_[0].shape)) {
    throw InvalidGeometry("phase 0 must be the matrix (shape kind 'matrix')");
  }
  for (std::size_t k = 0; k < phases_.size(); ++k) {
    const Material& m = phases_[k].material;
    if (!(m.mu >= 0.0) || !std::isfinite(m.mu)) {
      throw InvalidGeometry(phase_label(phases_, k) + ": shear modulus must be >= 0");
    }
    if (!(m.rho > 0.0) || !std::isfinite(m.rho)) {
      throw InvalidGeometry(phase_label(phases_, k) + ": density must be > 0");
    }
    if (k > 0 && std::holds_alternative<FullCell>(phases_[k].shape)) {
      throw InvalidGeometry(phase_label(phases_, k) + ": only phase 0 may be 'matrix'");
    }
    validate_dimensions(phases_[k].shape, phase_label(phases_, k));
  }

  underlay_.assign(phases_.size(), 0);
  for (std::size_t k = 1; k < phases_.size(); ++k) {
    const auto below = [&](Point p) {
      for (std::size_t q = k - 1; q >= 1; --q) {
        if (contains(phases_[q].shape, p)) return q;
      }
      return std::size_t{0};
    };
    auto pts = interior_samples(phases_[k].shape);
    if (pts.empty()) {
      const Box b = bounding_box(phases_[k].shape);
      pts.push_back({0.5 * (b.lo.x1 + b.hi.x1), 0.5 * (b.lo.x2 + b.hi.x2)});
    }
    const std::size_t u = below(pts.front());
    for (const Point& p : pts) {
      if (below(p) != u) {
        throw InvalidGeometry(phase_label(phases_, k) +
                              " straddles more than one earlier phase; shapes must be "
                              "nested or disjoint");
      }
    }
    underlay_[k] = u;
  }

  fractions_.assign(phases_.size(), 0.0);
  fractions_[0] = 1.0;
  for (std::size_t k = 1; k < phases_.size(); ++k) {
    const double a = area(phases_[k].shape);
    fractions_[k] += a;
    fractions_[underlay_[k]] -= a;
  }
  for (std::size_t k = 0; k < fractions_.size(); ++k) {
    if (fractions_[k] < -kGeomTol) {
      throw InvalidGeometry(phase_label(phases_, k) + " has negative filling fraction");
    }
    fractions_[k] = std::max(fractions_[k], 0.0);
  }
  if (!(mu_max() > 0.0)) throw InvalidGeometry("at least one phase needs mu > 0");
}

std::size_t Lattice::phase_at(Point p) const {
  const Point w{wrap(p.x1), wrap(p.x2)};
  for (std::size_t k = phases_.size() - 1; k >= 1; --k) {
    if (contains(phases_[k].shape, w)) return k;
  }
  return 0;
}

double Lattice::mu_min() const {
  double v = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < phases_.size(); ++k) {
    if (fractions_[k] > kFractionFloor) v = std::min(v, phases_[k].material.mu);
  }
  return v;
}

double Lattice::mu_max() const {
  double v = 0.0;
  for (std::size_t k = 0; k < phases_.size(); ++k) {
    if (fractions_[k] > kFractionFloor) v = std::max(v, phases_[k].material.mu);
  }
  return v;
}

std::vector<double> Lattice::line_fractions(Axis along, double at) const {
  const double y = wrap(at);
  std::vector<double> f(phases_.size(), 0.0);
  f[0] = 1.0;
  for (std::size_t k = 1; k < phases_.size(); ++k) {
    const double c = chord(phases_[k].shape, along, y);
    f[k] += c;
    f[underlay_[k]] -= c;
  }
  for (double& v : f) v = std::max(v, 0.0);
  return f;
}

std::vector<double> Lattice::breakpoints(Axis along) const {
  std::vector<double> out;
  for (std::size_t k = 1; k < phases_.size(); ++k) {
    const auto b = chord_breakpoints(phases_[k].shape, along);
    out.insert(out.end(), b.begin(), b.end());
  }
  return out;
}

bool Lattice::fourfold_symmetric() const {
  if (std::abs(a1_ - a2_) > 1e-12 * std::max(a1_, a2_)) return false;
  constexpr int n = 97;
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const Point p{(i + 0.3183) / n, (k + 0.5772) / n};
      const Point q{1.0 - p.x2, p.x1};
      const auto& a = phases_[phase_at(p)].material;
      const auto& b = phases_[phase_at(q)].material;
      if (a.mu != b.mu || a.rho != b.rho) return false;
    }
  }
  return true;
}

SampledField::SampledField(std::size_t m, double a1, double a2, std::vector<double> mu,
                           std::vector<double> rho)
    : m_(m), a1_(a1), a2_(a2), mu_(std::move(mu)), rho_(std::move(rho)) {
  if (m_ < 2) throw PreconditionError("sampled field needs at least 2 samples per axis");
  if (mu_.size() != m_ * m_ || rho_.size() != m_ * m_) {
    throw PreconditionError("sampled field arrays must hold M*M values");
  }
  if (!(a1_ > 0.0) || !(a2_ > 0.0)) throw PreconditionError("cell lengths must be positive");
  for (std::size_t i = 0; i < mu_.size(); ++i) {
    if (!(mu_[i] >= 0.0) || !(rho_[i] > 0.0) || !std::isfinite(mu_[i]) ||
        !std::isfinite(rho_[i])) {
      throw PreconditionError("sampled field needs mu >= 0 and rho > 0 everywhere");
    }
  }
}

SampledField sample(const Lattice& lattice, std::size_t m) {
  std::vector<double> mu(m * m);
  std::vector<double> rho(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = 0; k < m; ++k) {
      const auto& mat =
          lattice.phases()[lattice.phase_at({SampledField::node(i, m), SampledField::node(k, m)})]
              .material;
      mu[i * m + k] = mat.mu;
      rho[i * m + k] = mat.rho;
    }
  }
  return SampledField(m, lattice.a1(), lattice.a2(), std::move(mu), std::move(rho));
}

SampledField sample(std::size_t m, double a1, double a2,
                    const std::function<double(Point)>& mu,
                    const std::function<double(Point)>& rho) {
  std::vector<double> mv(m * m);
  std::vector<double> rv(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = 0; k < m; ++k) {
      const Point p{SampledField::node(i, m), SampledField::node(k, m)};
      mv[i * m + k] = mu(p);
      rv[i * m + k] = rho(p);
    }
  }
  return SampledField(m, a1, a2, std::move(mv), std::move(rv));
}

Moments cell_moments(const Lattice& lattice) {
  Moments out;
  const auto f = lattice.filling_fractions();
  for (std::size_t k = 0; k < lattice.size(); ++k) {
    const Material& m = lattice.phases()[k].material;
    out.mean_mu += m.mu * f[k];
    out.mean_mu2 += m.mu * m.mu * f[k];
    out.mean_rho += m.rho * f[k];
  }
  out.mu_min = lattice.mu_min();
  out.mu_max = lattice.mu_max();
  return out;
}

Moments cell_moments(const SampledField& field) {
  Moments out;
  const auto mu = field.mu_values();
  const auto rho = field.rho_values();
  out.mu_min = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < mu.size(); ++i) {
    out.mean_mu += mu[i];
    out.mean_mu2 += mu[i] * mu[i];
    out.mean_rho += rho[i];
    out.mu_min = std::min(out.mu_min, mu[i]);
    out.mu_max = std::max(out.mu_max, mu[i]);
  }
  const double n = static_cast<double>(mu.size());
  out.mean_mu /= n;
  out.mean_mu2 /= n;
  out.mean_rho /= n;
  return out;
}

double line_average(const Lattice& lattice, Axis along, double at, LineKind kind) {
  const auto f = lattice.line_fractions(along, at);
  double sum = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) {
    const double mu = lattice.phases()[k].material.mu;
    if (kind == LineKind::mu) {
      sum += mu * f[k];
    } else if (f[k] > kFractionFloor) {
      if (mu == 0.0) throw ZeroModulusLine("harmonic line average crosses a zero-modulus chord");
      sum += f[k] / mu;
    }
  }
  return kind == LineKind::mu ? sum : 1.0 / sum;
}

double line_average(const SampledField& field, Axis along, double at, LineKind kind) {
  const std::size_t m = field.m();
  const double y = wrap(at);
  const std::size_t row = std::min(m - 1, static_cast<std::size_t>(std::floor(y * m)));
  double sum = 0.0;
  for (std::size_t t = 0; t < m; ++t) {
    const double mu = along == Axis::x1 ? field.mu(t, row) : field.mu(row, t);
    if (kind == LineKind::mu) {
      sum += mu;
    } else {
      if (mu == 0.0) throw ZeroModulusLine("harmonic line average crosses a zero-modulus sample");
      sum += 1.0 / mu;
    }
  }
  sum /= static_cast<double>(m);
  return kind == LineKind::mu ? sum : 1.0 / sum;
}

double integrate_line_average(const Lattice& lattice, Axis along, LineKind kind,
                              QuadratureRule rule) {
  const auto cuts = lattice.breakpoints(along);
  return integrate_unit([&](double y) { return line_average(lattice, along, y, kind); }, cuts,
                        rule);
}

}  // namespace shearhom

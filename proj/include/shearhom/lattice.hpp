#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "shearhom/quadrature.hpp"
#include "shearhom/shape.hpp"

namespace shearhom {

/// Isotropic elastic constants of one constituent, SI units.
struct Material {
  double mu = 0.0;   ///< shear modulus, Pa
  double rho = 0.0;  ///< mass density, kg/m^3
};

struct Phase {
  Material material;
  Shape shape;
  std::string name;
};

/// Cell averages used by every closed-form estimate.
struct Moments {
  double mean_mu = 0.0;
  double mean_mu2 = 0.0;
  double mean_rho = 0.0;
  double mu_min = 0.0;
  double mu_max = 0.0;

  double variance() const { return mean_mu2 - mean_mu * mean_mu; }
};

enum class LineKind { mu, inv_mu };

/// Rectangular periodic cell built from phases in painter's order.
///
/// Phase 0 is the matrix and must use `FullCell`. Each later shape overrides
/// whatever lies beneath it. Overlaps are restricted so that every later
/// shape sits on top of exactly one earlier phase (its underlay): shapes are
/// either nested or disjoint. That restriction is what makes exact filling
/// fractions, Fourier coefficients and chord lengths available in closed form.
class Lattice {
 public:
  Lattice(double a1, double a2, std::vector<Phase> phases);

  double a1() const { return a1_; }
  double a2() const { return a2_; }
  std::span<const Phase> phases() const { return phases_; }
  std::size_t size() const { return phases_.size(); }

  /// Phase index at a point; the point is reduced modulo the cell first.
  std::size_t phase_at(Point p) const;

  /// Exact area fractions, one per phase.
  std::span<const double> filling_fractions() const { return fractions_; }

  /// Index of the phase that shape `k` is painted over (k >= 1).
  std::size_t underlay(std::size_t k) const { return underlay_[k]; }

  /// Extremes of mu over phases with nonzero filling fraction.
  double mu_min() const;
  double mu_max() const;

  /// Visible fraction of each phase on the line where `along` varies and the
  /// other coordinate equals `at`.
  std::vector<double> line_fractions(Axis along, double at) const;

  /// Values of the fixed coordinate where line fractions are non-smooth.
  std::vector<double> breakpoints(Axis along) const;

  /// True when the cell is square and the phase layout is invariant under a
  /// quarter turn about the cell center, checked on a sample grid.
  bool fourfold_symmetric() const;

 private:
  double a1_;
  double a2_;
  std::vector<Phase> phases_;
  std::vector<std::size_t> underlay_;
  std::vector<double> fractions_;
};

/// Lattice property samples on an M x M grid of cell midpoints,
/// ς = ((i1 + 1/2)/M, (i2 + 1/2)/M), stored row-major with i1 outermost.
class SampledField {
 public:
  SampledField(std::size_t m, double a1, double a2, std::vector<double> mu,
               std::vector<double> rho);

  std::size_t m() const { return m_; }
  double a1() const { return a1_; }
  double a2() const { return a2_; }
  double mu(std::size_t i1, std::size_t i2) const { return mu_[i1 * m_ + i2]; }
  double rho(std::size_t i1, std::size_t i2) const { return rho_[i1 * m_ + i2]; }
  std::span<const double> mu_values() const { return mu_; }
  std::span<const double> rho_values() const { return rho_; }
  static double node(std::size_t i, std::size_t m) { return (i + 0.5) / static_cast<double>(m); }

 private:
  std::size_t m_;
  double a1_;
  double a2_;
  std::vector<double> mu_;
  std::vector<double> rho_;
};

SampledField sample(const Lattice& lattice, std::size_t m);

/// Samples arbitrary profiles mu(ς), rho(ς) on the midpoint grid.
SampledField sample(std::size_t m, double a1, double a2,
                    const std::function<double(Point)>& mu,
                    const std::function<double(Point)>& rho);

Moments cell_moments(const Lattice& lattice);
Moments cell_moments(const SampledField& field);

/// Exact 1D average of mu or 1/mu along a line (the line on which `along`
/// varies, with the other coordinate fixed at `at`). For `inv_mu` the line
/// mean of 1/mu is formed and returned inverted, i.e. the harmonic mean in Pa;
/// a zero-modulus chord of positive length throws ZeroModulusLine.
double line_average(const Lattice& lattice, Axis along, double at, LineKind kind);

/// Same for sampled fields: the mean over the row of samples containing `at`.
double line_average(const SampledField& field, Axis along, double at, LineKind kind);

/// Cell integral of line_average over the fixed coordinate, using
/// interface-aligned panels. Equals the cell mean for kind == mu.
double integrate_line_average(const Lattice& lattice, Axis along, LineKind kind,
                              QuadratureRule rule = {});

}  // namespace shearhom

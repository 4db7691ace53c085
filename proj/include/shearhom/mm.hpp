#pragma once

#include <span>

#include "shearhom/lattice.hpp"
#include "shearhom/pwe.hpp"

namespace shearhom {

/// c²(κ) = (along_x1·κ1² + along_x2·κ2²)/<rho>; both coefficients in Pa.
struct QuadraticCoefficients {
  double along_x1 = 0.0;
  double along_x2 = 0.0;

  double c2(Direction kappa, double mean_rho) const {
    return (along_x1 * kappa.k1() * kappa.k1() + along_x2 * kappa.k2() * kappa.k2()) / mean_rho;
  }
};

/// Which coordinate the inner line average runs along.
enum class SweepOrder { x2_first, x1_first };

/// Monodromy-matrix coefficients for one ordering of the line averages.
///
/// x2_first: A1 = <<mu>_x2^-1>_x1^-1, A2 = <<mu^-1>_x2^-1>_x1.
/// x1_first is the same with the axes exchanged. Harmonic line means over a
/// zero-modulus chord are taken as their limit 0.
QuadraticCoefficients mm_directional(const Lattice& lattice, SweepOrder order,
                                     QuadratureRule rule = {});
QuadraticCoefficients mm_directional(const SampledField& field, SweepOrder order);

/// Per-axis geometric means of the two orderings.
QuadraticCoefficients mm_geometric(const Lattice& lattice, QuadratureRule rule = {});
QuadraticCoefficients mm_geometric(const SampledField& field);

struct MMReport {
  QuadraticCoefficients x2_first;
  QuadraticCoefficients x1_first;
  QuadraticCoefficients averaged;   ///< arithmetic mean of the two orderings
  QuadraticCoefficients geometric;  ///< geometric mean of the two orderings
  double mean_rho = 0.0;
  /// Square-lattice multiphase form from the x1 line fractions,
  /// (<(Σχ_J/mu_J)^-1> + <(Σχ_J mu_J)^-1>^-1)/(2<rho>).
  double c2_line_fractions = 0.0;
  /// |averaged(128 panels) - averaged(64 panels)|, largest of the two axes.
  double quadrature_error = 0.0;
  bool fourfold = false;

  double c_mm(Direction kappa) const;
  double c_mmtilde(Direction kappa) const;
};

MMReport mm_estimate(const Lattice& lattice, QuadratureRule rule = {});
MMReport mm_estimate(const SampledField& field);

struct LaminaPhase {
  Material material;
  double fraction = 0.0;
};

/// Exact speed squared of a laminate stacked along `normal`:
/// (<mu> κ_t² + <mu^-1>^-1 κ_n²)/<rho>, t the in-plane coordinate.
double laminate_exact(std::span<const LaminaPhase> phases, Axis normal, Direction kappa);

}  // namespace shearhom

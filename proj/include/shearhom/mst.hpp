#pragma once

#include <span>

#include "shearhom/lattice.hpp"

namespace shearhom {

/// Two-phase multiple-scattering estimate of c², matrix first:
/// mu_m/<rho> · (mu_m + mu_i - (mu_m - mu_i) f)/(mu_m + mu_i + (mu_m - mu_i) f).
/// The conjugate estimate is obtained by swapping the roles.
double mst_two_phase(const Material& matrix, const Material& inclusion, double f_inclusion,
                     double mean_rho);

struct InclusionFraction {
  Material material;
  double fraction = 0.0;
};

/// Kuster–Toksöz: mu_1/<rho> · (1 - S)/(1 + S), S = Σ f_J (mu_1 - mu_J)/(mu_1 + mu_J).
/// Throws InvalidRegime when 1 + S <= 0.
double mst_kuster_toksoz(const Material& matrix, std::span<const InclusionFraction> inclusions,
                         double mean_rho);

enum class DualityEstimator { mst, pwe, mm, mmtilde };

/// mu_eff(mu1, mu2) · mu_eff(mu2, mu1) - mu1 mu2 for a two-phase estimator at
/// fixed inclusion fraction f (phase 2 is the inclusion). The MM estimators
/// use a centred axis-aligned square inclusion of side sqrt(f).
double keller_residual(DualityEstimator estimator, double mu1, double mu2, double f);

/// Effective modulus of the two-phase estimator, Pa.
double two_phase_mu_eff(DualityEstimator estimator, double mu1, double mu2, double f);

}  // namespace shearhom

#pragma once

#include <cstddef>
#include <cstdint>

#include "shearhom/fourier.hpp"
#include "shearhom/lattice.hpp"

namespace shearhom {

/// Θ = 1 - <mu>/mu0 + Σ_{g≠0}|mu_hat(g)|/mu0 over the whole table.
double theta(const FourierTable& table, double mu0);

struct SufficientCondition {
  bool met = false;
  double margin = 0.0;  ///< <mu> - Σ_{g≠0}|mu_hat|, Pa
};

SufficientCondition sufficient_condition(const FourierTable& table);

/// <mu>² Θ^(m+1) / (<mu> - l1). Throws PreconditionError unless l1 < <mu>.
double remainder_bound(double mean, double l1_offdiag, double theta, int m);

struct ConvergenceReport {
  double l1_offdiag = 0.0;
  double mean = 0.0;
  double mu0 = 0.0;
  double theta = 0.0;
  bool condition_met = false;
  /// mu0 < <mu>: the bound on Θ was derived for mu0 >= <mu>.
  bool mu0_below_mean = false;
  /// Largest |n_i| included in the l1 sum.
  int table_extent = 0;

  double remainder_bound(int m) const;
};

ConvergenceReport convergence_report(const FourierTable& table, double mu0);

/// ψ̂_n(k) = 4^-n C(2n, n+k/2) for even k with |k| <= 2n, else 0: the
/// coefficients of cos^(2n)(x) = Σ ψ̂_n(k) e^{ikx}.
double psi_hat(int n, int k);

/// mu(x) = baseline - A cos^(2 n1)(x1) cos^(2 n2)(x2) on the square cell of
/// side 2π, where the reciprocal vectors g = (k1, k2) are plain integers.
class PeakProfile {
 public:
  /// Throws PreconditionError unless baseline > A > 0 and n1, n2 >= 1.
  PeakProfile(int n1, int n2, double baseline, double amplitude);

  int n1() const { return n1_; }
  int n2() const { return n2_; }
  double baseline() const { return baseline_; }
  double amplitude() const { return amplitude_; }

  /// mu at a point of the normalized cell ς ∈ [0,1)².
  double mu(Point s) const;
  /// <mu> = baseline - A ψ̂_n1(0) ψ̂_n2(0)
  double mean() const;

  /// Cell side, 2π.
  static double cell();

  /// Exact coefficients for |k_i| <= 2j.
  FourierTable table(int j) const;
  /// Midpoint samples, unit density.
  SampledField sample(std::size_t m) const;
  Moments moments() const;

 private:
  int n1_;
  int n2_;
  double baseline_;
  double amplitude_;
};

}  // namespace shearhom

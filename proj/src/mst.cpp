#include "shearhom/mst.hpp"

#include <cmath>

#include "shearhom/errors.hpp"
#include "shearhom/mm.hpp"
#include "shearhom/pwe.hpp"

namespace shearhom {

double mst_two_phase(const Material& matrix, const Material& inclusion, double f_inclusion,
                     double mean_rho) {
  if (f_inclusion < 0.0 || f_inclusion > 1.0) throw PreconditionError("fraction must lie in [0,1]");
  if (!(mean_rho > 0.0)) throw PreconditionError("<rho> must be > 0");
  const double m1 = matrix.mu, m2 = inclusion.mu;
  const double num = m1 + m2 - (m1 - m2) * f_inclusion;
  const double den = m1 + m2 + (m1 - m2) * f_inclusion;
  // den = mu1 (1 + f) + mu2 (1 - f) vanishes only for mu1 = 0 at f = 1, where the limit is mu2
  if (den == 0.0) return m2 / mean_rho;
  return m1 / mean_rho * num / den;
}

double mst_kuster_toksoz(const Material& matrix, std::span<const InclusionFraction> inclusions,
                         double mean_rho) {
  if (!(mean_rho > 0.0)) throw PreconditionError("<rho> must be > 0");
  const double m1 = matrix.mu;
  double s = 0.0, total = 0.0;
  for (const auto& inc : inclusions) {
    if (inc.fraction < 0.0) throw PreconditionError("inclusion fractions must be >= 0");
    total += inc.fraction;
    if (inc.fraction == 0.0) continue;
    const double d = m1 + inc.material.mu;
    if (d == 0.0) throw InvalidRegime("Kuster-Toksoz undefined for mu_matrix = mu_inclusion = 0");
    s += inc.fraction * (m1 - inc.material.mu) / d;
  }
  if (total > 1.0 + 1e-12) throw PreconditionError("inclusion fractions sum above 1");
  if (!(1.0 + s > 0.0)) {
    throw InvalidRegime("Kuster-Toksoz denominator is not positive (matrix fraction too low)");
  }
  return m1 / mean_rho * (1.0 - s) / (1.0 + s);
}

double two_phase_mu_eff(DualityEstimator estimator, double mu1, double mu2, double f) {
  if (!(mu1 > 0.0) || !(mu2 > 0.0)) throw PreconditionError("duality needs positive moduli");
  if (f < 0.0 || f > 1.0) throw PreconditionError("fraction must lie in [0,1]");
  switch (estimator) {
    case DualityEstimator::mst:
      return mst_two_phase({mu1, 1.0}, {mu2, 1.0}, f, 1.0);
    case DualityEstimator::pwe:
      return pwe_two_phase_c2(mu1, 1.0 - f, mu2, f, 1.0);
    case DualityEstimator::mm:
    case DualityEstimator::mmtilde: {
      std::vector<Phase> phases{{{mu1, 1.0}, FullCell{}, "matrix"}};
      if (f > 0.0) phases.push_back({{mu2, 1.0}, AxisSquare{std::sqrt(f), {0.5, 0.5}}, "inclusion"});
      const Lattice lat(1.0, 1.0, std::move(phases));
      const MMReport r = mm_estimate(lat);
      return estimator == DualityEstimator::mm ? r.averaged.along_x1 : r.geometric.along_x1;
    }
  }
  return 0.0;
}

double keller_residual(DualityEstimator estimator, double mu1, double mu2, double f) {
  return two_phase_mu_eff(estimator, mu1, mu2, f) * two_phase_mu_eff(estimator, mu2, mu1, f) -
         mu1 * mu2;
}

}  // namespace shearhom

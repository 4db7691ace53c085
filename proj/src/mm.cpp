#include "shearhom/mm.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "shearhom/errors.hpp"

namespace shearhom {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Line means as functions of the fixed coordinate plus an outer integrator.
struct LineSource {
  std::function<double(Axis, double, LineKind)> line;
  std::function<double(Axis, const std::function<double(double)>&)> integrate;
};

double harmonic_or_zero(const LineSource& s, Axis along, double at) {
  try {
    return s.line(along, at, LineKind::inv_mu);
  } catch (const ZeroModulusLine&) {
    return 0.0;
  }
}

QuadraticCoefficients directional(const LineSource& s, SweepOrder order) {
  const Axis inner = order == SweepOrder::x2_first ? Axis::x2 : Axis::x1;
  // Series coupling across the lines: <<mu>_inner^-1>^-1.
  const double resist = s.integrate(inner, [&](double y) {
    const double a = s.line(inner, y, LineKind::mu);
    return a > 0.0 ? 1.0 / a : kInf;
  });
  const double series = std::isfinite(resist) && resist > 0.0 ? 1.0 / resist : 0.0;
  // Parallel coupling: <<mu^-1>_inner^-1>.
  const double parallel = s.integrate(inner, [&](double y) { return harmonic_or_zero(s, inner, y); });
  // The series term governs propagation across the inner lines, i.e. along the outer axis.
  if (inner == Axis::x2) return {series, parallel};
  return {parallel, series};
}

LineSource source(const Lattice& lattice, QuadratureRule rule) {
  return {[&lattice](Axis a, double y, LineKind k) { return line_average(lattice, a, y, k); },
          [&lattice, rule](Axis a, const std::function<double(double)>& f) {
            // The fixed coordinate of a line along `a` is the other axis.
            const auto cuts = lattice.breakpoints(a);
            return integrate_unit(f, cuts, rule);
          }};
}

LineSource source(const SampledField& field) {
  return {[&field](Axis a, double y, LineKind k) { return line_average(field, a, y, k); },
          [&field](Axis, const std::function<double(double)>& f) {
            const std::size_t m = field.m();
            double s = 0.0;
            for (std::size_t i = 0; i < m; ++i) s += f(SampledField::node(i, m));
            return s / static_cast<double>(m);
          }};
}

QuadraticCoefficients geometric_of(const QuadraticCoefficients& a, const QuadraticCoefficients& b) {
  return {std::sqrt(a.along_x1 * b.along_x1), std::sqrt(a.along_x2 * b.along_x2)};
}

QuadraticCoefficients mean_of(const QuadraticCoefficients& a, const QuadraticCoefficients& b) {
  return {0.5 * (a.along_x1 + b.along_x1), 0.5 * (a.along_x2 + b.along_x2)};
}

MMReport assemble(const LineSource& s, double mean_rho) {
  MMReport r;
  r.x2_first = directional(s, SweepOrder::x2_first);
  r.x1_first = directional(s, SweepOrder::x1_first);
  r.averaged = mean_of(r.x2_first, r.x1_first);
  r.geometric = geometric_of(r.x2_first, r.x1_first);
  r.mean_rho = mean_rho;
  return r;
}

}  // namespace

double MMReport::c_mm(Direction kappa) const { return std::sqrt(averaged.c2(kappa, mean_rho)); }

double MMReport::c_mmtilde(Direction kappa) const {
  return std::sqrt(geometric.c2(kappa, mean_rho));
}

QuadraticCoefficients mm_directional(const Lattice& lattice, SweepOrder order,
                                     QuadratureRule rule) {
  return directional(source(lattice, rule), order);
}

QuadraticCoefficients mm_directional(const SampledField& field, SweepOrder order) {
  return directional(source(field), order);
}

QuadraticCoefficients mm_geometric(const Lattice& lattice, QuadratureRule rule) {
  const auto s = source(lattice, rule);
  return geometric_of(directional(s, SweepOrder::x2_first), directional(s, SweepOrder::x1_first));
}

QuadraticCoefficients mm_geometric(const SampledField& field) {
  const auto s = source(field);
  return geometric_of(directional(s, SweepOrder::x2_first), directional(s, SweepOrder::x1_first));
}

MMReport mm_estimate(const Lattice& lattice, QuadratureRule rule) {
  MMReport r = assemble(source(lattice, rule), cell_moments(lattice).mean_rho);
  r.fourfold = lattice.fourfold_symmetric();

  QuadratureRule fine = rule;
  fine.panels = 2 * rule.panels;
  const MMReport refined = assemble(source(lattice, fine), r.mean_rho);
  r.quadrature_error = std::max(std::abs(refined.averaged.along_x1 - r.averaged.along_x1),
                                std::abs(refined.averaged.along_x2 - r.averaged.along_x2));

  // Multiphase form straight from the phase fractions on lines along x1.
  const auto phases = lattice.phases();
  const auto cuts = lattice.breakpoints(Axis::x1);
  const double parallel = integrate_unit(
      [&](double y) {
        const auto chi = lattice.line_fractions(Axis::x1, y);
        double s = 0.0;
        for (std::size_t k = 0; k < chi.size(); ++k) {
          if (chi[k] <= 0.0) continue;
          if (phases[k].material.mu == 0.0) return 0.0;
          s += chi[k] / phases[k].material.mu;
        }
        return 1.0 / s;
      },
      cuts, rule);
  const double resist = integrate_unit(
      [&](double y) {
        const auto chi = lattice.line_fractions(Axis::x1, y);
        double s = 0.0;
        for (std::size_t k = 0; k < chi.size(); ++k) s += chi[k] * phases[k].material.mu;
        return s > 0.0 ? 1.0 / s : kInf;
      },
      cuts, rule);
  const double series = std::isfinite(resist) && resist > 0.0 ? 1.0 / resist : 0.0;
  r.c2_line_fractions = 0.5 * (parallel + series) / r.mean_rho;
  return r;
}

MMReport mm_estimate(const SampledField& field) {
  MMReport r = assemble(source(field), cell_moments(field).mean_rho);
  r.c2_line_fractions = 0.5 * (r.x1_first.along_x1 + r.x1_first.along_x2) / r.mean_rho;
  return r;
}

double laminate_exact(std::span<const LaminaPhase> phases, Axis normal, Direction kappa) {
  double mu = 0.0, inv = 0.0, rho = 0.0, total = 0.0;
  bool insulating = false;
  for (const auto& p : phases) {
    if (p.fraction < 0.0) throw PreconditionError("lamina fractions must be >= 0");
    mu += p.fraction * p.material.mu;
    rho += p.fraction * p.material.rho;
    total += p.fraction;
    if (p.fraction > 0.0) {
      if (p.material.mu == 0.0) insulating = true;
      else inv += p.fraction / p.material.mu;
    }
  }
  if (std::abs(total - 1.0) > 1e-9) throw PreconditionError("lamina fractions must sum to 1");
  const double harmonic = insulating ? 0.0 : 1.0 / inv;
  const double kt = normal == Axis::x2 ? kappa.k1() : kappa.k2();
  const double kn = normal == Axis::x2 ? kappa.k2() : kappa.k1();
  return (mu * kt * kt + harmonic * kn * kn) / rho;
}

}  // namespace shearhom

#pragma once

#include <functional>
#include <span>

namespace shearhom {

/// Composite Gauss-Legendre rule over [0,1] with panels aligned to the
/// integrand's kinks.
///
/// The interval is first split at `breakpoints` (values outside [0,1] are
/// dropped). Each segment is mapped through the cubic y = a + (b-a)(3u²-2u³),
/// whose vanishing derivative at both ends absorbs square-root endpoint
/// behaviour such as circle chords near tangency. Segments receive panels in
/// proportion to their length, at least one each; every panel uses 8 points.
struct QuadratureRule {
  int panels = 64;
};

double integrate_unit(const std::function<double(double)>& f,
                      std::span<const double> breakpoints,
                      QuadratureRule rule = {});

}  // namespace shearhom

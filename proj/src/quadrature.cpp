#include "shearhom/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>

namespace shearhom {

double integrate_unit(const std::function<double(double)>& f,
                      std::span<const double> breakpoints, QuadratureRule rule) {
  std::vector<double> cuts{0.0, 1.0};
  for (double b : breakpoints) {
    if (b > 0.0 && b < 1.0) cuts.push_back(b);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(),
                         [](double a, double b) { return std::abs(a - b) < 1e-14; }),
             cuts.end());

  using gauss = boost::math::quadrature::gauss<double, 8>;
  const int panels = std::max(rule.panels, 1);
  double total = 0.0;
  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    const double a = cuts[s];
    const double len = cuts[s + 1] - a;
    if (len <= 0.0) continue;
    const int n = std::max(1, static_cast<int>(std::ceil(panels * len)));
    const auto mapped = [&](double u) {
      const double y = a + len * u * u * (3.0 - 2.0 * u);
      return f(y) * len * 6.0 * u * (1.0 - u);
    };
    for (int p = 0; p < n; ++p) {
      total += gauss::integrate(mapped, static_cast<double>(p) / n, static_cast<double>(p + 1) / n);
    }
  }
  return total;
}

}  // namespace shearhom

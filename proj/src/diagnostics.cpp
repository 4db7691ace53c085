#include "shearhom/diagnostics.hpp"

#include <cmath>
#include <numbers>

#include "shearhom/errors.hpp"

namespace shearhom {

namespace {

// Exact in 64 bits for n <= 30 (C(60, 30) < 2^60).
std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / i;
  return r;
}

}  // namespace

double theta(const FourierTable& table, double mu0) {
  if (!(mu0 > 0.0)) throw PreconditionError("mu0 must be > 0");
  return 1.0 - table.mean() / mu0 + table.offdiag_l1() / mu0;
}

SufficientCondition sufficient_condition(const FourierTable& table) {
  const double margin = table.mean() - table.offdiag_l1();
  return {margin > 0.0, margin};
}

double remainder_bound(double mean, double l1_offdiag, double th, int m) {
  if (!(l1_offdiag < mean)) {
    throw PreconditionError("remainder bound undefined: sum of |mu_hat(g)| must be below <mu>");
  }
  if (m < 0) throw PreconditionError("m must be >= 0");
  return mean * mean * std::pow(th, m + 1) / (mean - l1_offdiag);
}

double ConvergenceReport::remainder_bound(int m) const {
  return shearhom::remainder_bound(mean, l1_offdiag, theta, m);
}

ConvergenceReport convergence_report(const FourierTable& table, double mu0) {
  ConvergenceReport r;
  r.l1_offdiag = table.offdiag_l1();
  r.mean = table.mean();
  r.mu0 = mu0;
  r.theta = theta(table, mu0);
  r.condition_met = r.l1_offdiag < r.mean;
  r.mu0_below_mean = mu0 < r.mean;
  r.table_extent = table.extent();
  return r;
}

double psi_hat(int n, int k) {
  if (n < 0) throw PreconditionError("psi_hat needs n >= 0");
  if (k % 2 != 0 || std::abs(k) > 2 * n) return 0.0;
  const int top = n + k / 2;
  if (n <= 30) return std::ldexp(static_cast<double>(binomial(2 * n, top)), -2 * n);
  const double lg = std::lgamma(2.0 * n + 1) - std::lgamma(top + 1.0) -
                    std::lgamma(2.0 * n - top + 1) - 2.0 * n * std::numbers::ln2;
  return std::exp(lg);
}

PeakProfile::PeakProfile(int n1, int n2, double baseline, double amplitude)
    : n1_(n1), n2_(n2), baseline_(baseline), amplitude_(amplitude) {
  if (n1 < 1 || n2 < 1) throw PreconditionError("peak profile needs n1, n2 >= 1");
  if (!(amplitude > 0.0) || !(baseline > amplitude)) {
    throw PreconditionError("peak profile needs baseline > A > 0");
  }
}

double PeakProfile::cell() { return 2.0 * std::numbers::pi; }

double PeakProfile::mu(Point s) const {
  const double c1 = std::cos(cell() * s.x1);
  const double c2 = std::cos(cell() * s.x2);
  return baseline_ - amplitude_ * std::pow(c1 * c1, n1_) * std::pow(c2 * c2, n2_);
}

double PeakProfile::mean() const { return baseline_ - amplitude_ * psi_hat(n1_, 0) * psi_hat(n2_, 0); }

FourierTable PeakProfile::table(int j) const {
  if (j < 1) throw PreconditionError("truncation level j must be >= 1");
  FourierTable t(2 * j);
  for (int k1 = -2 * j; k1 <= 2 * j; ++k1) {
    const double p1 = psi_hat(n1_, k1);
    if (p1 == 0.0) continue;
    for (int k2 = -2 * j; k2 <= 2 * j; ++k2) t.at(k1, k2) = -amplitude_ * p1 * psi_hat(n2_, k2);
  }
  t.at(0, 0) += baseline_;
  return t;
}

SampledField PeakProfile::sample(std::size_t m) const {
  return shearhom::sample(
      m, cell(), cell(), [this](Point p) { return mu(p); }, [](Point) { return 1.0; });
}

Moments PeakProfile::moments() const {
  // <mu²> = b² - 2bA<ψ> + A²<ψ²>, <ψ²> = Σ ψ̂² per axis (Parseval).
  auto sq = [](int n) {
    double s = 0.0;
    for (int k = -2 * n; k <= 2 * n; k += 2) s += psi_hat(n, k) * psi_hat(n, k);
    return s;
  };
  const double p = psi_hat(n1_, 0) * psi_hat(n2_, 0);
  Moments m;
  m.mean_mu = mean();
  m.mean_mu2 = baseline_ * baseline_ - 2.0 * baseline_ * amplitude_ * p +
               amplitude_ * amplitude_ * sq(n1_) * sq(n2_);
  m.mean_rho = 1.0;
  m.mu_min = baseline_ - amplitude_;
  m.mu_max = baseline_;
  return m;
}

}  // namespace shearhom

#include <doctest.h>

#include "common.hpp"
#include "oracles.hpp"
#include "shearhom/diagnostics.hpp"
#include "shearhom/errors.hpp"
#include "shearhom/pwe.hpp"

using namespace shearhom;
using namespace fixture;

TEST_CASE("theta and the sufficient condition") {
  FourierTable t(1);
  t.at(0, 0) = 6.0;
  t.at(1, 0) = t.at(-1, 0) = 0.5;
  t.at(0, 1) = t.at(0, -1) = cplx(0.0, 0.5);
  CHECK(theta(t, 7.0) == doctest::Approx(3.0 / 7.0));
  const auto sc = sufficient_condition(t);
  CHECK(sc.met);
  CHECK(sc.margin == doctest::Approx(4.0));
  CHECK(remainder_bound(6.0, 2.0, 3.0 / 7.0, 5) == doctest::Approx(9.0 * std::pow(3.0 / 7.0, 6)));
  CHECK_THROWS_AS(remainder_bound(2.0, 2.0, 0.5, 3), PreconditionError);

  const auto rep = convergence_report(t, 5.0);
  CHECK(rep.mu0_below_mean);
  CHECK(rep.table_extent == 1);
}

TEST_CASE("psi_hat") {
  for (int n : {1, 2, 5, 8}) {
    double sum = 0.0;
    for (int k = -2 * n - 2; k <= 2 * n + 2; ++k) {
      CHECK(psi_hat(n, k) == doctest::Approx(oracle::cos_power_coefficient(n, k)).epsilon(1e-12));
      sum += psi_hat(n, k);
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
  }
  CHECK(psi_hat(3, 3) == 0.0);
  CHECK(psi_hat(40, 0) ==
        doctest::Approx(std::exp(std::lgamma(81.0) - 2 * std::lgamma(41.0) - 80 * std::log(2.0)))
            .epsilon(1e-10));
}

TEST_CASE("peak profile") {
  CHECK_THROWS_AS(PeakProfile(1, 1, 1.0, 2.0), PreconditionError);
  const PeakProfile p(2, 1, 10.0, 4.0);
  CHECK(p.mean() == doctest::Approx(10.0 - 4.0 * 0.375 * 0.5));
  CHECK(p.mu({0.0, 0.0}) == doctest::Approx(6.0));
  const FourierTable t = p.table(3);
  CHECK(t.mean() == doctest::Approx(p.mean()));
  CHECK(std::abs(t.at(2, 0)) == doctest::Approx(4.0 * 0.25 * 0.5));
}

TEST_CASE("series tails stay under the remainder bound") {
  const PeakProfile p(1, 1, 10.0, 4.0);
  const int j = 4;
  const FourierTable t = p.table(j);
  const ReciprocalGrid g(j, PeakProfile::cell(), PeakProfile::cell());
  const Direction k(1, 0);
  const double exact = dense_M(t, g, k);
  const auto rep = convergence_report(t, p.mean());
  CHECK(rep.condition_met);
  CHECK(rep.theta == doctest::Approx(1.0 / 3.0));
  for (int m : {1, 3, 5, 10}) {
    SeriesConfig cfg;
    cfg.j = j;
    cfg.m = m;
    const auto s = neumann_M(t, g, k, cfg, p.mean());
    CHECK(std::abs(s.value - exact) <= rep.remainder_bound(m));
  }
}

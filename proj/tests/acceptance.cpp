// Acceptance suite: one PASS/FAIL line per criterion.
//
// Usage: acceptance [--expect-fail 2,7]
// Exit status is 0 when every criterion passes, or when the only failures are
// the listed ones. Listed criteria that pass are reported as well.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <iostream>
#include <limits>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "common.hpp"
#include "oracles.hpp"
#include "shearhom/commands.hpp"
#include "shearhom/config.hpp"
#include "shearhom/diagnostics.hpp"
#include "shearhom/errors.hpp"
#include "shearhom/mm.hpp"
#include "shearhom/mst.hpp"
#include "shearhom/pwe.hpp"
#include "shearhom/report.hpp"

using namespace shearhom;
using namespace fixture;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double v) {
  char b[64];
  std::snprintf(b, sizeof b, f, v);
  return b;
}

// c² <= <mu>/<rho> on every numeric run in the suite.
int g_runs = 0, g_above_voigt = 0;

NumericResult numeric(const Lattice& lat, int j, int m, Direction k = Direction(1, 0),
                      double stop = 0.0) {
  SeriesConfig cfg;
  cfg.j = j;
  cfg.m = m;
  cfg.stop_tolerance = stop;
  const NumericResult r = effective_speed_numeric(lat, k, cfg);
  ++g_runs;
  const double voigt = r.moments.mean_mu / r.moments.mean_rho;
  if (r.speed * r.speed > voigt * (1 + 1e-12)) ++g_above_voigt;
  return r;
}

Config config(const std::string& name) {
  return load_config(std::string(SHEARHOM_CONFIG_DIR) + "/" + name);
}

struct Outcome {
  bool pass;
  std::string detail;
};

Outcome criterion1() {
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Lattice lat = random_lattice(500 + s);
    const int j = 1 + static_cast<int>(s % 4);
    const FourierTable t = mu_table(lat, j);
    const ReciprocalGrid g(j, lat.a1(), lat.a2());
    const Direction k = Direction::from_degrees(17.0 * static_cast<double>(s));
    SeriesConfig cfg;
    cfg.j = j;
    cfg.m = 100000;
    cfg.stop_tolerance = 1e-16;
    const auto series = neumann_M(t, g, k, cfg, cfg.mu0.resolve(cell_moments(lat)));
    const double dense = dense_M(t, g, k);
    worst = std::max(worst, std::abs(series.value - dense) / std::abs(dense));
  }
  const double dt = seconds_since(t0);
  return {worst <= 1e-8 && dt < 60.0,
          "max rel diff " + fmt("%.2e", worst) + ", " + fmt("%.2f", dt) + " s"};
}

Outcome criterion2() {
  const Config c = config("laminate_st_ep.json");
  const Lattice lat = build_lattice(c);
  const Direction k = Direction::from_degrees(c.kappa_deg);
  const LaminaPhase ph[] = {{St, 0.5}, {Ep, 0.5}};
  const double exact = std::sqrt(laminate_exact(ph, Axis::x2, k));
  const double harmonic = std::sqrt(
      1.0 / (0.5 / 80e9 + 0.5 / 1.48e9) / (0.5 * 7800 + 0.5 * 1140));
  const double num = numeric(lat, 12, 150, k).speed;
  const MMReport mm = mm_estimate(lat);
  const double dev = std::abs(num - harmonic) / harmonic;
  const double mm_dev = std::max(std::abs(mm.c_mm(k) - harmonic), std::abs(mm.c_mmtilde(k) - harmonic)) / harmonic;
  return {dev <= 5e-3 && mm_dev <= 1e-10 && std::abs(exact - harmonic) <= 1e-10 * harmonic,
          "exact " + fmt("%.4f", harmonic) + ", numeric " + fmt("%.4f", num) + " (" +
              fmt("%.2f", 100 * dev) + "%), MM rel " + fmt("%.1e", mm_dev)};
}

Outcome criterion3() {
  const auto t0 = Clock::now();
  const Config c = config("fig1_al_pb.json");
  double worst = 0.0, at = 0.0;
  for (double f : c.sweep->grid()) {
    const SweepPoint p = sweep_point(c, *c.sweep, f);
    const auto r = estimate(p.lattice, p.roles, f, Direction(1, 0), c.series);
    if (r.c_numeric) ++g_runs;
    const double v[] = {r.c_numeric.value_or(NAN), r.c_pwe.value_or(NAN), r.c_mm.value_or(NAN),
                        r.c_mst_a.value_or(NAN), r.c_mst_b.value_or(NAN)};
    double lo = v[0], hi = v[0];
    for (double x : v) {
      if (!std::isfinite(x)) return {false, "missing estimate at f=" + format_number(f)};
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
    if ((hi - lo) / lo > worst) {
      worst = (hi - lo) / lo;
      at = f;
    }
  }
  const double dt = seconds_since(t0);
  return {worst <= 0.02 && dt < 120.0, "max spread " + fmt("%.3f", 100 * worst) + "% at f=" +
                                           format_number(at) + ", " + fmt("%.2f", dt) + " s"};
}

Outcome criterion4() {
  struct Case {
    const char* name;
    Lattice lat;
    int j, m;
    double tol;
  };
  const Lattice rst = build_lattice(config("fig3a_r_st.json"));
  const Case cases[] = {{"Al/Pb", square(Al, Pb, std::sqrt(0.5)), 7, 5, 5e-3},
                        {"St/Ep", square(St, Ep, std::sqrt(0.5)), 7, 50, 1e-2},
                        {"R/St", rst, 12, 150, 1e-2}};
  // reference: the same scheme at (28, 1000)
  bool ok = true;
  std::ostringstream d;
  for (const auto& cs : cases) {
    const double ref = numeric(cs.lat, 28, 1000).speed;
    const double dev = std::abs(numeric(cs.lat, cs.j, cs.m).speed - ref) / ref;
    ok = ok && dev <= cs.tol;
    d << cs.name << " (" << cs.j << "," << cs.m << ") " << fmt("%.2f", 100 * dev) << "%; ";
  }
  const double ref = numeric(rst, 28, 1000).speed;
  const double coarse = std::abs(numeric(rst, 7, 50).speed - ref) / ref;
  ok = ok && coarse > 1e-2;
  d << "R/St (7,50) " << fmt("%.2f", 100 * coarse) << "%";
  return {ok, d.str()};
}

Outcome criterion5() {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> logmu(std::log(1e7), std::log(1e11));
  std::uniform_real_distribution<double> frac(0.0, 1.0);
  double mst = 0.0, tilde = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double m1 = std::exp(logmu(rng)), m2 = std::exp(logmu(rng)), f = frac(rng);
    mst = std::max(mst, std::abs(keller_residual(DualityEstimator::mst, m1, m2, f)) / (m1 * m2));
    tilde = std::max(tilde, std::abs(keller_residual(DualityEstimator::mmtilde, m1, m2, f)) / (m1 * m2));
  }
  const double pwe = std::abs(keller_residual(DualityEstimator::pwe, 80e9, 1.48e9, 0.5)) / (80e9 * 1.48e9);
  return {mst <= 1e-12 && tilde <= 1e-10 && pwe > 1e-6,
          "MST " + fmt("%.1e", mst) + ", MMtilde " + fmt("%.1e", tilde) + ", PWE " + fmt("%.3f", pwe)};
}

Outcome criterion6() {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> logmu(std::log(1e7), std::log(1e11));
  std::uniform_real_distribution<double> frac(0.0, 1.0);
  int order = 0, hs = 0, mm = 0;
  for (int i = 0; i < 1000; ++i) {
    const double m1 = std::exp(logmu(rng)), m2 = std::exp(logmu(rng)), f = frac(rng);
    const double a = mst_two_phase({m1, 1.0}, {m2, 1.0}, f, 1.0);
    const double b = mst_two_phase({m2, 1.0}, {m1, 1.0}, 1.0 - f, 1.0);
    const double p = pwe_two_phase_c2(m1, 1.0 - f, m2, f, 1.0);
    const double tol = 1e-12 * std::max(m1, m2);
    if (p < std::min(a, b) - tol || p > std::max(a, b) + tol) ++order;
    const Moments mom{m1 * (1 - f) + m2 * f, m1 * m1 * (1 - f) + m2 * m2 * f, 1.0, std::min(m1, m2),
                      std::max(m1, m2)};
    if (std::max(a, b) > pwe_bounds(mom).upper + tol) ++hs;
    if (two_phase_mu_eff(DualityEstimator::mmtilde, m1, m2, f) >
        two_phase_mu_eff(DualityEstimator::mm, m1, m2, f) + tol)
      ++mm;
  }
  for (std::uint64_t s = 0; s < 20; ++s) numeric(random_lattice(600 + s), 6, 150);
  return {order == 0 && hs == 0 && mm == 0 && g_above_voigt == 0,
          "MST/PWE order " + std::to_string(order) + ", HS bound " + std::to_string(hs) +
              ", MMtilde>MM " + std::to_string(mm) + ", c^2>Voigt " + std::to_string(g_above_voigt) +
              "/" + std::to_string(g_runs) + " runs"};
}

Outcome criterion7() {
  const Config rc = config("fig3a_r_st.json");
  const Lattice rst = build_lattice(rc);
  const double c_st = std::sqrt(80e9 / 7800);
  const double num = numeric(rst, 14, 150).speed;
  const Moments mom = cell_moments(rst);
  const double pwe = std::sqrt(pwe_estimate_c2(mom));
  const double mm = mm_estimate(rst).c_mm(Direction(1, 0));

  const Lattice str(1, 1, {{St, FullCell{}, "St"}, {R, AxisSquare{std::sqrt(0.2), {0.5, 0.5}}, "R"}});
  const double num2 = numeric(str, 14, 150).speed;
  const double pwe2 = std::sqrt(pwe_estimate_c2(cell_moments(str)));

  const bool a = num < 0.15 * c_st, b = std::abs(mm - num) <= 0.15 * num, c = pwe > 1.5 * num,
             d = std::abs(pwe2 - num2) <= 0.05 * num2;
  return {a && b && c && d, "R/St numeric " + fmt("%.1f", num) + (a ? " ok" : " FAIL") + ", MM " +
                                fmt("%.2f", mm) + (b ? " ok" : " FAIL") + ", PWE " + fmt("%.1f", pwe) +
                                (c ? " ok" : " FAIL") + "; St/R PWE/numeric " +
                                fmt("%.4f", pwe2 / num2) + (d ? " ok" : " FAIL")};
}

Outcome criterion8() {
  const char* files[] = {"fig3a_st_r.json", "fig3b_st_r_45.json", "fig4a_st_r_circle.json",
                         "fig5a_st_r_pb_coated.json"};
  const char* names[] = {"numeric", "pwe", "mm", "mmtilde", "mst_a", "mst_b", "upper"};
  double worst[7] = {};
  std::string where[7];
  for (const char* file : files) {
    Config soft = config(file);
    Config zero = soft;
    for (auto& p : zero.phases)
      if (p.material.mu == R.mu) p.material.mu = 0.0;
    const auto grid = soft.sweep->grid();
    for (const double f : grid) {
      // at f = 1 no steel matrix is left
      if (f >= 1.0) continue;
      const SweepPoint a = sweep_point(soft, *soft.sweep, f);
      const SweepPoint b = sweep_point(zero, *zero.sweep, f);
      // past the role swap of symmetric templates the rubber is the matrix
      if (a.lattice.phases()[0].name != "St") continue;
      const Direction k(1, 0);
      const auto ra = estimate(a.lattice, a.roles, f, k, soft.series);
      const auto rb = estimate(b.lattice, b.roles, f, k, zero.series);
      g_runs += 2;
      const std::optional<double> xa[] = {ra.c_numeric, ra.c_pwe, ra.c_mm, ra.c_mmtilde,
                                          ra.c_mst_a, ra.c_mst_b, ra.c_upper_bound};
      const std::optional<double> xb[] = {rb.c_numeric, rb.c_pwe, rb.c_mm, rb.c_mmtilde,
                                          rb.c_mst_a, rb.c_mst_b, rb.c_upper_bound};
      for (int q = 0; q < 7; ++q) {
        if (xa[q].has_value() != xb[q].has_value()) return {false, std::string(file) + ": column lost"};
        if (!xa[q]) continue;
        const double dev = std::abs(*xa[q] - *xb[q]) / std::max(std::abs(*xa[q]), 1e-300);
        if (dev > worst[q]) {
          worst[q] = dev;
          where[q] = std::string(file) + " f=" + format_number(f);
        }
      }
    }
  }
  bool ok = true;
  std::string d = "max rel change:";
  for (int q = 0; q < 7; ++q) {
    ok = ok && worst[q] <= 5e-3;
    d += std::string(" ") + names[q] + " " + fmt("%.1e", worst[q]);
    if (worst[q] > 5e-3) d += " (" + where[q] + ")";
  }
  return {ok, d};
}

Outcome criterion9() {
  const PeakProfile p(1, 1, 2.0, 1.0);
  const FourierTable t = p.table(2);
  const auto rep = convergence_report(t, t.mean());
  const auto cond = sufficient_condition(t);
  const ReciprocalGrid g(2, PeakProfile::cell(), PeakProfile::cell());
  const Direction k(1, 0);
  SeriesConfig cfg;
  cfg.j = 2;
  cfg.m = 60;
  const auto s = neumann_M(t, g, k, cfg, t.mean());
  const double exact = dense_M(t, g, k);
  // tails below a few ulps of M cannot be measured in double precision
  const double floor = 8 * std::numeric_limits<double>::epsilon() * std::abs(exact);
  int bad = 0;
  for (int m = 0; m <= 60; ++m)
    if (std::abs(exact - s.partial_sums[m]) > rep.remainder_bound(m) + floor) ++bad;
  const bool ok = std::abs(rep.theta - 3.0 / 7.0) <= 1e-12 && cond.met &&
                  std::abs(cond.margin - 1.0) <= 1e-12 && bad == 0;
  return {ok, "theta " + fmt("%.12f", rep.theta) + ", margin " + fmt("%.12g", cond.margin) + ", " +
                  std::to_string(bad) + "/61 tails above the bound"};
}

Outcome criterion10() {
  const int j = 24;
  const Lattice lat = random_lattice(42);
  const FourierTable t = mu_table(lat, j);
  const ReciprocalGrid g(j, lat.a1(), lat.a2());
  const double mu0 = ReferenceModulus::midrange().resolve(cell_moments(lat));
  const SpectralVector f = assemble_f(t, g, Direction(1, 0));
  const CouplingOperator direct(t, g, mu0, ApplyPath::direct);
  const CouplingOperator conv(t, g, mu0, ApplyPath::convolution);

  auto best = [&](const CouplingOperator& op, SpectralVector& out) {
    double b = 1e300;
    for (int r = 0; r < 5; ++r) {
      const auto t0 = Clock::now();
      out = op.apply(f);
      b = std::min(b, seconds_since(t0));
    }
    return b;
  };
  SpectralVector a, c;
  const double td = best(direct, a), tc = best(conv, c);
  double num = 0, den = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += std::norm(a[i] - c[i]);
    den += std::norm(a[i]);
  }
  const double err = std::sqrt(num / den);
  return {err <= 1e-12 && td >= 5.0 * tc,
          "rel diff " + fmt("%.1e", err) + ", direct " + fmt("%.2f", 1e3 * td) + " ms, conv " +
              fmt("%.2f", 1e3 * tc) + " ms (" + fmt("%.1f", td / tc) + "x" +
              (fft_available() ? ", fftw" : ", no fftw") + ")"};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> expected;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--expect-fail") == 0 && i + 1 < argc) {
      std::stringstream s(argv[++i]);
      std::string item;
      while (std::getline(s, item, ',')) expected.insert(std::stoi(item));
    } else {
      std::cerr << "usage: acceptance [--expect-fail i,j,...]\n";
      return 2;
    }
  }
  const std::function<Outcome()> criteria[] = {criterion1, criterion2, criterion3, criterion4,
                                               criterion5, criterion6, criterion7, criterion8,
                                               criterion9, criterion10};
  int unexpected = 0;
  for (int i = 0; i < 10; ++i) {
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const int n = i + 1;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << n << ": " << o.detail;
    if (!o.pass && expected.count(n)) std::cout << "  [expected failure]";
    if (o.pass && expected.count(n)) std::cout << "  [listed as expected failure but passed]";
    std::cout << "\n" << std::flush;
    if (!o.pass && !expected.count(n)) ++unexpected;
  }
  return unexpected ? 1 : 0;
}

#include "shearhom/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include "shearhom/diagnostics.hpp"
#include "shearhom/errors.hpp"
#include "shearhom/mm.hpp"
#include "shearhom/mst.hpp"
#include "shearhom/report.hpp"

namespace shearhom {

namespace {

void emit(const CliOptions& o, const std::string& text) {
  if (o.out.empty() || o.out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw ConfigError("cannot write '" + o.out + "'");
  f << text;
}

void emit_plot(const CliOptions& o, const std::string& title) {
  if (o.plot.empty()) return;
  std::ofstream f(o.plot, std::ios::binary);
  if (!f) throw ConfigError("cannot write '" + o.plot + "'");
  f << plot_script(o.out.empty() ? "out.csv" : o.out, title);
}

Config load(const CliOptions& o) {
  Config c = load_config(o.config);
  apply_overrides(c, o);
  return c;
}

CsvHeader header_for(const std::string& command, const Config& c) {
  return {command, config_hash(c), c.series, c.kappa_deg};
}

void warn(std::ostream& err, double f, const EstimateReport& r) {
  for (const auto& w : r.warnings) err << "warning: f=" << format_number(f) << ": " << w << "\n";
}

// Line printer for validation checks.
struct Checks {
  std::ostream& out;
  int failed = 0;
  void operator()(const std::string& name, bool ok, const std::string& detail) {
    out << (ok ? "PASS " : "FAIL ") << name << "  " << detail << "\n";
    if (!ok) ++failed;
  }
};

std::string sci(double v) {
  char b[32];
  std::snprintf(b, sizeof b, "%.3e", v);
  return b;
}

void suite_duality(Checks& check) {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> logmu(std::log(1e8), std::log(1e11));
  std::uniform_real_distribution<double> frac(0.0, 1.0);
  double mst = 0.0, tilde = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double m1 = std::exp(logmu(rng)), m2 = std::exp(logmu(rng)), f = frac(rng);
    const double scale = m1 * m2;
    mst = std::max(mst, std::abs(keller_residual(DualityEstimator::mst, m1, m2, f)) / scale);
    tilde = std::max(tilde, std::abs(keller_residual(DualityEstimator::mmtilde, m1, m2, f)) / scale);
  }
  check("duality.mst", mst <= 1e-12, "max |residual|/mu1mu2 = " + sci(mst));
  check("duality.mmtilde", tilde <= 1e-10, "max |residual|/mu1mu2 = " + sci(tilde));
  const double pwe = std::abs(keller_residual(DualityEstimator::pwe, 80e9, 1.48e9, 0.5)) / (80e9 * 1.48e9);
  check("duality.pwe_violates", pwe > 1e-6, "|residual|/mu1mu2 = " + sci(pwe));
}

void suite_bounds(Checks& check) {
  const Direction kappa(1.0, 0.0);
  int bad = 0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Lattice lat = random_lattice(1000 + s);
    const Moments mom = cell_moments(lat);
    const FourierTable t = mu_table(lat, 4);
    const ReciprocalGrid g(4, lat.a1(), lat.a2());
    const double mu_eff = mom.mean_mu - dense_M(t, g, kappa);
    const auto b = pwe_bounds(mom, F_along(F_quadratic(t, g), kappa));
    const double c2 = mu_eff / mom.mean_rho;
    const double tol = 1e-12 * mom.mean_mu / mom.mean_rho;
    if (c2 > b.upper + tol || (b.lower && c2 < *b.lower - tol) || c2 > mom.mean_mu / mom.mean_rho + tol) ++bad;
  }
  check("bounds.dense_sandwich", bad == 0, std::to_string(bad) + "/20 lattices outside the bounds");

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> logmu(std::log(1e8), std::log(1e11));
  std::uniform_real_distribution<double> frac(0.0, 1.0);
  int order = 0, hs = 0;
  for (int i = 0; i < 1000; ++i) {
    const double m1 = std::exp(logmu(rng)), m2 = std::exp(logmu(rng)), f = frac(rng);
    const double a = mst_two_phase({m1, 1.0}, {m2, 1.0}, f, 1.0);
    const double b = mst_two_phase({m2, 1.0}, {m1, 1.0}, 1.0 - f, 1.0);
    const double p = pwe_two_phase_c2(m1, 1.0 - f, m2, f, 1.0);
    const double tol = 1e-12 * std::max(m1, m2);
    if (p < std::min(a, b) - tol || p > std::max(a, b) + tol) ++order;
    Moments mom{m1 * (1 - f) + m2 * f, m1 * m1 * (1 - f) + m2 * m2 * f, 1.0, std::min(m1, m2), std::max(m1, m2)};
    if (std::max(a, b) > pwe_bounds(mom).upper + tol) ++hs;
  }
  check("bounds.mst_pwe_mst", order == 0, std::to_string(order) + "/1000 violations");
  check("bounds.hs_below_pwe_bound", hs == 0, std::to_string(hs) + "/1000 violations");
}

void suite_oracle(Checks& check) {
  const Direction kappa(1.0, 0.0);
  double worst = 0.0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Lattice lat = random_lattice(2000 + s);
    const int j = 1 + static_cast<int>(s % 4);
    const FourierTable t = mu_table(lat, j);
    const ReciprocalGrid g(j, lat.a1(), lat.a2());
    SeriesConfig cfg;
    cfg.j = j;
    cfg.m = 20000;
    cfg.stop_tolerance = 1e-15;
    const auto series = neumann_M(t, g, kappa, cfg, cfg.mu0.resolve(cell_moments(lat)));
    const double dense = dense_M(t, g, kappa);
    worst = std::max(worst, std::abs(series.value - dense) / std::abs(dense));
  }
  check("oracle.neumann_vs_dense", worst <= 1e-8, "max rel diff = " + sci(worst));
}

void suite_appendix(Checks& check) {
  const PeakProfile p(1, 1, 2.0, 1.0);
  const FourierTable t = p.table(2);
  const auto rep = convergence_report(t, t.mean());
  check("appendix.theta", std::abs(rep.theta - 3.0 / 7.0) <= 1e-12, "theta = " + format_number(rep.theta));
  const auto cond = sufficient_condition(t);
  check("appendix.margin", cond.met && std::abs(cond.margin - 1.0) <= 1e-12,
        "margin = " + format_number(cond.margin));
  const ReciprocalGrid g(2, PeakProfile::cell(), PeakProfile::cell());
  const Direction kappa(1.0, 0.0);
  SeriesConfig cfg;
  cfg.j = 2;
  cfg.m = 60;
  const auto s = neumann_M(t, g, kappa, cfg, t.mean());
  const double exact = dense_M(t, g, kappa);
  int bad = 0;
  for (int m = 0; m <= 60; ++m) {
    if (std::abs(exact - s.partial_sums[m]) > rep.remainder_bound(m) * (1 + 1e-12) + 1e-15) ++bad;
  }
  check("appendix.tail_bound", bad == 0, std::to_string(bad) + "/61 tails above the bound");
}

}  // namespace

void apply_overrides(Config& c, const CliOptions& o) {
  if (o.j) c.series.j = *o.j;
  if (o.m) c.series.m = *o.m;
  if (o.mu0) c.series.mu0 = parse_mu0(*o.mu0);
  if (o.path) c.series.path = parse_path(*o.path);
  if (o.kappa_deg) c.kappa_deg = *o.kappa_deg;
  if (!o.j_list.empty()) c.converge.j = o.j_list;
  if (!o.m_list.empty()) c.converge.m = o.m_list;
  if (c.series.j < 1) throw ConfigError("j must be >= 1");
  if (c.series.m < 0) throw ConfigError("m must be >= 0");
}

std::uint64_t config_hash(const Config& c) {
  std::ostringstream s;
  s << c.canonical << "|j=" << c.series.j << "|m=" << c.series.m << "|mu0=" << to_string(c.series.mu0)
    << "|path=" << to_string(c.series.path) << "|kappa=" << format_number(c.kappa_deg);
  for (int j : c.converge.j) s << "|cj" << j;
  for (int m : c.converge.m) s << "|cm" << m;
  return fnv1a(s.str());
}

int cmd_estimate(const CliOptions& o, std::ostream& err) {
  const Config c = load(o);
  const Lattice lat = build_lattice(c);
  const auto roles = composition(c, lat);
  const double f = 1.0 - lat.filling_fractions()[0];
  const auto r = estimate(lat, roles, f, Direction::from_degrees(c.kappa_deg), c.series);
  warn(err, f, r);
  std::ostringstream out;
  write_header(out, header_for("estimate", c));
  write_row(out, r);
  emit(o, out.str());
  emit_plot(o, "estimate");
  return r.c_numeric ? 0 : 2;
}

int cmd_sweep(const CliOptions& o, std::ostream& err) {
  const Config c = load(o);
  if (!c.sweep) throw ConfigError("config has no 'sweep' block");
  const auto fs = c.sweep->grid();
  const Direction kappa = Direction::from_degrees(c.kappa_deg);
  std::vector<EstimateReport> rows(fs.size());
  std::vector<std::string> errors(fs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < fs.size(); i = next++) {
      try {
        const SweepPoint p = sweep_point(c, *c.sweep, fs[i]);
        rows[i] = estimate(p.lattice, p.roles, fs[i], kappa, c.series);
      } catch (const Error& e) {
        rows[i].f = fs[i];
        errors[i] = e.what();
      }
    }
  };
  unsigned n = o.threads ? o.threads : std::max(1u, std::thread::hardware_concurrency());
  n = std::min<unsigned>(n, static_cast<unsigned>(fs.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::ostringstream out;
  write_header(out, header_for("sweep " + c.sweep->shape, c));
  int status = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!errors[i].empty()) {
      err << "warning: f=" << format_number(fs[i]) << ": " << errors[i] << "\n";
      status = 2;
    }
    warn(err, fs[i], rows[i]);
    write_row(out, rows[i]);
  }
  emit(o, out.str());
  emit_plot(o, "sweep " + c.sweep->shape);
  return status;
}

int cmd_converge(const CliOptions& o, std::ostream& err) {
  const Config c = load(o);
  const Lattice lat = build_lattice(c);
  const Moments mom = cell_moments(lat);
  const Direction kappa = Direction::from_degrees(c.kappa_deg);
  auto js = c.converge.j;
  auto ms = c.converge.m;
  std::sort(js.begin(), js.end());
  std::sort(ms.begin(), ms.end());
  if (js.empty() || ms.empty() || js.front() < 1 || ms.front() < 0) {
    throw ConfigError("converge needs non-empty j >= 1 and m >= 0 lists");
  }

  struct Cell {
    int j, m;
    std::optional<double> c;
  };
  std::vector<Cell> cells;
  SeriesResult reference;
  for (int j : js) {
    const FourierTable t = mu_table(lat, j);
    const ReciprocalGrid g(j, lat.a1(), lat.a2());
    SeriesConfig cfg = c.series;
    cfg.j = j;
    cfg.m = ms.back();
    const double mu0 = cfg.mu0.resolve(mom);
    SeriesResult s;
    try {
      s = neumann_M(t, g, kappa, cfg, mu0);
    } catch (const DivergenceError& e) {
      err << "warning: j=" << j << ": " << e.what() << " at term " << e.term() << "\n";
      if (e.term() > 0) {
        cfg.m = static_cast<int>(e.term()) - 1;
        s = neumann_M(t, g, kappa, cfg, mu0);
      }
    }
    for (int m : ms) {
      Cell cell{j, m, std::nullopt};
      if (static_cast<std::size_t>(m) < s.partial_sums.size()) {
        const double mu_eff = t.mean() - s.partial_sums[m];
        if (mu_eff >= -1e-12 * t.mean()) cell.c = std::sqrt(std::max(mu_eff, 0.0) / mom.mean_rho);
      }
      cells.push_back(cell);
    }
    if (j == js.back()) reference = s;
  }

  const auto ref = cells.back().c;
  std::ostringstream out;
  write_header(out, header_for("converge", c));
  // The shared header names the estimate columns; converge has its own.
  std::string text = out.str();
  text.erase(text.rfind(kCsvColumns));
  std::ostringstream body;
  body << text << "j,N,modes,m,c_numeric,rel_dev,within_1pct\n";
  std::optional<std::pair<int, int>> first;
  for (const auto& cell : cells) {
    const int N = 2 * cell.j + 1;
    body << cell.j << ',' << N << ',' << N * N - 1 << ',' << cell.m << ',';
    if (cell.c) body << format_number(*cell.c);
    body << ',';
    if (cell.c && ref) {
      const double dev = std::abs(*cell.c - *ref) / *ref;
      body << format_number(dev) << ',' << (dev <= 0.01 ? 1 : 0);
      if (dev <= 0.01 && !first) first = {cell.j, cell.m};
    } else {
      body << ',';
    }
    body << '\n';
  }
  if (first) {
    body << "# smallest (j, m) within 1% of the reference: j=" << first->first << " m=" << first->second << "\n";
  }
  emit(o, body.str());

  if (!o.out.empty() && o.out != "-") {
    std::ofstream terms(o.out + ".terms.csv", std::ios::binary);
    terms << "# term decay of the reference run, j=" << js.back() << "\n# units: term in Pa\n"
          << "n,term,abs_term,ratio\n";
    for (std::size_t n = 0; n < reference.terms.size(); ++n) {
      terms << n << ',' << format_number(reference.terms[n]) << ','
            << format_number(std::abs(reference.terms[n])) << ',';
      if (n > 0 && reference.terms[n - 1] != 0.0) {
        terms << format_number(std::abs(reference.terms[n] / reference.terms[n - 1]));
      }
      terms << '\n';
    }
  }
  return ref ? 0 : 2;
}

int cmd_validate(const CliOptions& o, std::ostream& out) {
  Checks check{out};
  const std::string& s = o.suite;
  const bool all = s == "all";
  bool known = all;
  if (all || s == "duality") { suite_duality(check); known = true; }
  if (all || s == "bounds") { suite_bounds(check); known = true; }
  if (all || s == "oracle") { suite_oracle(check); known = true; }
  if (all || s == "appendix") { suite_appendix(check); known = true; }
  if (!known) throw ConfigError("unknown suite '" + s + "' (duality, bounds, oracle, appendix, all)");
  out << (check.failed ? "FAILED " : "OK ") << check.failed << " failing check(s)\n";
  return check.failed ? 1 : 0;
}

Lattice random_lattice(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto modulus = [&] { return 1e9 * std::exp(u(rng) * std::log(100.0)); };
  auto density = [&] { return 1000.0 + 10000.0 * u(rng); };
  std::vector<Phase> phases{{{modulus(), density()}, FullCell{}, "matrix"}};
  const int kind = static_cast<int>(u(rng) * 4.0);
  const double size = 0.2 + 0.5 * u(rng);
  const double room = 0.5 * (1.0 - size);
  const Point c{0.5 + (2 * u(rng) - 1) * room * 0.9, 0.5 + (2 * u(rng) - 1) * room * 0.9};
  switch (kind) {
    case 0:
      phases.push_back({{modulus(), density()}, AxisSquare{size, c}, "square"});
      break;
    case 1:
      phases.push_back({{modulus(), density()}, RotatedSquare45{size / std::sqrt(2.0), c}, "square45"});
      break;
    case 2:
      phases.push_back({{modulus(), density()}, Circle{0.5 * size, c}, "circle"});
      break;
    default:
      phases.push_back({{modulus(), density()}, AxisSquare{size, c}, "skin"});
      phases.push_back({{modulus(), density()}, AxisSquare{size * (0.3 + 0.5 * u(rng)), c}, "core"});
      break;
  }
  return Lattice(1.0, 1.0, std::move(phases));
}

}  // namespace shearhom

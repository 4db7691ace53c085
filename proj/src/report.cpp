#include "shearhom/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "shearhom/errors.hpp"
#include "shearhom/mm.hpp"
#include "shearhom/mst.hpp"

namespace shearhom {

namespace {

std::optional<double> root(double c2) {
  if (!std::isfinite(c2)) return std::nullopt;
  return std::sqrt(std::max(c2, 0.0));
}

void cell(std::ostream& out, const std::optional<double>& v) {
  if (v) out << format_number(*v);
}

}  // namespace

const char* const kCsvColumns =
    "f,c_numeric,c_pwe,c_mm,c_mmtilde,c_mst_a,c_mst_b,c_upper_bound,terms_used,last_term";

std::string format_number(double v) {
  if (v == 0.0) v = 0.0;  // drop negative zero
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

EstimateReport estimate(const Lattice& lattice, const Composition& roles, double f,
                        Direction kappa, const SeriesConfig& series) {
  EstimateReport r;
  r.f = f;
  const Moments mom = cell_moments(lattice);
  r.mean_rho = mom.mean_rho;
  r.mean_mu = mom.mean_mu;

  const FourierTable table = mu_table(lattice, series.j);
  const ReciprocalGrid grid(series.j, lattice.a1(), lattice.a2());
  const double F = F_along(F_quadratic(table, grid), kappa);

  try {
    const NumericResult n = effective_speed_numeric(table, mom, lattice.a1(), lattice.a2(), kappa, series);
    r.c_numeric = n.speed;
    r.terms_used = n.series.terms_used();
    r.last_term = n.series.last_term();
  } catch (const DivergenceError& e) {
    r.warnings.push_back(std::string(e.what()) + " at term " + std::to_string(e.term()));
  } catch (const Error& e) {
    r.warnings.push_back(e.what());
  }

  const bool isotropic = lattice.fourfold_symmetric();
  r.c_pwe = root(isotropic ? pwe_estimate_c2(mom) : pwe_estimate_c2(mom, F));
  r.c_upper_bound = root(pwe_bounds(mom, F).upper);

  try {
    const MMReport mm = mm_estimate(lattice);
    r.c_mm = mm.c_mm(kappa);
    r.c_mmtilde = mm.c_mmtilde(kappa);
  } catch (const Error& e) {
    r.warnings.push_back(std::string("MM: ") + e.what());
  }

  const auto& mats = roles.materials;
  const auto& fr = roles.fractions;
  try {
    if (mats.size() == 1) {
      r.c_mst_a = root(mats[0].mu / mom.mean_rho);
      r.c_mst_b = r.c_mst_a;
    } else if (mats.size() == 2) {
      r.c_mst_a = root(mst_two_phase(mats[0], mats[1], fr[1], mom.mean_rho));
      r.c_mst_b = root(mst_two_phase(mats[1], mats[0], fr[0], mom.mean_rho));
    } else if (mats.size() > 2) {
      std::vector<InclusionFraction> inc;
      for (std::size_t k = 1; k < mats.size(); ++k) inc.push_back({mats[k], fr[k]});
      r.c_mst_a = root(mst_kuster_toksoz(mats[0], inc, mom.mean_rho));
    }
  } catch (const Error& e) {
    r.warnings.push_back(std::string("MST: ") + e.what());
  }
  return r;
}

void write_header(std::ostream& out, const CsvHeader& h) {
  char hash[17];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(h.config_hash));
  out << "# shearhom " << h.command << "\n"
      << "# config_hash=" << hash << "\n"
      << "# j=" << h.series.j << " N=" << 2 * h.series.j + 1
      << " modes=" << (2 * h.series.j + 1) * (2 * h.series.j + 1) - 1 << " m=" << h.series.m
      << " mu0=" << to_string(h.series.mu0) << " path=" << to_string(h.series.path)
      << " kappa_deg=" << format_number(h.kappa_deg) << "\n"
      << "# units: f dimensionless; c_* in m/s; last_term in Pa\n"
      << kCsvColumns << "\n";
}

void write_row(std::ostream& out, const EstimateReport& r) {
  out << format_number(r.f) << ',';
  cell(out, r.c_numeric);
  out << ',';
  cell(out, r.c_pwe);
  out << ',';
  cell(out, r.c_mm);
  out << ',';
  cell(out, r.c_mmtilde);
  out << ',';
  cell(out, r.c_mst_a);
  out << ',';
  cell(out, r.c_mst_b);
  out << ',';
  cell(out, r.c_upper_bound);
  out << ',';
  if (r.terms_used) out << *r.terms_used;
  out << ',';
  cell(out, r.last_term);
  out << '\n';
}

std::string plot_script(const std::string& csv_path, const std::string& title) {
  std::string s;
  s += "import csv\nimport matplotlib\nmatplotlib.use('Agg')\nimport matplotlib.pyplot as plt\n\n";
  s += "path = r'''" + csv_path + "'''\n";
  s += "rows = [r for r in csv.reader(l for l in open(path) if not l.startswith('#'))]\n";
  s += "head, body = rows[0], rows[1:]\n";
  s += "f = [float(r[0]) for r in body]\n";
  s += "fig, ax = plt.subplots(figsize=(6, 4))\n";
  s += "for k, name in enumerate(head):\n";
  s += "    if not name.startswith('c_'):\n        continue\n";
  s += "    pts = [(x, float(r[k])) for x, r in zip(f, body) if r[k]]\n";
  s += "    if pts:\n";
  s += "        style = '-' if name == 'c_numeric' else '--'\n";
  s += "        ax.plot(*zip(*pts), style, label=name)\n";
  s += "ax.set_xlabel('f')\nax.set_ylabel('c, m/s')\n";
  s += "ax.set_title(r'''" + title + "''')\n";
  s += "ax.legend()\nfig.tight_layout()\nfig.savefig(path.rsplit('.', 1)[0] + '.png', dpi=150)\n";
  return s;
}

}  // namespace shearhom

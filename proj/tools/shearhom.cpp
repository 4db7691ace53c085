// shearhom: effective antiplane shear speed of 2D periodic composites.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "shearhom/commands.hpp"
#include "shearhom/errors.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Quasistatic effective shear-wave speed of 2D periodic composites"};
  app.require_subcommand(1);
  shearhom::CliOptions o;
  std::string mu0, path;
  int j = 0, m = -1;
  double kappa = 0.0;

  auto common = [&](CLI::App* sub, bool needs_config) {
    auto* cfg = sub->add_option("--config", o.config, "lattice config (JSON)");
    if (needs_config) cfg->required()->check(CLI::ExistingFile);
    sub->add_option("--out", o.out, "output CSV (default stdout)");
    sub->add_option("--j", j, "truncation level (modes per half-axis)")->check(CLI::PositiveNumber);
    sub->add_option("--m", m, "number of series terms")->check(CLI::NonNegativeNumber);
    sub->add_option("--mu0", mu0, "reference modulus: mean | mid | <Pa>");
    sub->add_option("--kappa", kappa, "propagation direction, degrees from x1");
    sub->add_option("--path", path, "operator path: direct | conv")
        ->check(CLI::IsMember({"direct", "conv"}));
    sub->add_option("--threads", o.threads, "worker threads (0 = all cores)");
  };

  auto* est = app.add_subcommand("estimate", "all estimators at the config's geometry");
  common(est, true);
  est->add_option("--plot", o.plot, "write a companion plot script");
  auto* sweep = app.add_subcommand("sweep", "concentration sweep of the config's sweep template");
  common(sweep, true);
  sweep->add_option("--plot", o.plot, "write a companion plot script");
  auto* conv = app.add_subcommand("converge", "c over a (j, m) table");
  common(conv, true);
  conv->add_option("--jlist", o.j_list, "truncation levels")->delimiter(',');
  conv->add_option("--mlist", o.m_list, "term counts")->delimiter(',');
  auto* val = app.add_subcommand("validate", "property suites");
  common(val, false);
  val->add_option("--suite", o.suite, "duality | bounds | oracle | appendix | all");

  CLI11_PARSE(app, argc, argv);

  for (auto* sub : {est, sweep, conv, val}) {
    if (!sub->parsed()) continue;
    if (sub->count("--j")) o.j = j;
    if (sub->count("--m")) o.m = m;
    if (sub->count("--mu0")) o.mu0 = mu0;
    if (sub->count("--path")) o.path = path;
    if (sub->count("--kappa")) o.kappa_deg = kappa;
  }

  try {
    if (est->parsed()) return shearhom::cmd_estimate(o, std::cerr);
    if (sweep->parsed()) return shearhom::cmd_sweep(o, std::cerr);
    if (conv->parsed()) return shearhom::cmd_converge(o, std::cerr);
    return shearhom::cmd_validate(o, std::cout);
  } catch (const shearhom::DivergenceError& e) {
    std::cerr << "error: " << e.what() << " (term " << e.term()
              << "); try a larger --mu0 or --j\n";
    return 3;
  } catch (const shearhom::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

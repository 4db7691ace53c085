#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "shearhom/config.hpp"

namespace shearhom {

struct CliOptions {
  std::string config;
  std::string out;  ///< empty: stdout
  std::string plot;  ///< optional companion script path
  std::optional<int> j;
  std::optional<int> m;
  std::optional<std::string> mu0;
  std::optional<double> kappa_deg;
  std::optional<std::string> path;
  std::vector<int> j_list;
  std::vector<int> m_list;
  std::string suite = "all";
  unsigned threads = 0;  ///< 0: hardware concurrency
};

/// Applies command-line overrides on top of the config's run block.
void apply_overrides(Config& config, const CliOptions& options);

/// Hash of the canonical config plus the effective run settings.
std::uint64_t config_hash(const Config& config);

int cmd_estimate(const CliOptions& options, std::ostream& err);
int cmd_sweep(const CliOptions& options, std::ostream& err);
int cmd_converge(const CliOptions& options, std::ostream& err);
/// Suites: duality, bounds, oracle, appendix, all. Prints one line per check.
int cmd_validate(const CliOptions& options, std::ostream& out);

/// Random two- or three-phase lattice (square, rotated square, circle or
/// coated square inclusions) with moduli in [1, 100] GPa.
Lattice random_lattice(std::uint64_t seed);

}  // namespace shearhom

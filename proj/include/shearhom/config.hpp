#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "shearhom/lattice.hpp"
#include "shearhom/pwe.hpp"

namespace shearhom {

/// Declared materials of a configuration with their filling fractions, in
/// declaration order (matrix first). Multiple-scattering estimates depend on
/// this designation, which the geometry alone does not fix.
struct Composition {
  std::vector<std::string> names;
  std::vector<Material> materials;
  std::vector<double> fractions;
};

struct SweepSpec {
  /// square | square45_symmetric | circle | coated_square | annulus | layer
  std::string shape = "square";
  double f_start = 0.0;
  double f_stop = 1.0;
  int count = 21;
  double alpha = 4.0 / 9.0;  ///< skin share of a coated inclusion

  std::vector<double> grid() const;
};

struct ConvergeSpec {
  std::vector<int> j{3, 5, 7, 9, 12, 14};
  std::vector<int> m{5, 10, 50, 100, 150, 200};
};

struct Config {
  double a1 = 1.0;
  double a2 = 1.0;
  std::vector<Phase> phases;
  SeriesConfig series;
  double kappa_deg = 0.0;
  std::optional<SweepSpec> sweep;
  ConvergeSpec converge;
  /// Canonical serialization of the parsed document (sorted keys).
  std::string canonical;
};

Config parse_config(const std::string& json_text);
Config load_config(const std::string& path);

/// "mid" | "mean" | a positive number in Pa.
ReferenceModulus parse_mu0(const std::string& text);
/// "direct" | "conv"
ApplyPath parse_path(const std::string& text);
std::string to_string(const ReferenceModulus& mu0);
std::string to_string(ApplyPath path);

Lattice build_lattice(const Config& config);

/// The config's own phases with their exact fractions.
Composition composition(const Config& config, const Lattice& lattice);

struct SweepPoint {
  double f = 0.0;
  Lattice lattice;
  Composition roles;
};

/// Builds the lattice of a one-parameter template from the declared phase
/// materials: phase 0 is the matrix, phase 1 the inclusion (or skin), phase 2
/// the core of coated templates. At f = 0 the inclusion phases are omitted.
SweepPoint sweep_point(const Config& config, const SweepSpec& spec, double f);

/// 64-bit FNV-1a.
std::uint64_t fnv1a(const std::string& bytes);

}  // namespace shearhom

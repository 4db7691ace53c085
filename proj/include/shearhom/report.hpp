#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "shearhom/config.hpp"
#include "shearhom/lattice.hpp"
#include "shearhom/pwe.hpp"

namespace shearhom {

/// One row of estimator output. Absent values are estimators that do not
/// apply or failed at this point; they are written as empty cells.
struct EstimateReport {
  double f = 0.0;
  std::optional<double> c_numeric;
  std::optional<double> c_pwe;
  std::optional<double> c_mm;
  std::optional<double> c_mmtilde;
  std::optional<double> c_mst_a;
  std::optional<double> c_mst_b;
  std::optional<double> c_upper_bound;
  std::optional<std::size_t> terms_used;
  std::optional<double> last_term;
  double mean_rho = 0.0;
  double mean_mu = 0.0;
  std::vector<std::string> warnings;
};

/// Runs every estimator on one lattice. `roles` fixes the matrix designation
/// for the multiple-scattering columns: with two declared materials c_mst_a
/// uses roles[0] as matrix and c_mst_b the conjugate; with three or more
/// c_mst_a is Kuster–Toksöz and c_mst_b is absent.
EstimateReport estimate(const Lattice& lattice, const Composition& roles, double f,
                        Direction kappa, const SeriesConfig& series);

/// "%.12g"
std::string format_number(double v);

extern const char* const kCsvColumns;

struct CsvHeader {
  std::string command;
  std::uint64_t config_hash = 0;
  SeriesConfig series;
  double kappa_deg = 0.0;
};

void write_header(std::ostream& out, const CsvHeader& header);
void write_row(std::ostream& out, const EstimateReport& r);

/// Matplotlib script plotting every speed column of `csv_path` against f.
std::string plot_script(const std::string& csv_path, const std::string& title);

}  // namespace shearhom

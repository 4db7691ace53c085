#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <iosfwd>
#include <vector>

#include "shearhom/lattice.hpp"

namespace shearhom {

using cplx = std::complex<double>;

struct GridIndex {
  int n1 = 0;
  int n2 = 0;
};

/// Nonzero reciprocal vectors g = 2π(n1/a1, n2/a2) with |n_i| <= j, in
/// row-major (n1 outer, n2 inner) order.
class ReciprocalGrid {
 public:
  ReciprocalGrid(int j, double a1, double a2);

  int j() const { return j_; }
  int per_axis() const { return 2 * j_ + 1; }
  std::size_t size() const { return index_.size(); }
  const GridIndex& index(std::size_t k) const { return index_[k]; }
  const std::array<double, 2>& g(std::size_t k) const { return g_[k]; }
  /// g / |g|
  const std::array<double, 2>& unit(std::size_t k) const { return unit_[k]; }
  double norm(std::size_t k) const { return norm_[k]; }
  /// Position of (n1, n2) in the ordering, or size() for (0, 0) / out of range.
  std::size_t position(int n1, int n2) const;

 private:
  int j_;
  std::vector<GridIndex> index_;
  std::vector<std::array<double, 2>> g_;
  std::vector<std::array<double, 2>> unit_;
  std::vector<double> norm_;
};

ReciprocalGrid build_grid(int j, double a1, double a2);

/// Fourier coefficients mu_hat(n1, n2) for |n_i| <= extent. A grid of level j
/// needs extent 2j so that every difference g - g' is present.
class FourierTable {
 public:
  explicit FourierTable(int extent);

  int extent() const { return extent_; }
  int side() const { return 2 * extent_ + 1; }
  bool covers(int n1, int n2) const {
    return n1 >= -extent_ && n1 <= extent_ && n2 >= -extent_ && n2 <= extent_;
  }
  cplx& at(int n1, int n2) { return data_[offset(n1, n2)]; }
  const cplx& at(int n1, int n2) const { return data_[offset(n1, n2)]; }
  /// mu_hat(0) = <mu>
  double mean() const { return data_[offset(0, 0)].real(); }

  /// Sum of |mu_hat|^2 over nonzero indices with |n_i| <= limit.
  double offdiag_energy(int limit) const;
  /// Sum of |mu_hat| over all nonzero indices in the table.
  double offdiag_l1() const;

 private:
  std::size_t offset(int n1, int n2) const {
    return static_cast<std::size_t>(n1 + extent_) * side() + static_cast<std::size_t>(n2 + extent_);
  }
  int extent_;
  std::vector<cplx> data_;
};

/// Fourier coefficient of a shape's indicator at integer index (n1, n2),
/// i.e. at the reciprocal vector g = 2π(n1/a1, n2/a2) of any rectangular cell
/// (shapes live in normalized cell coordinates, so the cell lengths drop out).
cplx shape_coefficient(const Shape& shape, int n1, int n2);

/// Analytic coefficients of mu over |n_i| <= 2j.
FourierTable mu_table(const Lattice& lattice, int j);

/// Discrete Fourier transform of the samples over |n_i| <= 2j, normalized so
/// that mu_hat(0) is the sample mean. Needs M >= 4j + 1.
FourierTable dft_table(const SampledField& field, int j);

/// Writes rows n1,n2,re,im.
void write_csv(const FourierTable& table, std::ostream& out);

}  // namespace shearhom

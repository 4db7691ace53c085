#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "shearhom/fourier.hpp"
#include "shearhom/lattice.hpp"

namespace shearhom {

using SpectralVector = std::vector<cplx>;

/// Unit propagation direction κ.
class Direction {
 public:
  /// Throws PreconditionError unless |(k1, k2)| = 1 within 1e-12.
  Direction(double k1, double k2);
  static Direction from_degrees(double theta);

  double k1() const { return k1_; }
  double k2() const { return k2_; }

 private:
  double k1_;
  double k2_;
};

enum class ApplyPath { direct, convolution };

/// Reference modulus mu0 of the splitting mu = mu0 + mu_delta.
struct ReferenceModulus {
  enum class Kind { midrange, mean, value };
  Kind kind = Kind::midrange;
  double pa = 0.0;  ///< used when kind == value

  static ReferenceModulus midrange() { return {Kind::midrange, 0.0}; }
  static ReferenceModulus mean() { return {Kind::mean, 0.0}; }
  static ReferenceModulus value(double pa) { return {Kind::value, pa}; }

  /// (mu_max + mu_min)/2, <mu>, or the explicit value.
  double resolve(const Moments& m) const;
};

struct SeriesConfig {
  int j = 12;
  int m = 150;
  ReferenceModulus mu0 = ReferenceModulus::midrange();
  ApplyPath path = ApplyPath::convolution;
  /// Stop early once |term_n| <= stop_tolerance * |partial sum|; 0 runs all m+1 terms.
  double stop_tolerance = 0.0;
};

/// True when the convolution path is FFT-accelerated in this build.
bool fft_available();

/// The matrix-free coupling operator
///   (C v)(g) = mu0^-1 Σ_{g'} mu_delta_hat(g - g') (g·g')/(|g||g'|) v(g')
/// on the nonzero grid vectors, with mu_delta_hat(0) = mu_hat(0) - mu0.
///
/// The direct path is the O(N^4) double loop. The convolution path splits
/// the kernel into the two Cartesian components of the unit vectors and
/// evaluates each as a zero-padded circular convolution on a box of side
/// at least 4j+1, which is wide enough that wrap-around never reaches the
/// retained outputs.
class CouplingOperator {
 public:
  CouplingOperator(const FourierTable& table, const ReciprocalGrid& grid, double mu0,
                   ApplyPath path);
  ~CouplingOperator();
  CouplingOperator(CouplingOperator&&) noexcept;
  CouplingOperator& operator=(CouplingOperator&&) noexcept;

  SpectralVector apply(std::span<const cplx> v) const;
  double mu0() const { return mu0_; }
  ApplyPath path() const { return path_; }
  /// Side of the padded convolution box.
  int box() const { return box_; }

 private:
  SpectralVector apply_direct(std::span<const cplx> v) const;
  SpectralVector apply_convolution(std::span<const cplx> v) const;

  FourierTable table_;
  ReciprocalGrid grid_;
  double mu0_;
  ApplyPath path_;
  int box_ = 0;
  std::vector<cplx> kernel_spectrum_;  // FFT of the padded kernel (fft builds)
  std::vector<cplx> kernel_box_;       // padded kernel (non-fft builds)
  struct FftPlans;
  std::unique_ptr<FftPlans> plans_;
};

/// (apply_C) convenience wrapper.
SpectralVector apply_C(const FourierTable& table, const ReciprocalGrid& grid,
                       std::span<const cplx> v, double mu0, ApplyPath path = ApplyPath::direct);

/// f(g) = mu_hat(g) (g·κ)/|g|.
SpectralVector assemble_f(const FourierTable& table, const ReciprocalGrid& grid, Direction kappa);

/// (u, v) = Σ u(g) conj(v(g)).
cplx inner(std::span<const cplx> u, std::span<const cplx> v);

struct SeriesResult {
  double value = 0.0;  ///< M(κ), Pa
  double mu0 = 0.0;
  std::vector<double> terms;         ///< mu0^-1 ((-C)^n f, f), n = 0..
  std::vector<double> partial_sums;  ///< running sums of `terms`
  std::size_t terms_used() const { return terms.size(); }
  double last_term() const { return terms.empty() ? 0.0 : terms.back(); }
};

/// M(κ) ≈ mu0^-1 Σ_{n=0}^{m} ((-C)^n f, f), evaluated termwise by storing C^n f.
///
/// Throws DivergenceError on a non-finite term, or when term magnitudes grow
/// five times in a row and exceed the n = 0 term (impossible if ||C|| <= 1).
SeriesResult neumann_M(const FourierTable& table, const ReciprocalGrid& grid, Direction kappa,
                       const SeriesConfig& config, double mu0);

/// Largest truncation level accepted by dense_M.
inline constexpr int kDenseMaxJ = 8;

/// M(κ) = (B^-1 d, d) with B[g,g'] = mu_hat(g-g') g·g', d(g) = mu_hat(g) g·κ,
/// by a dense Hermitian solve. Brute-force reference for neumann_M.
double dense_M(const FourierTable& table, const ReciprocalGrid& grid, Direction kappa);

/// F_ij = Σ_{g≠0} |mu_hat(g)|^2 g_i g_j / |g|^2 over the grid.
std::array<std::array<double, 2>, 2> F_quadratic(const FourierTable& table,
                                                 const ReciprocalGrid& grid);

double F_along(const std::array<std::array<double, 2>, 2>& F, Direction kappa);

struct NumericResult {
  double speed = 0.0;   ///< m/s
  double mu_eff = 0.0;  ///< Pa
  double M = 0.0;       ///< Pa
  Moments moments;
  SeriesResult series;
};

/// c = sqrt((<mu> - M)/<rho>) with M from the Neumann series.
/// Throws InvalidResult when <mu> - M < 0.
NumericResult effective_speed_numeric(const Lattice& lattice, Direction kappa,
                                      const SeriesConfig& config);
NumericResult effective_speed_numeric(const SampledField& field, Direction kappa,
                                      const SeriesConfig& config);
/// Same from a precomputed table and moments (analytic profiles).
NumericResult effective_speed_numeric(const FourierTable& table, const Moments& moments,
                                      double a1, double a2, Direction kappa,
                                      const SeriesConfig& config);

/// Isotropic closed-form estimate c_PWE^2 = (<mu> - var/(mu_max+mu_min))/<rho>.
double pwe_estimate_c2(const Moments& m);
/// Directional estimate (<mu> - F(κ)/mu_bar)/<rho>.
double pwe_estimate_c2(const Moments& m, double F_kappa);
/// Two-phase form, which depends on the filling fractions only.
double pwe_two_phase_c2(double mu1, double f1, double mu2, double f2, double mean_rho);

/// Bounds on c^2. `lower` is absent when mu_min = 0.
struct SpeedSquaredBounds {
  std::optional<double> lower;
  double upper = 0.0;
};

/// (<mu> - F/mu_min)/<rho> clamped at 0, and (<mu> - F/mu_max)/<rho>.
SpeedSquaredBounds pwe_bounds(const Moments& m, double F_kappa);
/// Isotropic form, F replaced by (<mu^2> - <mu>^2)/2.
SpeedSquaredBounds pwe_bounds(const Moments& m);

struct FluidPhase {
  double bulk = 0.0;  ///< K, Pa
  double rho = 0.0;   ///< kg/m^3
  double fraction = 0.0;
};

struct AcousticEstimate {
  double upper_c2 = 0.0;
  double estimate_c2 = 0.0;
};

/// Cubic 3D fluid analogue obtained from the SH results under rho -> 1/K,
/// mu -> 1/rho.
AcousticEstimate acoustic3d_estimate(std::span<const FluidPhase> phases);

}  // namespace shearhom

#include "shearhom/pwe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>

#include <Eigen/Dense>

#include "shearhom/errors.hpp"

#ifdef SHEARHOM_HAVE_FFTW
#include <fftw3.h>
#endif

namespace shearhom {

namespace {

int wrap_index(int n, int box) { return ((n % box) + box) % box; }

// Smallest 2^a 3^b 5^c 7^d >= n.
int smooth_size(int n) {
  for (int s = n;; ++s) {
    int r = s;
    for (int p : {2, 3, 5, 7}) {
      while (r % p == 0) r /= p;
    }
    if (r == 1) return s;
  }
}

}  // namespace

Direction::Direction(double k1, double k2) : k1_(k1), k2_(k2) {
  if (!(std::abs(std::hypot(k1, k2) - 1.0) <= 1e-12)) {
    throw PreconditionError("direction must be a unit vector");
  }
}

Direction Direction::from_degrees(double theta) {
  const double r = theta * std::numbers::pi / 180.0;
  const double c = std::cos(r);
  const double s = std::sin(r);
  const double n = std::hypot(c, s);
  return Direction(c / n, s / n);
}

double ReferenceModulus::resolve(const Moments& m) const {
  double v = 0.0;
  switch (kind) {
    case Kind::midrange:
      v = 0.5 * (m.mu_max + m.mu_min);
      break;
    case Kind::mean:
      v = m.mean_mu;
      break;
    case Kind::value:
      v = pa;
      break;
  }
  if (!(v > 0.0) || !std::isfinite(v)) throw PreconditionError("reference modulus mu0 must be > 0");
  return v;
}

#ifdef SHEARHOM_HAVE_FFTW
bool fft_available() { return true; }

namespace {
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwBuffer {
  explicit FftwBuffer(std::size_t n)
      : ptr(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n))), size(n) {
    std::fill_n(reinterpret_cast<double*>(ptr), 2 * n, 0.0);
  }
  ~FftwBuffer() { fftw_free(ptr); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;
  cplx* data() { return reinterpret_cast<cplx*>(ptr); }
  fftw_complex* ptr;
  std::size_t size;
};
}  // namespace

struct CouplingOperator::FftPlans {
  explicit FftPlans(int box) {
    FftwBuffer a(static_cast<std::size_t>(box) * box);
    FftwBuffer b(static_cast<std::size_t>(box) * box);
    std::lock_guard lock(planner_mutex());
    forward = fftw_plan_dft_2d(box, box, a.ptr, b.ptr, FFTW_FORWARD, FFTW_ESTIMATE);
    backward = fftw_plan_dft_2d(box, box, a.ptr, b.ptr, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  ~FftPlans() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(forward);
    fftw_destroy_plan(backward);
  }
  fftw_plan forward{};
  fftw_plan backward{};
};
#else
bool fft_available() { return false; }
struct CouplingOperator::FftPlans {};
#endif

CouplingOperator::CouplingOperator(const FourierTable& table, const ReciprocalGrid& grid,
                                   double mu0, ApplyPath path)
    : table_(table), grid_(grid), mu0_(mu0), path_(path) {
  if (!(mu0 > 0.0)) throw PreconditionError("mu0 must be > 0");
  const int j = grid.j();
  if (table.extent() < 2 * j) {
    throw PreconditionError("Fourier table must cover |n| <= 2j for the coupling kernel");
  }
  if (path_ != ApplyPath::convolution) return;

  box_ = smooth_size(4 * j + 1);
  const std::size_t n = static_cast<std::size_t>(box_) * box_;
  std::vector<cplx> kernel(n, cplx{});
  for (int n1 = -2 * j; n1 <= 2 * j; ++n1) {
    for (int n2 = -2 * j; n2 <= 2 * j; ++n2) {
      cplx k = table.at(n1, n2);
      if (n1 == 0 && n2 == 0) k -= mu0;
      kernel[static_cast<std::size_t>(wrap_index(n1, box_)) * box_ + wrap_index(n2, box_)] = k;
    }
  }
#ifdef SHEARHOM_HAVE_FFTW
  plans_ = std::make_unique<FftPlans>(box_);
  FftwBuffer in(n);
  FftwBuffer out(n);
  std::copy(kernel.begin(), kernel.end(), in.data());
  fftw_execute_dft(plans_->forward, in.ptr, out.ptr);
  kernel_spectrum_.assign(out.data(), out.data() + n);
#else
  kernel_box_ = std::move(kernel);
#endif
}

CouplingOperator::~CouplingOperator() = default;
CouplingOperator::CouplingOperator(CouplingOperator&&) noexcept = default;
CouplingOperator& CouplingOperator::operator=(CouplingOperator&&) noexcept = default;

SpectralVector CouplingOperator::apply(std::span<const cplx> v) const {
  if (v.size() != grid_.size()) throw PreconditionError("vector length does not match the grid");
  return path_ == ApplyPath::direct ? apply_direct(v) : apply_convolution(v);
}

SpectralVector CouplingOperator::apply_direct(std::span<const cplx> v) const {
  const std::size_t n = grid_.size();
  SpectralVector out(n);
  const double inv = 1.0 / mu0_;
  for (std::size_t a = 0; a < n; ++a) {
    const GridIndex ia = grid_.index(a);
    const auto& ua = grid_.unit(a);
    cplx s{};
    for (std::size_t b = 0; b < n; ++b) {
      const GridIndex ib = grid_.index(b);
      const auto& ub = grid_.unit(b);
      cplx k = table_.at(ia.n1 - ib.n1, ia.n2 - ib.n2);
      if (a == b) k -= mu0_;
      s += k * (ua[0] * ub[0] + ua[1] * ub[1]) * v[b];
    }
    out[a] = s * inv;
  }
  return out;
}

SpectralVector CouplingOperator::apply_convolution(std::span<const cplx> v) const {
  const std::size_t n = grid_.size();
  SpectralVector out(n);
#ifdef SHEARHOM_HAVE_FFTW
  const std::size_t cells = static_cast<std::size_t>(box_) * box_;
  FftwBuffer p1(cells), p2(cells), s1(cells), s2(cells);
  std::vector<std::size_t> slot(n);
  for (std::size_t b = 0; b < n; ++b) {
    const GridIndex ib = grid_.index(b);
    slot[b] = static_cast<std::size_t>(wrap_index(ib.n1, box_)) * box_ + wrap_index(ib.n2, box_);
    p1.data()[slot[b]] = grid_.unit(b)[0] * v[b];
    p2.data()[slot[b]] = grid_.unit(b)[1] * v[b];
  }
  fftw_execute_dft(plans_->forward, p1.ptr, s1.ptr);
  fftw_execute_dft(plans_->forward, p2.ptr, s2.ptr);
  for (std::size_t c = 0; c < cells; ++c) {
    s1.data()[c] *= kernel_spectrum_[c];
    s2.data()[c] *= kernel_spectrum_[c];
  }
  fftw_execute_dft(plans_->backward, s1.ptr, p1.ptr);
  fftw_execute_dft(plans_->backward, s2.ptr, p2.ptr);
  const double scale = 1.0 / (static_cast<double>(cells) * mu0_);
  for (std::size_t a = 0; a < n; ++a) {
    const auto& ua = grid_.unit(a);
    out[a] = (ua[0] * p1.data()[slot[a]] + ua[1] * p2.data()[slot[a]]) * scale;
  }
#else
  // Circular convolution evaluated directly on the padded box.
  std::vector<cplx> p1(n), p2(n);
  for (std::size_t b = 0; b < n; ++b) {
    p1[b] = grid_.unit(b)[0] * v[b];
    p2[b] = grid_.unit(b)[1] * v[b];
  }
  for (std::size_t a = 0; a < n; ++a) {
    const GridIndex ia = grid_.index(a);
    cplx q1{}, q2{};
    for (std::size_t b = 0; b < n; ++b) {
      const GridIndex ib = grid_.index(b);
      const cplx k = kernel_box_[static_cast<std::size_t>(wrap_index(ia.n1 - ib.n1, box_)) * box_ +
                                 wrap_index(ia.n2 - ib.n2, box_)];
      q1 += k * p1[b];
      q2 += k * p2[b];
    }
    const auto& ua = grid_.unit(a);
    out[a] = (ua[0] * q1 + ua[1] * q2) / mu0_;
  }
#endif
  return out;
}

SpectralVector apply_C(const FourierTable& table, const ReciprocalGrid& grid,
                       std::span<const cplx> v, double mu0, ApplyPath path) {
  return CouplingOperator(table, grid, mu0, path).apply(v);
}

SpectralVector assemble_f(const FourierTable& table, const ReciprocalGrid& grid, Direction kappa) {
  if (table.extent() < grid.j()) throw PreconditionError("Fourier table does not cover the grid");
  SpectralVector f(grid.size());
  for (std::size_t a = 0; a < grid.size(); ++a) {
    const GridIndex i = grid.index(a);
    const auto& u = grid.unit(a);
    f[a] = table.at(i.n1, i.n2) * (u[0] * kappa.k1() + u[1] * kappa.k2());
  }
  return f;
}

cplx inner(std::span<const cplx> u, std::span<const cplx> v) {
  cplx s{};
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * std::conj(v[i]);
  return s;
}

SeriesResult neumann_M(const FourierTable& table, const ReciprocalGrid& grid, Direction kappa,
                       const SeriesConfig& config, double mu0) {
  if (config.m < 0) throw PreconditionError("series length m must be >= 0");
  SeriesResult r;
  r.mu0 = mu0;
  const SpectralVector f = assemble_f(table, grid, kappa);
  const CouplingOperator op(table, grid, mu0, config.path);

  SpectralVector power = f;  // C^n f
  double sum = 0.0;
  int growth = 0;
  double first = 0.0;
  for (int n = 0; n <= config.m; ++n) {
    if (n > 0) power = op.apply(power);
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    const double term = sign * inner(power, f).real() / mu0;
    if (!std::isfinite(term)) {
      throw DivergenceError("Neumann series produced a non-finite term", static_cast<std::size_t>(n));
    }
    if (n == 0) first = std::abs(term);
    if (n > 0) {
      growth = std::abs(term) > std::abs(r.terms.back()) ? growth + 1 : 0;
      if (growth >= 5 && std::abs(term) > first * (1.0 + 1e-9)) {
        throw DivergenceError("Neumann series diverges (||C|| >= 1); increase mu0 or j",
                              static_cast<std::size_t>(n));
      }
    }
    sum += term;
    r.terms.push_back(term);
    r.partial_sums.push_back(sum);
    if (config.stop_tolerance > 0.0 && n > 0 &&
        std::abs(term) <= config.stop_tolerance * std::abs(sum)) {
      break;
    }
  }
  r.value = sum;
  return r;
}

double dense_M(const FourierTable& table, const ReciprocalGrid& grid, Direction kappa) {
  if (grid.j() > kDenseMaxJ) throw PreconditionError("dense_M is limited to j <= 8");
  if (table.extent() < 2 * grid.j()) throw PreconditionError("Fourier table must cover |n| <= 2j");
  const auto n = static_cast<Eigen::Index>(grid.size());
  Eigen::MatrixXcd B(n, n);
  Eigen::VectorXcd d(n);
  for (Eigen::Index a = 0; a < n; ++a) {
    const GridIndex ia = grid.index(static_cast<std::size_t>(a));
    const auto& ga = grid.g(static_cast<std::size_t>(a));
    d(a) = table.at(ia.n1, ia.n2) * (ga[0] * kappa.k1() + ga[1] * kappa.k2());
    for (Eigen::Index b = 0; b < n; ++b) {
      const GridIndex ib = grid.index(static_cast<std::size_t>(b));
      const auto& gb = grid.g(static_cast<std::size_t>(b));
      B(a, b) = table.at(ia.n1 - ib.n1, ia.n2 - ib.n2) * (ga[0] * gb[0] + ga[1] * gb[1]);
    }
  }
  if (d.squaredNorm() == 0.0) return 0.0;
  Eigen::LDLT<Eigen::MatrixXcd> ldlt(B);
  if (ldlt.info() != Eigen::Success || !(ldlt.rcond() > 1e-14)) {
    throw SingularSystem("dense_M: B is numerically singular");
  }
  const Eigen::VectorXcd h = ldlt.solve(d);
  return d.dot(h).real();  // conj(d)·h = (B^-1 d, d)
}

std::array<std::array<double, 2>, 2> F_quadratic(const FourierTable& table,
                                                 const ReciprocalGrid& grid) {
  std::array<std::array<double, 2>, 2> F{};
  for (std::size_t a = 0; a < grid.size(); ++a) {
    const GridIndex i = grid.index(a);
    const double w = std::norm(table.at(i.n1, i.n2));
    const auto& u = grid.unit(a);
    F[0][0] += w * u[0] * u[0];
    F[0][1] += w * u[0] * u[1];
    F[1][1] += w * u[1] * u[1];
  }
  F[1][0] = F[0][1];
  return F;
}

double F_along(const std::array<std::array<double, 2>, 2>& F, Direction kappa) {
  const double k1 = kappa.k1(), k2 = kappa.k2();
  return F[0][0] * k1 * k1 + 2.0 * F[0][1] * k1 * k2 + F[1][1] * k2 * k2;
}

NumericResult effective_speed_numeric(const FourierTable& table, const Moments& moments,
                                      double a1, double a2, Direction kappa,
                                      const SeriesConfig& config) {
  const ReciprocalGrid grid(config.j, a1, a2);
  NumericResult r;
  r.moments = moments;
  r.series = neumann_M(table, grid, kappa, config, config.mu0.resolve(moments));
  r.M = r.series.value;
  const double mean = table.mean();
  r.mu_eff = mean - r.M;
  if (r.mu_eff < 0.0) {
    if (r.mu_eff < -1e-12 * mean) {
      throw InvalidResult("effective modulus <mu> - M is negative; series undertruncated or diverged");
    }
    r.mu_eff = 0.0;
  }
  r.speed = std::sqrt(r.mu_eff / moments.mean_rho);
  return r;
}

NumericResult effective_speed_numeric(const Lattice& lattice, Direction kappa,
                                      const SeriesConfig& config) {
  return effective_speed_numeric(mu_table(lattice, config.j), cell_moments(lattice), lattice.a1(),
                                 lattice.a2(), kappa, config);
}

NumericResult effective_speed_numeric(const SampledField& field, Direction kappa,
                                      const SeriesConfig& config) {
  return effective_speed_numeric(dft_table(field, config.j), cell_moments(field), field.a1(),
                                 field.a2(), kappa, config);
}

double pwe_estimate_c2(const Moments& m) {
  const double denom = m.mu_max + m.mu_min;
  if (!(denom > 0.0)) throw PreconditionError("mu_max + mu_min must be > 0");
  return (m.mean_mu - m.variance() / denom) / m.mean_rho;
}

double pwe_estimate_c2(const Moments& m, double F_kappa) {
  const double mu_bar = 0.5 * (m.mu_max + m.mu_min);
  if (!(mu_bar > 0.0)) throw PreconditionError("mu_max + mu_min must be > 0");
  return (m.mean_mu - F_kappa / mu_bar) / m.mean_rho;
}

double pwe_two_phase_c2(double mu1, double f1, double mu2, double f2, double mean_rho) {
  const double d = mu1 - mu2;
  return (mu1 * f1 + mu2 * f2 - f1 * f2 * d * d / (mu1 + mu2)) / mean_rho;
}

SpeedSquaredBounds pwe_bounds(const Moments& m, double F_kappa) {
  SpeedSquaredBounds b;
  b.upper = (m.mean_mu - F_kappa / m.mu_max) / m.mean_rho;
  if (m.mu_min > 0.0) b.lower = std::max(0.0, (m.mean_mu - F_kappa / m.mu_min) / m.mean_rho);
  return b;
}

SpeedSquaredBounds pwe_bounds(const Moments& m) { return pwe_bounds(m, 0.5 * m.variance()); }

AcousticEstimate acoustic3d_estimate(std::span<const FluidPhase> phases) {
  if (phases.empty()) throw PreconditionError("acoustic3d_estimate needs at least one phase");
  double inv_k = 0.0, a = 0.0, a2 = 0.0, total = 0.0;
  double amax = 0.0, amin = std::numeric_limits<double>::infinity();
  for (const auto& p : phases) {
    if (!(p.bulk > 0.0) || !(p.rho > 0.0) || p.fraction < 0.0) {
      throw PreconditionError("acoustic phases need K > 0, rho > 0, fraction >= 0");
    }
    const double s = 1.0 / p.rho;
    inv_k += p.fraction / p.bulk;
    a += p.fraction * s;
    a2 += p.fraction * s * s;
    total += p.fraction;
    if (p.fraction > 0.0) {
      amax = std::max(amax, s);
      amin = std::min(amin, s);
    }
  }
  if (std::abs(total - 1.0) > 1e-9) throw PreconditionError("phase fractions must sum to 1");
  const double var = a2 - a * a;
  return {(a - var / (3.0 * amax)) / inv_k, (a - 2.0 / 3.0 * var / (amax + amin)) / inv_k};
}

}  // namespace shearhom

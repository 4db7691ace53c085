#include "shearhom/fourier.hpp"

#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <variant>

#include "shearhom/errors.hpp"

namespace shearhom {

namespace {

using std::numbers::pi;

double sinc(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

// 2 J1(z) / z, the Fourier transform of a unit-area disk indicator.
double jinc(double z) {
  if (std::abs(z) < 1e-4) return 1.0 - z * z / 8.0;
  return 2.0 * std::cyl_bessel_j(1.0, z) / z;
}

cplx shift(double q1, double q2, Point c) {
  return std::polar(1.0, -(q1 * c.x1 + q2 * c.x2));
}

double disk(double r, double q) { return pi * r * r * jinc(q * r); }

}  // namespace

ReciprocalGrid::ReciprocalGrid(int j, double a1, double a2) : j_(j) {
  if (j < 1) throw PreconditionError("truncation level j must be >= 1");
  if (!(a1 > 0.0) || !(a2 > 0.0)) throw PreconditionError("cell lengths must be positive");
  const std::size_t n = static_cast<std::size_t>(per_axis()) * per_axis() - 1;
  index_.reserve(n);
  g_.reserve(n);
  unit_.reserve(n);
  norm_.reserve(n);
  for (int n1 = -j; n1 <= j; ++n1) {
    for (int n2 = -j; n2 <= j; ++n2) {
      if (n1 == 0 && n2 == 0) continue;
      const std::array<double, 2> g{2.0 * pi * n1 / a1, 2.0 * pi * n2 / a2};
      const double len = std::hypot(g[0], g[1]);
      index_.push_back({n1, n2});
      g_.push_back(g);
      unit_.push_back({g[0] / len, g[1] / len});
      norm_.push_back(len);
    }
  }
}

std::size_t ReciprocalGrid::position(int n1, int n2) const {
  if (std::abs(n1) > j_ || std::abs(n2) > j_ || (n1 == 0 && n2 == 0)) return size();
  const std::size_t flat = static_cast<std::size_t>(n1 + j_) * per_axis() + (n2 + j_);
  const std::size_t zero = static_cast<std::size_t>(j_) * per_axis() + j_;
  return flat < zero ? flat : flat - 1;
}

ReciprocalGrid build_grid(int j, double a1, double a2) { return ReciprocalGrid(j, a1, a2); }

FourierTable::FourierTable(int extent) : extent_(extent) {
  if (extent < 0) throw PreconditionError("table extent must be >= 0");
  data_.assign(static_cast<std::size_t>(side()) * side(), cplx{});
}

double FourierTable::offdiag_energy(int limit) const {
  const int l = std::min(limit, extent_);
  double s = 0.0;
  for (int n1 = -l; n1 <= l; ++n1) {
    for (int n2 = -l; n2 <= l; ++n2) {
      if (n1 != 0 || n2 != 0) s += std::norm(at(n1, n2));
    }
  }
  return s;
}

double FourierTable::offdiag_l1() const {
  double s = 0.0;
  for (int n1 = -extent_; n1 <= extent_; ++n1) {
    for (int n2 = -extent_; n2 <= extent_; ++n2) {
      if (n1 != 0 || n2 != 0) s += std::abs(at(n1, n2));
    }
  }
  return s;
}

cplx shape_coefficient(const Shape& shape, int n1, int n2) {
  const double q1 = 2.0 * pi * n1;
  const double q2 = 2.0 * pi * n2;
  if (std::holds_alternative<FullCell>(shape)) {
    return (n1 == 0 && n2 == 0) ? cplx{1.0} : cplx{};
  }
  if (const auto* s = std::get_if<AxisSquare>(&shape)) {
    return s->side * s->side * sinc(0.5 * q1 * s->side) * sinc(0.5 * q2 * s->side) *
           shift(q1, q2, s->center);
  }
  if (const auto* s = std::get_if<RotatedSquare45>(&shape)) {
    // Rotating the shape by R rotates its transform: evaluate at R^T q.
    const double r1 = (q1 + q2) / std::numbers::sqrt2;
    const double r2 = (q2 - q1) / std::numbers::sqrt2;
    return s->side * s->side * sinc(0.5 * r1 * s->side) * sinc(0.5 * r2 * s->side) *
           shift(q1, q2, s->center);
  }
  if (const auto* c = std::get_if<Circle>(&shape)) {
    return disk(c->radius, std::hypot(q1, q2)) * shift(q1, q2, c->center);
  }
  if (const auto* a = std::get_if<Annulus>(&shape)) {
    const double q = std::hypot(q1, q2);
    return (disk(a->outer, q) - disk(a->inner, q)) * shift(q1, q2, a->center);
  }
  const auto& l = std::get<Layer>(shape);
  const bool along_x1 = l.normal == Axis::x1;
  if ((along_x1 ? n2 : n1) != 0) return {};
  const double q = along_x1 ? q1 : q2;
  return l.width * sinc(0.5 * q * l.width) * std::polar(1.0, -q * l.center);
}

FourierTable mu_table(const Lattice& lattice, int j) {
  if (j < 1) throw PreconditionError("truncation level j must be >= 1");
  const int e = 2 * j;
  FourierTable t(e);
  const auto phases = lattice.phases();
  t.at(0, 0) = phases[0].material.mu;
  for (std::size_t k = 1; k < phases.size(); ++k) {
    const double contrast = phases[k].material.mu - phases[lattice.underlay(k)].material.mu;
    if (contrast == 0.0 || area(phases[k].shape) == 0.0) continue;
    for (int n1 = -e; n1 <= e; ++n1) {
      for (int n2 = -e; n2 <= e; ++n2) {
        t.at(n1, n2) += contrast * shape_coefficient(phases[k].shape, n1, n2);
      }
    }
  }
  return t;
}

FourierTable dft_table(const SampledField& field, int j) {
  if (j < 1) throw PreconditionError("truncation level j must be >= 1");
  const int e = 2 * j;
  const std::size_t m = field.m();
  if (m < static_cast<std::size_t>(2 * e + 1)) {
    throw AliasingError("dft_table: need at least 4j+1 samples per axis to resolve |n| <= 2j");
  }
  const std::size_t k = static_cast<std::size_t>(2 * e + 1);
  // twiddle[n][i] = exp(-2πi n ς_i), ς_i = (i + 1/2) / M
  std::vector<cplx> tw(k * m);
  for (std::size_t n = 0; n < k; ++n) {
    const double freq = static_cast<double>(static_cast<int>(n) - e);
    for (std::size_t i = 0; i < m; ++i) {
      tw[n * m + i] = std::polar(1.0, -2.0 * pi * freq * SampledField::node(i, m));
    }
  }
  // Transform along x1 first: partial[n1][i2].
  std::vector<cplx> partial(k * m, cplx{});
  for (std::size_t i1 = 0; i1 < m; ++i1) {
    for (std::size_t n = 0; n < k; ++n) {
      const cplx w = tw[n * m + i1];
      cplx* row = &partial[n * m];
      for (std::size_t i2 = 0; i2 < m; ++i2) row[i2] += w * field.mu(i1, i2);
    }
  }
  FourierTable t(e);
  const double scale = 1.0 / (static_cast<double>(m) * static_cast<double>(m));
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      cplx s{};
      for (std::size_t i2 = 0; i2 < m; ++i2) s += partial[a * m + i2] * tw[b * m + i2];
      t.at(static_cast<int>(a) - e, static_cast<int>(b) - e) = s * scale;
    }
  }
  return t;
}

void write_csv(const FourierTable& table, std::ostream& out) {
  const auto flags = out.flags();
  const auto prec = out.precision();
  out << "n1,n2,re,im\n" << std::setprecision(12);
  const int e = table.extent();
  for (int n1 = -e; n1 <= e; ++n1) {
    for (int n2 = -e; n2 <= e; ++n2) {
      const cplx v = table.at(n1, n2);
      out << n1 << ',' << n2 << ',' << v.real() << ',' << v.imag() << '\n';
    }
  }
  out.flags(flags);
  out.precision(prec);
}

}  // namespace shearhom

#include "shearhom/shape.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace shearhom {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double coord(Point p, Axis a) { return a == Axis::x1 ? p.x1 : p.x2; }

double disk_chord(double r, double offset) {
  const double h2 = r * r - offset * offset;
  return h2 > 0.0 ? 2.0 * std::sqrt(h2) : 0.0;
}

}  // namespace

double RotatedSquare45::half_diagonal() const { return side / std::numbers::sqrt2; }

double area(const Shape& s) {
  using std::numbers::pi;
  return std::visit(
      overloaded{
          [](const FullCell&) { return 1.0; },
          [](const AxisSquare& q) { return q.side * q.side; },
          [](const RotatedSquare45& q) { return q.side * q.side; },
          [](const Circle& c) { return pi * c.radius * c.radius; },
          [](const Annulus& a) { return pi * (a.outer * a.outer - a.inner * a.inner); },
          [](const Layer& l) { return l.width; },
      },
      s);
}

bool contains(const Shape& s, Point p) { return contains_strictly(s, p, 0.0); }

bool contains_strictly(const Shape& s, Point p, double margin) {
  // margin == 0 gives the closed set; margin > 0 shrinks every boundary inward.
  return std::visit(
      overloaded{
          [&](const FullCell&) { return true; },
          [&](const AxisSquare& q) {
            const double h = 0.5 * q.side - margin;
            return std::abs(p.x1 - q.center.x1) <= h && std::abs(p.x2 - q.center.x2) <= h;
          },
          [&](const RotatedSquare45& q) {
            const double h = q.half_diagonal() - margin * std::numbers::sqrt2;
            return std::abs(p.x1 - q.center.x1) + std::abs(p.x2 - q.center.x2) <= h;
          },
          [&](const Circle& c) {
            return std::hypot(p.x1 - c.center.x1, p.x2 - c.center.x2) <= c.radius - margin;
          },
          [&](const Annulus& a) {
            const double d = std::hypot(p.x1 - a.center.x1, p.x2 - a.center.x2);
            return d >= a.inner + margin && d <= a.outer - margin;
          },
          [&](const Layer& l) {
            return std::abs(coord(p, l.normal) - l.center) <= 0.5 * l.width - margin;
          },
      },
      s);
}

double chord(const Shape& s, Axis along, double at) {
  const Axis fixed = other(along);
  return std::visit(
      overloaded{
          [&](const FullCell&) { return 1.0; },
          [&](const AxisSquare& q) {
            return std::abs(at - coord(q.center, fixed)) <= 0.5 * q.side ? q.side : 0.0;
          },
          [&](const RotatedSquare45& q) {
            return std::max(0.0, 2.0 * (q.half_diagonal() - std::abs(at - coord(q.center, fixed))));
          },
          [&](const Circle& c) { return disk_chord(c.radius, at - coord(c.center, fixed)); },
          [&](const Annulus& a) {
            const double off = at - coord(a.center, fixed);
            return disk_chord(a.outer, off) - disk_chord(a.inner, off);
          },
          [&](const Layer& l) {
            if (l.normal == along) return l.width;
            return std::abs(at - l.center) <= 0.5 * l.width ? 1.0 : 0.0;
          },
      },
      s);
}

std::vector<double> chord_breakpoints(const Shape& s, Axis along) {
  const Axis fixed = other(along);
  return std::visit(
      overloaded{
          [&](const FullCell&) { return std::vector<double>{}; },
          [&](const AxisSquare& q) {
            const double c = coord(q.center, fixed);
            return std::vector<double>{c - 0.5 * q.side, c + 0.5 * q.side};
          },
          [&](const RotatedSquare45& q) {
            const double c = coord(q.center, fixed);
            const double h = q.half_diagonal();
            return std::vector<double>{c - h, c, c + h};
          },
          [&](const Circle& k) {
            const double c = coord(k.center, fixed);
            return std::vector<double>{c - k.radius, c + k.radius};
          },
          [&](const Annulus& a) {
            const double c = coord(a.center, fixed);
            return std::vector<double>{c - a.outer, c - a.inner, c + a.inner, c + a.outer};
          },
          [&](const Layer& l) {
            if (l.normal == along) return std::vector<double>{};
            return std::vector<double>{l.center - 0.5 * l.width, l.center + 0.5 * l.width};
          },
      },
      s);
}

Box bounding_box(const Shape& s) {
  const auto centered = [](Point c, double h) {
    return Box{{c.x1 - h, c.x2 - h}, {c.x1 + h, c.x2 + h}};
  };
  return std::visit(
      overloaded{
          [](const FullCell&) { return Box{{0.0, 0.0}, {1.0, 1.0}}; },
          [&](const AxisSquare& q) { return centered(q.center, 0.5 * q.side); },
          [&](const RotatedSquare45& q) { return centered(q.center, q.half_diagonal()); },
          [&](const Circle& c) { return centered(c.center, c.radius); },
          [&](const Annulus& a) { return centered(a.center, a.outer); },
          [](const Layer& l) {
            Box b{{0.0, 0.0}, {1.0, 1.0}};
            const double lo = l.center - 0.5 * l.width;
            const double hi = l.center + 0.5 * l.width;
            if (l.normal == Axis::x1) {
              b.lo.x1 = lo;
              b.hi.x1 = hi;
            } else {
              b.lo.x2 = lo;
              b.hi.x2 = hi;
            }
            return b;
          },
      },
      s);
}

const char* kind_name(const Shape& s) {
  return std::visit(overloaded{
                        [](const FullCell&) { return "matrix"; },
                        [](const AxisSquare&) { return "square"; },
                        [](const RotatedSquare45&) { return "square45"; },
                        [](const Circle&) { return "circle"; },
                        [](const Annulus&) { return "annulus"; },
                        [](const Layer&) { return "layer"; },
                    },
                    s);
}

}  // namespace shearhom

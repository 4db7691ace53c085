#pragma once

#include <variant>
#include <vector>

namespace shearhom {

/// A point of the unit cell in normalized coordinates, each component in [0,1).
struct Point {
  double x1 = 0.0;
  double x2 = 0.0;
};

enum class Axis { x1 = 1, x2 = 2 };

inline Axis other(Axis a) { return a == Axis::x1 ? Axis::x2 : Axis::x1; }

struct FullCell {};

struct AxisSquare {
  double side = 0.0;
  Point center{0.5, 0.5};
};

/// Square with its diagonals along the lattice axes.
struct RotatedSquare45 {
  double side = 0.0;
  Point center{0.5, 0.5};
  double half_diagonal() const;
};

struct Circle {
  double radius = 0.0;
  Point center{0.5, 0.5};
};

struct Annulus {
  double inner = 0.0;
  double outer = 0.0;
  Point center{0.5, 0.5};
};

/// Slab of constant thickness spanning the whole cell, used for laminates.
/// `normal` is the coordinate along which the slab has finite width.
struct Layer {
  Axis normal = Axis::x2;
  double width = 0.0;
  double center = 0.5;
};

using Shape = std::variant<FullCell, AxisSquare, RotatedSquare45, Circle, Annulus, Layer>;

// Every length is in cell units; shapes are closed sets.

double area(const Shape& s);
bool contains(const Shape& s, Point p);
/// Containment with the shape shrunk by `margin` (points well inside).
bool contains_strictly(const Shape& s, Point p, double margin);

/// Length of the intersection of the shape with the line on which the
/// coordinate `along` varies over [0,1) and the other coordinate is `at`.
double chord(const Shape& s, Axis along, double at);

/// Values of the fixed coordinate at which `chord(s, along, ·)` has kinks
/// or jumps.
std::vector<double> chord_breakpoints(const Shape& s, Axis along);

/// Axis-aligned bounding box, [lo, hi] per coordinate.
struct Box {
  Point lo;
  Point hi;
};
Box bounding_box(const Shape& s);

const char* kind_name(const Shape& s);

}  // namespace shearhom

#pragma once

#include <cmath>
#include <vector>

#include "shearhom/lattice.hpp"

namespace fixture {

inline const shearhom::Material Al{26e9, 2700}, Pb{14.9e9, 11600}, St{80e9, 7800},
    Ep{1.48e9, 1140}, R{4e4, 1140};

inline shearhom::Lattice square(shearhom::Material matrix, shearhom::Material inc, double side,
                                double a = 1.0) {
  std::vector<shearhom::Phase> p{{matrix, shearhom::FullCell{}, "m"}};
  if (side > 0) p.push_back({inc, shearhom::AxisSquare{side, {0.5, 0.5}}, "i"});
  return shearhom::Lattice(a, a, p);
}

inline shearhom::Lattice laminate(shearhom::Material a, shearhom::Material b, double width) {
  return shearhom::Lattice(1.0, 1.0,
                           {{a, shearhom::FullCell{}, "a"},
                            {b, shearhom::Layer{shearhom::Axis::x2, width, 0.5}, "b"}});
}

inline double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace fixture

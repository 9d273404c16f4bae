#pragma once

#include <vector>

namespace hxray {

struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::size_t size() const { return nodes.size(); }
};

// Gauss–Legendre rule of the given order on [-1, 1]; cached per order.
const Rule& gauss_legendre(int order);

// Composite Gauss–Legendre on [a, b] with equal panels.
Rule composite_gl(double a, double b, int panels, int order);

// Periodic trapezoid on [a, a + period) with m nodes.
Rule periodic_trapezoid(double a, double period, int m);

// Panel count so that each panel is no longer than max_len (at least min_panels).
int panels_for(double length, double max_len, int min_panels = 1);

}  // namespace hxray

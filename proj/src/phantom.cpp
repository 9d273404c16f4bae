#include "hxray/phantom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "hxray/fock.hpp"

namespace hxray {

double gaussian_cutoff(double c) { return std::sqrt(14.0 * std::log(10.0) / c); }

Phantom zero_phantom(double period) {
  Phantom p;
  p.eval = [](const GroupPoint&) { return cplx(0.0); };
  p.period = period;
  p.label = "zero";
  return p;
}

Phantom gaussian_phantom(double a, double b, const GroupPoint& c) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("gaussian_phantom: a and b must be > 0");
  Phantom p;
  p.eval = [a, b, c](const GroupPoint& q) {
    const double dx = q.x - c.x, dy = q.y - c.y, dt = q.t - c.t;
    return cplx(std::exp(-a * (dx * dx + dy * dy) - b * dt * dt));
  };
  p.support_z = std::hypot(c.x, c.y) + gaussian_cutoff(a);
  p.support_t = std::abs(c.t) + gaussian_cutoff(b);
  p.feature_z = 1.0 / std::sqrt(2.0 * a);
  p.feature_t = 1.0 / std::sqrt(2.0 * b);
  std::ostringstream os;
  os.precision(17);
  os << "gaussian:a=" << a << ",b=" << b;
  if (!(c == GroupPoint{})) os << ",center=" << c.x << ":" << c.y << ":" << c.t;
  p.label = os.str();
  return p;
}

Phantom matrix_coefficient_phantom(int n, int j, int k) {
  if (n == 0) throw std::invalid_argument("matrix_coefficient_phantom: n must be nonzero");
  const double scale = std::sqrt(double(std::abs(n))) / std::numbers::pi;
  Phantom p;
  p.eval = [=](const GroupPoint& q) { return scale * matrix_coefficient(n, j, k, q); };
  const double m = std::abs(n);
  p.support_z = std::sqrt((80.0 + 4.0 * (j + k)) / m);
  p.feature_z = std::min(1.0, 1.5 / std::sqrt(m * (2.0 * (j + k) + 1.0)));
  p.feature_t = 0.5 / m;
  p.period = std::numbers::pi;
  p.label = "psi:n=" + std::to_string(n) + ",j=" + std::to_string(j) + ",k=" + std::to_string(k);
  return p;
}

Phantom kernel_phantom() {
  Phantom p;
  p.eval = [](const GroupPoint& q) {
    const cplx z(q.x, q.y);
    return z * z * std::exp(-std::norm(z)) * std::polar(1.0, 4.0 * q.t);
  };
  p.support_z = 6.5;
  p.feature_z = 0.5;
  p.feature_t = 0.25;
  p.period = std::numbers::pi;
  p.label = "kernel";
  return p;
}

Phantom planar_phantom(std::function<cplx(cplx)> f, double support_z, double feature_z, double period,
                       std::string label) {
  Phantom p;
  p.eval = [f = std::move(f)](const GroupPoint& q) { return f(cplx(q.x, q.y)); };
  p.support_z = support_z;
  p.feature_z = feature_z;
  p.feature_t = std::numeric_limits<double>::infinity();
  p.period = period;
  p.label = std::move(label);
  return p;
}

Phantom linear_combination(const std::vector<std::pair<cplx, Phantom>>& terms) {
  if (terms.empty()) throw std::invalid_argument("linear_combination: no terms");
  Phantom p;
  p.eval = [terms](const GroupPoint& q) {
    cplx acc = 0.0;
    for (const auto& [c, f] : terms) acc += c * f(q);
    return acc;
  };
  p.period = terms.front().second.period;
  p.feature_z = p.feature_t = std::numeric_limits<double>::infinity();
  std::string label = "sum(";
  for (const auto& [c, f] : terms) {
    if (f.period != p.period) throw std::invalid_argument("linear_combination: mismatched periods");
    p.support_z = std::max(p.support_z, f.support_z);
    p.support_t = std::max(p.support_t, f.support_t);
    p.feature_z = std::min(p.feature_z, f.feature_z);
    p.feature_t = std::min(p.feature_t, f.feature_t);
    label += f.label + ";";
  }
  p.label = label + ")";
  return p;
}

Phantom dilated(const Phantom& f, double mu) {
  if (!(mu > 0.0)) throw std::invalid_argument("dilated: factor must be > 0");
  Phantom p = f;
  p.eval = [g = f.eval, mu](const GroupPoint& q) { return g(dilate(mu, q)); };
  p.support_z = f.support_z / mu;
  p.support_t = f.support_t / (mu * mu);
  p.feature_z = f.feature_z / mu;
  p.feature_t = f.feature_t / (mu * mu);
  p.period = f.period / (mu * mu);
  p.label = "dilate(" + f.label + ")";
  return p;
}

Phantom left_translated(const Phantom& f, const GroupPoint& w) {
  Phantom p = f;
  p.eval = [g = f.eval, w](const GroupPoint& q) { return g(multiply(w, q)); };
  const double rw = std::hypot(w.x, w.y);
  p.support_z = f.support_z + rw;
  p.support_t = f.support_t + std::abs(w.t) + 0.5 * rw * (rw + f.support_z);
  // the area term makes t-oscillation couple into z at rate |w|/2
  p.feature_z = std::min(f.feature_z, f.feature_t / std::max(0.5 * rw, 1e-300));
  p.label = "translate(" + f.label + ")";
  return p;
}

}  // namespace hxray

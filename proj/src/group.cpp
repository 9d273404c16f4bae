#include "hxray/group.hpp"

#include <cmath>
#include <stdexcept>

namespace hxray {

Charge::Charge(double lam) : lambda(lam), R(1.0 / lam) {
  if (!(lam > 0.0) || !std::isfinite(lam)) throw std::invalid_argument("Charge: lambda must be > 0");
}

GroupPoint identity() { return {}; }

GroupPoint multiply(const GroupPoint& p, const GroupPoint& q) {
  return {p.x + q.x, p.y + q.y, p.t + q.t + 0.5 * (p.x * q.y - p.y * q.x)};
}

GroupPoint inverse(const GroupPoint& p) { return {-p.x, -p.y, -p.t}; }

GroupPoint dilate(double lambda, const GroupPoint& p) {
  if (!(lambda > 0.0)) throw std::invalid_argument("dilate: lambda must be > 0");
  return {lambda * p.x, lambda * p.y, lambda * lambda * p.t};
}

CosetPoint coset_reduce(const GroupPoint& p, double period) {
  if (!(period > 0.0)) throw std::invalid_argument("coset_reduce: period must be > 0");
  double t = std::fmod(p.t, period);
  if (t < 0.0) t += period;
  if (t >= period) t = 0.0;  // fmod of a tiny negative can round up to period
  return {{p.x, p.y, t}, period};
}

double contact_form(const GroupPoint& p, const Triple& v) {
  return v[2] - 0.5 * (p.x * v[1] - p.y * v[0]);
}

double hamiltonian(const GroupPoint& p, const Triple& m) {
  const double a = m[0] - 0.5 * p.y * m[2];
  const double b = m[1] + 0.5 * p.x * m[2];
  return 0.5 * (a * a + b * b);
}

}  // namespace hxray

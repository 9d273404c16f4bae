#pragma once

#include <array>
#include <complex>

namespace hxray {

using cplx = std::complex<double>;

struct GroupPoint {
  double x = 0.0;
  double y = 0.0;
  double t = 0.0;

  cplx z() const { return {x, y}; }
  bool operator==(const GroupPoint&) const = default;
};

struct CosetPoint {
  GroupPoint base;  // base.t in [0, period)
  double period = 1.0;
};

// Conserved vertical momentum; R = 1/lambda is the planar radius of the geodesic.
struct Charge {
  double lambda;
  double R;
  explicit Charge(double lam);
};

using Triple = std::array<double, 3>;

GroupPoint identity();
GroupPoint multiply(const GroupPoint& p, const GroupPoint& q);
GroupPoint inverse(const GroupPoint& p);
GroupPoint dilate(double lambda, const GroupPoint& p);
CosetPoint coset_reduce(const GroupPoint& p, double period);
double contact_form(const GroupPoint& p, const Triple& v);
double hamiltonian(const GroupPoint& p, const Triple& momentum);

}  // namespace hxray

#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "hxray/group.hpp"

namespace hxray {

// A scalar function on H (period == 0) or on H / {(0, k period)} (period > 0).
// feature_z / feature_t are the smallest length scales of the function in z and t;
// quadrature resolution is derived from them.
struct Phantom {
  std::function<cplx(const GroupPoint&)> eval;
  double support_z = 0.0;
  double support_t = 0.0;  // unused when periodic
  double feature_z = 1.0;
  double feature_t = 1.0;
  double period = 0.0;
  std::string label;

  cplx operator()(const GroupPoint& p) const { return eval(p); }
  bool periodic() const { return period > 0.0; }
};

Phantom zero_phantom(double period = 0.0);
Phantom gaussian_phantom(double a, double b, const GroupPoint& center = {});
// psi^n_{jk} = (sqrt|n| / pi) M^n_{jk} on H / {(0, k pi)}, unit norm in L^2(C x [0, pi))
Phantom matrix_coefficient_phantom(int n, int j, int k);
// z^2 e^{-|z|^2} e^{4it} on H / {(0, k pi)}
Phantom kernel_phantom();
// t-independent function on the quotient with the given period
Phantom planar_phantom(std::function<cplx(cplx)> f, double support_z, double feature_z, double period,
                       std::string label);

Phantom linear_combination(const std::vector<std::pair<cplx, Phantom>>& terms);
// (delta_mu^* f)(p) = f(delta_mu p)
Phantom dilated(const Phantom& f, double mu);
// (L_w^* f)(q) = f(w q)
Phantom left_translated(const Phantom& f, const GroupPoint& w);

// radius where a Gaussian e^{-c r^2} falls to 1e-14
double gaussian_cutoff(double c);

}  // namespace hxray

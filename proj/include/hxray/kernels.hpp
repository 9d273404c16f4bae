#pragma once

// Hot loops, each in an OpenMP version and a serial reference with identical
// arithmetic. Work is split into fixed chunks reduced in chunk order, so the two
// versions agree bit for bit regardless of thread count.

#include <Eigen/Dense>
#include <vector>

#include "hxray/phantom.hpp"

namespace hxray {

struct PlanarGrid {
  std::vector<double> x, y, w;
  std::size_t size() const { return w.size(); }
};

// Tensor composite Gauss–Legendre on [-W, W]^2, dropping nodes with |z| > clip.
PlanarGrid square_grid(double W, int panels, int order, double clip);

namespace kernels {

// values[i * t.size() + m] = g(z_i, t_m)
std::vector<cplx> sample_grid(const Phantom& g, const PlanarGrid& z, const std::vector<double>& t);

// sum_i w_i T_i B_h(z_i, 0)^H, D x D
Eigen::MatrixXcd fourier_assemble(const PlanarGrid& z, const std::vector<cplx>& T, double h, int D);

namespace serial {
std::vector<cplx> sample_grid(const Phantom& g, const PlanarGrid& z, const std::vector<double>& t);
Eigen::MatrixXcd fourier_assemble(const PlanarGrid& z, const std::vector<cplx>& T, double h, int D);
}  // namespace serial

}  // namespace kernels
}  // namespace hxray

#include "hxray/kernels.hpp"

#include <cmath>

#include "hxray/fock.hpp"
#include "hxray/quadrature.hpp"

namespace hxray {

PlanarGrid square_grid(double W, int panels, int order, double clip) {
  const Rule r = composite_gl(-W, W, panels, order);
  PlanarGrid g;
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (std::hypot(r.nodes[i], r.nodes[j]) > clip) continue;
      g.x.push_back(r.nodes[i]);
      g.y.push_back(r.nodes[j]);
      g.w.push_back(r.weights[i] * r.weights[j]);
    }
  return g;
}

namespace kernels {

namespace {

constexpr std::size_t kChunk = 64;

void sample_node(const Phantom& g, const PlanarGrid& z, const std::vector<double>& t, std::size_t i,
                 cplx* out) {
  for (std::size_t m = 0; m < t.size(); ++m) out[m] = g({z.x[i], z.y[i], t[m]});
}

void assemble_chunk(const PlanarGrid& z, const std::vector<cplx>& T, double h, int D, std::size_t lo,
                    std::size_t hi, Eigen::MatrixXcd& acc, Eigen::MatrixXcd& b) {
  acc.setZero();
  for (std::size_t i = lo; i < hi; ++i) {
    const cplx c = z.w[i] * T[i];
    if (c == 0.0) continue;
    rep_matrix_into(h, {z.x[i], z.y[i], 0.0}, D, b);
    acc.noalias() += c * b.adjoint();
  }
}

}  // namespace

std::vector<cplx> sample_grid(const Phantom& g, const PlanarGrid& z, const std::vector<double>& t) {
  std::vector<cplx> v(z.size() * t.size());
  const long n = static_cast<long>(z.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (long i = 0; i < n; ++i) sample_node(g, z, t, i, v.data() + i * t.size());
  return v;
}

Eigen::MatrixXcd fourier_assemble(const PlanarGrid& z, const std::vector<cplx>& T, double h, int D) {
  const std::size_t nchunks = (z.size() + kChunk - 1) / kChunk;
  std::vector<Eigen::MatrixXcd> part(nchunks);
#pragma omp parallel
  {
    Eigen::MatrixXcd b(D, D);
#pragma omp for schedule(dynamic)
    for (long c = 0; c < static_cast<long>(nchunks); ++c) {
      part[c].resize(D, D);
      assemble_chunk(z, T, h, D, c * kChunk, std::min(z.size(), (c + 1) * kChunk), part[c], b);
    }
  }
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(D, D);
  for (const auto& p : part) out += p;
  return out;
}

namespace serial {

std::vector<cplx> sample_grid(const Phantom& g, const PlanarGrid& z, const std::vector<double>& t) {
  std::vector<cplx> v(z.size() * t.size());
  for (std::size_t i = 0; i < z.size(); ++i) sample_node(g, z, t, i, v.data() + i * t.size());
  return v;
}

Eigen::MatrixXcd fourier_assemble(const PlanarGrid& z, const std::vector<cplx>& T, double h, int D) {
  const std::size_t nchunks = (z.size() + kChunk - 1) / kChunk;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(D, D);
  Eigen::MatrixXcd acc(D, D), b(D, D);
  for (std::size_t c = 0; c < nchunks; ++c) {
    assemble_chunk(z, T, h, D, c * kChunk, std::min(z.size(), (c + 1) * kChunk), acc, b);
    out += acc;
  }
  return out;
}

}  // namespace serial
}  // namespace kernels
}  // namespace hxray

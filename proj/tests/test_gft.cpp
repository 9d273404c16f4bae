#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hxray/gft.hpp"

using namespace hxray;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("group Fourier transform of simple phantoms") {
  TruncationPolicy pol;
  CHECK(group_fourier(zero_phantom(), 1.0, pol).mat.norm() == 0.0);
  const Phantom f = gaussian_phantom(1.0, 1.0);
  for (double h : {0.5, -1.3, 2.0}) {
    const Eigen::MatrixXcd F = group_fourier(f, h, pol).mat;
    for (int j = 0; j < 32; ++j)
      for (int k = 0; k < 32; ++k)
        if (j != k) CHECK(std::abs(F(j, k)) <= 1e-10);
    const cplx exact = pi / (1.0 + std::abs(h) / 2) * std::sqrt(pi) * std::exp(-h * h);
    CHECK(std::abs(F(0, 0) - exact) <= 1e-7 * std::abs(exact));
  }
  CHECK_THROWS(group_fourier(f, 0.0, pol));
}

TEST_CASE("reduced Fourier transform: orthogonality of matrix coefficients") {
  TruncationPolicy pol{16, 8};
  const Charge one(1.0);
  CHECK(reduced_fourier(zero_phantom(pi), 1, one, {}, pol).mat.norm() == 0.0);
  const Phantom psi = matrix_coefficient_phantom(2, 1, 3);
  const Eigen::MatrixXcd F2 = reduced_fourier(psi, 2, one, {}, pol).mat;
  // <F w_j, w_k> = int psi^2_{13} conj(M_kj): c * pi * (pi / |n|) at (j,k) = (3,1), c = sqrt|n| / pi
  const double peak = pi / std::sqrt(2.0);
  for (int j = 0; j < 8; ++j)
    for (int k = 0; k < 8; ++k) {
      const double want = (j == 3 && k == 1) ? peak : 0.0;
      CHECK(std::abs(FockMatrix(F2).coeff(j, k) - want) <= 1e-8);
    }
  for (int m : {1, 3, -2}) CHECK(reduced_fourier(psi, m, one, {}, pol).block(8).cwiseAbs().maxCoeff() <= 1e-8);
}

TEST_CASE("Poisson summation, both metrics") {
  TruncationPolicy pol;
  const Phantom f = gaussian_phantom(1.0, 1.0, {0.3, -0.2, 0.1});
  for (int n : {1, -1, 2, -2, 3}) CHECK(poisson_check(f, n, Charge(1.0), {}, pol).residual <= 1e-7);
  CHECK(poisson_check(f, 1, Charge(1.0), MetricTag::taming_metric(0.5), pol).residual <= 1e-7);
  CHECK(poisson_check(f, -2, Charge(1.0), MetricTag::taming_metric(0.5), pol).residual <= 1e-7);
}

TEST_CASE("dilation lemma") {
  TruncationPolicy pol;
  const Phantom f = gaussian_phantom(1.0, 1.0, {0.2, 0.1, 0.0});
  auto same = dilation_lemma_check(f, 1.0, 0.7, pol);
  CHECK(same.residual <= 1e-9);  // two independent rules agree
  CHECK(dilation_lemma_check(f, 2.0, 1.0, pol).residual <= 1e-7);
  const Phantom g = matrix_coefficient_phantom(1, 1, 0);
  CHECK(dilation_quotient_check(g, 0.5, 1, {}, pol).residual <= 1e-7);
}

TEST_CASE("slice theorem on a small case") {
  TruncationPolicy pol{16, 6};
  const auto zero = slice_check(zero_phantom(), 1, 2.0, pol);
  CHECK(zero.lhs.norm() == 0.0);
  CHECK(zero.rhs.norm() == 0.0);
  const Phantom f = gaussian_phantom(2.0, 16.0);
  for (const auto& r : slice_suite(f, {1, -1}, 2.0, {}, pol)) CHECK(r.pair.residual <= 1e-4);
  CHECK(slice_check_eps(f, 1, 2.0, 0.3, pol).residual <= 1e-4);
}

TEST_CASE("taming slice radius: irrational argument keeps J_2 injective") {
  const double eps = 0.5;  // n r^2 = 2 / 1.5
  for (double s : j_singular_values(2, 1.0 / std::sqrt(1.0 + 2 * eps * eps), 30)) CHECK(std::abs(s) > 0.0);
}

TEST_CASE("zero-mode slice identity") {
  const Phantom f = gaussian_phantom(1.0, 1.0, {0.3, 0.0, 0.0});
  const auto r = zero_mode_suite(f, 1.0, {0.0, 2.0});
  CHECK(std::abs(r[0].lhs - r[0].rhs) <= 1e-5 * std::abs(r[0].rhs));
  CHECK(std::abs(r[1].lhs - r[1].rhs) <= 1e-5 * std::abs(r[1].rhs));
}

TEST_CASE("h-grid") {
  const auto g = default_h_grid();
  CHECK(g.size() == 160);
  CHECK(g.front() == -8.0);
  CHECK(g.back() == 8.0);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(g[i] == -g[g.size() - 1 - i]);
  for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i] > g[i - 1]);
  CHECK(std::abs(g[80]) == doctest::Approx(0.01));
}

TEST_CASE("Plancherel and inversion basics") {
  TruncationPolicy pol{16, 8};
  const auto grid = default_h_grid(0.01, 8.0, 40);
  const auto z = plancherel_check(zero_phantom(), grid, pol);
  CHECK(z.lhs == 0.0);
  CHECK(z.rhs == 0.0);
  const Phantom f = gaussian_phantom(0.5, 8.0);
  const double big = plancherel_check(f, grid, pol).rhs;
  const double small = plancherel_check(f, grid, TruncationPolicy{16, 4}).rhs;
  CHECK(small <= big);

  const Phantom g = gaussian_phantom(1.0, 8.0, {0.2, 0.0, 0.1});
  const auto sf = gft_samples(f, grid, pol), sg = gft_samples(g, grid, pol);
  std::vector<GftSample> sum;
  for (std::size_t i = 0; i < sf.size(); ++i) sum.push_back({sf[i].h, FockMatrix(sf[i].matrix.mat + sg[i].matrix.mat)});
  for (const GroupPoint q : {GroupPoint{0, 0, 0}, GroupPoint{0.3, -0.2, 0.1}}) {
    const cplx a = inversion(sf, q, 8), b = inversion(sg, q, 8), c = inversion(sum, q, 8);
    CHECK(std::abs(c - (a + b)) <= 1e-12 * (std::abs(a) + std::abs(b)));
  }
  std::vector<GftSample> zeros;
  for (double h : grid) zeros.push_back({h, FockMatrix(16)});
  CHECK(inversion(zeros, {0.1, 0.2, 0.3}, 8) == cplx(0.0));
}

TEST_CASE("reconstruction plumbing") {
  TruncationPolicy pol{16, 6};
  Sinogram s;
  s.charge = Charge(1.0);
  s.z = square_grid(2.0, 2, 4, 2.0);
  s.t = {0.0, pi / 2};
  s.values.assign(s.z.size() * 2, 0.0);
  const auto rec = reconstruct({s, s}, pol);
  CHECK(rec.samples.size() == 6);  // duplicates merged
  for (const GroupPoint q : {GroupPoint{0, 0, 0}, GroupPoint{0.5, -0.5, 0.2}}) CHECK(std::abs(rec(q)) <= 1e-10);

  ReconstructOptions even;
  even.ns = {2};
  CHECK_THROWS_AS(reconstruct({s}, pol, even), std::invalid_argument);
  even.allow_even = true;
  CHECK_NOTHROW(reconstruct({s}, pol, even));

  ReconstructOptions wide;
  wide.bandwidth = 10.0;
  CHECK_THROWS_AS(reconstruct({s}, pol, wide), CoverageError);
  ReconstructOptions gaps;
  gaps.max_gap = 0.5;
  CHECK_THROWS_AS(reconstruct({s}, pol, gaps), CoverageError);
}

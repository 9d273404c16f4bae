#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hxray/reduced_svd.hpp"

using namespace hxray;

namespace {
constexpr double pi = std::numbers::pi;

double grid_norm(const Phantom& f) {
  double s = 0.0;
  for (const auto& p : svd_grid()) s += std::norm(f(p));
  return std::sqrt(s);
}
}  // namespace

TEST_CASE("decompose: block examples") {
  const Phantom flat = planar_phantom([](cplx z) { return std::exp(-std::norm(z)); }, 6.0, 0.7, pi, "planar");
  const auto d1 = decompose(flat);
  CHECK(grid_norm(d1.perp) <= 1e-12);
  const auto d2 = decompose(kernel_phantom());
  CHECK(grid_norm(d2.f0) <= 1e-12);
  const Phantom psi = matrix_coefficient_phantom(1, 2, 1);
  const auto d3 = decompose(psi);
  CHECK(grid_norm(d3.f0) <= 1e-12);
  CHECK_THROWS(decompose(gaussian_phantom(1, 1)));
}

TEST_CASE("decompose: orthogonality on a mixed function") {
  const Phantom g = linear_combination({{1.0, planar_phantom([](cplx z) { return z.real() * std::exp(-std::norm(z)); }, 6.0, 0.7, pi, "planar")},
                                        {cplx(0.5, 0.2), kernel_phantom()},
                                        {0.3, matrix_coefficient_phantom(-1, 0, 2)}});
  const auto d = decompose(g);
  const cplx ip = inner_product(d.f0, d.perp);
  CHECK(std::abs(ip) <= 1e-8 * l2_norm(d.f0) * l2_norm(d.perp));
}

TEST_CASE("SVD factors") {
  CHECK(std::abs(svd_factor(1, 0)) == doctest::Approx(2 * pi * std::exp(-0.5)).epsilon(1e-12));
  CHECK(svd_factor(1, 0) == doctest::Approx(svd_factor(-1, 0)));
  CHECK(std::abs(svd_factor(2, 2)) <= 1e-14);
  const auto r = svd_check(1, 0, 0);
  CHECK(r.rel_err <= 1e-6);
  CHECK(r.numeric_factor == doctest::Approx(r.predicted_factor).epsilon(1e-6));
  CHECK(svd_check(-1, 1, 2).rel_err <= 1e-6);
  CHECK(svd_check(2, 2, 1).rel_err <= 1e-8);
}

TEST_CASE("kernel span: psi^2_{2k} annihilated") {
  for (int k : {0, 1, 2}) CHECK(svd_check(2, 2, k).rel_err <= 1e-8);
}

TEST_CASE("mean value restriction") {
  auto one = mean_value_restriction_check([](cplx) { return cplx(1.0); }, {0.4, -0.1}, {}, 10.0);
  CHECK(std::abs(one.lhs - 2 * pi) <= 1e-10);
  CHECK(std::abs(one.rhs - 2 * pi) <= 1e-10);
  auto re = mean_value_restriction_check([](cplx z) { return cplx(z.real()); }, 0.0, {}, 10.0);
  CHECK(std::abs(re.lhs) <= 1e-10);
  CHECK(std::abs(re.rhs) <= 1e-10);
  auto g = mean_value_restriction_check([](cplx z) { return cplx(std::exp(-std::norm(z))); }, 1.0);
  CHECK(g.rel_diff() <= 1e-8);
}

TEST_CASE("block preservation and L2 bound") {
  const Charge one(1.0);
  const Phantom flat = planar_phantom([](cplx z) { return std::exp(-std::norm(z - cplx(0.3, 0))); }, 6.0, 0.7, pi, "planar");
  for (cplx z : {cplx(0, 0), cplx(0.5, -0.7)}) {
    const cplx a = reduced_forward(flat, {z.real(), z.imag(), 0.0}, one, {});
    for (double t : {0.4, 1.1, 2.9}) CHECK(std::abs(reduced_forward(flat, {z.real(), z.imag(), t}, one, {}) - a) <= 1e-8);
  }
  const Phantom Ik = reduced_xray_phantom(kernel_phantom(), one, {});
  const Phantom Ipsi = reduced_xray_phantom(matrix_coefficient_phantom(1, 0, 1), one, {});
  for (const Phantom* p : {&Ik, &Ipsi})
    for (cplx z : {cplx(0.2, 0.1), cplx(-1.0, 0.5)}) {
      cplx avg = 0.0;
      for (int m = 0; m < 32; ++m) avg += (*p)({z.real(), z.imag(), pi * m / 32});
      CHECK(std::abs(avg) / 32 <= 1e-8);
    }
  const Phantom g = linear_combination({{1.0, flat}, {0.7, matrix_coefficient_phantom(1, 0, 1)}, {0.4, kernel_phantom()}});
  const double out = l2_norm(reduced_xray_phantom(g, one, {}));
  CHECK(out <= 2 * pi * l2_norm(g) * (1 + 1e-6));
}

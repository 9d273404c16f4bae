#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hxray/xray.hpp"

using namespace hxray;

namespace {
constexpr double pi = std::numbers::pi;

// largest |f| over a sampling shell just outside the declared support box
double outside_max(const Phantom& f) {
  double m = 0.0;
  for (int i = 0; i < 64; ++i) {
    const double th = 2 * pi * i / 64;
    for (double r : {1.0001, 1.2, 2.0})
      for (double t : {-1.0, 0.0, 0.5, 1.0}) {
        m = std::max(m, std::abs(f({r * f.support_z * std::cos(th), r * f.support_z * std::sin(th), t * f.support_t})));
        m = std::max(m, std::abs(f({0.3 * std::cos(th), 0.3 * std::sin(th), r * f.support_t * (t < 0 ? -1 : 1)})));
      }
  }
  return m;
}
}  // namespace

TEST_CASE("gaussian phantom") {
  const Phantom f = gaussian_phantom(1.0, 1.0);
  CHECK(f({0, 0, 0}) == cplx(1.0));
  CHECK(f.support_z == doctest::Approx(std::sqrt(14 * std::log(10.0))).epsilon(1e-14));
  CHECK(f.support_z == doctest::Approx(5.68).epsilon(1e-3));
  const Phantom g = gaussian_phantom(2.0, 0.5, {0.5, -1.0, 0.25});
  CHECK(g({0.5, -1.0, 0.25}) == cplx(1.0));
  for (const Phantom& p : {f, g, gaussian_phantom(0.3, 16.0)}) CHECK(outside_max(p) <= 1e-13);
  CHECK_THROWS(gaussian_phantom(0.0, 1.0));

  for (auto [a, b] : {std::pair{1.0, 1.0}, std::pair{0.5, 4.0}}) {
    const double exact = (pi / a) * std::sqrt(pi / b);
    CHECK(integrate(gaussian_phantom(a, b)).real() == doctest::Approx(exact).epsilon(1e-8));
  }
}

TEST_CASE("matrix coefficient phantoms are orthonormal on the quotient") {
  const Phantom p = matrix_coefficient_phantom(1, 0, 0);
  CHECK(p({0, 0, 0}).real() == doctest::Approx(1.0 / pi).epsilon(1e-15));
  CHECK(matrix_coefficient_phantom(-3, 0, 0)({0, 0, 0}).real() == doctest::Approx(std::sqrt(3.0) / pi).epsilon(1e-15));
  for (auto [n, j, k] : {std::tuple{1, 0, 0}, std::tuple{2, 3, 1}, std::tuple{-1, 2, 2}, std::tuple{3, 0, 4}}) {
    const Phantom q = matrix_coefficient_phantom(n, j, k);
    CHECK(inner_product(q, q).real() == doctest::Approx(1.0).epsilon(1e-6));
  }
  CHECK(std::abs(inner_product(matrix_coefficient_phantom(1, 0, 0), matrix_coefficient_phantom(2, 0, 0))) <= 1e-8);
  CHECK(std::abs(inner_product(matrix_coefficient_phantom(1, 0, 0), matrix_coefficient_phantom(-1, 0, 0))) <= 1e-8);
  CHECK(std::abs(inner_product(matrix_coefficient_phantom(2, 1, 0), matrix_coefficient_phantom(2, 0, 1))) <= 1e-8);
  CHECK_THROWS(matrix_coefficient_phantom(0, 0, 0));
}

TEST_CASE("kernel phantom") {
  const Phantom g = kernel_phantom();
  CHECK(g({0, 0, 1.3}) == cplx(0.0));
  CHECK(std::abs(g({1, 0, 0}) - std::exp(-1.0)) <= 1e-16);
  for (double x : {0.5, 1.0, 2.0}) {
    cplx acc = 0.0;
    const int m = 64;
    for (int i = 0; i < m; ++i) acc += g({x, 0.3, pi * i / m}) * (pi / m);
    CHECK(std::abs(acc) <= 1e-14);
  }
  double shell = 0.0;
  for (int i = 0; i < 64; ++i)
    for (double t : {0.0, 0.7, 2.1})
      shell = std::max(shell, std::abs(g({g.support_z * std::cos(2 * pi * i / 64), g.support_z * std::sin(2 * pi * i / 64), t})));
  CHECK(shell <= 1e-16);
}

TEST_CASE("derived phantoms") {
  const Phantom f = gaussian_phantom(1.0, 2.0, {0.2, 0.1, -0.3});
  const GroupPoint q{0.7, -0.4, 0.9};
  CHECK(dilated(f, 2.0)(q) == f(dilate(2.0, q)));
  CHECK(left_translated(f, {0.5, 0.5, 1.0})(q) == f(multiply({0.5, 0.5, 1.0}, q)));
  const Phantom s = linear_combination({{2.0, f}, {cplx(0, -1), gaussian_phantom(3.0, 1.0)}});
  CHECK(std::abs(s(q) - (2.0 * f(q) - cplx(0, 1) * gaussian_phantom(3.0, 1.0)(q))) <= 1e-16);
  CHECK(outside_max(dilated(f, 0.5)) <= 1e-13);
  CHECK(outside_max(left_translated(gaussian_phantom(1.0, 1.0), {1.0, -2.0, 0.5})) <= 1e-13);
}

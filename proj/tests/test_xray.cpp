#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hxray/xray.hpp"

using namespace hxray;

namespace {
constexpr double pi = std::numbers::pi;

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

// Independent oracle: uniform Riemann sum over a wide fixed window.
cplx brute_force(const Phantom& f, const GeodesicSpec& g, double half_window, long samples) {
  const double ds = 2 * half_window / samples;
  cplx acc = 0.0;
  for (long i = 0; i < samples; ++i) acc += f(geodesic_point(g, -half_window + (i + 0.5) * ds));
  return acc * ds;
}
}  // namespace

TEST_CASE("forward: trivial cases and brute-force oracle") {
  const Phantom f = gaussian_phantom(1.0, 1.0, {0.3, -0.2, 0.1});
  CHECK(forward(zero_phantom(), GeodesicSpec({0.2, 0.1, 0}, 1.0)) == cplx(0.0));
  const Phantom far = gaussian_phantom(1.0, 1.0, {20.0, 0.0, 0.0});
  CHECK(std::abs(forward(far, GeodesicSpec({0, 0, 0}, 1.0))) <= 1e-13);
  for (const GroupPoint q : {GroupPoint{0, 0, 0}, GroupPoint{0.5, 0.7, -0.4}, GroupPoint{-1.2, 0.3, 2.0}}) {
    const GeodesicSpec g(q, 1.0);
    const cplx ref = brute_force(f, g, 60.0, 1000000);
    CHECK(rel(forward(f, g), ref) <= 1e-8);
  }
  const GeodesicSpec gt({0.5, 0.7, -0.4}, 1.0, MetricTag::taming_metric(0.5));
  CHECK(rel(forward(f, gt), brute_force(f, gt, 40.0, 1000000)) <= 1e-8);
  CHECK_THROWS(forward(kernel_phantom(), GeodesicSpec({}, 1.0)));
}

TEST_CASE("forward: panel doubling converges at default settings") {
  const Phantom f = gaussian_phantom(1.0, 4.0, {0.2, 0.0, 0.3});
  for (double lam : {0.5, 1.0, 2.0})
    for (const MetricTag m : {MetricTag{}, MetricTag::taming_metric(0.5)})
      for (const GroupPoint q : {GroupPoint{0, 0, 0}, GroupPoint{1.0, -0.5, 0.7}, GroupPoint{2.5, 1.0, -1.0}}) {
        const auto r = forward_checked(f, GeodesicSpec(q, lam, m), {}, 1e-9);
        CHECK(r.converged);
      }
}

TEST_CASE("central periodization") {
  const Phantom f = gaussian_phantom(1.0, 16.0);  // support |t| < pi/2
  const Phantom P = central_periodization(f, Charge(1.0), {});
  CHECK(P.period == doctest::Approx(pi).epsilon(1e-15));
  for (double t : {0.1, 1.0, 3.0}) CHECK(P({0.2, 0.3, t}) == f({0.2, 0.3, t}) + f({0.2, 0.3, t - pi}));
  CHECK(central_periodization(zero_phantom(), Charge(1.0), {})({0.1, 0.2, 0.3}) == cplx(0.0));
  for (const MetricTag m : {MetricTag{}, MetricTag::taming_metric(0.5)}) {
    const Phantom g = gaussian_phantom(1.0, 0.5);
    const Phantom Pg = central_periodization(g, Charge(1.0), m);
    CHECK(rel(integrate(Pg), integrate(g)) <= 1e-8);
  }
}

TEST_CASE("reduced transform") {
  const Charge one(1.0);
  const Phantom c1 = planar_phantom([](cplx) { return cplx(1.0); }, INFINITY, 1.0, pi, "one");
  CHECK(reduced_forward(c1, {0.3, 0.2, 0.5}, one, {}).real() == doctest::Approx(2 * pi).epsilon(1e-14));
  const Phantom c2 = planar_phantom([](cplx) { return cplx(1.0); }, INFINITY, 1.0, pi / 4, "one");
  CHECK(reduced_forward(c2, {0.3, 0.2, 0.5}, Charge(2.0), {}).real() == doctest::Approx(pi).epsilon(1e-14));
  CHECK_THROWS(reduced_forward(c1, {}, Charge(2.0), {}));

  const Phantom k = kernel_phantom();
  const double kn = l2_norm(k);
  for (const GroupPoint q : {GroupPoint{0, 0, 0}, GroupPoint{0.5, -0.3, 1.0}, GroupPoint{1.5, 1.0, 2.5}})
    CHECK(std::abs(reduced_forward(k, q, one, {})) <= 1e-8 * kn);
}

TEST_CASE("factorization through the quotient, both metrics") {
  const Phantom f = gaussian_phantom(1.0, 2.0, {0.4, 0.1, 0.2});
  for (double lam : {0.5, 1.0, 2.0})
    for (const MetricTag m : {MetricTag{}, MetricTag::taming_metric(0.5)}) {
      const Charge c(lam);
      const Phantom P = central_periodization(f, c, m);
      for (const GroupPoint q : {GroupPoint{0, 0, 0.3}, GroupPoint{0.8, -0.6, 1.1}}) {
        const cplx a = forward(f, GeodesicSpec(q, lam, m));
        CHECK(rel(reduced_forward(P, q, c, m), a) <= 1e-8);
      }
    }
}

TEST_CASE("homogeneity") {
  const Phantom f = gaussian_phantom(1.0, 1.0, {0.2, -0.1, 0.3});
  const GroupPoint q{0.5, 0.4, -0.2};
  auto id = homogeneity_check(f, Charge(1.0), q, {});
  CHECK(id.rel_diff() <= 1e-12);  // sides use independent node sets
  CHECK(homogeneity_check(f, Charge(2.0), q, {}).rel_diff() <= 1e-8);
  CHECK(homogeneity_check(f, Charge(0.5), q, MetricTag::taming_metric(1.0)).rel_diff() <= 1e-8);
}

TEST_CASE("left equivariance of the reduced transform") {
  const Phantom g = matrix_coefficient_phantom(1, 1, 0);
  const GroupPoint q{0.3, -0.4, 0.8};
  auto same = equivariance_check(g, identity(), q);
  CHECK(same.rel_diff() <= 1e-12);
  for (const GroupPoint w : {GroupPoint{0.7, 0.2, 1.3}, GroupPoint{-1.1, 0.5, -0.4}})
    CHECK(equivariance_check(g, w, q).rel_diff() <= 1e-8);
  const auto central = equivariance_check(g, {0, 0, 0.6}, q);
  CHECK(std::abs(central.lhs - reduced_forward(g, {q.x, q.y, q.t + 0.6}, Charge(1.0), {})) <= 1e-14);
  CHECK(central.rel_diff() <= 1e-12);
}

TEST_CASE("Santalo and L1 bound") {
  const Phantom f = gaussian_phantom(1.0, 1.0);
  auto s = santalo_check(f, Charge(1.0), {});
  CHECK(s.rel_diff() <= 1e-6);
  auto z = santalo_check(zero_phantom(), Charge(1.0), {});
  CHECK(z.lhs == cplx(0.0));
  CHECK(z.rhs == cplx(0.0));
  const Phantom signed_f = linear_combination({{1.0, gaussian_phantom(1.0, 1.0)}, {-1.0, gaussian_phantom(2.0, 2.0, {0.5, 0, 0})}});
  auto l1 = l1_bound_check(signed_f, {1.0, 1.5, 2.0}, {});
  CHECK(l1.lhs.real() <= l1.rhs.real() * (1 + 1e-6));
}

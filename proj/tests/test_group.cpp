#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hxray/group.hpp"

using namespace hxray;

namespace {
GroupPoint random_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  return {u(rng), u(rng), u(rng)};
}
double dist(const GroupPoint& a, const GroupPoint& b) {
  return std::max({std::abs(a.x - b.x), std::abs(a.y - b.y), std::abs(a.t - b.t)});
}
}  // namespace

TEST_CASE("group law examples") {
  CHECK(multiply({1, 0, 0}, {0, 1, 0}) == GroupPoint{1, 1, 0.5});
  CHECK(multiply({0, 0, 2.5}, {0, 0, -1.0}) == GroupPoint{0, 0, 1.5});
  const GroupPoint p{0.3, -1.7, 2.2};
  CHECK(multiply(p, inverse(p)) == identity());
  CHECK(multiply(inverse(p), p) == identity());
  CHECK(multiply(p, identity()) == p);
  CHECK(multiply(identity(), p) == p);
}

TEST_CASE("associativity on random triples") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 1000; ++i) {
    const auto p = random_point(rng), q = random_point(rng), r = random_point(rng);
    CHECK(dist(multiply(multiply(p, q), r), multiply(p, multiply(q, r))) <= 1e-12);
  }
}

TEST_CASE("dilation") {
  CHECK(dilate(2.0, {1, 0, 1}) == GroupPoint{2, 0, 4});
  const GroupPoint p{1, 1, 1};
  CHECK(dilate(1.0, p) == p);
  CHECK(dist(dilate(0.5, dilate(3.0, p)), dilate(1.5, p)) <= 1e-15);
  CHECK_THROWS(dilate(0.0, p));
  CHECK_THROWS(dilate(-1.0, p));
  std::mt19937_64 rng(11);
  for (double lam : {0.1, 0.7, 2.0, 9.0})
    for (int i = 0; i < 200; ++i) {
      const auto a = random_point(rng), b = random_point(rng);
      const auto lhs = dilate(lam, multiply(a, b));
      const auto rhs = multiply(dilate(lam, a), dilate(lam, b));
      CHECK(dist(lhs, rhs) <= 1e-12 * std::max(1.0, lam * lam * 100.0));
    }
}

TEST_CASE("coset reduction") {
  const double pi = std::numbers::pi;
  CHECK(coset_reduce({1, 0, 3.5}, pi).base.t == doctest::Approx(3.5 - pi).epsilon(1e-15));
  CHECK(coset_reduce({0, 0, pi}, pi).base.t == 0.0);
  CHECK(coset_reduce({0, 0, -0.1}, pi).base.t == doctest::Approx(pi - 0.1).epsilon(1e-15));
  CHECK(coset_reduce({0, 0, -1e-18}, pi).base.t < pi);
  CHECK_THROWS(coset_reduce({0, 0, 1}, 0.0));
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const auto p = random_point(rng);
    const auto c = coset_reduce(p, 2.5);
    CHECK(c.base.t >= 0.0);
    CHECK(c.base.t < 2.5);
    CHECK(coset_reduce(c.base, 2.5).base == c.base);
    CHECK(std::abs(coset_reduce({p.x, p.y, p.t + 2.5}, 2.5).base.t - c.base.t) <= 1e-12);
  }
}

TEST_CASE("contact form and hamiltonian") {
  CHECK(contact_form({0, 0, 0}, {1, 0, 0}) == 0.0);
  CHECK(contact_form({1, 0, 0}, {0, 1, 0}) == -0.5);
  CHECK(contact_form({3.1, -2.0, 7.0}, {0, 0, 1}) == 1.0);
  CHECK(hamiltonian({0, 0, 0}, {1, 0, 0}) == 0.5);
  CHECK(hamiltonian({0, 0, 0}, {0, 0, 1}) == 0.0);
  CHECK(hamiltonian({0, 2, 0}, {1, 0, 1}) == 0.0);
}

TEST_CASE("charge") {
  const Charge c(4.0);
  CHECK(c.lambda * c.R == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS(Charge(0.0));
  CHECK_THROWS(Charge(-2.0));
}

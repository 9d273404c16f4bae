#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "hxray/fock.hpp"
#include "hxray/laguerre_exact.hpp"

using namespace hxray;

TEST_CASE("a_sequence basics") {
  for (int n : {1, 2, 7}) {
    const auto s = a_sequence(n, 5);
    CHECK(s.values[0] == 1);
    CHECK(s.values[1] == 1);
  }
  CHECK(a_sequence(2, 2).values[2] == 0);
  CHECK(a_sequence(1, 2).values[2] == 1);
  const auto s = a_sequence(5, 40);
  for (int j = 1; j < 40; ++j)
    CHECK(s.values[j + 1] == BigInt(2 * j + 1) * s.values[j] - BigInt(j) * BigInt(j + 5) * s.values[j - 1]);
  CHECK(a_sequence(5, 200).values == a_sequence(5, 200).values);
  CHECK_THROWS(a_sequence(0, 3));
}

TEST_CASE("exact values match floating Laguerre") {
  for (int n : {1, 2, 3, 8}) {
    const auto s = a_sequence(n, 30);
    for (int j = 0; j <= 30; ++j) {
      const double exact = s.values[j].convert_to<double>() / std::tgamma(j + 1.0);
      const double approx = laguerre(j, n, n);
      CHECK(std::abs(approx - exact) <= 1e-8 * std::max(1.0, std::abs(exact)));
    }
  }
}

TEST_CASE("parity theorem") {
  CHECK(parity_check(1, 300));
  CHECK(parity_check(51, 300));
  CHECK(parity_check(3, 0));
  CHECK_THROWS(parity_check(2, 10));
  CHECK_THROWS(parity_check(-1, 10));
}

TEST_CASE("zero scan") {
  const auto z = zero_scan(10, 10);
  CHECK(std::find(z.begin(), z.end(), std::make_pair(2, 2)) != z.end());
  for (const auto& [j, n] : z) {
    CHECK(n % 2 == 0);
    CHECK(j != 0);
  }
  CHECK_THROWS(zero_scan(0, 5));
}

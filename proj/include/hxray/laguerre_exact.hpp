#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <utility>
#include <vector>

namespace hxray {

using BigInt = boost::multiprecision::cpp_int;

// a_j = j! L_j^{(n)}(n), j = 0..jmax, exact.
struct ExactIntSeq {
  int n = 1;
  std::vector<BigInt> values;
};

ExactIntSeq a_sequence(int n, int jmax);
bool parity_check(int n, int jmax);
// All (j, n) in [0, jmax] x [1, nmax] with a_j^{(n)} = 0, ordered by n then j.
std::vector<std::pair<int, int>> zero_scan(int nmax, int jmax);

}  // namespace hxray

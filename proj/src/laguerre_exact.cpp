#include "hxray/laguerre_exact.hpp"

#include <stdexcept>

namespace hxray {

ExactIntSeq a_sequence(int n, int jmax) {
  if (n < 1) throw std::invalid_argument("a_sequence: n must be >= 1");
  if (jmax < 0) throw std::invalid_argument("a_sequence: jmax must be >= 0");
  ExactIntSeq s;
  s.n = n;
  s.values.reserve(jmax + 1);
  s.values.emplace_back(1);
  if (jmax >= 1) s.values.emplace_back(1);
  for (int j = 1; j < jmax; ++j) {
    BigInt next = BigInt(2 * j + 1) * s.values[j] - BigInt(j) * BigInt(j + n) * s.values[j - 1];
    s.values.push_back(std::move(next));
  }
  return s;
}

bool parity_check(int n, int jmax) {
  if (n < 1 || n % 2 == 0) throw std::invalid_argument("parity_check: n must be a positive odd integer");
  const auto s = a_sequence(n, jmax);
  for (const auto& v : s.values)
    if (!bit_test(v < 0 ? BigInt(-v) : v, 0)) return false;
  return true;
}

std::vector<std::pair<int, int>> zero_scan(int nmax, int jmax) {
  if (nmax < 1 || jmax < 1) throw std::invalid_argument("zero_scan: nmax and jmax must be >= 1");
  std::vector<std::pair<int, int>> out;
  for (int n = 1; n <= nmax; ++n) {
    const auto s = a_sequence(n, jmax);
    for (int j = 0; j <= jmax; ++j)
      if (s.values[j] == 0) out.emplace_back(j, n);
  }
  return out;
}

}  // namespace hxray

#include "hxray/export.hpp"

#include <fstream>
#include <stdexcept>

namespace hxray {

namespace {
std::ofstream open_csv(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path);
  os.precision(17);
  return os;
}
}  // namespace

void write_zero_scan_csv(const std::vector<std::pair<int, int>>& zeros, const std::string& path) {
  auto os = open_csv(path);
  os << "j,n\n";
  for (const auto& [j, n] : zeros) os << j << ',' << n << '\n';
}

void write_probe_csv(const std::vector<ProbeRow>& rows, const std::string& path) {
  auto os = open_csv(path);
  os << "x,y,t,re,im,reference_re,reference_im\n";
  for (const auto& r : rows)
    os << r.q.x << ',' << r.q.y << ',' << r.q.t << ',' << r.value.real() << ',' << r.value.imag() << ','
       << r.reference.real() << ',' << r.reference.imag() << '\n';
}

}  // namespace hxray

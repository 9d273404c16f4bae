#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hxray/group.hpp"

namespace hxray {

void write_zero_scan_csv(const std::vector<std::pair<int, int>>& zeros, const std::string& path);

struct ProbeRow {
  GroupPoint q;
  cplx value;
  cplx reference;
};
void write_probe_csv(const std::vector<ProbeRow>& rows, const std::string& path);

}  // namespace hxray

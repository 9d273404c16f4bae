#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hxray/xray.hpp"

namespace hxray {

// Split g on H / {(0, k pi)} into its t-average f0 and the zero-average remainder.
struct Decomposition {
  Phantom f0;
  Phantom perp;
};
Decomposition decompose(const Phantom& g, const QuadratureSpec& quad = {});

// Evaluation grid: 16 radii x 16 angles within |z| <= 4, 16 t-values in [0, pi).
std::vector<GroupPoint> svd_grid();

struct SvdResult {
  int n, j, k;
  double predicted_factor;
  double numeric_factor;
  double rel_err;
};
// Predicted factor 2 pi s_j with s_j the signed singular value of J_n(1).
double svd_factor(int n, int j);
SvdResult svd_check(int n, int j, int k, const QuadratureSpec& quad = {});

Pair mean_value_restriction_check(std::function<cplx(cplx)> f, cplx z0, const QuadratureSpec& quad = {},
                                  double feature_z = 0.5);

void write_svd_csv(const std::vector<SvdResult>& rows, const std::string& path);

}  // namespace hxray

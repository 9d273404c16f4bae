#include "hxray/reduced_svd.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include "hxray/fock.hpp"
#include "hxray/quadrature.hpp"

namespace hxray {

namespace {
constexpr double kPi = std::numbers::pi;
}

Decomposition decompose(const Phantom& g, const QuadratureSpec& quad) {
  if (!g.periodic()) throw std::invalid_argument("decompose: function must live on the quotient");
  const auto t = period_nodes(g.period, g.feature_t, 1, quad);
  auto avg = [e = g.eval, t](cplx z) {
    cplx acc = 0.0;
    for (double s : t) acc += e({z.real(), z.imag(), s});
    return acc / double(t.size());
  };
  Phantom f0 = planar_phantom(avg, g.support_z, g.feature_z, g.period, "mean(" + g.label + ")");
  Phantom perp = g;
  perp.eval = [e = g.eval, avg](const GroupPoint& q) { return e(q) - avg(q.z()); };
  perp.label = "perp(" + g.label + ")";
  return {f0, perp};
}

std::vector<GroupPoint> svd_grid() {
  std::vector<GroupPoint> pts;
  for (int a = 0; a < 16; ++a) {
    const double r = 4.0 * (a + 1) / 16.0;
    for (int b = 0; b < 16; ++b) {
      const double th = 2.0 * kPi * b / 16.0;
      for (int m = 0; m < 16; ++m) pts.push_back({r * std::cos(th), r * std::sin(th), kPi * m / 16.0});
    }
  }
  return pts;
}

double svd_factor(int n, int j) { return 2.0 * kPi * j_singular_values(n, 1.0, j + 1)[j]; }

SvdResult svd_check(int n, int j, int k, const QuadratureSpec& quad) {
  const Phantom psi = matrix_coefficient_phantom(n, j, k);
  const Phantom target = matrix_coefficient_phantom(n, j + std::abs(n), k);
  const double factor = svd_factor(n, j);
  const Charge one(1.0);
  const auto pts = svd_grid();
  std::vector<cplx> num(pts.size());
#pragma omp parallel for schedule(dynamic, 8)
  for (long i = 0; i < static_cast<long>(pts.size()); ++i) num[i] = reduced_forward(psi, pts[i], one, {}, quad);
  double diff2 = 0.0, pred2 = 0.0, src2 = 0.0, tgt2 = 0.0;
  cplx proj = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const cplx tv = target(pts[i]);
    const cplx pv = factor * tv;
    diff2 += std::norm(num[i] - pv);
    pred2 += std::norm(pv);
    tgt2 += std::norm(tv);
    src2 += std::norm(psi(pts[i]));
    proj += num[i] * std::conj(tv);
  }
  SvdResult r{n, j, k, factor, (proj / tgt2).real(), 0.0};
  // a vanishing predicted factor is measured against the operator scale 2 pi ||psi||
  const double den = std::abs(factor) > 1e-14 ? std::sqrt(pred2) : 2.0 * kPi * std::sqrt(src2);
  r.rel_err = std::sqrt(diff2) / den;
  return r;
}

Pair mean_value_restriction_check(std::function<cplx(cplx)> f, cplx z0, const QuadratureSpec& quad, double feature_z) {
  const Phantom g = planar_phantom(f, INFINITY, feature_z, kPi, "planar");
  const cplx lhs = reduced_forward(g, {z0.real(), z0.imag(), 0.3}, Charge(1.0), {}, quad);
  const Rule r = composite_gl(0.0, 2.0 * kPi, 64, quad.panel_order);
  cplx rhs = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) rhs += r.weights[i] * f(z0 + std::polar(1.0, r.nodes[i]));
  return {lhs, rhs};
}

void write_svd_csv(const std::vector<SvdResult>& rows, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path);
  os.precision(17);
  os << "n,j,k,predicted_factor,numeric_factor,rel_err\n";
  for (const auto& r : rows)
    os << r.n << ',' << r.j << ',' << r.k << ',' << r.predicted_factor << ',' << r.numeric_factor << ',' << r.rel_err
       << '\n';
}

}  // namespace hxray

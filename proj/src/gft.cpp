#include "hxray/gft.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <numbers>

#include "hxray/quadrature.hpp"

namespace hxray {

namespace {

constexpr double kPi = std::numbers::pi;

// Matrix coefficients of index <= K at frequency h are negligible beyond this radius
// (x = |h| r^2 = 80 + 4K puts e^{-x/2} x^{K/2} / sqrt(K!) below 1e-19).
double envelope_radius(double h, int K) { return std::sqrt((80.0 + 4.0 * K) / std::abs(h)); }

// Node spacing resolving the product of the function and Hermite-like oscillations of index <= K;
// the two bandwidths add.
double fourier_spacing(double feature_z, double hmax, int K, const QuadratureSpec& quad) {
  return std::min(0.5 * feature_z, quad.fourier_spacing / (std::sqrt(hmax * (2.0 * K + 1.0)) + 1.0 / feature_z));
}

Eigen::MatrixXcd embed(const Eigen::MatrixXcd& a, int N) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(N, N);
  out.topLeftCorner(a.rows(), a.cols()) = a;
  return out;
}

int resolve_modes(int modes, const TruncationPolicy& policy) {
  policy.validate();
  return modes > 0 ? std::min(modes, policy.N) : policy.N;
}

std::vector<cplx> collapse_t(const std::vector<cplx>& v, std::size_t nz, const std::vector<double>& tn,
                             const std::vector<double>& tw, double h) {
  std::vector<cplx> ph(tn.size());
  for (std::size_t m = 0; m < tn.size(); ++m) ph[m] = tw[m] * std::polar(1.0, -2.0 * h * tn[m]);
  std::vector<cplx> T(nz);
  for (std::size_t i = 0; i < nz; ++i) {
    cplx acc = 0.0;
    const cplx* row = v.data() + i * tn.size();
    for (std::size_t m = 0; m < tn.size(); ++m) acc += row[m] * ph[m];
    T[i] = acc;
  }
  return T;
}

double side_integral_real(std::vector<std::pair<double, double>> pts) {
  std::sort(pts.begin(), pts.end());
  double acc = 0.0, h0 = 0.0, v0 = 0.0;
  for (const auto& [h, v] : pts) {
    acc += 0.5 * (h - h0) * (v + v0);
    h0 = h;
    v0 = v;
  }
  return acc;
}

cplx side_integral(std::vector<std::pair<double, cplx>> pts) {
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  cplx acc = 0.0, v0 = 0.0;
  double h0 = 0.0;
  for (const auto& [h, v] : pts) {
    acc += 0.5 * (h - h0) * (v + v0);
    h0 = h;
    v0 = v;
  }
  return acc;
}

double slice_radius(const Charge& c, const MetricTag& m) {
  if (!m.taming) return 1.0;
  return 1.0 / std::sqrt(1.0 + 2.0 * m.eps * m.eps * c.lambda * c.lambda);
}

MatrixPair make_pair(Eigen::MatrixXcd lhs, Eigen::MatrixXcd rhs, int trusted) {
  MatrixPair p{std::move(lhs), std::move(rhs), 0.0};
  p.residual = trusted_rel_frobenius(p.lhs, p.rhs, trusted);
  return p;
}

}  // namespace

FockMatrix group_fourier(const Phantom& f, double h, const TruncationPolicy& policy, const QuadratureSpec& quad,
                         int modes) {
  if (h == 0.0) throw std::invalid_argument("group_fourier: h must be nonzero");
  if (f.periodic()) throw std::invalid_argument("group_fourier: phantom must be a function on H");
  const int D = resolve_modes(modes, policy);
  const int K = D - 1;
  const double a = std::abs(h);
  const double W = std::min(f.support_z, envelope_radius(a, K));
  const PlanarGrid z = planar_grid(W, fourier_spacing(f.feature_z, a, K, quad), quad);
  const double tspace = std::min(0.5 * f.feature_t, kPi / (16.0 * a)) * quad.resolution;
  const Rule tr = composite_gl(-f.support_t, f.support_t,
                               panels_for(2.0 * f.support_t, tspace * quad.panel_order, quad.panel_count),
                               quad.panel_order);
  const auto v = kernels::sample_grid(f, z, tr.nodes);
  const auto T = collapse_t(v, z.size(), tr.nodes, tr.weights, h);
  return FockMatrix(embed(kernels::fourier_assemble(z, T, h, D), policy.N));
}

QuotientGrid quotient_grid(const Phantom& g, double hmin, double hmax, int K, int nmax, const QuadratureSpec& quad) {
  const double W = std::min(g.support_z, envelope_radius(hmin, K));
  return {planar_grid(W, fourier_spacing(g.feature_z, hmax, K, quad), quad),
          period_nodes(g.period, g.feature_t, 2 * nmax + 8, quad)};
}

FockMatrix reduced_fourier_samples(const PlanarGrid& z, const std::vector<double>& t, double period,
                                   const std::vector<cplx>& values, double h, int modes, int N) {
  const std::vector<double> tw(t.size(), period / t.size());
  const auto T = collapse_t(values, z.size(), t, tw, h);
  return FockMatrix(embed(kernels::fourier_assemble(z, T, h, std::min(modes, N)), N));
}

FockMatrix reduced_fourier(const Phantom& g, int n, const Charge& c, const MetricTag& m,
                           const TruncationPolicy& policy, const QuadratureSpec& quad, int modes) {
  if (n == 0) throw std::invalid_argument("reduced_fourier: n must be nonzero");
  const double P = stabilizer_period(c, m);
  if (!g.periodic() || std::abs(g.period - P) > 1e-12 * P)
    throw std::invalid_argument("reduced_fourier: function period does not match the stabilizer period");
  const int D = resolve_modes(modes, policy);
  const double h = quotient_frequency(n, c, m);
  const QuotientGrid grid = quotient_grid(g, std::abs(h), std::abs(h), D - 1, std::abs(n), quad);
  const auto v = kernels::sample_grid(g, grid.z, grid.t);
  return reduced_fourier_samples(grid.z, grid.t, P, v, h, D, policy.N);
}

Sinogram fourier_sinogram(const Phantom& f, const Charge& c, const MetricTag& m, const std::vector<int>& ns,
                          int modes, const QuadratureSpec& quad) {
  if (ns.empty()) throw std::invalid_argument("fourier_sinogram: no frequencies");
  double hmin = INFINITY, hmax = 0.0;
  int nmax = 0;
  for (int n : ns) {
    if (n == 0) throw std::invalid_argument("fourier_sinogram: n must be nonzero");
    const double h = std::abs(quotient_frequency(n, c, m));
    hmin = std::min(hmin, h);
    hmax = std::max(hmax, h);
    nmax = std::max(nmax, std::abs(n));
  }
  Phantom X = xray_phantom(f, c, m, quad);
  // Only the t-modes n of X enter. The shear that makes X itself vary fast in z is a t-phase of
  // frequency ~ |h| R per unit z, already below the matrix-coefficient bandwidth in the spacing rule.
  X.feature_z = f.feature_z;
  const QuotientGrid grid = quotient_grid(X, hmin, hmax, modes - 1, nmax, quad);
  return sample_sinogram(f, c, m, grid.z, grid.t, quad);
}

MatrixPair dilation_lemma_check(const Phantom& f, double lambda, double h, const TruncationPolicy& policy,
                                const QuadratureSpec& quad) {
  const Eigen::MatrixXcd lhs = group_fourier(dilated(f, lambda), h, policy, quad, policy.trusted).mat;
  const Eigen::MatrixXcd rhs =
      group_fourier(f, h / (lambda * lambda), policy, quad.independent(), policy.trusted).mat / std::pow(lambda, 4);
  return make_pair(lhs, rhs, policy.trusted);
}

MatrixPair dilation_quotient_check(const Phantom& g, double lambda, int n, const MetricTag& m,
                                   const TruncationPolicy& policy, const QuadratureSpec& quad) {
  const MetricTag m1 = m.taming ? MetricTag::taming_metric(m.eps * lambda) : m;
  const Eigen::MatrixXcd lhs =
      reduced_fourier(dilated(g, lambda), n, Charge(lambda), m, policy, quad, policy.trusted).mat;
  const Eigen::MatrixXcd rhs =
      reduced_fourier(g, n, Charge(1.0), m1, policy, quad.independent(), policy.trusted).mat / std::pow(lambda, 4);
  return make_pair(lhs, rhs, policy.trusted);
}

MatrixPair poisson_check(const Phantom& f, int n, const Charge& c, const MetricTag& m,
                         const TruncationPolicy& policy, const QuadratureSpec& quad) {
  const Eigen::MatrixXcd lhs =
      reduced_fourier(central_periodization(f, c, m, quad), n, c, m, policy, quad, policy.trusted).mat;
  const Eigen::MatrixXcd rhs = group_fourier(f, quotient_frequency(n, c, m), policy, quad, policy.trusted).mat;
  return make_pair(lhs, rhs, policy.trusted);
}

MatrixPair multiplier_check(const Phantom& g, int n, const MetricTag& m, const TruncationPolicy& policy,
                            const QuadratureSpec& quad) {
  const Charge one(1.0);
  const int D = policy.trusted + std::abs(n);
  const Eigen::MatrixXcd lhs = reduced_fourier(reduced_xray_phantom(g, one, m, quad), n, one, m, policy, quad, D).mat;
  const Eigen::MatrixXcd rhs = 2.0 * kPi * j_operator_closed(n, slice_radius(one, m), policy).mat *
                               reduced_fourier(g, n, one, m, policy, quad, policy.trusted).mat;
  return make_pair(lhs, rhs, policy.trusted);
}

std::vector<SliceResult> slice_suite(const Phantom& f, const std::vector<int>& ns, double lambda,
                                     const MetricTag& m, const TruncationPolicy& policy,
                                     const QuadratureSpec& quad) {
  policy.validate();
  const Charge c(lambda);
  int nmax = 0;
  for (int n : ns) nmax = std::max(nmax, std::abs(n));
  const Sinogram S = fourier_sinogram(f, c, m, ns, policy.trusted + nmax, quad);
  const double r = slice_radius(c, m);
  std::vector<SliceResult> out;
  for (int n : ns) {
    const double h = quotient_frequency(n, c, m);
    const Eigen::MatrixXcd lhs =
        reduced_fourier_samples(S.z, S.t, S.period(), S.values, h, policy.trusted + std::abs(n), policy.N).mat;
    const Eigen::MatrixXcd rhs = (2.0 * kPi / lambda) * j_operator_closed(n, r, policy).mat *
                                 group_fourier(f, h, policy, quad, policy.trusted).mat;
    out.push_back({n, lambda, m.taming ? m.eps : 0.0, make_pair(lhs, rhs, policy.trusted)});
  }
  return out;
}

MatrixPair slice_check(const Phantom& f, int n, double lambda, const TruncationPolicy& policy,
                       const QuadratureSpec& quad) {
  return slice_suite(f, {n}, lambda, MetricTag{}, policy, quad).front().pair;
}

MatrixPair slice_check_eps(const Phantom& f, int n, double lambda, double eps, const TruncationPolicy& policy,
                           const QuadratureSpec& quad) {
  return slice_suite(f, {n}, lambda, MetricTag::taming_metric(eps), policy, quad).front().pair;
}

std::vector<ZeroModeResult> zero_mode_suite(const Phantom& f, double lambda, const std::vector<cplx>& zetas,
                                            const QuadratureSpec& quad) {
  const Charge c(lambda);
  double kmax = 0.0;
  for (cplx z : zetas) kmax = std::max(kmax, lambda * std::abs(z));
  const double osc = kmax > 0.0 ? 1.0 / kmax : INFINITY;

  // sinogram integrated over one period in t
  // the t-average of X is as smooth in z as f itself
  const Phantom X = xray_phantom(f, c, MetricTag{}, quad);
  const PlanarGrid zs = planar_grid(X.support_z, std::min(0.5 * f.feature_z, osc), quad);
  const auto ts = period_nodes(X.period, X.feature_t, 1, quad);
  const auto vs = kernels::sample_grid(X, zs, ts);
  const auto Ts = collapse_t(vs, zs.size(), ts, std::vector<double>(ts.size(), X.period / ts.size()), 0.0);

  // f integrated over t
  const PlanarGrid zf = planar_grid(f.support_z, std::min(0.5 * f.feature_z, osc), quad);
  const Rule tr = composite_gl(-f.support_t, f.support_t,
                               panels_for(2.0 * f.support_t, 0.5 * f.feature_t * quad.resolution * quad.panel_order,
                                          quad.panel_count),
                               quad.panel_order);
  const auto vf = kernels::sample_grid(f, zf, tr.nodes);
  const auto Tf = collapse_t(vf, zf.size(), tr.nodes, tr.weights, 0.0);

  auto planar_ft = [lambda](const PlanarGrid& z, const std::vector<cplx>& T, cplx zeta) {
    cplx acc = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i)
      acc += z.w[i] * T[i] * std::polar(1.0, -lambda * (zeta.real() * z.x[i] + zeta.imag() * z.y[i]));
    return acc;
  };

  std::vector<ZeroModeResult> out;
  for (cplx zeta : zetas) {
    const cplx fh = planar_ft(zf, Tf, zeta);
    const double pref = 2.0 * kPi / lambda;
    out.push_back({zeta, planar_ft(zs, Ts, zeta), pref * bessel_classical(0, std::abs(zeta)) * fh, pref * std::abs(fh)});
  }
  return out;
}

ZeroModeResult zero_mode_slice_check(const Phantom& f, double lambda, cplx zeta, const QuadratureSpec& quad) {
  return zero_mode_suite(f, lambda, {zeta}, quad).front();
}

std::vector<double> default_h_grid(double h_min, double h_max, int nodes, double h_switch) {
  if (!(h_min > 0.0) || !(h_max > h_min) || nodes < 4 || nodes % 2)
    throw std::invalid_argument("default_h_grid: need 0 < h_min < h_max and an even node count >= 4");
  const int side = nodes / 2;
  h_switch = std::clamp(h_switch, h_min, h_max);
  const int ng = side / 2, nl = side - ng;
  std::vector<double> pos;
  for (int k = 0; k < ng; ++k) pos.push_back(h_min * std::pow(h_switch / h_min, ng > 1 ? double(k) / (ng - 1) : 0.0));
  for (int k = 1; k <= nl; ++k) pos.push_back(h_switch + (h_max - h_switch) * k / nl);
  std::vector<double> g;
  for (auto it = pos.rbegin(); it != pos.rend(); ++it) g.push_back(-*it);
  g.insert(g.end(), pos.begin(), pos.end());
  return g;
}

std::vector<GftSample> gft_samples(const Phantom& f, const std::vector<double>& h_grid,
                                   const TruncationPolicy& policy, const QuadratureSpec& quad) {
  std::vector<GftSample> out;
  out.reserve(h_grid.size());
  for (double h : h_grid) out.push_back({h, group_fourier(f, h, policy, quad, policy.trusted)});
  return out;
}

PlancherelResult plancherel_check(const Phantom& f, const std::vector<double>& h_grid,
                                  const TruncationPolicy& policy, const QuadratureSpec& quad) {
  PlancherelResult res;
  res.lhs = l2_norm(f, quad);
  std::vector<std::pair<double, double>> pos, neg;
  for (double h : h_grid) {
    if (h == 0.0) throw std::invalid_argument("plancherel_check: h-grid must exclude 0");
    const Eigen::MatrixXcd F = group_fourier(f, h, policy, quad, policy.trusted).block(policy.trusted);
    const double tr = F.squaredNorm();
    res.h.push_back(h);
    res.trace.push_back(tr);
    (h > 0 ? pos : neg).emplace_back(std::abs(h), std::abs(h) * tr / (kPi * kPi));
  }
  res.rhs = std::sqrt(side_integral_real(pos) + side_integral_real(neg));
  return res;
}

cplx inversion(const std::vector<GftSample>& samples, const GroupPoint& q, int trusted) {
  std::vector<std::pair<double, cplx>> pos, neg;
  Eigen::MatrixXcd B(trusted, trusted);
  for (const auto& s : samples) {
    if (s.h == 0.0) throw std::invalid_argument("inversion: sample at h = 0");
    rep_matrix_into(s.h, q, trusted, B);
    const cplx tr = (B.cwiseProduct(s.matrix.mat.topLeftCorner(trusted, trusted).transpose())).sum();
    (s.h > 0 ? pos : neg).emplace_back(std::abs(s.h), std::abs(s.h) * tr / (kPi * kPi));
  }
  return side_integral(pos) + side_integral(neg);
}

GftSample recover_sample(const Sinogram& s, int n, const TruncationPolicy& policy, double floor) {
  const double h = quotient_frequency(n, s.charge, s.metric);
  const Eigen::MatrixXcd L =
      reduced_fourier_samples(s.z, s.t, s.period(), s.values, h, policy.trusted + std::abs(n), policy.N).mat;
  const Eigen::MatrixXcd Jp = j_pseudo_inverse(n, slice_radius(s.charge, s.metric), policy, floor).mat;
  return {h, FockMatrix(s.charge.lambda / (2.0 * kPi) * Jp * L)};
}

Reconstruction reconstruct(const std::vector<Sinogram>& sinograms, const TruncationPolicy& policy,
                           const ReconstructOptions& opt) {
  policy.validate();
  if (!(opt.floor > 0.0)) throw std::invalid_argument("reconstruct: floor must be > 0");
  for (int n : opt.ns) {
    if (n == 0) throw std::invalid_argument("reconstruct: n must be nonzero");
    if (n % 2 == 0 && !opt.allow_even)
      throw std::invalid_argument("reconstruct: even n requires allow_even (J_n may have a kernel)");
  }
  std::vector<GftSample> raw;
  for (const auto& s : sinograms)
    for (int n : opt.ns) raw.push_back(recover_sample(s, n, policy, opt.floor));
  std::stable_sort(raw.begin(), raw.end(), [](const auto& a, const auto& b) { return a.h < b.h; });

  Reconstruction rec{{}, policy.trusted};
  for (std::size_t i = 0; i < raw.size();) {
    std::size_t j = i + 1;
    Eigen::MatrixXcd acc = raw[i].matrix.mat;
    while (j < raw.size() &&
           std::abs(raw[j].h - raw[i].h) <= opt.dedup_tol * std::max(std::abs(raw[i].h), std::abs(raw[j].h))) {
      acc += raw[j].matrix.mat;
      ++j;
    }
    rec.samples.push_back({raw[i].h, FockMatrix(acc / double(j - i))});
    i = j;
  }

  if (opt.bandwidth > 0.0 || opt.max_gap > 0.0) {
    std::vector<double> habs;
    for (const auto& s : rec.samples) habs.push_back(std::abs(s.h));
    std::sort(habs.begin(), habs.end());
    habs.erase(std::unique(habs.begin(), habs.end()), habs.end());
    if (habs.empty()) throw CoverageError("reconstruct: no Fourier samples");
    if (opt.bandwidth > 0.0 && habs.back() < opt.bandwidth * (1.0 - 1e-12))
      throw CoverageError("reconstruct: samples reach |h| = " + std::to_string(habs.back()) +
                          ", below the requested bandwidth " + std::to_string(opt.bandwidth));
    if (opt.max_gap > 0.0) {
      double prev = 0.0;
      for (double h : habs) {
        if (opt.bandwidth > 0.0 && prev >= opt.bandwidth) break;
        if (h - prev > opt.max_gap)
          throw CoverageError("reconstruct: gap in |h| between " + std::to_string(prev) + " and " +
                              std::to_string(h) + " exceeds " + std::to_string(opt.max_gap));
        prev = h;
      }
    }
  }
  return rec;
}

void write_gft_json(const std::vector<GftSample>& samples, const std::string& path) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& s : samples) {
    nlohmann::json entries = nlohmann::json::array();
    const int d = s.matrix.dim();
    // row-major in the (j, k) = <F w_j, w_k> convention
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        const cplx v = s.matrix.coeff(j, k);
        entries.push_back({v.real(), v.imag()});
      }
    arr.push_back({{"h", s.h}, {"dim", d}, {"entries", entries}});
  }
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path);
  os << arr.dump(1) << '\n';
}

}  // namespace hxray

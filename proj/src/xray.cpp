#include "hxray/xray.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "hxray/quadrature.hpp"

namespace hxray {

namespace {

constexpr double kPi = std::numbers::pi;

// Sampling density: trapezoid spacing as a fraction of the feature scale, and the
// Gauss–Legendre node spacing used for aperiodic directions.
constexpr double kTrapezoidFraction = 0.7;
constexpr double kGaussFraction = 0.5;

cplx forward_impl(const Phantom& f, const GeodesicSpec& spec, const QuadratureSpec& quad, int mult) {
  if (f.periodic()) throw std::invalid_argument("forward: phantom must be a function on H");
  const double R = spec.charge.R;
  const double v = vertical_rate(spec.charge, spec.metric);
  const GroupPoint& q = spec.translate;
  const double rz = std::hypot(q.x, q.y);
  const double Sz = f.support_z, St = f.support_t;
  if (std::abs(rz - R) > Sz) return 0.0;

  const double drift = v + 0.5 * rz;  // bound on |dt/ds| along the translated helix
  const double s_lo = (-St - q.t - 0.5 * rz * R) / v;
  const double s_hi = (St - q.t + 0.5 * rz * R) / v;
  const double len = quad.resolution * std::min(f.feature_z, f.feature_t / drift);
  const int np = panels_for(s_hi - s_lo, len, quad.panel_count) * mult;
  const Rule& g = gauss_legendre(quad.panel_order);
  const double hl = 0.5 * (s_hi - s_lo) / np;

  cplx acc = 0.0;
  for (int p = 0; p < np; ++p) {
    const double sc = s_lo + (2 * p + 1) * hl;
    const GroupPoint c = multiply(q, model_helix(spec.charge, spec.metric, sc));
    if (std::abs(c.t) - drift * hl > St) continue;
    if (std::hypot(c.x, c.y) - hl > Sz) continue;
    cplx panel = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double s = sc + hl * g.nodes[i];
      panel += g.weights[i] * f(multiply(q, model_helix(spec.charge, spec.metric, s)));
    }
    acc += hl * panel;
  }
  return acc;
}

void check_period(const Phantom& g, double P, const char* who) {
  if (!g.periodic() || std::abs(g.period - P) > 1e-12 * P)
    throw std::invalid_argument(std::string(who) + ": function period does not match the stabilizer period");
}

}  // namespace

void QuadratureSpec::validate() const {
  if (panel_count < 1 || panel_order < 1 || t_sum_terms < 1 || reduced_nodes < 1 || t_nodes < 1 ||
      !(resolution > 0.0) || !(fourier_spacing > 0.0))
    throw std::invalid_argument("QuadratureSpec: all fields must be >= 1 and resolution > 0");
}

QuadratureSpec QuadratureSpec::independent() const {
  QuadratureSpec q = *this;
  q.panel_order += 3;
  q.reduced_nodes += 37;
  q.resolution *= 0.83;
  q.fourier_spacing *= 0.87;
  return q;
}

QuadratureSpec QuadratureSpec::refined() const {
  QuadratureSpec q = *this;
  q.panel_count *= 2;
  q.resolution *= 0.5;
  q.reduced_nodes *= 2;
  q.t_nodes *= 2;
  return q;
}

cplx forward(const Phantom& f, const GeodesicSpec& spec, const QuadratureSpec& quad) {
  return forward_impl(f, spec, quad, 1);
}

ForwardResult forward_checked(const Phantom& f, const GeodesicSpec& spec, const QuadratureSpec& quad,
                              double tol, double floor_abs) {
  const cplx a = forward_impl(f, spec, quad, 1);
  const cplx b = forward_impl(f, spec, quad, 2);
  return {a, b, std::abs(a - b) <= tol * std::max(std::abs(a), floor_abs)};
}

Phantom central_periodization(const Phantom& f, const Charge& c, const MetricTag& m,
                              const QuadratureSpec& quad) {
  if (f.periodic()) throw std::invalid_argument("central_periodization: phantom must be a function on H");
  const double P = stabilizer_period(c, m);
  const double St = f.support_t;
  const long cap = quad.t_sum_terms;
  Phantom p = f;
  p.eval = [g = f.eval, P, St, cap](const GroupPoint& q) {
    const long kmin = std::max(-cap, static_cast<long>(std::ceil((-St - q.t) / P)));
    const long kmax = std::min(cap, static_cast<long>(std::floor((St - q.t) / P)));
    cplx acc = 0.0;
    for (long k = kmin; k <= kmax; ++k) acc += g({q.x, q.y, q.t + k * P});
    return acc;
  };
  p.period = P;
  p.label = "periodize(" + f.label + ")";
  return p;
}

cplx reduced_forward(const Phantom& g, const GroupPoint& q, const Charge& c, const MetricTag& m,
                     const QuadratureSpec& quad) {
  check_period(g, stabilizer_period(c, m), "reduced_forward");
  const double L = 2.0 * kPi * c.R;
  const double drift = vertical_rate(c, m) + 0.5 * std::hypot(q.x, q.y);
  const double spacing = kTrapezoidFraction * quad.resolution * std::min(g.feature_z, g.feature_t / drift);
  const int nodes = std::max(quad.reduced_nodes, static_cast<int>(std::ceil(L / spacing)));
  cplx acc = 0.0;
  for (int k = 0; k < nodes; ++k) acc += g(multiply(q, model_helix(c, m, L * k / nodes)));
  return acc * (L / nodes);
}

Phantom xray_phantom(const Phantom& f, const Charge& c, const MetricTag& m, const QuadratureSpec& quad) {
  if (f.periodic()) throw std::invalid_argument("xray_phantom: phantom must be a function on H");
  Phantom p;
  p.eval = [f, c, m, quad](const GroupPoint& q) { return forward(f, GeodesicSpec(q, c.lambda, m), quad); };
  p.support_z = f.support_z + c.R;
  p.feature_z = std::min(f.feature_z, 2.0 * f.feature_t / c.R);
  p.feature_t = f.feature_t;
  p.period = stabilizer_period(c, m);
  p.label = "xray(" + f.label + ")";
  return p;
}

Phantom reduced_xray_phantom(const Phantom& g, const Charge& c, const MetricTag& m,
                             const QuadratureSpec& quad) {
  check_period(g, stabilizer_period(c, m), "reduced_xray_phantom");
  Phantom p = g;
  p.eval = [g, c, m, quad](const GroupPoint& q) { return reduced_forward(g, q, c, m, quad); };
  p.support_z = g.support_z + c.R;
  p.feature_z = std::min(g.feature_z, 2.0 * g.feature_t / c.R);
  p.label = "reduced_xray(" + g.label + ")";
  return p;
}

PlanarGrid planar_grid(double W, double spacing, const QuadratureSpec& quad) {
  const double step = spacing * quad.resolution * quad.panel_order;
  const int panels = panels_for(2.0 * W, step, quad.panel_count);
  return square_grid(W, panels, quad.panel_order, W);
}

std::vector<double> period_nodes(double period, double feature_t, int min_nodes, const QuadratureSpec& quad) {
  int M = std::max(quad.t_nodes, min_nodes);
  if (std::isfinite(feature_t))
    M = std::max(M, static_cast<int>(std::ceil(period / (kTrapezoidFraction * quad.resolution * feature_t))));
  return periodic_trapezoid(0.0, period, M).nodes;
}

cplx integrate(const Phantom& f, const QuadratureSpec& quad) {
  const PlanarGrid z = planar_grid(f.support_z, kGaussFraction * f.feature_z, quad);
  std::vector<double> tn, tw;
  if (f.periodic()) {
    tn = period_nodes(f.period, f.feature_t, 1, quad);
    tw.assign(tn.size(), f.period / tn.size());
  } else {
    const double step = kGaussFraction * f.feature_t * quad.resolution * quad.panel_order;
    const Rule r = composite_gl(-f.support_t, f.support_t, panels_for(2.0 * f.support_t, step, quad.panel_count),
                                quad.panel_order);
    tn = r.nodes;
    tw = r.weights;
  }
  const auto v = kernels::sample_grid(f, z, tn);
  cplx acc = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    cplx row = 0.0;
    for (std::size_t m = 0; m < tn.size(); ++m) row += tw[m] * v[i * tn.size() + m];
    acc += z.w[i] * row;
  }
  return acc;
}

Phantom map_values(const Phantom& f, std::function<cplx(cplx)> fn) {
  Phantom p = f;
  p.eval = [g = f.eval, fn = std::move(fn)](const GroupPoint& q) { return fn(g(q)); };
  return p;
}

double l1_norm(const Phantom& f, const QuadratureSpec& quad) {
  return integrate(map_values(f, [](cplx v) { return cplx(std::abs(v)); }), quad).real();
}

double l2_norm(const Phantom& f, const QuadratureSpec& quad) {
  return std::sqrt(integrate(map_values(f, [](cplx v) { return cplx(std::norm(v)); }), quad).real());
}

cplx inner_product(const Phantom& f, const Phantom& g, const QuadratureSpec& quad) {
  if (f.period != g.period) throw std::invalid_argument("inner_product: mismatched domains");
  Phantom p = f;
  p.eval = [a = f.eval, b = g.eval](const GroupPoint& q) { return a(q) * std::conj(b(q)); };
  p.support_z = std::min(f.support_z, g.support_z);
  p.support_t = std::min(f.support_t, g.support_t);
  p.feature_z = std::min(f.feature_z, g.feature_z);
  p.feature_t = std::min(f.feature_t, g.feature_t);
  return integrate(p, quad);
}

double Pair::rel_diff() const {
  const double d = std::abs(lhs - rhs);
  const double s = std::abs(rhs);
  return s > 0.0 ? d / s : d;
}

Pair santalo_check(const Phantom& f, const Charge& c, const MetricTag& m, const QuadratureSpec& quad) {
  const cplx lhs = c.lambda * integrate(xray_phantom(f, c, m, quad), quad);
  return {lhs, 2.0 * kPi * integrate(f, quad)};
}

Pair l1_bound_check(const Phantom& f, const std::vector<double>& lambdas, const MetricTag& m,
                    const QuadratureSpec& quad) {
  if (lambdas.size() < 2) throw std::invalid_argument("l1_bound_check: need at least two lambda values");
  const double f1 = l1_norm(f, quad);
  double lhs = 0.0, weight = 0.0;
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    const Charge c(lambdas[i]);
    const Phantom g = map_values(xray_phantom(f, c, m, quad), [](cplx v) { return cplx(std::abs(v)); });
    const double norm_i = c.lambda * integrate(g, quad).real();
    double dl = 0.0;
    if (i > 0) dl += 0.5 * (lambdas[i] - lambdas[i - 1]);
    if (i + 1 < lambdas.size()) dl += 0.5 * (lambdas[i + 1] - lambdas[i]);
    lhs += dl * std::exp(-lambdas[i]) * norm_i;
    weight += dl * std::exp(-lambdas[i]);
  }
  return {lhs, 2.0 * kPi * f1 * weight};
}

Pair homogeneity_check(const Phantom& f, const Charge& c, const GroupPoint& q, const MetricTag& m,
                       const QuadratureSpec& quad) {
  const cplx lhs = forward(f, GeodesicSpec(q, c.lambda, m), quad);
  const MetricTag m1 = m.taming ? MetricTag::taming_metric(m.eps * c.lambda) : m;
  const cplx rhs =
      forward(dilated(f, 1.0 / c.lambda), GeodesicSpec(dilate(c.lambda, q), 1.0, m1), quad.independent()) / c.lambda;
  return {lhs, rhs};
}

Pair equivariance_check(const Phantom& g, const GroupPoint& w, const GroupPoint& q, const QuadratureSpec& quad) {
  const Charge one(1.0);
  const MetricTag sr;
  return {reduced_forward(left_translated(g, w), q, one, sr, quad),
          reduced_forward(g, multiply(w, q), one, sr, quad.independent())};
}

double Sinogram::period() const { return stabilizer_period(charge, metric); }

Sinogram sample_sinogram(const Phantom& f, const Charge& c, const MetricTag& m, const PlanarGrid& z,
                         const std::vector<double>& t, const QuadratureSpec& quad) {
  Sinogram s;
  s.charge = c;
  s.metric = m;
  s.z = z;
  s.t = t;
  s.values = kernels::sample_grid(xray_phantom(f, c, m, quad), z, t);
  return s;
}

void write_sinogram_csv(const Sinogram& s, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path);
  os.precision(17);
  os << "x,y,t,lambda,epsilon_or_0,re_value,im_value\n";
  const double eps = s.metric.taming ? s.metric.eps : 0.0;
  for (std::size_t i = 0; i < s.z.size(); ++i)
    for (std::size_t m = 0; m < s.t.size(); ++m) {
      const cplx v = s.values[i * s.t.size() + m];
      os << s.z.x[i] << ',' << s.z.y[i] << ',' << s.t[m] << ',' << s.charge.lambda << ',' << eps << ','
         << v.real() << ',' << v.imag() << '\n';
    }
}

}  // namespace hxray

#include "hxray/geodesics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hxray {

MetricTag MetricTag::taming_metric(double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("taming metric: eps must be > 0");
  return {true, eps};
}

GeodesicSpec::GeodesicSpec(const GroupPoint& q, double lambda, MetricTag m)
    : translate(q), charge(lambda), metric(m) {
  if (metric.taming && !(metric.eps > 0.0)) throw std::invalid_argument("GeodesicSpec: eps must be > 0");
}

GeodesicSpec GeodesicSpec::canonical() const {
  GeodesicSpec out = *this;
  out.translate = coset_reduce(translate, stabilizer_period(charge, metric)).base;
  return out;
}

double vertical_rate(const Charge& c, const MetricTag& m) {
  if (!m.taming) return 0.5 * c.R;
  return (c.R * c.R + 2.0 * m.eps * m.eps) / (2.0 * c.R);
}

GroupPoint model_helix(const Charge& c, double s) {
  const double th = s / c.R;
  return {c.R * std::cos(th), c.R * std::sin(th), 0.5 * s * c.R};
}

GroupPoint model_helix_eps(const Charge& c, double eps, double s) {
  if (!(eps > 0.0)) throw std::invalid_argument("model_helix_eps: eps must be > 0");
  const double th = s / c.R;
  return {c.R * std::cos(th), c.R * std::sin(th), s * vertical_rate(c, {true, eps})};
}

GroupPoint model_helix(const Charge& c, const MetricTag& m, double s) {
  return m.taming ? model_helix_eps(c, m.eps, s) : model_helix(c, s);
}

GroupPoint geodesic_point(const GeodesicSpec& spec, double s) {
  return multiply(spec.translate, model_helix(spec.charge, spec.metric, s));
}

GroupPoint exp_sr(const GroupPoint& base, double phi, double lambda, double s) {
  const cplx e = std::polar(1.0, phi);
  if (lambda == 0.0) {
    const cplx w = s * e;
    return multiply(base, {w.real(), w.imag(), 0.0});
  }
  const double a = lambda * s;
  // (e^{ia} - 1)/(i lambda), written without cancellation for small a
  const cplx w = e * cplx(std::sin(a), 2.0 * std::pow(std::sin(0.5 * a), 2)) / lambda;
  double vt;
  if (std::abs(a) < 0.1) {
    // (a - sin a)/(2 lambda^2) = s^2 a/12 (1 - a^2/20 + a^4/840 - a^6/60480 + a^8/6652800)
    const double a2 = a * a;
    vt = s * s * a / 12.0 * (1.0 - a2 / 20.0 * (1.0 - a2 / 42.0 * (1.0 - a2 / 72.0 * (1.0 - a2 / 110.0))));
  } else {
    vt = (a - std::sin(a)) / (2.0 * lambda * lambda);
  }
  return multiply(base, {w.real(), w.imag(), vt});
}

GroupPoint exp_taming(const GroupPoint& base, double phi, double lambda, double eps, double s) {
  if (!(eps > 0.0)) throw std::invalid_argument("exp_taming: eps must be > 0");
  return multiply(exp_sr(base, phi, lambda, s), {0.0, 0.0, eps * eps * lambda * s});
}

double stabilizer_period(const Charge& c, const MetricTag& m) {
  const double r2 = c.R * c.R;
  return std::numbers::pi * (m.taming ? r2 + 2.0 * m.eps * m.eps : r2);
}

double quotient_frequency(int n, const Charge& c, const MetricTag& m) {
  return n * std::numbers::pi / stabilizer_period(c, m);
}

}  // namespace hxray

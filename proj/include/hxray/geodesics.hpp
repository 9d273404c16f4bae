#pragma once

#include "hxray/group.hpp"

namespace hxray {

struct MetricTag {
  bool taming = false;
  double eps = 0.0;

  static MetricTag sub_riemannian() { return {}; }
  static MetricTag taming_metric(double eps);
  bool operator==(const MetricTag&) const = default;
};

struct GeodesicSpec {
  GroupPoint translate;
  Charge charge;
  MetricTag metric;

  GeodesicSpec(const GroupPoint& q, double lambda, MetricTag m = {});
  // t reduced modulo the stabilizer period
  GeodesicSpec canonical() const;
};

GroupPoint model_helix(const Charge& c, double s);
GroupPoint model_helix_eps(const Charge& c, double eps, double s);
GroupPoint model_helix(const Charge& c, const MetricTag& m, double s);
GroupPoint geodesic_point(const GeodesicSpec& spec, double s);

GroupPoint exp_sr(const GroupPoint& base, double phi, double lambda, double s);
GroupPoint exp_taming(const GroupPoint& base, double phi, double lambda, double eps, double s);

double stabilizer_period(const Charge& c, const MetricTag& m);

// dt/ds of the model helix: R/2, or (R^2 + 2 eps^2)/(2R) for the taming metric.
double vertical_rate(const Charge& c, const MetricTag& m);

// Central frequency of the Fourier mode n on the quotient by the stabilizer.
double quotient_frequency(int n, const Charge& c, const MetricTag& m);

}  // namespace hxray

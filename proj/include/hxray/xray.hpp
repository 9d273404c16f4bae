#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hxray/geodesics.hpp"
#include "hxray/kernels.hpp"
#include "hxray/phantom.hpp"

namespace hxray {

struct QuadratureSpec {
  int panel_count = 8;        // minimum panels per integration window
  int panel_order = 8;        // Gauss–Legendre order per panel
  int t_sum_terms = 100000;   // cap on central periodization terms
  double resolution = 1.0;    // scales every node spacing; 0.5 halves them
  int reduced_nodes = 256;    // minimum trapezoid nodes over one helix period
  int t_nodes = 32;           // minimum trapezoid nodes over one central period
  double fourier_spacing = 0.7;  // z-spacing constant c in c / (sqrt(|h| (2K + 1)) + 1 / feature_z) for Fourier grids
  void validate() const;
  QuadratureSpec refined() const;  // panel count doubled, spacing halved
  // Similar accuracy on nodes unrelated to these, for comparing the two sides of an identity.
  QuadratureSpec independent() const;
};

struct ForwardResult {
  cplx value;
  cplx refined;
  bool converged;
};

cplx forward(const Phantom& f, const GeodesicSpec& spec, const QuadratureSpec& quad = {});
// Also evaluates with doubled panels and flags |difference| > tol * max(|value|, floor_abs).
ForwardResult forward_checked(const Phantom& f, const GeodesicSpec& spec, const QuadratureSpec& quad,
                              double tol = 1e-9, double floor_abs = 1e-14);

Phantom central_periodization(const Phantom& f, const Charge& c, const MetricTag& m,
                              const QuadratureSpec& quad = {});
cplx reduced_forward(const Phantom& g, const GroupPoint& q, const Charge& c, const MetricTag& m,
                     const QuadratureSpec& quad = {});

// The transform as a function on the geodesic space H / stabilizer.
Phantom xray_phantom(const Phantom& f, const Charge& c, const MetricTag& m, const QuadratureSpec& quad = {});
Phantom reduced_xray_phantom(const Phantom& g, const Charge& c, const MetricTag& m,
                             const QuadratureSpec& quad = {});

// Node layouts shared by the integrators.
PlanarGrid planar_grid(double support_z, double spacing, const QuadratureSpec& quad);
std::vector<double> period_nodes(double period, double feature_t, int min_nodes, const QuadratureSpec& quad);

// Integrals of f over H, or of a periodic g over one fundamental domain.
cplx integrate(const Phantom& f, const QuadratureSpec& quad = {});
double l1_norm(const Phantom& f, const QuadratureSpec& quad = {});
double l2_norm(const Phantom& f, const QuadratureSpec& quad = {});
cplx inner_product(const Phantom& f, const Phantom& g, const QuadratureSpec& quad = {});
Phantom map_values(const Phantom& f, std::function<cplx(cplx)> fn);

struct Pair {
  cplx lhs;
  cplx rhs;
  double rel_diff() const;
};

Pair santalo_check(const Phantom& f, const Charge& c, const MetricTag& m, const QuadratureSpec& quad = {});
// lambda-integral of L1(G_lambda) norms against the weight e^{-lambda}, on a trapezoid lambda-grid;
// returns (sum, 2 pi ||f||_1 * same weight integral)
Pair l1_bound_check(const Phantom& f, const std::vector<double>& lambdas, const MetricTag& m,
                    const QuadratureSpec& quad = {});
Pair homogeneity_check(const Phantom& f, const Charge& c, const GroupPoint& q, const MetricTag& m,
                       const QuadratureSpec& quad = {});
Pair equivariance_check(const Phantom& g, const GroupPoint& w, const GroupPoint& q,
                        const QuadratureSpec& quad = {});

// Sampled transform on a (z, t) grid of the geodesic space.
struct Sinogram {
  Charge charge{1.0};
  MetricTag metric;
  PlanarGrid z;
  std::vector<double> t;
  std::vector<cplx> values;  // z-major
  double period() const;
};

Sinogram sample_sinogram(const Phantom& f, const Charge& c, const MetricTag& m, const PlanarGrid& z,
                         const std::vector<double>& t, const QuadratureSpec& quad = {});
void write_sinogram_csv(const Sinogram& s, const std::string& path);

}  // namespace hxray

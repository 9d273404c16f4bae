#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hxray/fock.hpp"
#include "hxray/xray.hpp"

namespace hxray {

struct GftSample {
  double h;
  FockMatrix matrix;
};

struct ReducedGftSample {
  int n;
  double lambda;
  FockMatrix matrix;
};

// Largest index K resolved by a Fourier grid is modes - 1; modes = 0 means policy.N.
// Entries outside the leading modes x modes block are returned as zero.
FockMatrix group_fourier(const Phantom& f, double h, const TruncationPolicy& policy,
                         const QuadratureSpec& quad = {}, int modes = 0);

FockMatrix reduced_fourier(const Phantom& g, int n, const Charge& c, const MetricTag& m,
                           const TruncationPolicy& policy, const QuadratureSpec& quad = {}, int modes = 0);

// z-nodes and t-nodes adequate for Fourier modes with |h| in [hmin, hmax] and index <= K.
struct QuotientGrid {
  PlanarGrid z;
  std::vector<double> t;
};
QuotientGrid quotient_grid(const Phantom& g, double hmin, double hmax, int K, int nmax, const QuadratureSpec& quad);

// Reduced transform from precomputed samples on a quotient grid.
FockMatrix reduced_fourier_samples(const PlanarGrid& z, const std::vector<double>& t, double period,
                                   const std::vector<cplx>& values, double h, int modes, int N);

// Sinogram on a grid chosen for the given frequencies.
Sinogram fourier_sinogram(const Phantom& f, const Charge& c, const MetricTag& m, const std::vector<int>& ns,
                          int modes, const QuadratureSpec& quad = {});

struct MatrixPair {
  Eigen::MatrixXcd lhs;
  Eigen::MatrixXcd rhs;
  double residual = 0.0;  // trusted-block relative Frobenius difference
};

MatrixPair dilation_lemma_check(const Phantom& f, double lambda, double h, const TruncationPolicy& policy,
                                const QuadratureSpec& quad = {});
// Quotient version. g lives on H / Gamma of charge 1 and metric m1 (sub-Riemannian, or taming with
// eps*lambda); the left side is taken at charge lambda with metric m (taming eps).
MatrixPair dilation_quotient_check(const Phantom& g, double lambda, int n, const MetricTag& m,
                                   const TruncationPolicy& policy, const QuadratureSpec& quad = {});
MatrixPair poisson_check(const Phantom& f, int n, const Charge& c, const MetricTag& m,
                         const TruncationPolicy& policy, const QuadratureSpec& quad = {});
MatrixPair multiplier_check(const Phantom& g, int n, const MetricTag& m, const TruncationPolicy& policy,
                            const QuadratureSpec& quad = {});

struct SliceResult {
  int n;
  double lambda;
  double eps;
  MatrixPair pair;
};

// Slice theorem at one lambda for several n, sharing one sinogram.
std::vector<SliceResult> slice_suite(const Phantom& f, const std::vector<int>& ns, double lambda,
                                     const MetricTag& m, const TruncationPolicy& policy,
                                     const QuadratureSpec& quad = {});
MatrixPair slice_check(const Phantom& f, int n, double lambda, const TruncationPolicy& policy,
                       const QuadratureSpec& quad = {});
MatrixPair slice_check_eps(const Phantom& f, int n, double lambda, double eps, const TruncationPolicy& policy,
                           const QuadratureSpec& quad = {});

struct ZeroModeResult {
  cplx zeta;
  cplx lhs;
  cplx rhs;
  double scale;  // (2 pi / lambda) |f^(lambda zeta, 0)|
};
std::vector<ZeroModeResult> zero_mode_suite(const Phantom& f, double lambda, const std::vector<cplx>& zetas,
                                            const QuadratureSpec& quad = {});
ZeroModeResult zero_mode_slice_check(const Phantom& f, double lambda, cplx zeta, const QuadratureSpec& quad = {});

// Symmetric h-grid: geometric on [h_min, h_switch], linear on (h_switch, h_max], mirrored.
std::vector<double> default_h_grid(double h_min = 0.01, double h_max = 8.0, int nodes = 160,
                                   double h_switch = 1.0);

struct PlancherelResult {
  double lhs;
  double rhs;
  std::vector<double> h;
  std::vector<double> trace;  // trusted-block tr(F F*)
  double ratio() const { return lhs > 0.0 ? rhs / lhs : 0.0; }
};
PlancherelResult plancherel_check(const Phantom& f, const std::vector<double>& h_grid,
                                  const TruncationPolicy& policy, const QuadratureSpec& quad = {});

std::vector<GftSample> gft_samples(const Phantom& f, const std::vector<double>& h_grid,
                                   const TruncationPolicy& policy, const QuadratureSpec& quad = {});
// Trapezoid over sorted h on each side of 0, closed at h = 0 with value 0.
cplx inversion(const std::vector<GftSample>& samples, const GroupPoint& q, int trusted);

struct ReconstructOptions {
  std::vector<int> ns{1, 3, 5, -1, -3, -5};
  bool allow_even = false;
  double floor = 1e-8;
  double bandwidth = 0.0;  // required max |h|; 0 disables the check
  double max_gap = 0.0;    // largest admissible gap between sampled |h|; 0 disables
  double dedup_tol = 1e-12;
};

class CoverageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Reconstruction {
  std::vector<GftSample> samples;
  int trusted;
  cplx operator()(const GroupPoint& q) const { return inversion(samples, q, trusted); }
};

Reconstruction reconstruct(const std::vector<Sinogram>& sinograms, const TruncationPolicy& policy,
                           const ReconstructOptions& opt = {});
// Recovered F(h = n lambda^2) from one sinogram.
GftSample recover_sample(const Sinogram& s, int n, const TruncationPolicy& policy, double floor);

void write_gft_json(const std::vector<GftSample>& samples, const std::string& path);

}  // namespace hxray

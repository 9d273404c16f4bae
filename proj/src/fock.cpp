#include "hxray/fock.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hxray/quadrature.hpp"

namespace hxray {

namespace {

constexpr double kPi = std::numbers::pi;

// 0.5 * log(k!) for small k, extended on demand
double half_log_fact(int k) { return 0.5 * std::lgamma(k + 1.0); }

struct LogFactTable {
  std::vector<double> v;
  explicit LogFactTable(int n) : v(n + 1) {
    for (int k = 0; k <= n; ++k) v[k] = half_log_fact(k);
  }
};

const LogFactTable& log_fact_table() {
  static const LogFactTable t(2048);
  return t;
}

}  // namespace

void TruncationPolicy::validate() const {
  if (N < 1) throw std::invalid_argument("TruncationPolicy: N must be >= 1");
  if (trusted < 1 || 2 * trusted > N) throw std::invalid_argument("TruncationPolicy: need 1 <= trusted <= N/2");
}

double laguerre(int j, double alpha, double x) {
  if (j < 0) throw std::invalid_argument("laguerre: j must be >= 0");
  if (j == 0) return 1.0;
  double l0 = 1.0, l1 = 1.0 + alpha - x;
  for (int m = 1; m < j; ++m) {
    const double l2 = ((2.0 * m + 1.0 + alpha - x) * l1 - (m + alpha) * l0) / (m + 1.0);
    l0 = l1;
    l1 = l2;
  }
  return l1;
}

void laguerre_all(int jmax, double alpha, double x, double* out) {
  out[0] = 1.0;
  if (jmax == 0) return;
  out[1] = 1.0 + alpha - x;
  for (int m = 1; m < jmax; ++m)
    out[m + 1] = ((2.0 * m + 1.0 + alpha - x) * out[m] - (m + alpha) * out[m - 1]) / (m + 1.0);
}

cplx matrix_coefficient(double h, int j, int k, const GroupPoint& p) {
  if (h == 0.0) throw std::invalid_argument("matrix_coefficient: h = 0 is not a Fock representation");
  if (j < 0 || k < 0) throw std::invalid_argument("matrix_coefficient: negative index");
  double a = h, y = p.y, t = p.t;
  if (h < 0.0) {
    a = -h;
    y = -y;
    t = -t;
  }
  const cplx w = std::sqrt(a) * cplx(p.x, y);
  const double x = std::norm(w);
  const int lo = std::min(j, k), d = std::abs(j - k);
  const cplx base = j >= k ? w : -std::conj(w);
  const double lf = std::lgamma(lo + 1.0) - std::lgamma(lo + d + 1.0);
  const cplx pw = d == 0 ? cplx(1.0) : std::pow(base, d);
  return std::exp(0.5 * lf) * pw * laguerre(lo, d, x) * std::exp(-0.5 * x) * std::polar(1.0, 2.0 * a * t);
}

void rep_matrix_into(double h, const GroupPoint& p, int N, Eigen::MatrixXcd& out) {
  if (h == 0.0) throw std::invalid_argument("rep_matrix: h = 0 is not a Fock representation");
  if (out.rows() != N || out.cols() != N) out.resize(N, N);
  const double a = std::abs(h);
  const double y = h < 0.0 ? -p.y : p.y;
  const cplx w = std::sqrt(a) * cplx(p.x, y);
  const double x = std::norm(w);
  const double rw = std::sqrt(x);
  const cplx centre = std::polar(1.0, 2.0 * h * p.t);
  const auto& lf = log_fact_table().v;
  if (N + 1 > static_cast<int>(lf.size())) throw std::invalid_argument("rep_matrix: N too large");

  // unit phases u^d for the two branches
  const cplx u = rw > 0.0 ? w / rw : cplx(1.0);
  const cplx ub = -std::conj(u);
  const double logr = rw > 0.0 ? std::log(rw) : 0.0;

  double lag[2048];
  cplx pu = 1.0, pub = 1.0;
  for (int d = 0; d < N; ++d) {
    if (d > 0) {
      pu *= u;
      pub *= ub;
    }
    const int mmax = N - 1 - d;
    if (d > 0 && rw == 0.0) {
      for (int m = 0; m <= mmax; ++m) {
        out(m, m + d) = 0.0;
        out(m + d, m) = 0.0;
      }
      continue;
    }
    laguerre_all(mmax, d, x, lag);
    for (int m = 0; m <= mmax; ++m) {
      const double L = lag[m];
      double mag = 0.0;
      if (L != 0.0) {
        const double e = std::log(std::abs(L)) + d * logr + lf[m] - lf[m + d] - 0.5 * x;
        mag = std::copysign(std::exp(e), L);
      }
      // j = m + d >= k = m : entry (row k, col j)
      out(m, m + d) = mag * pu * centre;
      if (d > 0) out(m + d, m) = mag * pub * centre;
    }
  }
}

FockMatrix rep_matrix(double h, const GroupPoint& p, const TruncationPolicy& policy) {
  policy.validate();
  FockMatrix f(policy.N);
  rep_matrix_into(h, p, policy.N, f.mat);
  f.representation = true;
  return f;
}

std::vector<double> j_singular_values(int n, double r, int count) {
  if (n == 0) throw std::invalid_argument("J_n: n must be nonzero");
  if (!(r > 0.0)) throw std::invalid_argument("J_n: r must be > 0");
  const int m = std::abs(n);
  const double x = m * r * r;
  std::vector<double> lag(std::max(count, 1));
  laguerre_all(std::max(count - 1, 0), m, x, lag.data());
  std::vector<double> s(count);
  const double sign = (m % 2) ? -1.0 : 1.0;
  for (int j = 0; j < count; ++j) {
    if (lag[j] == 0.0) {
      s[j] = 0.0;
      continue;
    }
    const double e = std::log(std::abs(lag[j])) + 0.5 * (std::lgamma(j + 1.0) - std::lgamma(j + m + 1.0)) +
                     0.5 * m * std::log(x) - 0.5 * x;
    s[j] = sign * std::copysign(std::exp(e), lag[j]);
  }
  return s;
}

FockMatrix j_operator_closed(int n, double r, const TruncationPolicy& policy) {
  policy.validate();
  const int m = std::abs(n);
  FockMatrix f(policy.N);
  const int count = std::max(policy.N - m, 0);
  const auto s = j_singular_values(n, r, count);
  for (int j = 0; j < count; ++j) f.mat(j + m, j) = s[j];
  return f;
}

FockMatrix j_operator_quadrature(int n, double r, const TruncationPolicy& policy, int panels, int order) {
  policy.validate();
  if (n == 0) throw std::invalid_argument("J_n: n must be nonzero");
  const Rule q = composite_gl(0.0, 2.0 * kPi, panels, order);
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(policy.N, policy.N);
  Eigen::MatrixXcd b(policy.N, policy.N);
  for (std::size_t i = 0; i < q.size(); ++i) {
    const double th = q.nodes[i];
    rep_matrix_into(n, {r * std::cos(th), r * std::sin(th), 0.5 * th}, policy.N, b);
    acc += q.weights[i] * b;
  }
  return FockMatrix(acc / (2.0 * kPi));
}

FockMatrix j_pseudo_inverse(int n, double r, const TruncationPolicy& policy, double floor) {
  policy.validate();
  if (!(floor > 0.0)) throw std::invalid_argument("j_pseudo_inverse: floor must be > 0");
  const int m = std::abs(n);
  FockMatrix f(policy.N);
  const int count = std::max(policy.N - m, 0);
  const auto s = j_singular_values(n, r, count);
  for (int j = 0; j < count; ++j)
    if (std::abs(s[j]) >= floor) f.mat(j, j + m) = 1.0 / s[j];
  return f;
}

double bessel_classical(int n, double r, int panels, int order) {
  const Rule q = composite_gl(0.0, 2.0 * kPi, panels, order);
  cplx acc = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i)
    acc += q.weights[i] * std::polar(1.0, r * std::cos(q.nodes[i]) - n * q.nodes[i]);
  // divide by 2 pi i^n
  const int m = ((n % 4) + 4) % 4;
  static const cplx ipow[4] = {1.0, cplx(0, 1), -1.0, cplx(0, -1)};
  const cplx v = acc / (2.0 * kPi * ipow[m]);
  if (std::abs(v.imag()) > 1e-12 * std::max(1.0, std::abs(v)))
    throw std::runtime_error("bessel_classical: imaginary residue above 1e-12");
  return v.real();
}

double bessel_j0_first_zero() {
  double a = 2.0, b = 3.0;
  double fa = bessel_classical(0, a);
  while (b - a > 1e-13) {
    const double c = 0.5 * (a + b);
    const double fc = bessel_classical(0, c);
    if ((fa > 0.0) == (fc > 0.0)) {
      a = c;
      fa = fc;
    } else {
      b = c;
    }
  }
  return 0.5 * (a + b);
}

double max_abs(const Eigen::MatrixXcd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

double operator_norm(const Eigen::MatrixXcd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

double trusted_rel_frobenius(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b, int t) {
  const double num = (a.topLeftCorner(t, t) - b.topLeftCorner(t, t)).norm();
  const double den = b.topLeftCorner(t, t).norm();
  if (den == 0.0) return num;
  return num / den;
}

}  // namespace hxray

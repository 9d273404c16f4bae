#pragma once

#include <Eigen/Dense>
#include <vector>

#include "hxray/group.hpp"

namespace hxray {

struct TruncationPolicy {
  int N = 32;
  int trusted = 12;
  void validate() const;
};

// Truncated operator on Bargmann–Fock space in the basis w_k = zeta^k / sqrt(k!).
// Stored in standard operator layout: mat(k, j) = <A w_j, w_k>, so products compose
// operators in the usual order. coeff(j, k) returns <A w_j, w_k>.
struct FockMatrix {
  Eigen::MatrixXcd mat;
  bool representation = false;

  FockMatrix() = default;
  explicit FockMatrix(int n) : mat(Eigen::MatrixXcd::Zero(n, n)) {}
  explicit FockMatrix(Eigen::MatrixXcd m, bool rep = false) : mat(std::move(m)), representation(rep) {}

  int dim() const { return static_cast<int>(mat.rows()); }
  cplx coeff(int j, int k) const { return mat(k, j); }
  Eigen::MatrixXcd block(int t) const { return mat.topLeftCorner(t, t); }
  FockMatrix operator*(const FockMatrix& o) const { return FockMatrix(mat * o.mat); }
};

double laguerre(int j, double alpha, double x);
// L_0^{(alpha)}(x) .. L_{jmax}^{(alpha)}(x)
void laguerre_all(int jmax, double alpha, double x, double* out);

cplx matrix_coefficient(double h, int j, int k, const GroupPoint& p);

// Fills out (N x N, standard layout) with beta_h(p). Thread-safe, allocation-free if out is sized.
void rep_matrix_into(double h, const GroupPoint& p, int N, Eigen::MatrixXcd& out);
FockMatrix rep_matrix(double h, const GroupPoint& p, const TruncationPolicy& policy);

// Signed singular values s_j of J_n(r): J_n(r) w_j = s_j w_{j+|n|}.
std::vector<double> j_singular_values(int n, double r, int count);
FockMatrix j_operator_closed(int n, double r, const TruncationPolicy& policy);
FockMatrix j_operator_quadrature(int n, double r, const TruncationPolicy& policy, int panels = 256,
                                 int order = 8);
FockMatrix j_pseudo_inverse(int n, double r, const TruncationPolicy& policy, double floor);

double bessel_classical(int n, double r, int panels = 256, int order = 8);
// First positive zero of J_0 by bisection on the quadrature Bessel function.
double bessel_j0_first_zero();

double max_abs(const Eigen::MatrixXcd& m);
double operator_norm(const Eigen::MatrixXcd& m);
// ||(a-b) block||_F / ||b block||_F on the leading t x t block
double trusted_rel_frobenius(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b, int t);

}  // namespace hxray

#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "bsc/errors.hpp"
#include "bsc/lifting.hpp"
#include "bsc/parameters.hpp"
#include "bsc/quadrature.hpp"
#include "bsc/types.hpp"

namespace bsc {

/// Name of the discrete trigonometric transform selected by the boundary flags.
/// Rows are indexed by (eps~_-, eps~_+), columns by (eps_-, eps_+).
inline std::string transform_name(const BoundaryFlags& eps, const BoundaryFlags& eps_tilde)
{
  static const std::array<std::array<const char*, 4>, 4> table = {{
      {"DCT-1", "DCT-6", "DST-8", "DST-3"},
      {"DCT-5", "DCT-2", "DST-4", "DST-7"},
      {"DCT-7", "DCT-4", "DST-2", "DST-5"},
      {"DCT-3", "DCT-8", "DST-6", "DST-1"},
  }};
  const int row = 2 * eps_tilde.minus + eps_tilde.plus;
  const int col = 2 * eps.minus + eps.plus;
  return table[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)];
}

/// Pole-free nodes xi_l = pi (l + (eps_- + eps~_-)/2) / (M + (eps_+ + eps_- + eps~_+ + eps~_-)/2).
template <typename Scalar = double>
Vector<Scalar> closed_form_nodes(const BoundaryFlags& eps, const BoundaryFlags& eps_tilde, int num_nodes)
{
  if (num_nodes < 1)
    throw ConfigurationError("closed_form_nodes needs at least one node");
  const int twice_denom = 2 * (num_nodes - 1) + eps.sum() + eps_tilde.sum();
  if (twice_denom == 0)
    throw ConfigurationError("a single node with all flags zero has no closed form");
  const Scalar pi = std::numbers::pi_v<Scalar>;
  Vector<Scalar> xi(num_nodes);
  for (int l = 0; l < num_nodes; ++l)
    xi[l] = pi * Scalar(2 * l + eps.minus + eps_tilde.minus) / Scalar(twice_denom);
  return xi;
}

/// The pole-free cubature on Lambda^(m,n), weights
///   (1/N) 2^{-(1-eps_+)(1-eps~_+)[lambda_1=m] - (1-eps_-)(1-eps~_-)[lambda_n=0]} rho_eps(xi_lambda),
/// N = (2(m+n-1) + eps_+ + eps_- + eps~_+ + eps~_-)^n.
template <typename Scalar = double>
CubatureRule<Scalar> elementary_cubature(const BoundaryFlags& eps, const BoundaryFlags& eps_tilde, int m, int n,
                                         std::uint64_t cap = kDefaultPartitionCap)
{
  if (m < 0 || n < 1)
    throw ConfigurationError("elementary_cubature needs m >= 0 and n >= 1");
  const Vector<Scalar> base = closed_form_nodes<Scalar>(eps, eps_tilde, m + n);
  const Scalar big_n = std::pow(Scalar(2 * (m + n - 1) + eps.sum() + eps_tilde.sum()), n);
  const int halve_right = (1 - eps.plus) * (1 - eps_tilde.plus);
  const int halve_left = (1 - eps.minus) * (1 - eps_tilde.minus);

  CubatureRule<Scalar> out;
  out.n = n;
  out.m = m;
  out.coordinates = NodeCoordinates::angular;
  out.eps = eps;
  out.exact_degree = 2 * m + eps_tilde.sum() - 1;
  out.base_rule.nodes = base;
  out.base_rule.lower = Scalar(0);
  out.base_rule.upper = std::numbers::pi_v<Scalar>;
  out.base_rule.exact_degree = 2 * (m + n - 1) + eps_tilde.sum() - 1;
  out.base_rule.weights.resize(m + n);
  for (int l = 0; l < m + n; ++l) {
    const int h = (l == 0 ? halve_left : 0) + (l == m + n - 1 ? halve_right : 0);
    out.base_rule.weights[l] = Scalar(1) / (Scalar(1 << h) * Scalar(2 * (m + n - 1) + eps.sum() + eps_tilde.sum()));
  }
  detail::fill_staggered_nodes(out, base, cap);

  out.weights.resize(out.size());
  for (int i = 0; i < out.size(); ++i) {
    const Partition& lam = out.partitions[static_cast<std::size_t>(i)];
    const int h = (lam[0] == m ? halve_right : 0) + (lam[n - 1] == 0 ? halve_left : 0);
    out.weights[i] = jacobi_density(eps, out.node(i)) / (big_n * Scalar(1 << h));
  }
  return out;
}

template <typename Scalar = double>
struct DxtKernel {
  Matrix<Scalar> matrix;   ///< psi(l, k): l indexes nodes, k indexes degrees
  std::string transform_name;
  BoundaryFlags eps;
  BoundaryFlags eps_tilde;

  int size() const { return static_cast<int>(matrix.rows()); }
};

/// Kernel of the discrete trigonometric transform for the given flags, size (m+1) x (m+1).
template <typename Scalar = double>
DxtKernel<Scalar> dxt_kernel(const BoundaryFlags& eps, const BoundaryFlags& eps_tilde, int m)
{
  using std::cos;
  using std::sin;
  using std::sqrt;
  if (m < 1)
    throw ConfigurationError("dxt_kernel needs m >= 1");
  const Scalar pi = std::numbers::pi_v<Scalar>;
  const Scalar denom = Scalar(m) + Scalar(eps.sum() + eps_tilde.sum()) / Scalar(2);
  const Scalar norm = sqrt(Scalar(2) / denom);
  const Scalar row_shift = Scalar(eps.minus + eps_tilde.minus) / Scalar(2);
  const Scalar col_shift = Scalar(eps.minus + eps.plus) / Scalar(2);
  const Scalar inv_sqrt2 = Scalar(1) / sqrt(Scalar(2));

  DxtKernel<Scalar> out;
  out.eps = eps;
  out.eps_tilde = eps_tilde;
  out.transform_name = transform_name(eps, eps_tilde);
  out.matrix.resize(m + 1, m + 1);
  for (int l = 0; l <= m; ++l) {
    for (int k = 0; k <= m; ++k) {
      const Scalar arg = pi * (Scalar(l) + row_shift) * (Scalar(k) + col_shift) / denom;
      const Scalar cs = eps.minus == 0 ? cos(arg) : sin(arg);
      const int corrections = (1 - eps.minus) * (1 - eps_tilde.minus) * (l == 0) +
                              (1 - eps.plus) * (1 - eps_tilde.plus) * (l == m) +
                              (1 - eps.minus) * (1 - eps.plus) * (k == 0) +
                              (1 - eps_tilde.minus) * (1 - eps_tilde.plus) * (k == m);
      Scalar factor(1);
      for (int c = 0; c < corrections; ++c)
        factor *= inv_sqrt2;
      out.matrix(l, k) = norm * cs * factor;
    }
  }
  return out;
}

template <typename Scalar = double>
struct JacobiMatrix {
  Matrix<Scalar> matrix;
  Scalar a, b, a_tilde, b_tilde;

  int size() const { return static_cast<int>(matrix.rows()); }
};

/// Symmetric tridiagonal matrix with unit off-diagonal and zero diagonal, except
/// J(0,0) = b, J(0,1) = sqrt(a), J(m-1,m) = sqrt(a~), J(m,m) = b~. For m = 1 the single
/// off-diagonal entry carries both corner factors, sqrt(a a~).
template <typename Scalar = double>
JacobiMatrix<Scalar> jacobi_matrix(const BoundaryFlags& eps, const BoundaryFlags& eps_tilde, int m)
{
  using std::sqrt;
  if (m < 1)
    throw ConfigurationError("jacobi_matrix needs m >= 1");
  JacobiMatrix<Scalar> out;
  out.a = Scalar(1 << ((1 - eps.minus) * (1 - eps.plus)));
  out.b = Scalar(eps.plus - eps.minus);
  out.a_tilde = Scalar(1 << ((1 - eps_tilde.minus) * (1 - eps_tilde.plus)));
  out.b_tilde = Scalar(eps_tilde.plus - eps_tilde.minus);

  Matrix<Scalar> j = Matrix<Scalar>::Zero(m + 1, m + 1);
  Vector<Scalar> off = Vector<Scalar>::Ones(m);
  off[0] *= sqrt(out.a);
  off[m - 1] *= sqrt(out.a_tilde);
  for (int k = 0; k < m; ++k)
    j(k, k + 1) = j(k + 1, k) = off[k];
  j(0, 0) = out.b;
  j(m, m) = out.b_tilde;
  out.matrix = std::move(j);
  return out;
}

struct DxtReport {
  BoundaryFlags eps;
  BoundaryFlags eps_tilde;
  int m = 0;
  std::string name;
  double orth_residual = 0;   ///< max |Psi Psi^T - I|
  double eigen_residual = 0;  ///< max |Psi J - E Psi|
};

/// Checks orthogonality of the kernel and Psi J = E Psi with E = diag(2 cos xi_l).
template <typename Scalar = double>
DxtReport verify_dxt(const BoundaryFlags& eps, const BoundaryFlags& eps_tilde, int m)
{
  using std::cos;
  const auto psi = dxt_kernel<Scalar>(eps, eps_tilde, m).matrix;
  const auto jm = jacobi_matrix<Scalar>(eps, eps_tilde, m).matrix;
  const Vector<Scalar> xi = closed_form_nodes<Scalar>(eps, eps_tilde, m + 1);
  const Vector<Scalar> e = xi.unaryExpr([](Scalar t) { return Scalar(2) * cos(t); });

  DxtReport r;
  r.eps = eps;
  r.eps_tilde = eps_tilde;
  r.m = m;
  r.name = transform_name(eps, eps_tilde);
  const Matrix<Scalar> id = Matrix<Scalar>::Identity(m + 1, m + 1);
  r.orth_residual = static_cast<double>((psi * psi.transpose() - id).cwiseAbs().maxCoeff());
  r.eigen_residual = static_cast<double>((psi * jm - e.asDiagonal() * psi).cwiseAbs().maxCoeff());
  return r;
}

} // namespace bsc

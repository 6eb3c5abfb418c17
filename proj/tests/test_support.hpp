#pragma once

#include <Eigen/Eigenvalues>

#include <cmath>
#include <random>

#include "bsc/lifting.hpp"

namespace bsc::testing {

/// N-point Gauss-Legendre rule on [-1, 1] by Golub-Welsch.
inline Generic1DRule<double> gauss_legendre(int n)
{
  Matrix<double> j = Matrix<double>::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double b = k / std::sqrt(4.0 * k * k - 1.0);
    j(k, k - 1) = j(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Matrix<double>> es(j);
  Generic1DRule<double> rule;
  rule.nodes = es.eigenvalues();
  rule.weights = 2.0 * es.eigenvectors().row(0).cwiseAbs2().transpose();
  rule.lower = -1.0;
  rule.upper = 1.0;
  rule.exact_degree = 2 * n - 1;
  return rule;
}

/// Relative error with an absolute floor for small references.
inline double rel_err(double value, double reference, double floor = 1e-3)
{
  const double d = std::abs(value - reference);
  return std::abs(reference) < floor ? d : d / std::abs(reference);
}

/// Random conjugate-closed parameter set with |a| <= r_max: up to `reals` real entries
/// and up to `pairs` conjugate pairs.
inline ParameterSetd random_parameters(std::mt19937_64& rng, int reals, int pairs, double r_max = 0.8)
{
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::complex<double>> v;
  const int nr = std::uniform_int_distribution<int>(0, reals)(rng);
  const int np = std::uniform_int_distribution<int>(0, pairs)(rng);
  for (int i = 0; i < nr; ++i)
    v.emplace_back(r_max * (2 * u(rng) - 1), 0.0);
  for (int i = 0; i < np; ++i) {
    const auto z = std::polar(r_max * u(rng), 0.05 + (3.0 - 0.1) * u(rng));
    v.push_back(z);
    v.push_back(std::conj(z));
  }
  return ParameterSetd(v);
}

/// Random valid spec: random flags and parameters, with m raised to the smallest valid order
/// plus a random margin.
inline QuadratureSpecd random_spec(std::mt19937_64& rng)
{
  std::uniform_int_distribution<int> bit(0, 1);
  QuadratureSpecd s;
  s.eps = BoundaryFlags(bit(rng), bit(rng));
  s.eps_tilde = BoundaryFlags(bit(rng), bit(rng));
  s.poles = random_parameters(rng, 2, 2);
  s.aux = random_parameters(rng, 1, 1);
  s.m = std::max(1, s.min_order_exclusive() + 1) + std::uniform_int_distribution<int>(0, 6)(rng);
  return s;
}

} // namespace bsc::testing

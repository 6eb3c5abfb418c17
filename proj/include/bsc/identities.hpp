#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "bsc/oracle.hpp"

namespace bsc::identities {

struct SuiteResult {
  std::string name;
  int instances = 0;
  double max_residual = 0;
};

/// Cauchy-Binet on random n x N pairs, n <= 3, n <= N <= 7, entries uniform in [-1, 1].
inline SuiteResult cauchy_binet_suite(int instances, std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> entry(-1.0, 1.0);
  SuiteResult r{"cauchy_binet", instances, 0.0};
  for (int t = 0; t < instances; ++t) {
    const int n = std::uniform_int_distribution<int>(1, 3)(rng);
    const int total = std::uniform_int_distribution<int>(n, 7)(rng);
    Matrix<double> f(n, total), g(n, total);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < total; ++k) {
        f(i, k) = entry(rng);
        g(i, k) = entry(rng);
      }
    r.max_residual = std::max(r.max_residual, oracle::cauchy_binet_check(f, g));
  }
  return r;
}

/// Discrete Andreief on random positive rules with 1..7 nodes in [-1, 1] and monomial
/// exponents in [0, 6].
inline SuiteResult discrete_andreief_suite(int instances, std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> exponent(0, 6);
  SuiteResult r{"discrete_andreief", instances, 0.0};
  for (int t = 0; t < instances; ++t) {
    const int n = std::uniform_int_distribution<int>(1, 3)(rng);
    const int total = std::uniform_int_distribution<int>(n, 7)(rng);
    std::vector<double> xs;
    while (static_cast<int>(xs.size()) < total) {
      const double x = 2.0 * unit(rng) - 1.0;
      if (std::none_of(xs.begin(), xs.end(), [&](double y) { return std::abs(x - y) < 1e-3; }))
        xs.push_back(x);
    }
    std::sort(xs.begin(), xs.end());
    Generic1DRule<double> rule;
    rule.nodes = Eigen::Map<const Vector<double>>(xs.data(), total);
    rule.weights.resize(total);
    for (int l = 0; l < total; ++l)
      rule.weights[l] = 0.05 + unit(rng);
    rule.lower = -1.0;
    rule.upper = 1.0;
    std::vector<int> fe(static_cast<std::size_t>(n)), ge(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
      fe[static_cast<std::size_t>(j)] = exponent(rng);
      ge[static_cast<std::size_t>(j)] = exponent(rng);
    }
    r.max_residual = std::max(r.max_residual, oracle::discrete_andreief_check(rule, fe, ge, n));
  }
  return r;
}

/// Moment-determinant oracle against direct 2D integration, pole-free, n = 2, all four
/// density flags, every Schur label with |mu| <= max_weight.
inline SuiteResult continuous_andreief_suite(int max_weight = 6, double tol = oracle::kDefaultTolerance)
{
  SuiteResult r{"continuous_andreief", 0, 0.0};
  for (int plus = 0; plus <= 1; ++plus)
    for (int minus = 0; minus <= 1; ++minus) {
      const BoundaryFlags eps(plus, minus);
      const auto moments = oracle::jacobi_moments<double>(eps, {}, tol);
      for (const auto& mu : enumerate_partitions(max_weight, 2)) {
        if (mu.weight() > max_weight)
          continue;
        SymmetricIntegrand<double> f(2, SymmetricBasis::schur);
        f.add_term(mu, 1.0);
        const double det = oracle::andreief_integral(mu, moments);
        const double direct = oracle::brute_force_symmetric_integral(f, eps, tol);
        r.max_residual = std::max(r.max_residual, std::abs(det - direct));
        ++r.instances;
      }
    }
  return r;
}

} // namespace bsc::identities

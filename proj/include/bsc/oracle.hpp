#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "bsc/errors.hpp"
#include "bsc/lifting.hpp"
#include "bsc/parameters.hpp"
#include "bsc/partitions.hpp"
#include "bsc/quadrature.hpp"
#include "bsc/summation.hpp"
#include "bsc/symmetric.hpp"
#include "bsc/types.hpp"

namespace bsc::oracle {

inline constexpr double kDefaultTolerance = 1e-11;

/// Bisection depth of the adaptive integrator; 2^20 panels is the budget.
inline constexpr unsigned kMaxBisectionDepth = 20;

/// Adaptive 61-point Gauss-Kronrod integration of fn over [a, b].
///
/// The Kronrod error estimate must fall below tol * max(1, int |fn|), i.e. tol is absolute
/// for integrands of at most unit L1 mass and relative beyond that.
template <typename Scalar, typename F>
Scalar integrate_1d(F&& fn, Scalar a, Scalar b, Scalar tol = Scalar(kDefaultTolerance))
{
  using boost::math::quadrature::gauss_kronrod;
  using std::abs;
  if (a == b)
    return Scalar(0);
  Scalar error{};
  Scalar l1{};
  auto g = [&](Scalar x) -> Scalar { return fn(x); };
  const Scalar value = gauss_kronrod<Scalar, 61>::integrate(g, a, b, kMaxBisectionDepth, tol, &error, &l1);
  if (!(error <= tol * std::max(Scalar(1), l1)))
    throw ConvergenceError("integrate_1d: error estimate " + std::to_string(static_cast<double>(error)) +
                           " above tolerance " + std::to_string(static_cast<double>(tol)));
  return value;
}

template <typename Scalar>
Scalar determinant(const Matrix<Scalar>& a)
{
  if (a.rows() == 0)
    return Scalar(1);
  return a.partialPivLu().determinant();
}

/// Memoized moments p -> int x^p w(x) dx.
template <typename Scalar>
class MomentTable {
public:
  explicit MomentTable(std::function<Scalar(int)> moment) : moment_(std::move(moment)) {}

  Scalar operator()(int p) const
  {
    if (p < 0)
      throw DomainError("negative moment exponent " + std::to_string(p));
    auto it = cache_.find(p);
    if (it != cache_.end())
      return it->second;
    const Scalar v = moment_(p);
    cache_.emplace(p, v);
    return v;
  }

private:
  std::function<Scalar(int)> moment_;
  mutable std::map<int, Scalar> cache_;
};

/// Moments of an algebraic weight on [a, b].
template <typename Scalar>
MomentTable<Scalar> algebraic_moments(std::function<Scalar(Scalar)> weight, Scalar a, Scalar b,
                                      Scalar tol = Scalar(kDefaultTolerance))
{
  return MomentTable<Scalar>([=](int p) {
    return integrate_1d([&](Scalar x) { return bsc::detail::ipow(x, p) * weight(x); }, a, b, tol);
  });
}

/// Moments in the angular variable, x = cos xi:
///   M(p) = (1/2pi) int_0^pi cos^p(xi) rho_eps(xi) / prod_r (1 - 2 a_r cos xi + a_r^2) dxi.
template <typename Scalar>
MomentTable<Scalar> jacobi_moments(const BoundaryFlags& eps, const ParameterSet<Scalar>& poles,
                                   Scalar tol = Scalar(kDefaultTolerance))
{
  const SymmetricIntegrand<Scalar> one(1, SymmetricBasis::monomial, poles);
  return MomentTable<Scalar>([=](int p) {
    const Scalar pi = std::numbers::pi_v<Scalar>;
    auto f = [&](Scalar xi) {
      using std::cos;
      const Scalar c = cos(xi);
      const Scalar den = one.denominator(std::span<const Scalar>(&c, 1));
      return bsc::detail::ipow(c, p) * chebyshev_density(eps, xi) / den;
    };
    return integrate_1d(f, Scalar(0), pi, tol) / (Scalar(2) * pi);
  });
}

/// det[ M(mu_j + 2n - j - k) ]_{j,k=1..n}, which equals (1/n!) int s_mu(x) prod_{j<k}(x_j-x_k)^2 prod_j w(x_j) dx.
template <typename Scalar>
Scalar andreief_integral(const Partition& mu, const MomentTable<Scalar>& moments)
{
  const int n = mu.length();
  Matrix<Scalar> a(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      a(j, k) = moments(mu[j] + 2 * n - 2 - j - k);
  return determinant(a);
}

template <typename Scalar>
Scalar andreief_integral(const Partition& mu, std::function<Scalar(Scalar)> weight, Scalar a, Scalar b,
                         Scalar tol = Scalar(kDefaultTolerance))
{
  return andreief_integral(mu, algebraic_moments(std::move(weight), a, b, tol));
}

namespace detail {

inline int permutation_sign(const std::vector<int>& perm)
{
  int sign = 1;
  std::vector<bool> seen(perm.size(), false);
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (seen[i])
      continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(perm[j])) {
      seen[j] = true;
      ++len;
    }
    if (len % 2 == 0)
      sign = -sign;
  }
  return sign;
}

} // namespace detail

/// (1/n!) int m_mu(x) prod_{j<k}(x_j-x_k)^2 prod_j w(x_j) dx for the monomial symmetric
/// function m_mu, by Leibniz-expanding one Vandermonde factor and reducing each term with
/// the Andreief determinant.
template <typename Scalar>
Scalar monomial_integral(const Partition& mu, const MomentTable<Scalar>& moments)
{
  const int n = mu.length();
  std::vector<int> sigma(static_cast<std::size_t>(n));
  std::vector<int> nu(mu.parts().rbegin(), mu.parts().rend());
  Scalar factorial(1);
  for (int i = 2; i <= n; ++i)
    factorial *= Scalar(i);

  CompensatedSum<Scalar> acc;
  do {
    std::iota(sigma.begin(), sigma.end(), 0);
    do {
      Matrix<Scalar> c(n, n);
      for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
          c(k, i) = moments(nu[static_cast<std::size_t>(k)] + 2 * n - 2 - sigma[static_cast<std::size_t>(k)] - i);
      acc += Scalar(detail::permutation_sign(sigma)) * determinant(c);
    } while (std::next_permutation(sigma.begin(), sigma.end()));
  } while (std::next_permutation(nu.begin(), nu.end()));
  return acc.value() / factorial;
}

/// (1/n!) int f(x) V(x)^2 prod w(x_j) dx for an integrand in either symmetric basis.
template <typename Scalar>
Scalar symmetric_integral(const SymmetricIntegrand<Scalar>& integrand, const MomentTable<Scalar>& moments)
{
  CompensatedSum<Scalar> acc;
  for (const auto& [mu, c] : integrand.terms())
    acc += c * (integrand.basis() == SymmetricBasis::schur ? andreief_integral(mu, moments)
                                                           : monomial_integral(mu, moments));
  return acc.value();
}

/// Right-hand side of the Jacobi cubature identity via moment determinants:
/// (1/((2pi)^n n!)) int_{[0,pi]^n} R(xi) rho_eps(xi) dxi.
template <typename Scalar>
Scalar jacobi_integral(const SymmetricIntegrand<Scalar>& integrand, const BoundaryFlags& eps,
                       Scalar tol = Scalar(kDefaultTolerance))
{
  return symmetric_integral(integrand, jacobi_moments(eps, integrand.poles(), tol));
}

/// Direct tensor-product integration of (1/((2pi)^n n!)) R(xi) rho_eps(xi) over [0,pi]^n, n in {1, 2}.
template <typename Scalar>
Scalar brute_force_symmetric_integral(const SymmetricIntegrand<Scalar>& integrand, const BoundaryFlags& eps,
                                      Scalar tol = Scalar(kDefaultTolerance))
{
  const int n = integrand.variable_count();
  const Scalar pi = std::numbers::pi_v<Scalar>;
  auto density = [&](std::span<const Scalar> xi) {
    return rational_integrand_eval(integrand, xi) * jacobi_density(eps, xi);
  };
  if (n == 1) {
    auto f = [&](Scalar t) { return density(std::span<const Scalar>(&t, 1)); };
    return integrate_1d(f, Scalar(0), pi, tol) / (Scalar(2) * pi);
  }
  if (n == 2) {
    auto outer = [&](Scalar s) {
      auto inner = [&](Scalar t) {
        const Scalar xi[2] = {s, t};
        return density(std::span<const Scalar>(xi, 2));
      };
      return integrate_1d(inner, Scalar(0), pi, tol / Scalar(10));
    };
    return integrate_1d(outer, Scalar(0), pi, tol) / (Scalar(8) * pi * pi);
  }
  throw ConfigurationError("brute_force_symmetric_integral supports n = 1 or n = 2, got " + std::to_string(n));
}

/// Calls fn(indices) for every n-subset of {0..total-1} in lexicographic order.
template <typename F>
void for_each_combination(int total, int n, F&& fn)
{
  if (n < 0 || n > total)
    return;
  std::vector<int> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    fn(std::span<const int>(idx));
    int j = n - 1;
    while (j >= 0 && idx[static_cast<std::size_t>(j)] == total - n + j)
      --j;
    if (j < 0)
      return;
    ++idx[static_cast<std::size_t>(j)];
    for (int k = j + 1; k < n; ++k)
      idx[static_cast<std::size_t>(k)] = idx[static_cast<std::size_t>(k - 1)] + 1;
  }
}

/// |sum_{|L|=n} det F_L det G_L - det(F G^T)| for n x N matrices F, G.
template <typename Scalar>
Scalar cauchy_binet_check(const Matrix<Scalar>& f, const Matrix<Scalar>& g)
{
  using std::abs;
  if (f.rows() != g.rows() || f.cols() != g.cols())
    throw ConfigurationError("cauchy_binet_check: F and G must have the same shape");
  const int n = static_cast<int>(f.rows());
  const int total = static_cast<int>(f.cols());
  if (total < n)
    throw ConfigurationError("cauchy_binet_check needs N >= n");
  CompensatedSum<Scalar> acc;
  Matrix<Scalar> fl(n, n), gl(n, n);
  for_each_combination(total, n, [&](std::span<const int> cols) {
    for (int c = 0; c < n; ++c) {
      fl.col(c) = f.col(cols[static_cast<std::size_t>(c)]);
      gl.col(c) = g.col(cols[static_cast<std::size_t>(c)]);
    }
    acc += determinant(fl) * determinant(gl);
  });
  const Matrix<Scalar> fg = f * g.transpose();
  return abs(acc.value() - determinant(fg));
}

/// Discrete Andreief identity on the nodes of a rule, with f_j(x) = x^{f_exponents[j]} and
/// g_j(x) = x^{g_exponents[j]}. Compares both the ordered-subset sum and (when small enough)
/// the full tuple sum over n! with the determinant of discrete moments; returns the larger residual.
template <typename Scalar>
Scalar discrete_andreief_check(const Generic1DRule<Scalar>& rule, const std::vector<int>& f_exponents,
                               const std::vector<int>& g_exponents, int n)
{
  using std::abs;
  if (n < 1 || static_cast<int>(f_exponents.size()) != n || static_cast<int>(g_exponents.size()) != n)
    throw ConfigurationError("discrete_andreief_check: need n exponents for f and for g");
  const int total = rule.size();
  if (total < n)
    throw ConfigurationError("discrete_andreief_check: rule has fewer than n nodes");
  auto fv = [&](int j, int l) { return bsc::detail::ipow(rule.nodes[l], f_exponents[static_cast<std::size_t>(j)]); };
  auto gv = [&](int j, int l) { return bsc::detail::ipow(rule.nodes[l], g_exponents[static_cast<std::size_t>(j)]); };

  Matrix<Scalar> moments(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      CompensatedSum<Scalar> s;
      for (int l = 0; l < total; ++l)
        s += fv(j, l) * gv(k, l) * rule.weights[l];
      moments(j, k) = s.value();
    }
  const Scalar rhs = determinant(moments);

  auto term = [&](std::span<const int> ls) {
    Matrix<Scalar> a(n, n), b(n, n);
    Scalar w(1);
    for (int k = 0; k < n; ++k) {
      const int l = ls[static_cast<std::size_t>(k)];
      w *= rule.weights[l];
      for (int j = 0; j < n; ++j) {
        a(j, k) = fv(j, l);
        b(j, k) = gv(j, l);
      }
    }
    return determinant(a) * determinant(b) * w;
  };

  CompensatedSum<Scalar> subsets;
  for_each_combination(total, n, [&](std::span<const int> ls) { subsets += term(ls); });
  Scalar residual = abs(subsets.value() - rhs);

  if (std::pow(double(total), double(n)) <= 1e6) {
    CompensatedSum<Scalar> tuples;
    std::vector<int> ls(static_cast<std::size_t>(n), 0);
    while (true) {
      tuples += term(std::span<const int>(ls));
      int k = n - 1;
      while (k >= 0 && ls[static_cast<std::size_t>(k)] == total - 1)
        ls[static_cast<std::size_t>(k--)] = 0;
      if (k < 0)
        break;
      ++ls[static_cast<std::size_t>(k)];
    }
    Scalar factorial(1);
    for (int i = 2; i <= n; ++i)
      factorial *= Scalar(i);
    residual = std::max(residual, Scalar(abs(tuples.value() / factorial - rhs)));
  }
  return residual;
}

} // namespace bsc::oracle

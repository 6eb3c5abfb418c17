#pragma once

#include <cmath>
#include <concepts>
#include <cstdint>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "bsc/errors.hpp"
#include "bsc/parameters.hpp"
#include "bsc/partitions.hpp"
#include "bsc/quadrature.hpp"
#include "bsc/summation.hpp"
#include "bsc/symmetric.hpp"
#include "bsc/types.hpp"

namespace bsc {

/// A one-dimensional rule: sum_l f(x_l) w_l approximating int_a^b f(x) w(x) dx.
template <typename Scalar>
struct Generic1DRule {
  Vector<Scalar> nodes;     ///< strictly increasing, inside [lower, upper]
  Vector<Scalar> weights;
  Scalar lower{};
  Scalar upper{};
  int exact_degree = -1;    ///< polynomial degree integrated exactly; -1 if unknown

  int size() const { return static_cast<int>(nodes.size()); }

  void validate() const
  {
    if (nodes.size() < 1 || nodes.size() != weights.size())
      throw ConfigurationError("1D rule needs at least one node and one weight per node");
    for (Eigen::Index l = 1; l < nodes.size(); ++l)
      if (!(nodes[l] > nodes[l - 1]))
        throw ConfigurationError("1D rule nodes must be strictly increasing");
  }
};

/// Whether cubature nodes are algebraic points x or angles xi (with x_j = cos xi_j).
enum class NodeCoordinates { algebraic, angular };

/// Cubature on Lambda^(m,n): node i is partitions[i], nodes.row(i), weights[i].
template <typename Scalar>
struct CubatureRule {
  int n = 1;
  int m = 0;
  NodeCoordinates coordinates = NodeCoordinates::algebraic;
  std::vector<Partition> partitions;
  RowMatrix<Scalar> nodes;
  Vector<Scalar> weights;
  Generic1DRule<Scalar> base_rule;   ///< the (m+n)-node rule that was lifted
  ParameterSet<Scalar> poles;        ///< integrand poles the weights assume (angular rules)
  BoundaryFlags eps;                 ///< density flags (angular rules)
  int exact_degree = -1;

  int size() const { return static_cast<int>(partitions.size()); }
  std::span<const Scalar> node(int i) const
  {
    return {nodes.row(i).data(), static_cast<std::size_t>(n)};
  }
};

/// Smallest |x_j - x_k| over all nodes and coordinate pairs; large for well-separated rules.
template <typename Scalar>
Scalar min_coordinate_gap(const CubatureRule<Scalar>& rule)
{
  Scalar g = std::numeric_limits<Scalar>::infinity();
  for (int i = 0; i < rule.size(); ++i)
    g = std::min(g, detail::min_gap(rule.node(i)));
  return g;
}

namespace detail {

template <typename Scalar>
void fill_staggered_nodes(CubatureRule<Scalar>& rule, const Vector<Scalar>& base_nodes, std::uint64_t cap)
{
  rule.partitions = enumerate_partitions(rule.m, rule.n, cap);
  rule.nodes.resize(static_cast<Eigen::Index>(rule.partitions.size()), rule.n);
  for (std::size_t i = 0; i < rule.partitions.size(); ++i)
    for (int j = 0; j < rule.n; ++j)
      rule.nodes(static_cast<Eigen::Index>(i), j) = base_nodes[rule.partitions[i].staggered(j)];
}

} // namespace detail

/// Lifts an (m+n)-node rule to the cubature
///   (1/n!) int f(x) prod_{j<k}(x_j-x_k)^2 prod_j w(x_j) dx = sum_lambda f(x_lambda) W_lambda
/// with x_lambda = (x_{lambda_1+n-1}, ..., x_{lambda_n}) and
/// W_lambda = prod_{j<k}(x_{lambda_j+n-j} - x_{lambda_k+n-k})^2 prod_j w_{lambda_j+n-j}.
template <typename Scalar>
CubatureRule<Scalar> lift_rule(const Generic1DRule<Scalar>& rule, int n,
                               std::uint64_t cap = kDefaultPartitionCap)
{
  rule.validate();
  if (n < 1)
    throw ConfigurationError("cubature dimension must be at least 1");
  if (rule.size() < n)
    throw ConfigurationError("lifting to dimension " + std::to_string(n) + " needs at least " +
                             std::to_string(n) + " nodes, got " + std::to_string(rule.size()));
  CubatureRule<Scalar> out;
  out.n = n;
  out.m = rule.size() - n;
  out.coordinates = NodeCoordinates::algebraic;
  out.base_rule = rule;
  out.exact_degree = rule.exact_degree < 0 ? -1 : rule.exact_degree - 2 * (n - 1);
  detail::fill_staggered_nodes(out, rule.nodes, cap);

  out.weights.resize(out.size());
  for (int i = 0; i < out.size(); ++i) {
    const Partition& lam = out.partitions[static_cast<std::size_t>(i)];
    const auto x = out.node(i);
    const Scalar v = vandermonde(x);
    Scalar w = v * v;
    for (int j = 0; j < n; ++j)
      w *= rule.weights[lam.staggered(j)];
    out.weights[i] = w;
  }
  return out;
}

/// Unitary Jacobi density prod_j rho_eps(xi_j) * prod_{j<k} (cos xi_j - cos xi_k)^2.
template <typename Scalar>
Scalar jacobi_density(const BoundaryFlags& eps, std::span<const Scalar> xi)
{
  using std::cos;
  Scalar rho(1);
  std::vector<Scalar> c(xi.size());
  for (std::size_t j = 0; j < xi.size(); ++j) {
    rho *= chebyshev_density(eps, xi[j]);
    c[j] = cos(xi[j]);
  }
  const Scalar v = vandermonde(std::span<const Scalar>(c));
  return rho * v * v;
}

/// Cubature for (1/((2pi)^n n!)) int_{[0,pi]^n} R(xi) rho_eps(xi) dxi, built from the
/// (m+n)-node Bernstein-Szego rule. Weight of node lambda is rho_eps(xi_lambda) prod_j Delta_{lambda_j+n-j}.
template <typename Scalar>
CubatureRule<Scalar> jacobi_cubature(const QuadratureSpec<Scalar>& spec, int n,
                                     const SolverOptions& options = {},
                                     std::uint64_t cap = kDefaultPartitionCap)
{
  if (n < 1)
    throw ConfigurationError("cubature dimension must be at least 1");
  if (spec.m < 0)
    throw ConfigurationError("cubature order m must be nonnegative");
  const int num_nodes = spec.m + n;
  spec.require_valid_order(num_nodes - 1, "cubature (m+n-1)");
  if (binomial(num_nodes, n) > cap)
    throw ConfigurationError("cubature would have " + std::to_string(binomial(num_nodes, n)) +
                             " nodes, above the cap of " + std::to_string(cap));

  const QuadratureRule<Scalar> base = build_quadrature(spec, num_nodes, options);

  CubatureRule<Scalar> out;
  out.n = n;
  out.m = spec.m;
  out.coordinates = NodeCoordinates::angular;
  out.base_rule.nodes = base.nodes;
  out.base_rule.weights = base.weights;
  out.base_rule.lower = Scalar(0);
  out.base_rule.upper = std::numbers::pi_v<Scalar>;
  out.base_rule.exact_degree = base.degree_of_exactness;
  out.poles = spec.poles;
  out.eps = spec.eps;
  out.exact_degree = degree_of_exactness(spec, spec.m);
  detail::fill_staggered_nodes(out, base.nodes, cap);

  out.weights.resize(out.size());
  for (int i = 0; i < out.size(); ++i) {
    const Partition& lam = out.partitions[static_cast<std::size_t>(i)];
    Scalar delta(1);
    for (int j = 0; j < n; ++j)
      delta *= base.weights[lam.staggered(j)];
    out.weights[i] = jacobi_density(spec.eps, out.node(i)) * delta;
  }
  return out;
}

/// Compensated sum of weight * f(node) over all cubature nodes.
template <typename Scalar, typename F>
  requires std::invocable<F&, std::span<const Scalar>>
Scalar apply_cubature(const CubatureRule<Scalar>& rule, F&& f)
{
  CompensatedSum<Scalar> acc;
  for (int i = 0; i < rule.size(); ++i)
    acc += rule.weights[i] * f(rule.node(i));
  return acc.value();
}

template <typename Scalar>
struct CubatureValue {
  Scalar value{};
  /// Set when some numerator term exceeds the rule's degree of exactness; the value is
  /// still returned but is no longer guaranteed exact.
  bool degree_exceeded = false;
};

/// Applies the cubature to a symmetric integrand. Angular rules evaluate R(xi); algebraic
/// rules evaluate the polynomial numerator at x and require a pole-free integrand.
template <typename Scalar>
CubatureValue<Scalar> apply_cubature(const CubatureRule<Scalar>& rule,
                                     const SymmetricIntegrand<Scalar>& integrand)
{
  if (integrand.variable_count() != rule.n)
    throw ConfigurationError("integrand has " + std::to_string(integrand.variable_count()) +
                             " variables, cubature has dimension " + std::to_string(rule.n));
  CubatureValue<Scalar> out;
  out.degree_exceeded = rule.exact_degree >= 0 && integrand.max_degree() > rule.exact_degree;
  if (rule.coordinates == NodeCoordinates::angular) {
    if (!integrand.poles().matches(rule.poles))
      throw ConfigurationError("integrand poles do not match the poles of the cubature rule");
    out.value = apply_cubature(rule, [&](std::span<const Scalar> xi) {
      return rational_integrand_eval(integrand, xi);
    });
  } else {
    if (!integrand.poles().empty())
      throw ConfigurationError("algebraic cubature rules take pole-free integrands");
    out.value = apply_cubature(rule, [&](std::span<const Scalar> x) { return integrand.numerator(x); });
  }
  return out;
}

} // namespace bsc

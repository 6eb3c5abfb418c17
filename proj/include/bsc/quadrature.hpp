#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "bsc/errors.hpp"
#include "bsc/parameters.hpp"
#include "bsc/poisson.hpp"
#include "bsc/summation.hpp"
#include "bsc/types.hpp"

namespace bsc {

/// Node-equation solver controls. Residuals are absolute, measured in the phase function.
struct SolverOptions {
  double bracket_width = 1e-10;
  double residual_tolerance = 1e-12;
  int max_newton_iterations = 100;
};

/// One-dimensional Bernstein-Szego rule on order+1 nodes in [0, pi].
template <typename Scalar>
struct QuadratureRule {
  QuadratureSpec<Scalar> spec;
  int order = 0;                  ///< M; the rule has M+1 nodes
  Vector<Scalar> nodes;           ///< strictly increasing angles
  Vector<Scalar> weights;         ///< Christoffel weights Delta_l
  Vector<Scalar> total_weights;   ///< rho_eps(xi_l) * Delta_l
  int degree_of_exactness = 0;    ///< D
  int degree_gap = 0;             ///< 2M+1-D

  int size() const { return static_cast<int>(nodes.size()); }
};

/// Closed interval guaranteed to contain one node of the rule.
template <typename Scalar>
struct NodeBracket {
  Scalar lower;
  Scalar upper;
  Scalar kappa_plus;
  Scalar kappa_minus;
};

/// rho_eps(xi) = 2^{eps_+ + eps_-} (1 + eps_+ cos xi)(1 - eps_- cos xi).
template <typename Scalar>
Scalar chebyshev_density(const BoundaryFlags& eps, Scalar xi)
{
  using std::cos;
  const Scalar c = cos(xi);
  return Scalar(1 << eps.sum()) * (Scalar(1) + Scalar(eps.plus) * c) *
         (Scalar(1) - Scalar(eps.minus) * c);
}

/// D = 2M + eps~_+ + eps~_- - d~ - 1 for a rule of order M.
template <typename Scalar>
int degree_of_exactness(const QuadratureSpec<Scalar>& spec, int order)
{
  return 2 * order + spec.eps_tilde.sum() - spec.d_tilde() - 1;
}

template <typename Scalar>
int degree_of_exactness(const QuadratureSpec<Scalar>& spec)
{
  return degree_of_exactness(spec, spec.m);
}

namespace detail {

template <typename Scalar>
void require_node_count(const QuadratureSpec<Scalar>& spec, int num_nodes)
{
  if (num_nodes < 1)
    throw ConfigurationError("node count must be positive, got " + std::to_string(num_nodes));
  spec.require_valid_order(num_nodes - 1);
}

/// pi (2l + eps_- + eps~_-): right-hand side of the node equation.
template <typename Scalar>
Scalar node_target(const QuadratureSpec<Scalar>& spec, int l)
{
  return std::numbers::pi_v<Scalar> * Scalar(2 * l + spec.eps.minus + spec.eps_tilde.minus);
}

} // namespace detail

/// Phi(xi) = 2(M - d_eps - d~_eps~) xi + sum_r U_{a_r}(xi) + sum_r U_{a~_r}(xi), M = num_nodes-1.
template <typename Scalar>
Scalar phase_function(const QuadratureSpec<Scalar>& spec, int num_nodes, Scalar xi)
{
  detail::require_node_count(spec, num_nodes);
  detail::require_half_period(xi);
  CompensatedSum<Scalar> acc(Scalar(spec.twice_effective_order(num_nodes - 1)) * xi);
  for (Scalar a : spec.poles.reals())
    acc += poisson_antiderivative(a, xi);
  for (const auto& p : spec.poles.pairs())
    acc += detail::checked_real(poisson_antiderivative(p, xi) + poisson_antiderivative(std::conj(p), xi),
                                "phase_function");
  for (Scalar a : spec.aux.reals())
    acc += poisson_antiderivative(a, xi);
  for (const auto& p : spec.aux.pairs())
    acc += detail::checked_real(poisson_antiderivative(p, xi) + poisson_antiderivative(std::conj(p), xi),
                                "phase_function");
  return acc.value();
}

/// Phi'(xi) = 2(M - d_eps - d~_eps~) + sum_r u_{a_r}(xi) + sum_r u_{a~_r}(xi).
template <typename Scalar>
Scalar phase_derivative(const QuadratureSpec<Scalar>& spec, int num_nodes, Scalar xi)
{
  detail::require_node_count(spec, num_nodes);
  CompensatedSum<Scalar> acc(Scalar(spec.twice_effective_order(num_nodes - 1)));
  for (Scalar a : spec.poles.reals())
    acc += poisson_kernel(a, xi);
  for (const auto& p : spec.poles.pairs())
    acc += detail::checked_real(poisson_kernel(p, xi) + poisson_kernel(std::conj(p), xi), "phase_derivative");
  for (Scalar a : spec.aux.reals())
    acc += poisson_kernel(a, xi);
  for (const auto& p : spec.aux.pairs())
    acc += detail::checked_real(poisson_kernel(p, xi) + poisson_kernel(std::conj(p), xi), "phase_derivative");
  return acc.value();
}

/// Mean-value bounds on the l-th node, clipped to [0, pi].
template <typename Scalar>
NodeBracket<Scalar> node_bracket(const QuadratureSpec<Scalar>& spec, int num_nodes, int l)
{
  detail::require_node_count(spec, num_nodes);
  if (l < 0 || l >= num_nodes)
    throw DomainError("node index " + std::to_string(l) + " out of range for " +
                      std::to_string(num_nodes) + " nodes");
  const Scalar pi = std::numbers::pi_v<Scalar>;
  const Scalar kp = (spec.poles.kappa_sum(+1) + spec.aux.kappa_sum(+1)) / Scalar(2);
  const Scalar km = (spec.poles.kappa_sum(-1) + spec.aux.kappa_sum(-1)) / Scalar(2);
  const Scalar base = Scalar(spec.twice_effective_order(num_nodes - 1)) / Scalar(2);
  const Scalar numer = pi * (Scalar(l) + Scalar(spec.eps.minus + spec.eps_tilde.minus) / Scalar(2));
  auto clip = [&](Scalar v) { return std::clamp(v, Scalar(0), pi); };
  return {clip(numer / (base + km)), clip(numer / (base + kp)), kp, km};
}

/// Solves Phi(xi_l) = pi (2l + eps_- + eps~_-) for l = 0..num_nodes-1.
///
/// Bisection inside the node bracket (or [0, pi] if the bracket fails to enclose the
/// root after rounding), then Newton polishing.
template <typename Scalar>
Vector<Scalar> solve_nodes(const QuadratureSpec<Scalar>& spec, int num_nodes,
                           const SolverOptions& options = {})
{
  using std::abs;
  detail::require_node_count(spec, num_nodes);
  const Scalar pi = std::numbers::pi_v<Scalar>;
  const int last = num_nodes - 1;
  const bool left_attained = spec.eps.minus == 0 && spec.eps_tilde.minus == 0;
  const bool right_attained = spec.eps.plus == 0 && spec.eps_tilde.plus == 0;
  const Scalar width_tol(options.bracket_width);
  const Scalar residual_tol(options.residual_tolerance);

  Vector<Scalar> nodes(num_nodes);
  for (int l = 0; l < num_nodes; ++l) {
    if (l == 0 && left_attained) {
      nodes[l] = Scalar(0);
      continue;
    }
    if (l == last && right_attained) {
      nodes[l] = pi;
      continue;
    }
    const Scalar target = detail::node_target(spec, l);
    auto residual = [&](Scalar xi) { return phase_function(spec, num_nodes, xi) - target; };

    const auto br = node_bracket(spec, num_nodes, l);
    const Scalar slack(1e-12);
    Scalar lo = std::max(Scalar(0), br.lower - slack);
    Scalar hi = std::min(pi, br.upper + slack);
    if (!(lo <= hi) || residual(lo) > Scalar(0) || residual(hi) < Scalar(0)) {
      lo = Scalar(0);
      hi = pi;
    }
    while (hi - lo >= width_tol) {
      const Scalar mid = (lo + hi) / Scalar(2);
      if (residual(mid) < Scalar(0))
        lo = mid;
      else
        hi = mid;
    }

    Scalar xi = (lo + hi) / Scalar(2);
    Scalar r = residual(xi);
    Scalar best_xi = xi;
    Scalar best_r = abs(r);
    for (int it = 0; it < options.max_newton_iterations && best_r >= residual_tol; ++it) {
      Scalar next = xi - r / phase_derivative(spec, num_nodes, xi);
      next = std::clamp(next, lo, hi);
      if (next == xi)
        break;
      xi = next;
      r = residual(xi);
      if (abs(r) < best_r) {
        best_r = abs(r);
        best_xi = xi;
      }
    }
    if (!(best_r < residual_tol))
      throw ConvergenceError("node " + std::to_string(l) + " of " + std::to_string(num_nodes) +
                             ": phase residual " + std::to_string(static_cast<double>(best_r)) +
                             " above tolerance");
    nodes[l] = best_xi;
  }

  for (int l = 1; l < num_nodes; ++l)
    if (!(nodes[l] > nodes[l - 1]))
      throw ConvergenceError("solved nodes are not strictly increasing at index " + std::to_string(l));
  return nodes;
}

/// Christoffel weights Delta_l for the nodes of a rule of order nodes.size()-1.
template <typename Scalar>
Vector<Scalar> christoffel_weights(const QuadratureSpec<Scalar>& spec, const Vector<Scalar>& nodes)
{
  const int num_nodes = static_cast<int>(nodes.size());
  detail::require_node_count(spec, num_nodes);
  const int last = num_nodes - 1;
  const int halve_left = (1 - spec.eps.minus) * (1 - spec.eps_tilde.minus);
  const int halve_right = (1 - spec.eps.plus) * (1 - spec.eps_tilde.plus);

  Vector<Scalar> w(num_nodes);
  for (int l = 0; l < num_nodes; ++l) {
    const int halvings = (l == 0 ? halve_left : 0) + (l == last ? halve_right : 0);
    const Scalar denom = phase_derivative(spec, num_nodes, nodes[l]);
    w[l] = Scalar(1) / (Scalar(1 << halvings) * denom);
  }
  return w;
}

/// Rule with num_nodes nodes; build_quadrature(spec) uses spec.m + 1 nodes.
template <typename Scalar>
QuadratureRule<Scalar> build_quadrature(const QuadratureSpec<Scalar>& spec, int num_nodes,
                                        const SolverOptions& options = {})
{
  detail::require_node_count(spec, num_nodes);
  QuadratureRule<Scalar> rule;
  rule.spec = spec;
  rule.order = num_nodes - 1;
  rule.nodes = solve_nodes(spec, num_nodes, options);
  rule.weights = christoffel_weights(spec, rule.nodes);
  rule.total_weights.resize(num_nodes);
  for (int l = 0; l < num_nodes; ++l)
    rule.total_weights[l] = chebyshev_density(spec.eps, rule.nodes[l]) * rule.weights[l];
  rule.degree_of_exactness = degree_of_exactness(spec, rule.order);
  rule.degree_gap = 2 * rule.order + 1 - rule.degree_of_exactness;
  return rule;
}

template <typename Scalar>
QuadratureRule<Scalar> build_quadrature(const QuadratureSpec<Scalar>& spec, const SolverOptions& options = {})
{
  return build_quadrature(spec, spec.m + 1, options);
}

/// Sum of R(xi_l) rho_eps(xi_l) Delta_l; approximates (1/2pi) int_0^pi R rho_eps.
template <typename Scalar, typename F>
Scalar apply_quadrature(const QuadratureRule<Scalar>& rule, F&& f)
{
  CompensatedSum<Scalar> acc;
  for (int l = 0; l < rule.size(); ++l)
    acc += f(rule.nodes[l]) * rule.total_weights[l];
  return acc.value();
}

} // namespace bsc

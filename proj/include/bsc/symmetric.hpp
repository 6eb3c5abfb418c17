#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bsc/errors.hpp"
#include "bsc/parameters.hpp"
#include "bsc/partitions.hpp"
#include "bsc/summation.hpp"
#include "bsc/types.hpp"

namespace bsc {

inline constexpr double kCoincidentTolerance = 1e-13;
inline constexpr double kBialternantGapThreshold = 1e-6;

namespace detail {

template <typename Scalar>
Scalar ipow(Scalar x, int p)
{
  Scalar r(1);
  for (; p > 0; p >>= 1, x *= x)
    if (p & 1)
      r *= x;
  return r;
}

template <typename Scalar>
Scalar min_gap(std::span<const Scalar> x)
{
  using std::abs;
  Scalar g = std::numeric_limits<Scalar>::infinity();
  for (std::size_t j = 0; j < x.size(); ++j)
    for (std::size_t k = j + 1; k < x.size(); ++k)
      g = std::min(g, Scalar(abs(x[j] - x[k])));
  return g;
}

template <typename Scalar>
void require_length(const Partition& mu, std::size_t n)
{
  if (static_cast<std::size_t>(mu.length()) != n)
    throw ConfigurationError("partition " + mu.to_string() + " has " + std::to_string(mu.length()) +
                             " parts, expected " + std::to_string(n));
}

// Branching rule: s_mu(x_1..x_k) = sum over nu interlacing mu of s_nu(x_1..x_{k-1}) x_k^{|mu|-|nu|}.
template <typename Scalar>
Scalar schur_branching(const std::vector<int>& mu, std::span<const Scalar> x)
{
  const std::size_t k = x.size();
  if (k == 1)
    return ipow(x[0], mu[0]);
  const int total = std::accumulate(mu.begin(), mu.end(), 0);
  std::vector<int> nu(k - 1);
  CompensatedSum<Scalar> acc;
  // odometer over nu_j in [mu_{j+1}, mu_j]
  for (std::size_t j = 0; j + 1 < k; ++j)
    nu[j] = mu[j + 1];
  while (true) {
    const int sub = std::accumulate(nu.begin(), nu.end(), 0);
    acc += schur_branching<Scalar>(nu, x.first(k - 1)) * ipow(x[k - 1], total - sub);
    std::size_t j = 0;
    while (j + 1 < k && nu[j] == mu[j]) {
      nu[j] = mu[j + 1];
      ++j;
    }
    if (j + 1 >= k)
      break;
    ++nu[j];
  }
  return acc.value();
}

} // namespace detail

/// Vandermonde product prod_{j<k} (x_j - x_k). The factors are multiplied in sorted order and the
/// sign comes from the inversion count, so permuting x changes at most the sign, bit for bit.
template <typename Scalar>
Scalar vandermonde(std::span<const Scalar> x)
{
  std::vector<Scalar> y(x.begin(), x.end());
  bool negative = false;
  for (std::size_t j = 0; j < x.size(); ++j)
    for (std::size_t k = j + 1; k < x.size(); ++k)
      negative ^= x[j] < x[k];
  std::sort(y.begin(), y.end(), std::greater<>());
  Scalar v(1);
  for (std::size_t j = 0; j < y.size(); ++j)
    for (std::size_t k = j + 1; k < y.size(); ++k)
      v *= y[j] - y[k];
  return negative ? -v : v;
}

/// Schur polynomial as a sum over Gelfand-Tsetlin patterns; valid for coincident coordinates.
template <typename Scalar>
Scalar schur_eval_combinatorial(const Partition& mu, std::span<const Scalar> x)
{
  detail::require_length<Scalar>(mu, x.size());
  if (x.empty())
    return Scalar(1);
  return detail::schur_branching<Scalar>(mu.parts(), x);
}

/// Schur polynomial s_mu(x) as the bialternant det[x_k^{mu_j+n-j}] / det[x_k^{n-j}].
///
/// Coordinates closer than 1e-6 are routed to the Gelfand-Tsetlin sum; closer than 1e-13
/// raises DegenerateInputError.
template <typename Scalar>
Scalar schur_eval(const Partition& mu, std::span<const Scalar> x)
{
  detail::require_length<Scalar>(mu, x.size());
  const std::size_t n = x.size();
  if (n <= 1)
    return n == 0 ? Scalar(1) : detail::ipow(x[0], mu[0]);
  const Scalar gap = detail::min_gap(x);
  if (gap < Scalar(kCoincidentTolerance))
    throw DegenerateInputError("schur_eval: coordinates coincide within 1e-13");
  if (gap < Scalar(kBialternantGapThreshold))
    return schur_eval_combinatorial(mu, x);

  Matrix<Scalar> alt(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k)
      alt(j, k) = detail::ipow(x[k], mu.staggered(static_cast<int>(j)));
  return alt.partialPivLu().determinant() / vandermonde(x);
}

/// Monomial symmetric function: sum of x^nu over the distinct rearrangements nu of mu.
template <typename Scalar>
Scalar monomial_sym_eval(const Partition& mu, std::span<const Scalar> x)
{
  detail::require_length<Scalar>(mu, x.size());
  std::vector<int> nu(mu.parts().rbegin(), mu.parts().rend());
  CompensatedSum<Scalar> acc;
  do {
    Scalar term(1);
    for (std::size_t k = 0; k < x.size(); ++k)
      term *= detail::ipow(x[k], nu[k]);
    acc += term;
  } while (std::next_permutation(nu.begin(), nu.end()));
  return acc.value();
}

enum class SymmetricBasis { schur, monomial };

inline std::string to_string(SymmetricBasis b) { return b == SymmetricBasis::schur ? "schur" : "monomial"; }

/// R(xi) = f(cos xi_1, ..., cos xi_n) / prod_{r,j} (1 - 2 a_r cos xi_j + a_r^2), with f given by
/// its coefficients in the Schur or monomial symmetric basis.
template <typename Scalar>
class SymmetricIntegrand {
public:
  SymmetricIntegrand(int variable_count, SymmetricBasis basis, ParameterSet<Scalar> poles = {})
      : n_(variable_count), basis_(basis), poles_(std::move(poles))
  {
    if (n_ < 1)
      throw ConfigurationError("integrand needs at least one variable");
  }

  /// Adds coeff * b_mu; shorter partitions are padded with zeros.
  SymmetricIntegrand& add_term(const Partition& mu, Scalar coeff)
  {
    if (mu.length() > n_)
      throw ConfigurationError("partition " + mu.to_string() + " has more than " + std::to_string(n_) + " parts");
    std::vector<int> parts = mu.parts();
    parts.resize(static_cast<std::size_t>(n_), 0);
    Partition key(std::move(parts));
    auto it = terms_.find(key);
    const Scalar v = (it == terms_.end() ? Scalar(0) : it->second) + coeff;
    if (v == Scalar(0)) {
      if (it != terms_.end())
        terms_.erase(it);
    } else {
      terms_[key] = v;
    }
    return *this;
  }

  int variable_count() const { return n_; }
  SymmetricBasis basis() const { return basis_; }
  const ParameterSet<Scalar>& poles() const { return poles_; }
  const std::map<Partition, Scalar>& terms() const { return terms_; }

  /// Largest per-variable degree mu_1 over all terms.
  int max_degree() const
  {
    int d = 0;
    for (const auto& [mu, c] : terms_)
      d = std::max(d, mu.largest());
    return d;
  }

  /// Numerator f(x) at algebraic coordinates x.
  Scalar numerator(std::span<const Scalar> x) const
  {
    if (static_cast<int>(x.size()) != n_)
      throw ConfigurationError("integrand expects " + std::to_string(n_) + " coordinates");
    const bool near_coincident =
        basis_ == SymmetricBasis::schur && detail::min_gap(x) < Scalar(kBialternantGapThreshold);
    CompensatedSum<Scalar> acc;
    for (const auto& [mu, c] : terms_) {
      Scalar b;
      if (basis_ == SymmetricBasis::monomial)
        b = monomial_sym_eval(mu, x);
      else if (near_coincident)
        b = schur_eval_combinatorial(mu, x);
      else
        b = schur_eval(mu, x);
      acc += c * b;
    }
    return acc.value();
  }

  /// prod_{r,j} (1 - 2 a_r x_j + a_r^2); conjugate pairs contribute |1 - 2 a x + a^2|^2.
  Scalar denominator(std::span<const Scalar> x) const
  {
    using std::abs;
    Scalar den(1);
    for (Scalar c : x) {
      for (Scalar a : poles_.reals())
        den *= Scalar(1) - Scalar(2) * a * c + a * a;
      for (const auto& p : poles_.pairs())
        den *= std::norm(Scalar(1) - Scalar(2) * c * p + p * p);
    }
    if (abs(den) < Scalar(1e-300))
      throw SingularityError("integrand denominator vanishes");
    return den;
  }

private:
  int n_;
  SymmetricBasis basis_;
  ParameterSet<Scalar> poles_;
  std::map<Partition, Scalar> terms_;
};

/// Evaluates R at the angles xi (x_j = cos xi_j).
template <typename Scalar>
Scalar rational_integrand_eval(const SymmetricIntegrand<Scalar>& integrand, std::span<const Scalar> xi)
{
  using std::cos;
  std::vector<Scalar> x(xi.size());
  std::transform(xi.begin(), xi.end(), x.begin(), [](Scalar t) { return cos(t); });
  const std::span<const Scalar> xs(x);
  return integrand.numerator(xs) / integrand.denominator(xs);
}

} // namespace bsc

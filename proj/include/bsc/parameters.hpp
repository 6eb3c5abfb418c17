#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "bsc/errors.hpp"

namespace bsc {

/// Boundary flags (eps_+, eps_-) selecting the Chebyshev weight of the rule.
struct BoundaryFlags {
  int plus = 0;
  int minus = 0;

  BoundaryFlags() = default;
  BoundaryFlags(int plus_flag, int minus_flag) : plus(plus_flag), minus(minus_flag)
  {
    if ((plus != 0 && plus != 1) || (minus != 0 && minus != 1))
      throw ConfigurationError("boundary flags must be 0 or 1, got (" + std::to_string(plus) +
                               "," + std::to_string(minus) + ")");
  }

  int sum() const { return plus + minus; }
  friend bool operator==(const BoundaryFlags&, const BoundaryFlags&) = default;
};

/// All sixteen (eps, eps_tilde) combinations, eps varying slowest.
inline std::vector<std::pair<BoundaryFlags, BoundaryFlags>> all_flag_combinations()
{
  std::vector<std::pair<BoundaryFlags, BoundaryFlags>> out;
  for (int mask = 0; mask < 16; ++mask)
    out.emplace_back(BoundaryFlags((mask >> 3) & 1, (mask >> 2) & 1),
                     BoundaryFlags((mask >> 1) & 1, mask & 1));
  return out;
}

inline constexpr double kConjugateMatchTolerance = 1e-12;

/// A list of parameters inside the unit disk, closed under complex conjugation.
///
/// Real entries are kept individually; each non-real conjugate pair is stored once by
/// its member with positive imaginary part.
template <typename Scalar>
class ParameterSet {
public:
  using Complex = std::complex<Scalar>;

  ParameterSet() = default;

  explicit ParameterSet(const std::vector<Complex>& values)
  {
    using std::abs;
    const Scalar tol = Scalar(kConjugateMatchTolerance);
    for (const auto& v : values)
      if (!(abs(v) < Scalar(1)))
        throw DomainError("parameter outside the open unit disk: |a| = " +
                          std::to_string(static_cast<double>(abs(v))));

    std::vector<bool> used(values.size(), false);
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (used[i])
        continue;
      used[i] = true;
      const Complex z = values[i];
      if (Scalar(2) * abs(z.imag()) <= tol) {
        reals_.push_back(z.real());
        continue;
      }
      bool matched = false;
      for (std::size_t j = i + 1; j < values.size() && !matched; ++j) {
        if (!used[j] && abs(values[j] - std::conj(z)) <= tol) {
          used[j] = true;
          matched = true;
        }
      }
      if (!matched)
        throw ConfigurationError("parameter (" + std::to_string(static_cast<double>(z.real())) +
                                 "," + std::to_string(static_cast<double>(z.imag())) +
                                 ") has no complex conjugate partner");
      pairs_.push_back(z.imag() > 0 ? z : std::conj(z));
    }
  }

  static ParameterSet from_reals(const std::vector<Scalar>& values)
  {
    std::vector<Complex> c(values.begin(), values.end());
    return ParameterSet(c);
  }

  const std::vector<Scalar>& reals() const { return reals_; }
  const std::vector<Complex>& pairs() const { return pairs_; }

  /// Number of parameters counted with multiplicity (each pair counts twice).
  int size() const { return static_cast<int>(reals_.size() + 2 * pairs_.size()); }
  bool empty() const { return size() == 0; }

  /// Flat list with both members of every pair.
  std::vector<Complex> values() const
  {
    std::vector<Complex> out(reals_.begin(), reals_.end());
    for (const auto& p : pairs_) {
      out.push_back(p);
      out.push_back(std::conj(p));
    }
    return out;
  }

  /// Multiset equality within the conjugate-match tolerance.
  bool matches(const ParameterSet& other) const
  {
    if (reals_.size() != other.reals_.size() || pairs_.size() != other.pairs_.size())
      return false;
    auto close = [](Complex x, Complex y) { return std::abs(x - y) <= Scalar(kConjugateMatchTolerance); };
    auto same = [&](const auto& lhs, const auto& rhs) {
      std::vector<bool> used(rhs.size(), false);
      for (const auto& x : lhs) {
        bool found = false;
        for (std::size_t j = 0; j < rhs.size() && !found; ++j)
          if (!used[j] && close(Complex(x), Complex(rhs[j])))
            used[j] = found = true;
        if (!found)
          return false;
      }
      return true;
    };
    return same(reals_, other.reals_) && same(pairs_, other.pairs_);
  }

  /// Sum of ((1-|a|)/(1+|a|))^{+-1} over all parameters (pairs count twice).
  Scalar kappa_sum(int sign) const
  {
    using std::abs;
    Scalar acc(0);
    auto term = [&](Scalar r) {
      const Scalar q = (Scalar(1) - r) / (Scalar(1) + r);
      return sign > 0 ? q : Scalar(1) / q;
    };
    for (Scalar a : reals_)
      acc += term(abs(a));
    for (const auto& p : pairs_)
      acc += Scalar(2) * term(std::abs(p));
    return acc;
  }

private:
  std::vector<Scalar> reals_;
  std::vector<Complex> pairs_;
};

/// ceil(k / 2) for any integer k.
constexpr int ceil_half(int k) { return k >= 0 ? (k + 1) / 2 : -((-k) / 2); }

/// Parameters of a Bernstein-Szego quadrature rule.
///
/// `poles` enter the integrand denominators, `aux` only shape nodes and weights.
/// `m` is the rule order: the one-dimensional rule carries m+1 nodes.
template <typename Scalar>
struct QuadratureSpec {
  BoundaryFlags eps;
  BoundaryFlags eps_tilde;
  ParameterSet<Scalar> poles;
  ParameterSet<Scalar> aux;
  int m = 1;

  int d() const { return poles.size(); }
  int d_tilde() const { return aux.size(); }

  /// 2*d_eps and 2*d~_eps~, kept as integers so the half-integer values stay exact.
  int twice_d_eps() const { return d() - eps.sum(); }
  int twice_dt_eps() const { return d_tilde() - eps_tilde.sum(); }

  Scalar d_eps() const { return Scalar(twice_d_eps()) / Scalar(2); }
  Scalar dt_eps() const { return Scalar(twice_dt_eps()) / Scalar(2); }

  /// Smallest admissible rule order: order > ceil(d_eps) + ceil(d~_eps~).
  int min_order_exclusive() const { return ceil_half(twice_d_eps()) + ceil_half(twice_dt_eps()); }

  bool order_is_valid(int order) const { return order > 0 && order > min_order_exclusive(); }

  /// 2(M - d_eps - d~_eps~) for a rule with M+1 nodes; an integer.
  int twice_effective_order(int order) const
  {
    return 2 * order - twice_d_eps() - twice_dt_eps();
  }

  void require_valid_order(int order, const char* context = "quadrature") const
  {
    if (!order_is_valid(order))
      throw ConfigurationError(std::string(context) + ": order " + std::to_string(order) +
                               " violates order > ceil(d_eps) + ceil(d~_eps~) = " +
                               std::to_string(min_order_exclusive()));
  }

  void validate() const { require_valid_order(m); }
};

using QuadratureSpecd = QuadratureSpec<double>;
using ParameterSetd = ParameterSet<double>;

} // namespace bsc

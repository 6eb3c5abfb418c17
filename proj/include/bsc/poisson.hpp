#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include "bsc/errors.hpp"
#include "bsc/parameters.hpp"

namespace bsc {

inline constexpr double kImaginaryResidualTolerance = 1e-13;

namespace detail {

template <typename Scalar>
void require_inside_disk(const std::complex<Scalar>& a)
{
  if (!(std::abs(a) < Scalar(1)))
    throw DomainError("Poisson parameter outside the open unit disk: |a| = " +
                      std::to_string(static_cast<double>(std::abs(a))));
}

template <typename Scalar>
void require_half_period(Scalar xi)
{
  if (!(xi >= Scalar(0) && xi <= std::numbers::pi_v<Scalar>))
    throw DomainError("angle outside [0, pi]: " + std::to_string(static_cast<double>(xi)));
}

template <typename Scalar>
Scalar checked_real(const std::complex<Scalar>& z, const char* what)
{
  using std::abs;
  if (abs(z.imag()) >= Scalar(kImaginaryResidualTolerance))
    throw std::runtime_error(std::string(what) + ": conjugate pair left imaginary residual " +
                             std::to_string(static_cast<double>(z.imag())));
  return z.real();
}

} // namespace detail

/// u_a(theta) = (1 - a^2) / (1 - 2a cos(theta) + a^2).
template <typename Scalar>
Scalar poisson_kernel(Scalar a, Scalar theta)
{
  using std::abs;
  using std::cos;
  detail::require_inside_disk(std::complex<Scalar>(a));
  return (Scalar(1) - a * a) / (Scalar(1) - Scalar(2) * a * cos(theta) + a * a);
}

/// Complex-parameter kernel; only conjugate-pair sums are real.
template <typename Scalar>
std::complex<Scalar> poisson_kernel(const std::complex<Scalar>& a, Scalar theta)
{
  using std::cos;
  detail::require_inside_disk(a);
  const std::complex<Scalar> one(1);
  return (one - a * a) / (one - Scalar(2) * a * cos(theta) + a * a);
}

/// U_a(xi) = integral of u_a over [0, xi], real parameter.
///
/// Uses 2 atan2((1+a) sin(xi/2), (1-a) cos(xi/2)), which is continuous on [0, pi] and
/// reaches pi at the right endpoint.
template <typename Scalar>
Scalar poisson_antiderivative(Scalar a, Scalar xi)
{
  using std::atan2;
  using std::cos;
  using std::sin;
  detail::require_inside_disk(std::complex<Scalar>(a));
  detail::require_half_period(xi);
  if (xi == std::numbers::pi_v<Scalar>)
    return std::numbers::pi_v<Scalar>;
  const Scalar h = xi / Scalar(2);
  return Scalar(2) * atan2((Scalar(1) + a) * sin(h), (Scalar(1) - a) * cos(h));
}

/// Complex-parameter antiderivative
///   U_a(xi) = xi - i (log(1 - a e^{-i xi}) - log(1 - a e^{i xi})).
/// Both logarithms have arguments in the right half plane, so the principal branch is
/// continuous in xi.
template <typename Scalar>
std::complex<Scalar> poisson_antiderivative(const std::complex<Scalar>& a, Scalar xi)
{
  detail::require_inside_disk(a);
  detail::require_half_period(xi);
  const std::complex<Scalar> i(0, 1);
  const std::complex<Scalar> one(1);
  const std::complex<Scalar> e = std::polar(Scalar(1), xi);
  return xi - i * (std::log(one - a * std::conj(e)) - std::log(one - a * e));
}

/// Sum of u_a(theta) over a conjugate-closed parameter set.
template <typename Scalar>
Scalar poisson_kernel_sum(const ParameterSet<Scalar>& params, Scalar theta)
{
  Scalar acc(0);
  for (Scalar a : params.reals())
    acc += poisson_kernel(a, theta);
  for (const auto& p : params.pairs())
    acc += detail::checked_real(poisson_kernel(p, theta) + poisson_kernel(std::conj(p), theta),
                                "poisson_kernel_sum");
  return acc;
}

/// Sum of U_a(xi) over a conjugate-closed parameter set.
template <typename Scalar>
Scalar poisson_antiderivative_sum(const ParameterSet<Scalar>& params, Scalar xi)
{
  Scalar acc(0);
  for (Scalar a : params.reals())
    acc += poisson_antiderivative(a, xi);
  for (const auto& p : params.pairs())
    acc += detail::checked_real(
        poisson_antiderivative(p, xi) + poisson_antiderivative(std::conj(p), xi),
        "poisson_antiderivative_sum");
  return acc;
}

} // namespace bsc

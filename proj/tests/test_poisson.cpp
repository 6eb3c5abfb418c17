#include <doctest.h>

#include <numbers>
#include <random>

#include "bsc/oracle.hpp"
#include "bsc/poisson.hpp"
#include "test_support.hpp"

using namespace bsc;
using std::numbers::pi;

TEST_CASE("poisson kernel values")
{
  CHECK(poisson_kernel(0.0, 1.3) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(poisson_kernel(0.5, 0.0) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(poisson_kernel(0.5, pi) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK_THROWS_AS(poisson_kernel(1.0, 0.2), DomainError);
  CHECK_THROWS_AS(poisson_kernel(-1.5, 0.2), DomainError);
  CHECK_THROWS_AS(poisson_kernel(std::complex<double>(0.6, 0.8), 0.2), DomainError);
}

TEST_CASE("conjugate pair kernels sum to a real value")
{
  const std::complex<double> a(0.3, 0.4);
  for (double t : {0.0, 0.4, 1.7, pi}) {
    const auto s = poisson_kernel(a, t) + poisson_kernel(std::conj(a), t);
    CHECK(std::abs(s.imag()) < 1e-13);
  }
}

TEST_CASE("antiderivative values")
{
  CHECK(poisson_antiderivative(0.5, pi / 2) == doctest::Approx(2.498091544796509).epsilon(1e-14));
  CHECK(poisson_antiderivative(0.0, 1.1) == doctest::Approx(1.1).epsilon(1e-15));
  CHECK(poisson_antiderivative(0.0, 0.0) == 0.0);
  CHECK(poisson_antiderivative(-0.9, pi) == pi);
  CHECK_THROWS_AS(poisson_antiderivative(0.5, -0.1), DomainError);
  CHECK_THROWS_AS(poisson_antiderivative(0.5, 3.2), DomainError);
}

TEST_CASE("antiderivative matches the adaptive oracle")
{
  for (double a : {-0.95, -0.5, 0.1, 0.5, 0.95})
    for (double xi : {0.3, 1.0, 2.0, 3.0}) {
      const double ref = oracle::integrate_1d([&](double t) { return poisson_kernel(a, t); }, 0.0, xi, 1e-13);
      CHECK(std::abs(poisson_antiderivative(a, xi) - ref) < 1e-12);
    }
  const std::complex<double> z(0.3, 0.4);
  for (double xi : {0.5, 2.5}) {
    const double ref = oracle::integrate_1d(
        [&](double t) { return (poisson_kernel(z, t) + poisson_kernel(std::conj(z), t)).real(); }, 0.0, xi, 1e-13);
    const auto pair = poisson_antiderivative(z, xi) + poisson_antiderivative(std::conj(z), xi);
    CHECK(std::abs(pair.real() - ref) < 1e-12);
    CHECK(std::abs(pair.imag()) < 1e-13);
  }
}

TEST_CASE("antiderivative endpoint and derivative properties")
{
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const double a = 0.999 * (2 * u(rng) - 1);
    CHECK(std::abs(poisson_antiderivative(a, pi) - pi) < 1e-12);
    const auto z = std::polar(0.99 * u(rng), 2 * pi * u(rng));
    CHECK(std::abs(poisson_antiderivative(z, pi).real() + poisson_antiderivative(std::conj(z), pi).real() -
                   2 * pi) < 1e-12);
  }
  const double h = 1e-5;
  for (int i = 0; i < 100; ++i) {
    const double a = 0.9 * (2 * u(rng) - 1);
    const double xi = h + (pi - 2 * h) * u(rng);
    const double fd = (poisson_antiderivative(a, xi + h) - poisson_antiderivative(a, xi - h)) / (2 * h);
    CHECK(std::abs(fd - poisson_kernel(a, xi)) < 1e-6);
  }
}

TEST_CASE("parameter-set sums")
{
  const ParameterSetd p({{0.5, 0}, {0.3, 0.4}, {0.3, -0.4}});
  const double t = 0.9;
  const double direct = poisson_kernel(0.5, t) + 2 * poisson_kernel(std::complex<double>(0.3, 0.4), t).real();
  CHECK(poisson_kernel_sum(p, t) == doctest::Approx(direct).epsilon(1e-14));
  CHECK(poisson_antiderivative_sum(p, pi) == doctest::Approx(3 * pi).epsilon(1e-14));
}

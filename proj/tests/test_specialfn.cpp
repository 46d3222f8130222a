#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dhmu/random.hpp"
#include "dhmu/specialfn.hpp"
#include "oracles.hpp"

using namespace dhmu;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("log_gamma at classical points") {
  CHECK(log_gamma(1.0) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(log_gamma(5.0) == doctest::Approx(std::log(24.0)).epsilon(1e-14));
  CHECK(log_gamma(0.5) == doctest::Approx(0.5 * std::log(kPi)).epsilon(1e-14));
  CHECK(log_gamma(2.0) == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("log_gamma tracks the libm reference across [1e-3, 1e3]") {
  // 2000 log-spaced points; absolute tolerance near the zeros of ln Gamma,
  // relative elsewhere.
  for (int i = 0; i <= 2000; ++i) {
    const double x = 1e-3 * std::pow(1e6, i / 2000.0);
    const double ref = std::lgamma(x);
    const double got = log_gamma(x);
    CHECK(std::abs(got - ref) <= 1e-12 * (1.0 + std::abs(ref)));
  }
}

TEST_CASE("log_gamma rejects the complement of its domain") {
  CHECK_THROWS_AS(log_gamma(0.0), std::domain_error);
  CHECK_THROWS_AS(log_gamma(-1.5), std::domain_error);
  CHECK_THROWS_AS(log_gamma(std::numeric_limits<double>::infinity()), std::domain_error);
  CHECK_THROWS_AS(log_gamma(std::numeric_limits<double>::quiet_NaN()), std::domain_error);
}

TEST_CASE("beta closed forms") {
  CHECK(beta(1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(beta(2.0, 2.0) == doctest::Approx(1.0 / 6.0).epsilon(1e-13));
  CHECK(beta(0.5, 0.5) == doctest::Approx(kPi).epsilon(1e-13));
}

TEST_CASE("beta symmetry and beta(s,1) = 1/s") {
  const double svals[] = {0.25, 0.5, 1.0, 2.0, 3.5};
  for (double s : svals) {
    CHECK(beta(s, 1.0) == doctest::Approx(1.0 / s).epsilon(1e-12));
    for (double t : svals)
      CHECK(beta(s, t) == doctest::Approx(beta(t, s)).epsilon(1e-13));
  }
}

TEST_CASE("beta domain errors") {
  CHECK_THROWS_AS(beta(0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(beta(1.0, -2.0), std::domain_error);
}

TEST_CASE("regularized incomplete beta basics") {
  CHECK(regularized_incomplete_beta(2.0, 3.0, 0.0) == 0.0);
  CHECK(regularized_incomplete_beta(2.0, 3.0, 1.0) == 1.0);
  // I_x(1,1) = x
  CHECK(regularized_incomplete_beta(1.0, 1.0, 0.37) == doctest::Approx(0.37).epsilon(1e-12));
  // I_x(1,b) = 1-(1-x)^b
  CHECK(regularized_incomplete_beta(1.0, 2.5, 0.2) ==
        doctest::Approx(1.0 - std::pow(0.8, 2.5)).epsilon(1e-9));
  // symmetry I_x(a,b) = 1 - I_{1-x}(b,a)
  CHECK(regularized_incomplete_beta(1.7, 0.4, 0.3) ==
        doctest::Approx(1.0 - regularized_incomplete_beta(0.4, 1.7, 0.7)).epsilon(1e-9));
  CHECK_THROWS_AS(regularized_incomplete_beta(0.0, 1.0, 0.5), std::domain_error);
  CHECK_THROWS_AS(regularized_incomplete_beta(1.0, 1.0, 1.5), std::domain_error);
}

TEST_CASE("kernel params admissible box") {
  CHECK_NOTHROW(KernelParams<double>(2.0, 2.0));
  CHECK_NOTHROW(KernelParams<double>(0.1, 3.99));
  CHECK_NOTHROW(KernelParams<double>(2.0, 3.9));
  CHECK_THROWS_AS(KernelParams<double>(0.0, 2.0), std::domain_error);
  CHECK_THROWS_AS(KernelParams<double>(2.1, 2.0), std::domain_error);
  CHECK_THROWS_AS(KernelParams<double>(1.0, 1.9), std::domain_error);
  CHECK_THROWS_AS(KernelParams<double>(1.0, 4.0), std::domain_error);
}

TEST_CASE("hardy kernel point values") {
  const KernelParams<double> p22(2.0, 2.0);
  CHECK(hardy_kernel(1.0, 1.0, p22) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(hardy_kernel(2.0, 2.0, p22) == doctest::Approx(0.125).epsilon(1e-14));
  const KernelParams<double> p13(1.0, 3.0);
  CHECK(hardy_kernel(1.0, 4.0, p13) == doctest::Approx(0.2).epsilon(1e-14));
  CHECK_THROWS_AS(hardy_kernel(0.0, 1.0, p22), std::domain_error);
  CHECK_THROWS_AS(hardy_kernel(1.0, -1.0, p22), std::domain_error);
}

TEST_CASE("hardy kernel degree -1 homogeneity") {
  UniformStream<double> stream(20240811ull);
  const KernelParams<double> params[] = {{2.0, 2.0}, {1.0, 3.0}, {0.5, 2.5}, {2.0, 3.9}};
  for (const auto& p : params) {
    for (int trial = 0; trial < 200; ++trial) {
      const double lambda = std::exp(6.0 * stream.next_symmetric());
      const double x = std::exp(4.0 * stream.next_symmetric());
      const double y = std::exp(4.0 * stream.next_symmetric());
      const double scaled = hardy_kernel(lambda * x, lambda * y, p);
      const double ref = hardy_kernel(x, y, p) / lambda;
      CHECK(std::abs(scaled - ref) <= 1e-12 * ref);
    }
  }
}

TEST_CASE("hardy kernel row profile strictly decreasing") {
  const KernelParams<double> params[] = {{2.0, 2.0}, {1.0, 3.0}, {0.5, 2.5}, {1.5, 3.99}};
  for (const auto& p : params) {
    double prev = std::numeric_limits<double>::infinity();
    for (int j = -20; j <= 20; ++j) {
      const double x = std::ldexp(1.0, j);
      const double g = hardy_kernel(x, 1.0, p) * std::pow(x, -0.5);
      CHECK(g < prev);
      prev = g;
    }
  }
}

TEST_CASE("hardy constant closed forms") {
  CHECK(hardy_constant(KernelParams<double>(2.0, 2.0)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(hardy_constant(KernelParams<double>(2.0, 3.0)) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(hardy_constant(KernelParams<double>(1.0, 3.0)) == doctest::Approx(kPi).epsilon(1e-12));
}

TEST_CASE("gauss_legendre agrees with the Golub-Welsch oracle") {
  for (int n : {4, 16, 24, 64}) {
    auto [x, w] = gauss_legendre<double>(n);
    auto [xo, wo] = oracle::gw_legendre(n);
    REQUIRE(x.size() == n);
    CHECK(w.sum() == doctest::Approx(2.0).epsilon(1e-13));
    for (int i = 0; i < n; ++i) {
      CHECK(x[i] == doctest::Approx(xo[i]).epsilon(1e-12));
      CHECK(w[i] == doctest::Approx(wo[i]).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(gauss_legendre<double>(0), std::domain_error);
}

TEST_CASE("kernel integral reproduces the beta constant") {
  // alpha=2, beta=2: integral = B(1,1) = 1
  auto r = kernel_integral_check(KernelParams<double>(2.0, 2.0));
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-6));

  // alpha=1, beta=3: B(1/2,1/2) = pi, checked against the Gamma(1/2)^2 oracle
  r = kernel_integral_check(KernelParams<double>(1.0, 3.0));
  CHECK(r.converged);
  const double gamma_half = std::exp(log_gamma(0.5));
  CHECK(r.value == doctest::Approx(gamma_half * gamma_half).epsilon(1e-5));

  // alpha=2, beta=3: antiderivative of x^(-1/2)(1+x)^(-3/2) is 2 sqrt(x/(1+x)),
  // so the improper integral equals 2 exactly.
  r = kernel_integral_check(KernelParams<double>(2.0, 3.0));
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-5));
}

TEST_CASE("kernel integral symmetric across axes") {
  const KernelParams<double> params[] = {{2.0, 2.0}, {1.0, 3.0}, {0.5, 2.5}, {2.0, 3.9}};
  for (const auto& p : params) {
    const auto rx = kernel_integral_check(p, {}, KernelAxis::x);
    const auto ry = kernel_integral_check(p, {}, KernelAxis::y);
    CHECK(rx.converged);
    CHECK(ry.converged);
    CHECK(std::abs(rx.value - ry.value) <= 1e-6 * std::max(1.0, std::abs(rx.value)));
  }
}

TEST_CASE("kernel integral rejects bad quadrature specs") {
  QuadratureSpec<double> spec;
  spec.nodes = 1;
  CHECK_THROWS_AS(kernel_integral_check(KernelParams<double>(2.0, 2.0), spec),
                  std::domain_error);
  spec = {};
  spec.tol = -1.0;
  CHECK_THROWS_AS(kernel_integral_check(KernelParams<double>(2.0, 2.0), spec),
                  std::domain_error);
}

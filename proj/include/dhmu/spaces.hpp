#pragma once

// Dirichlet-type coefficient spaces. An analytic function on the disk is
// represented by its Taylor coefficient vector (a_0, ..., a_N); the space
// D_alpha carries the norm
//
//   ||f||^2 = sum_n (n+1)^(1-alpha) |a_n|^2,
//
// so alpha = 1 is the Hardy space scale and larger alpha is rougher. The
// family f_t(z) = (1-t^2)^(1-alpha/2) sum_n t^n z^n provides unit-scale test
// vectors concentrating at the boundary as t -> 1.

#include <cmath>
#include <concepts>
#include <stdexcept>

#include "dhmu/types.hpp"

namespace dhmu {

/// ||f||_{D_alpha} for a coefficient vector f = (a_0, ..., a_N).
template <typename Derived>
typename Derived::Scalar dirichlet_norm(const Eigen::MatrixBase<Derived>& f,
                                        typename Derived::Scalar alpha) {
  using Scalar = typename Derived::Scalar;
  if (!std::isfinite(alpha)) throw std::domain_error("dirichlet_norm requires finite alpha");
  const Index n = f.size();
  if (n == 0) return Scalar(0);
  Array<Scalar> weights =
      Array<Scalar>::LinSpaced(n, Scalar(1), Scalar(n)).pow(Scalar(1) - alpha);
  return std::sqrt((f.derived().array().square() * weights).sum());
}

namespace detail {

template <std::floating_point Scalar>
void check_test_function_domain(Scalar t, Scalar alpha) {
  if (!std::isfinite(t) || t <= Scalar(0) || t >= Scalar(1))
    throw std::domain_error("test function requires t in (0, 1)");
  if (!std::isfinite(alpha) || alpha <= Scalar(0) || alpha > Scalar(2))
    throw std::domain_error("test function requires alpha in (0, 2]");
}

}  // namespace detail

/// Coefficients of f_t truncated at degree N: (1-t^2)^(1-alpha/2) * t^n.
template <std::floating_point Scalar>
Vector<Scalar> test_function(Scalar t, Scalar alpha, Index N) {
  detail::check_test_function_domain(t, alpha);
  if (N < 0) throw std::domain_error("test_function requires N >= 0");
  if (N + 1 > kMaxCoefficients)
    throw std::length_error("test_function truncation exceeds coefficient cap");
  const Scalar front = std::pow(Scalar(1) - t * t, Scalar(1) - alpha / Scalar(2));
  Vector<Scalar> f(N + 1);
  Scalar power = Scalar(1);
  for (Index n = 0; n <= N; ++n) {
    f[n] = front * power;
    power *= t;
  }
  return f;
}

/// Smallest N with t^N below tail_tol, clamped so N+1 stays within the cap.
template <std::floating_point Scalar>
Index adaptive_truncation(Scalar t, Scalar tail_tol = Scalar(1e-12),
                          Index cap = kMaxCoefficients) {
  if (!std::isfinite(t) || t <= Scalar(0) || t >= Scalar(1))
    throw std::domain_error("adaptive_truncation requires t in (0, 1)");
  if (!(tail_tol > Scalar(0)) || tail_tol >= Scalar(1))
    throw std::domain_error("adaptive_truncation requires tail_tol in (0, 1)");
  Index N = static_cast<Index>(std::ceil(std::log(tail_tol) / std::log(t)));
  if (N < 1) N = 1;
  while (N + 1 < cap && std::pow(t, Scalar(N)) >= tail_tol) ++N;
  if (N + 1 > cap) N = cap - 1;
  return N;
}

// Rigorous upper bound for the D_alpha tail ||f_t - f_t^(N)||^2 dropped by
// truncating at degree N. With r = t^2 and M = N + 1:
//   alpha >= 1:  (n+1)^(1-alpha) <= (N+2)^(1-alpha) on the tail, geometric sum;
//   alpha <  1:  (n+1)^(1-alpha) <= (N+2)^(-alpha) (n+1), arithmetico-geometric sum.
template <std::floating_point Scalar>
Scalar truncation_tail(Scalar t, Scalar alpha, Index N) {
  detail::check_test_function_domain(t, alpha);
  if (N < 0) throw std::domain_error("truncation_tail requires N >= 0");
  const Scalar r = t * t;
  const Scalar M = Scalar(N + 1);
  const Scalar front = std::pow(Scalar(1) - r, Scalar(2) - alpha);
  const Scalar rM = std::pow(r, M);
  if (alpha >= Scalar(1))
    return front * std::pow(Scalar(N + 2), Scalar(1) - alpha) * rM / (Scalar(1) - r);
  const Scalar one_minus_r = Scalar(1) - r;
  return front * std::pow(Scalar(N + 2), -alpha) * rM *
         ((M + Scalar(1)) * one_minus_r + r) / (one_minus_r * one_minus_r);
}

}  // namespace dhmu

#pragma once

// Truncated matrix realizations of the Hankel-moment operators. For a
// measure mu with moments mu_n, the base operator acts on coefficients by
//
//   (H f)_n  = sum_k mu_{n+k} a_k,
//   (DH f)_n = (n+1) sum_k mu_{n+k} a_k,
//
// DH being the derivative form d/dz [z (H f)(z)] on power series. Conjugating
// DH : D_alpha -> D_beta by the diagonal isometries
//
//   V_alpha : D_alpha -> l^2,  (V_alpha f)_k = (k+1)^((1-alpha)/2) a_k,
//   T_beta  : l^2 -> D_beta,   (T_beta g)_n  = (n+1)^((beta-1)/2) g_n,
//
// gives the l^2 kernel matrix
//
//   S_mu(n, k) = (n+1)^((3-beta)/2) (k+1)^((alpha-1)/2) mu_{n+k},
//
// so DH = T_beta o S_mu o V_alpha and the operator norms agree. Everything
// here is a finite truncation of that picture.

#include <cmath>
#include <concepts>
#include <stdexcept>

#include "dhmu/measure.hpp"
#include "dhmu/spaces.hpp"
#include "dhmu/specialfn.hpp"
#include "dhmu/types.hpp"

namespace dhmu {

enum class MatrixLabel { raw, s_mu, tail_block };

template <std::floating_point Scalar>
struct TruncatedMatrix {
  Matrix<Scalar> entries;
  MatrixLabel label = MatrixLabel::raw;

  Index rows() const { return entries.rows(); }
  Index cols() const { return entries.cols(); }
};

/// (H f)_0..(H f)_N for a coefficient vector f.
template <std::floating_point Scalar>
Vector<Scalar> apply_h(const Measure<Scalar>& m, const Vector<Scalar>& f, Index N) {
  if (f.size() == 0) throw std::domain_error("apply_h requires a nonempty coefficient vector");
  if (N < 0) throw std::domain_error("apply_h requires N >= 0");
  const Index K = f.size() - 1;
  const Vector<Scalar> mu = moment_sequence(m, N + K).values;
  Vector<Scalar> out(N + 1);
  for (Index n = 0; n <= N; ++n) out[n] = mu.segment(n, K + 1).dot(f);
  return out;
}

/// (DH f)_0..(DH f)_N; independent of apply_h at the call level, but the
/// shared dot-product shape keeps the derivative identity exact in floating
/// point as well.
template <std::floating_point Scalar>
Vector<Scalar> apply_dh(const Measure<Scalar>& m, const Vector<Scalar>& f, Index N) {
  if (f.size() == 0) throw std::domain_error("apply_dh requires a nonempty coefficient vector");
  if (N < 0) throw std::domain_error("apply_dh requires N >= 0");
  const Index K = f.size() - 1;
  const Vector<Scalar> mu = moment_sequence(m, N + K).values;
  Vector<Scalar> out(N + 1);
  for (Index n = 0; n <= N; ++n) out[n] = Scalar(n + 1) * mu.segment(n, K + 1).dot(f);
  return out;
}

/// max_n | (DH f)_n - (n+1) (H f)_n | over 0..N.
template <std::floating_point Scalar>
Scalar derivative_identity_check(const Measure<Scalar>& m, const Vector<Scalar>& f, Index N) {
  const Vector<Scalar> dh = apply_dh(m, f, N);
  const Vector<Scalar> h = apply_h(m, f, N);
  Scalar worst = Scalar(0);
  for (Index n = 0; n <= N; ++n)
    worst = std::max(worst, std::abs(dh[n] - Scalar(n + 1) * h[n]));
  return worst;
}

/// (V_alpha f)_k = (k+1)^((1-alpha)/2) a_k; an isometry D_alpha -> l^2.
template <typename Derived>
Vector<typename Derived::Scalar> v_alpha(const Eigen::MatrixBase<Derived>& f,
                                         typename Derived::Scalar alpha) {
  using Scalar = typename Derived::Scalar;
  if (!std::isfinite(alpha)) throw std::domain_error("v_alpha requires finite alpha");
  const Index n = f.size();
  Array<Scalar> w =
      Array<Scalar>::LinSpaced(n, Scalar(1), Scalar(n)).pow((Scalar(1) - alpha) / Scalar(2));
  return (f.derived().array() * w).matrix();
}

/// (T_beta g)_n = (n+1)^((beta-1)/2) g_n; an isometry l^2 -> D_beta.
template <typename Derived>
Vector<typename Derived::Scalar> t_beta(const Eigen::MatrixBase<Derived>& g,
                                        typename Derived::Scalar beta) {
  using Scalar = typename Derived::Scalar;
  if (!std::isfinite(beta)) throw std::domain_error("t_beta requires finite beta");
  const Index n = g.size();
  Array<Scalar> w =
      Array<Scalar>::LinSpaced(n, Scalar(1), Scalar(n)).pow((beta - Scalar(1)) / Scalar(2));
  return (g.derived().array() * w).matrix();
}

namespace detail {

template <std::floating_point Scalar>
void check_matrix_shape(Index N, Index K) {
  if (N < 1 || K < 1) throw std::domain_error("matrix truncation requires N >= 1, K >= 1");
  if (N > kMaxMatrixEntries / K)
    throw std::length_error("matrix truncation exceeds entry cap");
}

}  // namespace detail

/// Raw Hankel moment matrix, entry(n, k) = mu_{n+k}; N rows, K columns.
template <std::floating_point Scalar>
TruncatedMatrix<Scalar> moment_matrix(const Measure<Scalar>& m, Index N, Index K) {
  detail::check_matrix_shape<Scalar>(N, K);
  const Vector<Scalar> mu = moment_sequence(m, N + K - 2).values;
  TruncatedMatrix<Scalar> out{Matrix<Scalar>(N, K), MatrixLabel::raw};
  for (Index n = 0; n < N; ++n) out.entries.row(n) = mu.segment(n, K).transpose();
  return out;
}

/// Weighted kernel matrix S_mu(n, k) = (n+1)^((3-beta)/2) (k+1)^((alpha-1)/2) mu_{n+k}.
template <std::floating_point Scalar>
TruncatedMatrix<Scalar> s_mu_matrix(const Measure<Scalar>& m, const KernelParams<Scalar>& p,
                                    Index N, Index K) {
  detail::check_matrix_shape<Scalar>(N, K);
  const Vector<Scalar> mu = moment_sequence(m, N + K - 2).values;
  Array<Scalar> roww =
      Array<Scalar>::LinSpaced(N, Scalar(1), Scalar(N)).pow((Scalar(3) - p.beta) / Scalar(2));
  Array<Scalar> colw =
      Array<Scalar>::LinSpaced(K, Scalar(1), Scalar(K)).pow((p.alpha - Scalar(1)) / Scalar(2));
  TruncatedMatrix<Scalar> out{Matrix<Scalar>(N, K), MatrixLabel::s_mu};
  for (Index n = 0; n < N; ++n)
    out.entries.row(n) = (roww[n] * mu.segment(n, K).array() * colw).matrix().transpose();
  return out;
}

/// S_mu with rows 0..mcut zeroed: the far part left after dropping the head.
template <std::floating_point Scalar>
TruncatedMatrix<Scalar> tail_block(const TruncatedMatrix<Scalar>& s, Index mcut) {
  if (mcut < 0 || mcut >= s.rows())
    throw std::domain_error("tail_block requires 0 <= mcut < row count");
  TruncatedMatrix<Scalar> out{s.entries, MatrixLabel::tail_block};
  out.entries.topRows(mcut + 1).setZero();
  return out;
}

template <std::floating_point Scalar>
TruncatedMatrix<Scalar> tail_block(const Measure<Scalar>& m, const KernelParams<Scalar>& p,
                                   Index mcut, Index N, Index K) {
  return tail_block(s_mu_matrix(m, p, N, K), mcut);
}

// Max coefficient deviation between the factored path T_beta(S_mu(V_alpha f))
// and the direct path DH f, both truncated at output degree N. Zero exactly
// when the diagonal weights cancel; in floating point the contract is 1e-12
// relative to the largest output coefficient.
template <std::floating_point Scalar>
Scalar factorization_check(const Measure<Scalar>& m, const KernelParams<Scalar>& p,
                           const Vector<Scalar>& f, Index N) {
  if (f.size() == 0)
    throw std::domain_error("factorization_check requires a nonempty coefficient vector");
  if (N < 0) throw std::domain_error("factorization_check requires N >= 0");
  const TruncatedMatrix<Scalar> s = s_mu_matrix(m, p, N + 1, f.size());
  const Vector<Scalar> factored = t_beta(s.entries * v_alpha(f, p.alpha), p.beta);
  const Vector<Scalar> direct = apply_dh(m, f, N);
  return (factored - direct).cwiseAbs().maxCoeff();
}

// A priori certificate that (H f)_n is finite and small for rapidly decaying
// moments: with C = max_j mu_j (j+1)^(alpha/2 + eps) over the computed range,
//
//   |(H f)_n| <= C * sqrt(sum_k (k+1)^(alpha-1) (n+k+1)^(-alpha-2 eps))
//                  * ||f||_{D_alpha},
//
// by Cauchy-Schwarz against the D_alpha weight. Never underestimates the
// truncated coefficient (up to rounding).
template <std::floating_point Scalar>
Scalar well_defined_bound(const Measure<Scalar>& m, Scalar alpha, Scalar eps,
                          const Vector<Scalar>& f, Index n) {
  if (!std::isfinite(alpha) || alpha <= Scalar(0) || alpha > Scalar(2))
    throw std::domain_error("well_defined_bound requires alpha in (0, 2]");
  if (!std::isfinite(eps) || eps <= Scalar(0))
    throw std::domain_error("well_defined_bound requires eps > 0");
  if (f.size() == 0)
    throw std::domain_error("well_defined_bound requires a nonempty coefficient vector");
  if (n < 0) throw std::domain_error("well_defined_bound requires n >= 0");
  const Index K = f.size() - 1;
  const Vector<Scalar> mu = moment_sequence(m, n + K).values;
  Scalar c_mu = Scalar(0);
  for (Index j = 0; j <= n + K; ++j)
    c_mu = std::max(c_mu, mu[j] * std::pow(Scalar(j + 1), alpha / Scalar(2) + eps));
  Scalar sum_a = Scalar(0);
  for (Index k = 0; k <= K; ++k)
    sum_a += std::pow(Scalar(k + 1), alpha - Scalar(1)) *
             std::pow(Scalar(n + k + 1), -(alpha + Scalar(2) * eps));
  return c_mu * std::sqrt(sum_a) * dirichlet_norm(f, alpha);
}

}  // namespace dhmu

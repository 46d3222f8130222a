#pragma once

// Test-side oracles, kept independent of the library's numerics on purpose:
// Gauss-Legendre nodes via the Golub-Welsch eigenvalue route (the library
// uses Newton iteration), and a brute-force graded panel integrator used to
// check closed-form moments and tails against raw quadrature.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

namespace oracle {

// Nodes/weights on [-1, 1] from the Jacobi matrix: off-diagonals
// j / sqrt(4 j^2 - 1), weights 2 * (first eigenvector component)^2.
inline std::pair<Eigen::VectorXd, Eigen::VectorXd> gw_legendre(int n) {
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int j = 1; j < n; ++j) {
    const double b = j / std::sqrt(4.0 * j * j - 1.0);
    J(j, j - 1) = b;
    J(j - 1, j) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  Eigen::VectorXd nodes = es.eigenvalues();
  Eigen::VectorXd weights(n);
  for (int i = 0; i < n; ++i) {
    const double v = es.eigenvectors()(0, i);
    weights[i] = 2.0 * v * v;
  }
  return {std::move(nodes), std::move(weights)};
}

template <typename G>
double gw_panel(const G& g, double lo, double hi, const Eigen::VectorXd& nodes,
                const Eigen::VectorXd& weights) {
  const double c = 0.5 * (hi + lo), h = 0.5 * (hi - lo);
  double s = 0.0;
  for (int i = 0; i < nodes.size(); ++i) s += weights[i] * g(c + h * nodes[i]);
  return h * s;
}

// integral_0^1 g, with panels graded dyadically toward every segment edge so
// integrable endpoint singularities and interior kinks (pass their locations
// as splits) are resolved. Nodes stay strictly inside panels.
template <typename G>
double graded_integral_01(const G& g, std::vector<double> splits = {}, int levels = 100,
                          int n = 24) {
  auto [nodes, weights] = gw_legendre(n);
  std::vector<double> edges = {0.0, 1.0};
  for (double s : splits)
    if (s > 0.0 && s < 1.0) edges.push_back(s);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
    const double a = edges[k], b = edges[k + 1], len = b - a;
    // graded boundaries a + len*2^-j descending, then b - len*2^-j, with
    // closing panels touching a and b so no sliver of mass is dropped
    // (nodes stay interior, so endpoint singularities are never evaluated)
    total += gw_panel(g, a, a + len * std::ldexp(1.0, -(levels + 1)), nodes, weights);
    double prev = a + len * std::ldexp(1.0, -(levels + 1));
    for (int j = levels; j >= 1; --j) {
      const double hi = a + len * std::ldexp(1.0, -j);
      total += gw_panel(g, prev, hi, nodes, weights);
      prev = hi;
    }
    for (int j = 2; j <= levels + 1; ++j) {
      const double hi = b - len * std::ldexp(1.0, -j);
      total += gw_panel(g, prev, hi, nodes, weights);
      prev = hi;
    }
    total += gw_panel(g, prev, b, nodes, weights);
  }
  return total;
}

}  // namespace oracle

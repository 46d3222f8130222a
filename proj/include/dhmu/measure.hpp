#pragma once

// Finite nonnegative Borel measures on [0, 1) from a closed family:
// point masses plus Jacobi-type densities scale * t^a (1-t)^b dt. The family
// is closed under the quantities the toolkit needs in exact form: power
// moments mu_n = integral t^n dmu(t), tail masses mu([t, 1)), and the
// Carleson-type ratios mu([t,1)) / (1-t)^s that govern operator boundedness.

#include <cmath>
#include <concepts>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dhmu/specialfn.hpp"
#include "dhmu/types.hpp"

namespace dhmu {

template <std::floating_point Scalar>
struct PointMass {
  Scalar position;  // in [0, 1)
  Scalar mass;      // > 0
};

/// Density scale * t^a (1-t)^b on (0, 1) with a >= 0, b > -1, scale > 0.
template <std::floating_point Scalar>
struct JacobiDensity {
  Scalar a;
  Scalar b;
  Scalar scale;
};

template <std::floating_point Scalar>
class Measure {
 public:
  Measure() = default;

  Measure(std::vector<PointMass<Scalar>> atoms, std::vector<JacobiDensity<Scalar>> densities)
      : atoms_(std::move(atoms)), densities_(std::move(densities)) {
    for (const auto& p : atoms_) {
      if (!std::isfinite(p.position) || !std::isfinite(p.mass) ||
          p.position < Scalar(0) || p.position >= Scalar(1) || p.mass <= Scalar(0))
        throw std::domain_error("point mass requires position in [0,1) and mass > 0");
    }
    for (const auto& d : densities_) {
      if (!std::isfinite(d.a) || !std::isfinite(d.b) || !std::isfinite(d.scale) ||
          d.a < Scalar(0) || d.b <= Scalar(-1) || d.scale <= Scalar(0))
        throw std::domain_error("density requires a >= 0, b > -1, scale > 0");
    }
  }

  static Measure lebesgue() { return Measure({}, {{Scalar(0), Scalar(0), Scalar(1)}}); }

  const std::vector<PointMass<Scalar>>& atoms() const { return atoms_; }
  const std::vector<JacobiDensity<Scalar>>& densities() const { return densities_; }
  bool empty() const { return atoms_.empty() && densities_.empty(); }

 private:
  std::vector<PointMass<Scalar>> atoms_;
  std::vector<JacobiDensity<Scalar>> densities_;
};

namespace detail {

// B(a+1, b+1) stepped to B(n+a+1, b+1) by the exact ratio recurrence
//   B(j+1+a, b+1) = B(j+a, b+1) * (j+a) / (j+a+b+1),
// so neighbouring moments keep machine-accurate ratios at any index. A
// difference of two large log-gammas would lose ~1e-8 relative by n ~ 1e6
// and break the log-convexity margin checks; the recurrence does not.
template <std::floating_point Scalar>
struct DensityMomentStream {
  Scalar a, b, value;
  explicit DensityMomentStream(const JacobiDensity<Scalar>& d)
      : a(d.a), b(d.b), value(beta(d.a + Scalar(1), d.b + Scalar(1))) {}
  // advances from B(n+a+1, b+1) to B(n+a+2, b+1)
  void advance(Index n) {
    value *= (a + Scalar(1) + Scalar(n)) / (a + b + Scalar(2) + Scalar(n));
  }
};

}  // namespace detail

/// mu_n for one index; closed form throughout, no quadrature.
template <std::floating_point Scalar>
Scalar moment(const Measure<Scalar>& m, Index n, Index cap = kMaxMomentIndex) {
  if (n < 0) throw std::domain_error("moment index must be nonnegative");
  if (n > cap) throw std::length_error("moment index exceeds cap");
  Scalar acc = Scalar(0);
  for (const auto& p : m.atoms()) acc += p.mass * std::pow(p.position, Scalar(n));
  for (const auto& d : m.densities()) {
    detail::DensityMomentStream<Scalar> s(d);
    for (Index j = 0; j < n; ++j) s.advance(j);
    acc += d.scale * s.value;
  }
  return acc;
}

template <std::floating_point Scalar>
struct MomentSequence {
  Vector<Scalar> values;  // mu_0 .. mu_N

  Index max_index() const { return values.size() - 1; }

  // Internal consistency: moments of a nonnegative measure are nonincreasing
  // and log-convex. Violations beyond rounding slack indicate a bug upstream,
  // hence logic_error rather than domain_error.
  void validate() const {
    const Scalar eps = std::numeric_limits<Scalar>::epsilon();
    for (Index n = 0; n + 1 < values.size(); ++n) {
      if (!(values[n + 1] <= values[n] * (Scalar(1) + Scalar(4) * eps)))
        throw std::logic_error("moment sequence not nonincreasing");
    }
    for (Index n = 0; n + 2 < values.size(); ++n) {
      const Scalar lhs = values[n + 1] * values[n + 1];
      const Scalar rhs = values[n] * values[n + 2];
      if (!(lhs <= rhs * (Scalar(1) + Scalar(1e-12))))
        throw std::logic_error("moment sequence not log-convex");
    }
  }
};

/// mu_0..mu_N, entrywise identical to moment(m, n) for each n.
template <std::floating_point Scalar>
MomentSequence<Scalar> moment_sequence(const Measure<Scalar>& m, Index N,
                                       Index cap = kMaxMomentIndex) {
  if (N < 0) throw std::domain_error("moment_sequence requires N >= 0");
  if (N > cap) throw std::length_error("moment_sequence length exceeds cap");
  Vector<Scalar> values(N + 1);
  std::vector<detail::DensityMomentStream<Scalar>> streams;
  streams.reserve(m.densities().size());
  for (const auto& d : m.densities()) streams.emplace_back(d);
  for (Index n = 0; n <= N; ++n) {
    Scalar acc = Scalar(0);
    for (const auto& p : m.atoms()) acc += p.mass * std::pow(p.position, Scalar(n));
    for (std::size_t j = 0; j < streams.size(); ++j)
      acc += m.densities()[j].scale * streams[j].value;
    values[n] = acc;
    for (auto& s : streams) s.advance(n);
  }
  MomentSequence<Scalar> seq{std::move(values)};
  seq.validate();
  return seq;
}

/// mu([t, 1)) in closed form; stable as t -> 1 via the upper-tail branch.
template <std::floating_point Scalar>
Scalar tail_mass(const Measure<Scalar>& m, Scalar t) {
  if (!std::isfinite(t) || t < Scalar(0) || t >= Scalar(1))
    throw std::domain_error("tail_mass requires t in [0, 1)");
  Scalar acc = Scalar(0);
  for (const auto& p : m.atoms())
    if (p.position >= t) acc += p.mass;
  for (const auto& d : m.densities()) {
    if (d.a == Scalar(0)) {
      acc += d.scale * std::pow(Scalar(1) - t, d.b + Scalar(1)) / (d.b + Scalar(1));
    } else {
      // integral_t^1 u^a (1-u)^b du = B(a+1, b+1) I_{1-t}(b+1, a+1)
      const Scalar full = beta(d.a + Scalar(1), d.b + Scalar(1));
      acc += d.scale * full *
             regularized_incomplete_beta(d.b + Scalar(1), d.a + Scalar(1), Scalar(1) - t);
    }
  }
  return acc;
}

/// t_j = 1 - 2^-j for j = 1..levels.
template <std::floating_point Scalar>
Vector<Scalar> default_carleson_grid(Index levels = 24) {
  if (levels < 1 || levels > 48) throw std::domain_error("carleson grid levels out of range");
  Vector<Scalar> grid(levels);
  for (Index j = 1; j <= levels; ++j)
    grid[j - 1] = Scalar(1) - std::ldexp(Scalar(1), -int(j));
  return grid;
}

// Carleson ratio table: ratios[j] = mu([t_j, 1)) / (1 - t_j)^s. A bounded
// table certifies the s-Carleson property on the sampled grid; a ratio table
// drifting to zero is the vanishing variant's signature.
template <std::floating_point Scalar>
struct CarlesonReport {
  Scalar exponent = Scalar(0);
  Vector<Scalar> grid;
  Vector<Scalar> tails;
  Vector<Scalar> ratios;
  Scalar sup_ratio = Scalar(0);
  Scalar vanishing_trend = Scalar(0);  // ratio at last grid point / ratio at mid grid
};

template <std::floating_point Scalar>
CarlesonReport<Scalar> carleson_report(const Measure<Scalar>& m, Scalar s,
                                       const Vector<Scalar>& grid) {
  if (!std::isfinite(s) || s <= Scalar(0))
    throw std::domain_error("carleson_report requires exponent s > 0");
  if (grid.size() == 0) throw std::domain_error("carleson_report requires a nonempty grid");
  for (Index i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i]) || grid[i] < Scalar(0) || grid[i] >= Scalar(1))
      throw std::domain_error("carleson grid points must lie in [0, 1)");
    if (i > 0 && !(grid[i] > grid[i - 1]))
      throw std::domain_error("carleson grid must be strictly increasing");
  }
  CarlesonReport<Scalar> rep;
  rep.exponent = s;
  rep.grid = grid;
  rep.tails.resize(grid.size());
  rep.ratios.resize(grid.size());
  for (Index i = 0; i < grid.size(); ++i) {
    rep.tails[i] = tail_mass(m, grid[i]);
    rep.ratios[i] = rep.tails[i] / std::pow(Scalar(1) - grid[i], s);
  }
  rep.sup_ratio = rep.ratios.maxCoeff();
  const Scalar mid = rep.ratios[grid.size() / 2];
  const Scalar last = rep.ratios[grid.size() - 1];
  if (mid == Scalar(0))
    rep.vanishing_trend = (last == Scalar(0)) ? Scalar(0)
                                              : std::numeric_limits<Scalar>::infinity();
  else
    rep.vanishing_trend = last / mid;
  return rep;
}

template <std::floating_point Scalar>
CarlesonReport<Scalar> carleson_report(const Measure<Scalar>& m, Scalar s) {
  return carleson_report(m, s, default_carleson_grid<Scalar>());
}

// Weighted moment view mu_n (n+1)^s. For an s-Carleson measure the weighted
// sequence stays bounded; the trend compares a late window to an early one
// and drops below 1 when the decay is strict.
template <std::floating_point Scalar>
struct MomentDecayReport {
  Scalar exponent = Scalar(0);
  Vector<Scalar> moments;
  Vector<Scalar> weighted;  // mu_n (n+1)^s
  Scalar sup_weighted = Scalar(0);
  Scalar trend = Scalar(0);  // mean over [N/2, N] divided by mean over [N/8, N/4]
};

template <std::floating_point Scalar>
MomentDecayReport<Scalar> moment_decay_report(const Measure<Scalar>& m, Scalar s, Index N,
                                              Index cap = kMaxMomentIndex) {
  if (!std::isfinite(s) || s <= Scalar(0))
    throw std::domain_error("moment_decay_report requires exponent s > 0");
  if (N < 16) throw std::domain_error("moment_decay_report requires N >= 16");
  MomentDecayReport<Scalar> rep;
  rep.exponent = s;
  rep.moments = moment_sequence(m, N, cap).values;
  rep.weighted.resize(N + 1);
  for (Index n = 0; n <= N; ++n)
    rep.weighted[n] = rep.moments[n] * std::pow(Scalar(n + 1), s);
  rep.sup_weighted = rep.weighted.maxCoeff();
  auto window_mean = [&](Index lo, Index hi) {
    return rep.weighted.segment(lo, hi - lo + 1).mean();
  };
  const Scalar early = window_mean(N / 8, N / 4);
  const Scalar late = window_mean(N / 2, N);
  if (early == Scalar(0))
    rep.trend = (late == Scalar(0)) ? Scalar(0) : std::numeric_limits<Scalar>::infinity();
  else
    rep.trend = late / early;
  return rep;
}

}  // namespace dhmu

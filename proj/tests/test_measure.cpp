#include <doctest.h>

#include <cmath>
#include <vector>

#include "dhmu/measure.hpp"
#include "oracles.hpp"

using namespace dhmu;

namespace {

using M = Measure<double>;

M atom(double t, double c) { return M({{t, c}}, {}); }
M density(double a, double b, double scale) { return M({}, {{a, b, scale}}); }

// density corpus shared by the quadrature-oracle and invariant tests
const std::vector<JacobiDensity<double>> kDensityCorpus = {
    {0.0, 0.0, 1.0}, {0.0, 1.0, 1.0},  {0.0, 1.5, 1.0}, {0.0, 0.5, 1.0},
    {1.0, 1.0, 1.0}, {0.5, 0.5, 2.0},  {2.0, -0.5, 0.7},
};

std::vector<M> measure_corpus() {
  std::vector<M> out;
  for (const auto& d : kDensityCorpus) out.push_back(M({}, {d}));
  out.push_back(atom(0.5, 1.0));
  out.push_back(atom(0.9, 2.0));
  out.push_back(M({{0.0, 0.3}, {0.75, 0.25}}, {}));
  out.push_back(M({{0.5, 1.0}}, {{0.0, 1.0, 1.0}}));  // mixed
  return out;
}

}  // namespace

TEST_CASE("measure construction validates its parts") {
  CHECK_NOTHROW(M());
  CHECK_NOTHROW(atom(0.0, 1.0));
  CHECK_THROWS_AS(atom(1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(atom(-0.1, 1.0), std::domain_error);
  CHECK_THROWS_AS(atom(0.5, 0.0), std::domain_error);
  CHECK_THROWS_AS(density(-0.5, 0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(density(0.0, -1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(density(0.0, 0.0, 0.0), std::domain_error);
  const M leb = M::lebesgue();
  REQUIRE(leb.densities().size() == 1);
  CHECK(leb.densities()[0].a == 0.0);
  CHECK(leb.densities()[0].b == 0.0);
  CHECK(leb.densities()[0].scale == 1.0);
}

TEST_CASE("moment closed forms") {
  CHECK(moment(M::lebesgue(), 1) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(moment(atom(0.5, 1.0), 2) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(moment(density(0.0, 1.0, 1.0), 1) == doctest::Approx(1.0 / 6.0).epsilon(1e-13));
  CHECK(moment(M(), 7) == 0.0);
  CHECK_THROWS_AS(moment(M::lebesgue(), -1), std::domain_error);
  CHECK_THROWS_AS(moment(M::lebesgue(), kMaxMomentIndex + 1), std::length_error);
}

TEST_CASE("moment sequence tables") {
  const auto empty = moment_sequence(M(), 4);
  REQUIRE(empty.values.size() == 5);
  CHECK(empty.values.cwiseAbs().maxCoeff() == 0.0);

  const auto geo = moment_sequence(atom(0.5, 1.0), 3);
  CHECK(geo.values[0] == doctest::Approx(1.0));
  CHECK(geo.values[1] == doctest::Approx(0.5));
  CHECK(geo.values[2] == doctest::Approx(0.25));
  CHECK(geo.values[3] == doctest::Approx(0.125));

  const auto leb = moment_sequence(M::lebesgue(), 2);
  CHECK(leb.values[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(leb.values[1] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(leb.values[2] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

  CHECK_THROWS_AS(moment_sequence(M::lebesgue(), -1), std::domain_error);
  CHECK_THROWS_AS(moment_sequence(M::lebesgue(), kMaxMomentIndex + 1), std::length_error);
}

TEST_CASE("moment and moment_sequence share one arithmetic path") {
  for (const auto& m : measure_corpus()) {
    const auto seq = moment_sequence(m, 40);
    for (Index n : {0, 1, 5, 33, 40})
      CHECK(moment(m, n) == seq.values[n]);  // bitwise, not approximate
  }
}

TEST_CASE("moment sequence invariants hold across the corpus") {
  // moment_sequence validates internally; these must not throw, including a
  // long run close to the b -> -1 edge.
  for (const auto& m : measure_corpus()) CHECK_NOTHROW(moment_sequence(m, 3000));
  CHECK_NOTHROW(moment_sequence(density(0.0, -0.9, 1.0), 50000));
}

TEST_CASE("moment sequence validation rejects impossible tables") {
  MomentSequence<double> increasing;
  increasing.values.resize(2);
  increasing.values << 1.0, 2.0;
  CHECK_THROWS_AS(increasing.validate(), std::logic_error);

  MomentSequence<double> concave;
  concave.values.resize(3);
  concave.values << 1.0, 0.9, 0.1;  // 0.81 > 1.0 * 0.1
  CHECK_THROWS_AS(concave.validate(), std::logic_error);
}

TEST_CASE("closed-form moments match raw quadrature") {
  for (const auto& d : kDensityCorpus) {
    const M m({}, {d});
    for (Index n : {0, 1, 2, 7, 32}) {
      // reflected through u = 1 - t so the (1-t)^b singularity sits at u = 0,
      // where the oracle's dyadic panel boundaries are exactly representable
      const auto integrand = [&](double u) {
        return d.scale * std::pow(1.0 - u, double(n) + d.a) * std::pow(u, d.b);
      };
      const double ref = oracle::graded_integral_01(integrand);
      CHECK(moment(m, n) == doctest::Approx(ref).epsilon(1e-9));
    }
  }
}

TEST_CASE("tail mass closed forms") {
  CHECK(tail_mass(M::lebesgue(), 0.3) == doctest::Approx(0.7).epsilon(1e-14));
  CHECK(tail_mass(atom(0.5, 1.0), 0.6) == 0.0);
  CHECK(tail_mass(atom(0.5, 1.0), 0.5) == 1.0);  // closed interval at the atom
  CHECK(tail_mass(density(0.0, 1.0, 1.0), 0.5) == doctest::Approx(0.125).epsilon(1e-13));
  CHECK_THROWS_AS(tail_mass(M::lebesgue(), 1.0), std::domain_error);
  CHECK_THROWS_AS(tail_mass(M::lebesgue(), -0.2), std::domain_error);
}

TEST_CASE("tail consistency at t = 0") {
  for (const auto& m : measure_corpus()) {
    const double m0 = moment(m, 0);
    const double t0 = tail_mass(m, 0.0);
    CHECK(std::abs(t0 - m0) <= 1e-12 * std::max(1.0, m0));
  }
}

TEST_CASE("incomplete-beta tails match raw quadrature for a > 0") {
  const JacobiDensity<double> hard[] = {{1.0, 1.0, 1.0}, {0.5, 0.5, 2.0}, {2.0, -0.5, 0.7}};
  for (const auto& d : hard) {
    const M m({}, {d});
    for (double t : {0.2, 0.5, 0.8, 0.99}) {
      // reflected through u = 1 - t: the integral of scale * t^a (1-t)^b over
      // [t0, 1) becomes an integral over (0, 1-t0] with the singular factor
      // u^b at u = 0, where the oracle's dyadic grading is exact
      const double w = 1.0 - t;
      const auto refl = [&](double u) {
        if (u >= w) return 0.0;
        return d.scale * std::pow(1.0 - u, d.a) * std::pow(u, d.b);
      };
      const double ref = oracle::graded_integral_01(refl, {w});
      CHECK(tail_mass(m, t) == doctest::Approx(ref).epsilon(1e-8));
    }
  }
}

TEST_CASE("carleson ratios for the exact families") {
  // density (0, g, 1) at s = g+1 has ratio identically 1/(g+1)
  for (double g : {0.5, 1.0, 1.5}) {
    const auto rep = carleson_report(density(0.0, g, 1.0), g + 1.0);
    for (Index i = 0; i < rep.ratios.size(); ++i)
      CHECK(rep.ratios[i] == doctest::Approx(1.0 / (g + 1.0)).epsilon(1e-12));
    CHECK(rep.sup_ratio == doctest::Approx(1.0 / (g + 1.0)).epsilon(1e-12));
  }

  // Lebesgue at s = 2 on the dyadic grid: ratios are exactly 2^j
  const auto leb = carleson_report(M::lebesgue(), 2.0);
  for (Index i = 0; i < leb.grid.size(); ++i)
    CHECK(leb.ratios[i] == std::ldexp(1.0, int(i) + 1));
  CHECK(leb.sup_ratio == leb.ratios[leb.ratios.size() - 1]);

  // atom below the grid contributes nothing
  Vector<double> high(3);
  high << 0.6, 0.7, 0.8;
  const auto rep = carleson_report(atom(0.5, 1.0), 1.0, high);
  CHECK(rep.sup_ratio == 0.0);
  CHECK(rep.vanishing_trend == 0.0);
}

TEST_CASE("carleson ratios scale linearly with the measure") {
  const double lambda = 3.7;
  const M base({{0.5, 1.0}}, {{0.0, 1.0, 1.0}});
  const M scaled({{0.5, lambda}}, {{0.0, 1.0, lambda}});
  const auto r1 = carleson_report(base, 1.5);
  const auto r2 = carleson_report(scaled, 1.5);
  for (Index i = 0; i < r1.ratios.size(); ++i)
    CHECK(r2.ratios[i] == doctest::Approx(lambda * r1.ratios[i]).epsilon(1e-12));
}

TEST_CASE("carleson grid validation") {
  const M m = M::lebesgue();
  CHECK_THROWS_AS(carleson_report(m, 0.0), std::domain_error);
  CHECK_THROWS_AS(carleson_report(m, 1.0, Vector<double>()), std::domain_error);
  Vector<double> bad(2);
  bad << 0.5, 0.5;
  CHECK_THROWS_AS(carleson_report(m, 1.0, bad), std::domain_error);
  bad << 0.5, 1.0;
  CHECK_THROWS_AS(carleson_report(m, 1.0, bad), std::domain_error);
}

TEST_CASE("moment decay reports") {
  // weighted moments (n+1)/(n+2) creep up toward 1
  const auto d = moment_decay_report(density(0.0, 1.0, 1.0), 2.0, 4096);
  CHECK(d.sup_weighted <= 1.0);
  CHECK(d.sup_weighted > 0.99);
  CHECK(d.weighted[4096] == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(d.trend > 0.99);
  CHECK(d.trend < 1.01);

  // (n+1)^2 2^-n peaks at n = 2 and dies
  const auto a = moment_decay_report(atom(0.5, 1.0), 2.0, 64);
  CHECK(a.sup_weighted == doctest::Approx(2.25).epsilon(1e-12));
  CHECK(a.trend < 1e-6);

  const auto e = moment_decay_report(M(), 2.0, 64);
  CHECK(e.sup_weighted == 0.0);
  CHECK(e.trend == 0.0);

  CHECK_THROWS_AS(moment_decay_report(M::lebesgue(), 2.0, 15), std::domain_error);
  CHECK_THROWS_AS(moment_decay_report(M::lebesgue(), -1.0, 64), std::domain_error);
}

TEST_CASE("moments equal the weighted tail integral") {
  // mu_n = n * integral_0^1 t^(n-1) mu([t,1)) dt, checked by raw quadrature
  // with panel splits at atom positions
  std::vector<M> ms = {M::lebesgue(), atom(0.5, 1.0), density(0.0, 1.0, 1.0),
                       M({{0.25, 0.5}, {0.75, 0.25}}, {{0.0, 0.5, 1.0}})};
  for (const auto& m : ms) {
    std::vector<double> splits;
    for (const auto& p : m.atoms()) splits.push_back(p.position);
    for (Index n : {2, 8, 32}) {
      const auto integrand = [&](double t) {
        if (t >= 1.0) return 0.0;  // closing-panel nodes can round onto 1
        return std::pow(t, double(n - 1)) * tail_mass(m, t);
      };
      const double bridge = double(n) * oracle::graded_integral_01(integrand, splits);
      const double mu = moment(m, n);
      CHECK(std::abs(bridge - mu) <= 1e-6 * std::max(1e-30, mu));
    }
  }
}

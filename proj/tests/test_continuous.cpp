#include <doctest.h>

#include <cmath>
#include <vector>

#include "hardylab/continuous.hpp"
#include "oracles.hpp"

using namespace hardylab;
using namespace hardylab::continuous;

namespace {

using oracle::Real;

/// Piecewise-linear weight with its exact running integral.
struct LinearOracle {
  std::vector<double> grid;
  std::vector<double> values;

  Real f(Real t) const {
    std::size_t j = 1;
    while (j + 1 < grid.size() && t > grid[j]) ++j;
    const Real s = (t - grid[j - 1]) / (grid[j] - grid[j - 1]);
    return values[j - 1] + s * (values[j] - values[j - 1]);
  }
  Real cumulative(Real t) const {
    Real acc = 0;
    for (std::size_t j = 1; j < grid.size(); ++j) {
      const Real b = std::min<Real>(t, grid[j]);
      if (b <= grid[j - 1]) break;
      acc += (b - grid[j - 1]) * (values[j - 1] + f(b)) / 2;
    }
    return acc;
  }
};

WeightFamily random_step(oracle::Rng& rng, oracle::StepOracle& o, std::size_t pieces) {
  std::vector<double> b;
  double at = 0;
  for (std::size_t i = 0; i + 1 < pieces; ++i) {
    at += rng.uniform(0.05, 0.9) * (1 - at) / 2;
    b.push_back(at);
  }
  std::vector<double> l{rng.spread(1.0)};
  for (std::size_t i = 1; i < pieces; ++i) l.push_back(l.back() * rng.uniform(1.0, 2.0));
  o = {b, l};
  return make_step(b, l);
}

QuadratureConfig numeric() {
  QuadratureConfig cfg;
  cfg.force_numeric = true;
  return cfg;
}

}  // namespace

TEST_CASE("Hardy average of closed-form families") {
  const Interval unit(0, 1);
  CHECK(HardyAverage(make_constant(3), unit)(0.4) == doctest::Approx(3));
  const HardyAverage pw(make_power(2, 0.5), unit);
  CHECK(pw(0.25) == doctest::Approx(2.0 / 1.5 * 0.5).epsilon(1e-14));
  CHECK(pw.cumulative(1) == doctest::Approx(2.0 / 1.5).epsilon(1e-14));
  // g_a averages to ell t^{-a}.
  const HardyAverage g(make_extremal_g(-0.4, 2), unit);
  CHECK(g(0.3) == doctest::Approx(2 * std::pow(0.3, 0.4)).epsilon(1e-14));
  const auto law = g.power_law();
  REQUIRE(law.has_value());
  CHECK(law->exponent == doctest::Approx(0.4));
  CHECK_FALSE(HardyAverage(make_step({0.5}, {1, 2}), unit).power_law().has_value());
  // Shifted interval: F is measured from lo.
  const HardyAverage shifted(make_constant(5), Interval(2, 3));
  CHECK(shifted(2.5) == doctest::Approx(5));
  CHECK(shifted.cumulative(3) == doctest::Approx(5));
}

TEST_CASE("Hardy average of steps and tables matches the oracles") {
  oracle::Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    oracle::StepOracle o;
    const auto w = random_step(rng, o, 2 + rng.index(6));
    const HardyAverage F(w, Interval(0, 1));
    for (double t : {1e-4, 0.01, 0.2, 0.5, 0.77, 1.0}) {
      CHECK(F(t) == doctest::Approx(static_cast<double>(o.F(t))).epsilon(1e-13));
    }
  }
  const LinearOracle lin{{0, 0.1, 0.4, 1}, {1, 2, 0.5, 3}};
  const HardyAverage F(make_tabulated(lin.grid, lin.values), Interval(0, 1));
  for (double t : {0.05, 0.1, 0.3, 0.9, 1.0}) {
    CHECK(F.cumulative(t) == doctest::Approx(static_cast<double>(lin.cumulative(t))).epsilon(1e-13));
  }
}

TEST_CASE("integrate_product: closed forms, steps and quadrature agree") {
  oracle::Rng rng(11);
  for (int trial = 0; trial < 12; ++trial) {
    oracle::StepOracle o;
    const auto w = random_step(rng, o, 2 + rng.index(5));
    const HardyAverage F(w, Interval(0, 1));
    const double alpha = rng.uniform(-3, 3);
    const double beta = rng.uniform(-2, 2);
    const auto got = integrate_product(F, 1.0, alpha, beta).value;
    const auto want = o.integral(alpha, beta);
    CHECK(std::abs(got - want) <= 1e-9 * std::abs(want));
  }
  // Families with power-law closed forms against forced quadrature.
  const std::vector<WeightFamily> families{make_constant(0.7), make_power(1.5, -0.3),
                                           make_power(0.5, 2.0), make_extremal_g(-0.2, 1.3)};
  for (const auto& w : families) {
    const HardyAverage F(w, Interval(0, 1));
    for (auto [alpha, beta] : {std::pair{-0.4, 0.0}, {0.0, -0.3}, {-1.0, 0.8}, {2.0, 1.0}}) {
      const auto closed = integrate_product(F, 1.0, alpha, beta);
      const auto quad = integrate_product(F, 1.0, alpha, beta, numeric());
      CHECK(closed.closed_form);
      CHECK_FALSE(quad.closed_form);
      CHECK(quad.value == doctest::Approx(closed.value).epsilon(1e-7));
    }
  }
}

TEST_CASE("tabulated integrals match the substitution oracle") {
  const LinearOracle lin{{0, 0.2, 0.5, 1}, {0.5, 1.5, 1.0, 2.5}};
  const HardyAverage F(make_tabulated(lin.grid, lin.values), Interval(0, 1));
  const auto want = oracle::integrate01(
      [&](Real t) { return std::pow(lin.cumulative(t) / t, Real(-1.5)) * std::pow(lin.f(t), Real(0.5)); },
      1, 400000);
  CHECK(integrate_product(F, 1.0, -1.5, 0.5).value == doctest::Approx(static_cast<double>(want)).epsilon(1e-7));
}

TEST_CASE("checker examples") {
  const Interval unit(0, 1);
  auto r = check_theorem_1(make_constant(1), unit, Exponents(1, 1));
  CHECK(r.lhs == doctest::Approx(1));
  CHECK(r.rhs == doctest::Approx(1.5));
  CHECK(r.margin == doctest::Approx(0.5));
  CHECK(r.satisfied);
  CHECK(lookup(r.diagnostics, "ell") == doctest::Approx(1));
  CHECK(lookup(r.diagnostics, "correction") == doctest::Approx(0.5));

  // Constant weight: Hardy is strict by the factor (p/(p-1))^p.
  r = check_hardy_continuous(make_constant(2), unit, 3);
  CHECK(r.rhs / r.lhs == doctest::Approx(std::pow(1.5, 3)));
  CHECK_THROWS_AS(check_hardy_continuous(make_constant(2), unit, 1.0), DomainError);
  CHECK_THROWS_AS(check_theorem_D(make_constant(2), unit, 0.0), DomainError);

  // g_a: both sides in closed form.
  const double a = -0.3, ell = 2, p = 2, q = 1.5;
  r = check_theorem_E(make_extremal_g(a, ell), unit, Exponents(p, q));
  const double lhs = std::pow(ell, -p) / (1 + a * p);
  CHECK(r.lhs == doctest::Approx(lhs).epsilon(1e-13));
  CHECK(r.rhs == doctest::Approx(std::pow((p + 1) / p, q) * std::pow(1 - a, -q) * lhs).epsilon(1e-13));
  r = check_theorem_D(make_extremal_g(a, ell), unit, p);
  CHECK(r.lhs / r.rhs == doctest::Approx(std::pow((1 - a) * p / (p + 1), p)).epsilon(1e-13));
}

TEST_CASE("property: continuous checkers hold on random steps") {
  oracle::Rng rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    oracle::StepOracle o;
    const auto w = random_step(rng, o, 1 + rng.index(8));
    const double p = rng.uniform(1.05, 4);
    const double q = rng.uniform(0.1, p);
    const Interval unit(0, 1);
    CHECK(check_hardy_continuous(w, unit, p).satisfied);
    CHECK(check_theorem_D(w, unit, p).satisfied);
    CHECK(check_theorem_E(w, unit, Exponents(p, q)).satisfied);
    const auto t1 = check_theorem_1(w, unit, Exponents(p, q));
    CHECK(t1.satisfied);
    // The correction only tightens the bound.
    CHECK(t1.rhs <= check_theorem_E(w, unit, Exponents(p, q)).rhs);
  }
}

TEST_CASE("Lemma A identity") {
  const std::vector<WeightFamily> psis{make_power(1, 1), make_constant(1.7), make_power(1, -0.25),
                                       make_extremal_phi(0.5, 0.1)};
  for (const auto& psi : psis) {
    for (double u : {0.1, 0.5, 1.0}) {
      for (double a : {1.5, 2.0, 3.0}) {
        const auto r = check_lemmaA_identity(psi, a, u);
        CHECK(r.satisfied);
        CHECK(std::abs(r.lhs - r.rhs) <= 1e-10 * std::abs(r.rhs));
      }
    }
  }
  CHECK_THROWS_AS(check_lemmaA_identity(make_constant(1), 1.0, 0.5), DomainError);
  CHECK_THROWS_AS(check_lemmaA_identity(make_constant(1), 2.0, 1.5), DomainError);
  CHECK_THROWS_AS(check_lemmaA_identity(make_step({0.5}, {1, 2}), 2.0, 1.0), DomainError);
}

TEST_CASE("dyadic discretization approaches the continuous inequality") {
  const auto w = make_power(1, 0.5);
  const Exponents e(0.3, 0.2);
  const auto cont = check_theorem_1(w, Interval(0, 1), e);
  double prev_l = INFINITY, prev_r = INFINITY;
  for (int k = 4; k <= 12; k += 2) {
    const auto b = riemann_bridge(w, k, e);
    CHECK(b.cell_means.size() == (std::size_t{1} << k));
    CHECK(b.ell == doctest::Approx(1.0 / 1.5).epsilon(1e-12));
    CHECK(b.lhs <= b.rhs);
    const double gl = std::abs(b.lhs - cont.lhs);
    const double gr = std::abs(b.rhs - cont.rhs);
    CHECK(gl < prev_l);
    CHECK(gr < prev_r);
    prev_l = gl;
    prev_r = gr;
  }
  CHECK(prev_l <= 1e-3);
  CHECK(prev_r <= 1e-3);
  CHECK_THROWS_AS(riemann_bridge(w, 25, e), DomainError);
}

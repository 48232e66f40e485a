#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "hardylab/harness.hpp"
#include "hardylab/quadrature.hpp"
#include "oracles.hpp"

using namespace hardylab;
using namespace hardylab::quadrature;

namespace {

double apply(const Mesh& m, double (*f)(double)) {
  long double s = 0;
  for (std::size_t i = 0; i < m.nodes.size(); ++i) s += m.weights[i] * f(m.nodes[i]);
  return static_cast<double>(s);
}

double square(double t) { return t * t; }
double inv_sqrt(double t) { return 1.0 / std::sqrt(t); }

BasePair identity_bases() {
  return [](double t) { return std::pair<double, double>{t, 1.0}; };
}

}  // namespace

TEST_CASE("refine oracle examples") {
  auto r = harness::refine_oracle(0.5, 0.5);
  CHECK(r.value == 0.5);
  CHECK(r.error_estimate == 0.0);

  // Simpson on t^2 is exact at every resolution.
  QuadratureConfig cfg;
  const auto coarse = apply(build_mesh(0, 1, false, 4, cfg), square);
  const auto fine = apply(build_mesh(0, 1, false, 8, cfg), square);
  r = harness::refine_oracle(coarse, fine);
  CHECK(std::abs(r.value - 1.0 / 3) <= 1e-12);
  CHECK(r.error_estimate <= 1e-15);

  // Midpoint rule: Richardson with factor 3.
  r = refine_oracle(1.0, 1.3, 2);
  CHECK(r.value == doctest::Approx(1.4).epsilon(1e-15));
  CHECK(r.error_estimate == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(rule_order(QuadratureRule::kSimpson) == 4);
  CHECK(rule_order(QuadratureRule::kMidpoint) == 2);
}

TEST_CASE("error estimate bounds the true error for a singular integrand") {
  QuadratureConfig cfg;
  cfg.bands = 12;
  cfg.cells_per_band = 4;
  // int_{r^bands}^1 t^{-1/2} has the exact value 2 (1 - r^{bands/2}).
  const double cut = std::pow(cfg.grading_ratio, cfg.bands);
  const double exact = 2.0 * (1.0 - std::sqrt(cut));
  const auto coarse = apply(build_mesh(0, 1, true, 4, cfg), inv_sqrt);
  const auto fine = apply(build_mesh(0, 1, true, 8, cfg), inv_sqrt);
  const auto r = refine_oracle(coarse, fine, 4);
  CHECK(std::abs(fine - exact) <= 2.0 * r.error_estimate + 1e-15);
  CHECK(std::abs(r.value - exact) < std::abs(fine - exact));
}

TEST_CASE("mesh weights") {
  QuadratureConfig cfg;
  for (auto rule : {QuadratureRule::kSimpson, QuadratureRule::kMidpoint}) {
    cfg.rule = rule;
    const auto uniform = build_mesh(-1, 3, false, 7, cfg);
    const double total = std::accumulate(uniform.weights.begin(), uniform.weights.end(), 0.0);
    CHECK(total == doctest::Approx(4.0).epsilon(1e-14));
    for (double x : uniform.nodes) {
      CHECK(x >= -1);
      CHECK(x <= 3);
    }
    cfg.bands = 10;
    const auto graded = build_mesh(0, 2, true, 3, cfg);
    const double g = std::accumulate(graded.weights.begin(), graded.weights.end(), 0.0);
    CHECK(g == doctest::Approx(2.0 * (1.0 - std::pow(0.5, 10))).epsilon(1e-14));
    for (double w : graded.weights) CHECK(w > 0);
  }
  CHECK_THROWS_AS(build_mesh(1, 1, false, 4, cfg), DomainError);
  CHECK_THROWS_AS(build_mesh(0, 1, false, 0, cfg), DomainError);
  cfg.grading_ratio = 1.5;
  CHECK_THROWS_AS(build_mesh(0, 1, true, 4, cfg), DomainError);
}

TEST_CASE("integrate_bases against closed forms") {
  QuadratureConfig cfg;
  // u = t, v = 1: int_0^1 t^e = 1/(e+1), including integrable singularities.
  for (double e : {-0.9, -0.5, 0.0, 0.3, 2.0, 5.5}) {
    const auto r = integrate_bases(identity_bases(), e, 0.0, 0.0, 1.0, {}, cfg);
    CHECK(r.value == doctest::Approx(1.0 / (e + 1)).epsilon(1e-9));
    CHECK(r.error_estimate <= cfg.refine_tol * std::abs(r.value));
  }
  // Interior breaks do not change a smooth integral.
  const std::vector<double> breaks{0.25, 0.5, 0.5, 2.0};
  const auto r = integrate_bases(identity_bases(), 1.0, 0.0, 0.0, 1.0, breaks, cfg);
  CHECK(r.value == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("integrate_bases on a jump sees one-sided limits") {
  QuadratureConfig cfg;
  const BasePair step = [](double t) { return std::pair<double, double>{t < 0.3 ? 1.0 : 4.0, 1.0}; };
  const std::vector<double> breaks{0.3};
  const auto r = integrate_bases(step, 1.0, 0.0, 0.0, 1.0, breaks, cfg);
  CHECK(r.value == doctest::Approx(0.3 + 4.0 * 0.7).epsilon(1e-12));
}

TEST_CASE("non-finite integrals are rejected") {
  QuadratureConfig cfg;
  const BasePair bad = [](double) { return std::pair<double, double>{std::nan(""), 1.0}; };
  CHECK_THROWS(integrate_bases(bad, 1.0, 0.0, 0.0, 1.0, {}, cfg));
}

TEST_CASE("property: random power laws agree with the substitution oracle") {
  oracle::Rng rng(41);
  QuadratureConfig cfg;
  for (int trial = 0; trial < 40; ++trial) {
    const double e1 = rng.uniform(-0.95, 3.0);
    const double c = rng.spread(2.0);
    const BasePair bases = [c](double t) { return std::pair<double, double>{t, c + t}; };
    const double e2 = rng.uniform(-2.0, 2.0);
    const auto got = integrate_bases(bases, e1, e2, 0.0, 1.0, {}, cfg).value;
    const auto want = oracle::integrate01(
        [&](oracle::Real t) { return std::pow(t, oracle::Real(e1)) * std::pow(c + t, oracle::Real(e2)); },
        40, 200000);
    CHECK(std::abs(got - want) <= 1e-6 * std::abs(want));
  }
}

#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "hardylab/kernels.hpp"
#include "hardylab/summation.hpp"
#include "oracles.hpp"

using namespace hardylab;
using kernels::Backend;

namespace {

long double naive_power_sum(const std::vector<double>& w, const std::vector<double>& x, double ex,
                            const std::vector<double>& y, double ey) {
  long double s = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    long double term = w[i] * std::pow(static_cast<long double>(x[i]), static_cast<long double>(ex));
    if (!y.empty()) term *= std::pow(static_cast<long double>(y[i]), static_cast<long double>(ey));
    s += term;
  }
  return s;
}

}  // namespace

TEST_CASE("compensated summation recovers cancelled digits") {
  CompensatedSum s;
  s += 1.0;
  for (int i = 0; i < 10; ++i) s += 1e-16;
  s += -1.0;
  CHECK(s.value() == doctest::Approx(1e-15).epsilon(1e-12));

  const TwoSum t = two_sum(1e16, 1.0);
  CHECK(t.sum + t.err == 1e16 + 1.0);
  CHECK(t.err == 1.0);
}

TEST_CASE("backend names and parsing") {
  CHECK(kernels::parse_backend("scalar") == Backend::kScalar);
  CHECK(kernels::backend_available(Backend::kScalar));
  CHECK_THROWS_AS(kernels::parse_backend("sse9"), std::invalid_argument);
  CHECK(kernels::backend_name(Backend::kScalar) == "scalar");
  CHECK_FALSE(kernels::available_backends().empty());
}

TEST_CASE("scalar power sums match a long double reference") {
  oracle::Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng.index(300);
    const auto w = rng.positives(n, 3.0);
    const auto x = rng.positives(n, 6.0);
    const auto y = rng.positives(n, 6.0);
    const double ex = rng.uniform(-4.0, 4.0);
    const double ey = rng.uniform(-4.0, 4.0);
    const long double ref = naive_power_sum(w, x, ex, y, ey);
    const double got = kernels::weighted_power_sum(Backend::kScalar, w, x, ex, y, ey);
    CHECK(std::abs(got - ref) <= 1e-13L * std::abs(ref));
  }
}

TEST_CASE("every available backend agrees with the scalar kernel") {
  oracle::Rng rng(5);
  for (Backend b : kernels::available_backends()) {
    CAPTURE(kernels::backend_name(b));
    for (int trial = 0; trial < 300; ++trial) {
      // Sizes cover empty tails, partial vectors and long runs.
      const std::size_t n = rng.index(67);
      const auto w = rng.positives(n, 2.0);
      const auto x = rng.positives(n, 20.0);
      const auto y = rng.positives(n, 20.0);
      const double ex = rng.uniform(-6.0, 6.0);
      const double ey = trial % 3 == 0 ? 0.0 : rng.uniform(-6.0, 6.0);
      const std::vector<double> none;
      const double ref = kernels::weighted_power_sum(Backend::kScalar, w, x, ex, trial % 2 ? y : none, ey);
      const double got = kernels::weighted_power_sum(b, w, x, ex, trial % 2 ? y : none, ey);
      if (std::isinf(ref)) {
        CHECK(got == ref);
      } else {
        CHECK(std::abs(got - ref) <= 1e-13 * std::abs(ref) + 1e-300);
      }
    }
  }
}

TEST_CASE("edge lanes fall back to the scalar formula") {
  const std::vector<double> w{1.0, 1.0, 1.0, 1.0, 1.0};
  const std::vector<double> x{0.0, std::numeric_limits<double>::denorm_min(), 1e300, 1.0, 2.0};
  for (Backend b : kernels::available_backends()) {
    const double ref = kernels::weighted_power_sum(Backend::kScalar, w, x, 0.5, {}, 0.0);
    const double got = kernels::weighted_power_sum(b, w, x, 0.5, {}, 0.0);
    CHECK(got == doctest::Approx(ref).epsilon(1e-13));
    // x^-1 at zero is +inf in every backend.
    CHECK(std::isinf(kernels::weighted_power_sum(b, w, x, -1.0, {}, 0.0)));
  }
}

TEST_CASE("vector exp and log track libm") {
  oracle::Rng rng(9);
  std::vector<double> in(1001);
  std::vector<double> out(in.size());
  for (Backend b : kernels::available_backends()) {
    for (double& v : in) v = rng.uniform(-700.0, 700.0);
    kernels::exp_array(b, in, out);
    for (std::size_t i = 0; i < in.size(); ++i) {
      CHECK(std::abs(out[i] - std::exp(in[i])) <= 4e-16 * std::exp(in[i]));
    }
    for (double& v : in) v = std::exp(rng.uniform(-700.0, 700.0));
    kernels::log_array(b, in, out);
    for (std::size_t i = 0; i < in.size(); ++i) {
      CHECK(std::abs(out[i] - std::log(in[i])) <= 4e-16 * std::max(1.0, std::abs(std::log(in[i]))));
    }
  }
}

TEST_CASE("active backend can be switched") {
  const Backend saved = kernels::active_backend();
  kernels::set_active_backend(Backend::kScalar);
  CHECK(kernels::active_backend() == Backend::kScalar);
  kernels::set_active_backend(saved);
  if (!kernels::backend_available(Backend::kAvx2)) {
    CHECK_THROWS_AS(kernels::set_active_backend(Backend::kAvx2), std::invalid_argument);
  }
}

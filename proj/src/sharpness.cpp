#include "hardylab/sharpness.hpp"

#include <cmath>
#include <sstream>

#include "hardylab/continuous.hpp"

namespace hardylab::sharpness {

namespace {

void require_extremal_parameter(double a, const Exponents& e) {
  if (!(a > -1.0 / e.p() && a < 0.0) || 1.0 + a * e.p() <= 0.0) {
    throw DomainError("extremal parameter a must lie in (-1/p, 0)");
  }
}

void require_ell(double ell) {
  if (!(ell > 0.0) || !std::isfinite(ell)) throw DomainError("ell must be positive");
}

}  // namespace

double L_a_closed_form(double a, const Exponents& e, double ell) {
  require_extremal_parameter(a, e);
  require_ell(ell);
  const double p = e.p();
  const double q = e.q();
  return std::pow(ell, -p) * (1.0 - std::pow(1.0 - a, -q) * std::pow((p + 1.0) / p, q)) /
         (1.0 + a * p);
}

double L_a_limit(const Exponents& e, double ell) {
  require_ell(ell);
  return -(e.q() / (e.p() + 1.0)) * std::pow(ell, -e.p());
}

double L_a_quadrature(double a, const Exponents& e, double ell, const QuadratureConfig& cfg) {
  require_extremal_parameter(a, e);
  QuadratureConfig numeric = cfg;
  numeric.force_numeric = true;
  const continuous::HardyAverage F(make_extremal_g(a, ell), Interval(0.0, 1.0));
  const double p = e.p();
  const double q = e.q();
  const double first = continuous::integrate_product(F, 1.0, -p, 0.0, numeric).value;
  const double second = continuous::integrate_product(F, 1.0, -p + q, -q, numeric).value;
  return first - std::pow((p + 1.0) / p, q) * second;
}

SharpnessSweep sharpness_sweep_theorem1(const Exponents& e, double ell, const SweepOptions& opts) {
  if (opts.steps < 3) throw DomainError("a sharpness sweep needs at least 3 steps");
  const double p = e.p();
  const double delta0 = opts.delta0 > 0.0 ? opts.delta0 : 0.5 / p;
  if (delta0 >= 1.0 / p) throw DomainError("initial offset must be below 1/p");

  SharpnessSweep sweep;
  sweep.limit = L_a_limit(e, ell);
  sweep.tolerance = opts.tolerance;
  for (int j = 0; j < opts.steps; ++j) {
    const double a = -1.0 / p + std::ldexp(delta0, -j);
    const double value = L_a_closed_form(a, e, ell);
    sweep.parameters.push_back(a);
    sweep.observed.push_back(value);
    if (opts.cross_check) {
      const double numeric = L_a_quadrature(a, e, ell);
      sweep.cross_check.push_back(numeric);
      if (std::abs(numeric - value) > opts.cross_check_tol * std::abs(value)) {
        std::ostringstream os;
        os << "quadrature L_a = " << numeric << " disagrees with closed form " << value
           << " at a = " << a;
        throw ConvergenceError(os.str());
      }
    }
  }
  const double deviation = std::abs(sweep.observed.back() - sweep.limit);
  sweep.converged = deviation <= opts.tolerance;
  if (!sweep.converged) {
    std::ostringstream os;
    os << "L_a sweep ended " << deviation << " from its limit (tolerance " << opts.tolerance << ")";
    throw ConvergenceError(os.str());
  }
  return sweep;
}

double G_function(double x, double c, const Exponents& e) {
  const double p = e.p();
  const double q = e.q();
  const double x0 = c / (p + 1.0);
  if (!(c > 0.0)) throw DomainError("G needs c > 0");
  if (!(x > x0)) throw DomainError("G is defined for x > c/(p+1)");
  if (p == q) return x0;
  const double r = q / p;
  return x - std::pow(x - x0, r) * std::pow(x, 1.0 - r);
}

double G_derivative(double x, double c, const Exponents& e) {
  const double x0 = c / (e.p() + 1.0);
  if (!(c > 0.0)) throw DomainError("G needs c > 0");
  if (!(x > x0)) throw DomainError("G is defined for x > c/(p+1)");
  return H_function(1.0 - x0 / x, e);
}

double G_limit(double c, const Exponents& e) {
  if (!(c > 0.0)) throw DomainError("G needs c > 0");
  return e.q() * c / (e.p() * (e.p() + 1.0));
}

double H_function(double t, const Exponents& e) {
  if (!(t > 0.0 && t <= 1.0)) throw DomainError("H is defined on (0, 1]");
  if (e.p() == e.q()) return 0.0;
  const double r = e.q() / e.p();
  if (t == 1.0) return 0.0;
  return 1.0 - (1.0 - r) * std::pow(t, r) - r * std::pow(t, r - 1.0);
}

double H_derivative(double t, const Exponents& e) {
  if (!(t > 0.0 && t <= 1.0)) throw DomainError("H is defined on (0, 1]");
  const double r = e.q() / e.p();
  return -std::pow(t, r - 2.0) * (1.0 - r) * r * (t - 1.0);
}

}  // namespace hardylab::sharpness

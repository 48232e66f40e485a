#include "hardylab/muckenhoupt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "hardylab/continuous.hpp"

namespace hardylab::muckenhoupt {

namespace {

constexpr int kMaxBisection = 400;

void require_q(double q_exp) {
  if (!(q_exp > 1.0) || !std::isfinite(q_exp)) throw DomainError("q must exceed 1");
}

void require_t(double t) {
  if (!(t > 0.0 && t <= 1.0)) throw DomainError("t must lie in (0, 1]");
}

// Log of the p0 map written in the gap s = q - p, which stays resolvable
// when p0 is within rounding of q.
double log_gap_map(double gap, double q_exp, double M) {
  return std::log(gap / (q_exp - 1.0)) + std::log(M * (q_exp - gap)) / (q_exp - 1.0);
}

double bracket_constant(double p, const MuckenhouptParams& params, const TheoremConstants& k) {
  const double q = params.q_exp;
  const double r = (p - 1.0) / (q - 1.0);
  return params.c * (q / p) * r * r / k.Kprime;
}

void require_hypothesis(const WeightFamily& phi, const MuckenhouptParams& params,
                        const ToleranceConfig& tol, double& constant_out) {
  if (!is_nondecreasing(phi)) throw DomainError("phi must be nondecreasing");
  constant_out = muckenhoupt_constant(phi, params.q_exp, default_t_grid(), tol.quadrature).constant;
  if (constant_out > params.M * (1.0 + tol.rel_tol)) {
    std::ostringstream os;
    os << "phi has condition constant " << constant_out << " > M = " << params.M;
    throw DomainError(os.str());
  }
}

double effective_tol(const ToleranceConfig& tol, bool numeric) {
  return numeric ? std::max(tol.rel_tol, tol.quadrature.refine_tol) : tol.rel_tol;
}

}  // namespace

double p0_residual(double p, double q_exp, double M) {
  return (q_exp - p) / (q_exp - 1.0) * std::pow(M * p, 1.0 / (q_exp - 1.0)) - 1.0;
}

double p0_residual_gap(double gap, double q_exp, double M) {
  return std::expm1(log_gap_map(gap, q_exp, M));
}

P0Solution solve_p0(double q_exp, double M, double tol) {
  require_q(q_exp);
  if (!(M >= 1.0) || !std::isfinite(M)) throw DomainError("M must be at least 1");
  if (!(tol > 0.0)) throw DomainError("solver tolerance must be positive");
  const double width = q_exp - 1.0;
  if (M == 1.0) return {1.0, width, p0_residual_gap(width, q_exp, M), 0};

  // The map increases in the gap; bracket the root from below in decades.
  double hi = width;
  double lo = width;
  while (log_gap_map(lo, q_exp, M) >= 0.0) {
    lo *= 1e-8;
    if (!(lo >= std::numeric_limits<double>::min())) {
      throw ConvergenceError("p0 lies closer to q than the smallest normal double");
    }
  }
  P0Solution sol;
  for (int it = 1; it <= kMaxBisection; ++it) {
    // Geometric midpoint while the bracket spans decades.
    const double mid = hi > 4.0 * lo ? std::sqrt(lo) * std::sqrt(hi) : 0.5 * (lo + hi);
    sol.gap = mid;
    sol.p0 = q_exp - mid;
    sol.iterations = it;
    sol.residual = p0_residual_gap(mid, q_exp, M);
    if (std::abs(sol.residual) <= tol || mid == lo || mid == hi) break;
    if (log_gap_map(mid, q_exp, M) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return sol;
}

MuckenhouptParams make_params(double q_exp, double M, double tol) {
  const P0Solution sol = solve_p0(q_exp, M, tol);
  return {q_exp, M, std::pow(M, 1.0 / (q_exp - 1.0)), sol.p0, sol.residual};
}

TheoremConstants theorem_constants(double p, const MuckenhouptParams& params) {
  const double q = params.q_exp;
  if (!(p > params.p0) || !(p <= q)) {
    std::ostringstream os;
    os << "p = " << p << " lies outside (p0, q] = (" << params.p0 << ", " << q << "]";
    throw DomainError(os.str());
  }
  const double root = std::pow(p, 1.0 / (q - 1.0));
  const double gap = (q - p) / (q - 1.0);
  TheoremConstants k{1.0 - params.c * root * gap, 1.0 / root - params.c * gap};
  if (!(k.K > 0.0) || !(k.Kprime > 0.0)) throw DomainError("K vanishes: p is not above p0");
  return k;
}

double condition_at(const WeightFamily& phi, double q_exp, double t, const QuadratureConfig& cfg) {
  require_q(q_exp);
  require_t(t);
  const Interval iv(0.0, t);
  const double mean = continuous::integrate(phi, iv, 1.0, cfg) / t;
  const double dual = continuous::integrate(phi, iv, -1.0 / (q_exp - 1.0), cfg) / t;
  return mean * std::pow(dual, q_exp - 1.0);
}

std::vector<double> default_t_grid() {
  constexpr int kPoints = 256;
  std::vector<double> grid(kPoints);
  for (int j = 0; j < kPoints; ++j) {
    grid[j] = std::pow(10.0, -6.0 * (kPoints - 1 - j) / (kPoints - 1));
  }
  grid.back() = 1.0;
  return grid;
}

ConditionProfile muckenhoupt_constant(const WeightFamily& phi, double q_exp,
                                      const std::vector<double>& t_grid,
                                      const QuadratureConfig& cfg) {
  if (t_grid.empty()) throw DomainError("condition profile needs a nonempty t grid");
  ConditionProfile out;
  out.t = t_grid;
  out.values.reserve(t_grid.size());
  for (double t : t_grid) {
    out.values.push_back(condition_at(phi, q_exp, t, cfg));
    out.constant = std::max(out.constant, out.values.back());
  }
  return out;
}

double phi_a_constant(double q_exp, double a) {
  require_q(q_exp);
  if (!(a > 0.0 && a < q_exp - 1.0)) throw DomainError("phi_a needs 0 < a < q - 1");
  return std::pow((q_exp - 1.0) / (q_exp - 1.0 - a), q_exp - 1.0) / (a + 1.0);
}

double phi_a_c(double q_exp, double a) {
  require_q(q_exp);
  if (!(a > 0.0 && a < q_exp - 1.0)) throw DomainError("phi_a needs 0 < a < q - 1");
  return (q_exp - 1.0) / (q_exp - 1.0 - a) * std::pow(1.0 + a, -1.0 / (q_exp - 1.0));
}

double g_y(double x, double y, double p, double q_exp) {
  if (!(q_exp > p && p > 1.0)) throw DomainError("g_y needs q > p > 1");
  return (q_exp - 1.0) / (q_exp - p) * y * std::pow(x, (q_exp - p) / (p - 1.0)) -
         std::pow(x, (q_exp - 1.0) / (p - 1.0));
}

bool check_gy_monotone(double y, double p, double q_exp, const std::vector<double>& x_grid) {
  if (!(y > 0.0)) throw DomainError("g_y needs y > 0");
  if (x_grid.empty() || !std::is_sorted(x_grid.begin(), x_grid.end()) || x_grid.front() < y) {
    throw DomainError("x grid must be sorted with every point >= y");
  }
  double prev = g_y(x_grid.front(), y, p, q_exp);
  for (std::size_t i = 1; i < x_grid.size(); ++i) {
    const double x = x_grid[i];
    const double cur = g_y(x, y, p, q_exp);
    // Rounding allowance relative to the two terms that cancel.
    const double scale = std::pow(x, (q_exp - 1.0) / (p - 1.0));
    if (cur > prev + 1e-12 * scale) return false;
    prev = cur;
  }
  return true;
}

InequalityReport check_theorem_3(const WeightFamily& phi, double p,
                                 const MuckenhouptParams& params, double t,
                                 const ToleranceConfig& tol) {
  require_t(t);
  const TheoremConstants k = theorem_constants(p, params);
  double constant = 0.0;
  require_hypothesis(phi, params, tol, constant);

  const double q = params.q_exp;
  const double ep = -1.0 / (p - 1.0);
  const continuous::HardyAverage F(phi, Interval(0.0, t));
  const auto integral = continuous::integrate_product(F, t, ep, 0.0, tol.quadrature);
  const double lhs = integral.value / t;
  const double Ft = F(t);
  const double rhs = std::pow(Ft, ep) * bracket_constant(p, params, k);

  InequalityReport r = make_report("theorem3", Relation::kLessEqual, lhs, rhs,
                                   effective_tol(tol, !integral.closed_form),
                                   {{"p", p}, {"q", q}, {"M", params.M}, {"t", t}});
  r.diagnostics = {{"K", k.K},   {"Kprime", k.Kprime}, {"c", params.c},
                   {"p0", params.p0}, {"condition_constant", constant}};
  if (p < q) {
    // A1 of the proof and the bound it satisfies before K is factored out.
    const double mixed =
        continuous::integrate_product(F, t, ep + 1.0 / (q - 1.0), -1.0 / (q - 1.0), tol.quadrature)
            .value;
    const double A1 = (q - 1.0) / (q - p) * mixed;
    const double A1_bound = params.c * integral.value +
                            (p - 1.0) / (q - p) * std::pow(params.M, 1.0 / (p - 1.0)) /
                                std::pow(params.c, (q - p) / (p - 1.0)) * t * std::pow(Ft, ep);
    r.diagnostics.emplace_back("A1", A1);
    r.diagnostics.emplace_back("A1_bound", A1_bound);
  }
  return r;
}

InequalityReport check_corollary(const WeightFamily& phi, double p,
                                 const MuckenhouptParams& params, double t,
                                 const ToleranceConfig& tol) {
  require_t(t);
  const TheoremConstants k = theorem_constants(p, params);
  double constant = 0.0;
  require_hypothesis(phi, params, tol, constant);

  const continuous::HardyAverage F(phi, Interval(0.0, t));
  const auto dual = continuous::integrate_product(F, t, 0.0, -1.0 / (p - 1.0), tol.quadrature);
  const double mean = F.cumulative(t) / t;
  const double lhs = std::pow(dual.value / t, p - 1.0) * mean;
  const double rhs = std::pow(bracket_constant(p, params, k), p - 1.0);
  InequalityReport r = make_report("corollary", Relation::kLessEqual, lhs, rhs,
                                   effective_tol(tol, !dual.closed_form),
                                   {{"p", p}, {"q", params.q_exp}, {"M", params.M}, {"t", t}});
  r.diagnostics = {{"K", k.K}, {"Kprime", k.Kprime}, {"condition_constant", constant}};
  return r;
}

InequalityReport check_power_bound(const WeightFamily& phi, double p,
                                   const MuckenhouptParams& params, double t,
                                   const ToleranceConfig& tol) {
  require_t(t);
  const double q = params.q_exp;
  if (!(p > 1.0 && p <= q)) throw DomainError("power bound needs 1 < p <= q");
  const continuous::HardyAverage F(phi, Interval(0.0, t));
  const auto dual = continuous::integrate_product(F, t, 0.0, -1.0 / (q - 1.0), tol.quadrature);
  const double lhs = std::pow(dual.value / t, (q - 1.0) / (p - 1.0));
  const double rhs =
      std::pow(params.M, 1.0 / (p - 1.0)) * std::pow(F.cumulative(t) / t, -1.0 / (p - 1.0));
  return make_report("power-bound", Relation::kLessEqual, lhs, rhs,
                     effective_tol(tol, !dual.closed_form),
                     {{"p", p}, {"q", q}, {"M", params.M}, {"t", t}});
}

double sharpness_ratio(double p, double q_exp, double a) {
  require_q(q_exp);
  if (!(p > 1.0 && p <= q_exp)) throw DomainError("sharpness ratio needs 1 < p <= q");
  if (!(a > 0.0 && a < p - 1.0)) throw DomainError("sharpness ratio needs 0 < a < p - 1");
  const double c_a = phi_a_c(q_exp, a);
  const double Kprime =
      std::pow(p, -1.0 / (q_exp - 1.0)) - c_a * (q_exp - p) / (q_exp - 1.0);
  if (!(Kprime > 0.0)) throw DomainError("K' <= 0: p is not above p0(q, M(q, a))");
  const double r = (p - 1.0) / (q_exp - 1.0);
  return Kprime * (p - 1.0) / ((p - 1.0) - a) / (c_a * (q_exp / p) * r * r);
}

sharpness::SharpnessSweep sharpness_t1_sweep(double p, double q_exp,
                                             const std::vector<double>& a_values,
                                             double tolerance) {
  if (a_values.size() < 2) throw DomainError("sweep needs at least two a values");
  if (std::adjacent_find(a_values.begin(), a_values.end(),
                         [](double x, double y) { return !(x < y); }) != a_values.end()) {
    throw DomainError("a values must increase toward p - 1");
  }
  sharpness::SharpnessSweep sweep;
  sweep.limit = 1.0;
  sweep.tolerance = tolerance;
  for (double a : a_values) {
    sweep.parameters.push_back(a);
    sweep.observed.push_back(sharpness_ratio(p, q_exp, a));
  }
  const double deviation = std::abs(sweep.observed.back() - 1.0);
  sweep.converged = deviation <= tolerance;
  if (!sweep.converged) {
    std::ostringstream os;
    os << "R(a) ended " << deviation << " from 1 (tolerance " << tolerance << ")";
    throw ConvergenceError(os.str());
  }
  return sweep;
}

std::vector<double> default_a_schedule(double p, int steps) {
  if (!(p > 1.0)) throw DomainError("the phi_a schedule needs p > 1");
  if (steps < 2) throw DomainError("the phi_a schedule needs at least two steps");
  std::vector<double> out;
  for (int j = 0; j < steps; ++j) out.push_back((p - 1.0) * (1.0 - std::ldexp(0.1, -j)));
  return out;
}

}  // namespace hardylab::muckenhoupt

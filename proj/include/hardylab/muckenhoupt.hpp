// Muckenhoupt-type condition on (0, 1], the critical exponent p0 and the
// reverse-Hoelder style bounds that follow from the sharpened Hardy
// inequality.
#pragma once

#include <vector>

#include "hardylab/core.hpp"
#include "hardylab/sharpness.hpp"

namespace hardylab::muckenhoupt {

struct P0Solution {
  /// q - gap; equals q when the gap is below the spacing of doubles there.
  double p0 = 1.0;
  /// q - p0, solved for directly.
  double gap = 0.0;
  /// Map minus one, evaluated at the gap.
  double residual = 0.0;
  int iterations = 0;
};

/// Root in [1, q) of ((q-p)/(q-1)) (M p)^{1/(q-1)} = 1, by bisection on the
/// gap q - p (geometric while the bracket spans decades). Returns exactly 1
/// when M = 1; ConvergenceError if the gap underflows.
P0Solution solve_p0(double q_exp, double M, double tol = 1e-12);

/// ((q-p)/(q-1)) (M p)^{1/(q-1)} - 1.
double p0_residual(double p, double q_exp, double M);

/// The same residual written in the gap s = q - p.
double p0_residual_gap(double gap, double q_exp, double M);

struct MuckenhouptParams {
  double q_exp;
  double M;
  double c;   ///< M^{1/(q-1)}
  double p0;  ///< critical exponent
  double p0_residual;
};

/// Validates q > 1, M >= 1 and solves for p0.
MuckenhouptParams make_params(double q_exp, double M, double tol = 1e-12);

struct TheoremConstants {
  double K;       ///< 1 - c p^{1/(q-1)} (q-p)/(q-1)
  double Kprime;  ///< 1/p^{1/(q-1)} - c (q-p)/(q-1) = K / p^{1/(q-1)}
};

/// Requires p in (p0, q]; DomainError otherwise or when K <= 0.
TheoremConstants theorem_constants(double p, const MuckenhouptParams& params);

/// (1/t int_0^t phi) (1/t int_0^t phi^{-1/(q-1)})^{q-1}.
double condition_at(const WeightFamily& phi, double q_exp, double t,
                    const QuadratureConfig& cfg = {});

struct ConditionProfile {
  /// Max over the grid: a lower bound for the supremum over (0, 1].
  double constant = 0.0;
  std::vector<double> t;
  std::vector<double> values;
};

/// 256 geometric points from 1e-6 to 1.
std::vector<double> default_t_grid();

ConditionProfile muckenhoupt_constant(const WeightFamily& phi, double q_exp,
                                      const std::vector<double>& t_grid = default_t_grid(),
                                      const QuadratureConfig& cfg = {});

/// M(q, a) = (1/(a+1)) ((q-1)/(q-1-a))^{q-1}, the condition constant of phi_a.
double phi_a_constant(double q_exp, double a);

/// c_a = M(q, a)^{1/(q-1)}.
double phi_a_c(double q_exp, double a);

/// g_y(x) = ((q-1)/(q-p)) y x^{(q-p)/(p-1)} - x^{(q-1)/(p-1)}.
double g_y(double x, double y, double p, double q_exp);

/// True when g_y is non-increasing along the sorted grid (all x >= y).
bool check_gy_monotone(double y, double p, double q_exp, const std::vector<double>& x_grid);

/// (1/t) int_0^t F^{-1/(p-1)} <= F(t)^{-1/(p-1)} (1/K') c (q/p) ((p-1)/(q-1))^2,
/// F the Hardy average of phi from 0. First verifies that the condition
/// constant of phi on the default grid does not exceed M.
InequalityReport check_theorem_3(const WeightFamily& phi, double p,
                                 const MuckenhouptParams& params, double t,
                                 const ToleranceConfig& tol = ToleranceConfig::quadrature_path());

/// (1/t int_0^t phi^{-1/(p-1)})^{p-1} (1/t int_0^t phi)
///     <= [(1/K') c (q/p) ((p-1)/(q-1))^2]^{p-1}.
InequalityReport check_corollary(const WeightFamily& phi, double p,
                                 const MuckenhouptParams& params, double t,
                                 const ToleranceConfig& tol = ToleranceConfig::quadrature_path());

/// [1/t int phi^{-1/(q-1)}]^{(q-1)/(p-1)} <= M^{1/(p-1)} (1/t int phi)^{-1/(p-1)}.
InequalityReport check_power_bound(const WeightFamily& phi, double p,
                                   const MuckenhouptParams& params, double t,
                                   const ToleranceConfig& tol = ToleranceConfig::quadrature_path());

/// R(a) = [K'(p, q, c_a) (p-1)/((p-1)-a)] / [c_a (q/p) ((p-1)/(q-1))^2].
double sharpness_ratio(double p, double q_exp, double a);

/// Evaluates R along the given a values (approaching p - 1 from below);
/// ConvergenceError if the final |R - 1| exceeds the tolerance.
sharpness::SharpnessSweep sharpness_t1_sweep(double p, double q_exp,
                                             const std::vector<double>& a_values,
                                             double tolerance = 1e-3);

/// a_j = (p-1) - 0.1 (p-1) 2^{-j}, j < steps.
std::vector<double> default_a_schedule(double p, int steps = 12);

}  // namespace hardylab::muckenhoupt

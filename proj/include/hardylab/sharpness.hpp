// Extremal-family asymptotics for the sharpened negative-exponent Hardy
// inequality and the auxiliary functions G and H of its proof.
#pragma once

#include <vector>

#include "hardylab/core.hpp"

namespace hardylab::sharpness {

struct SharpnessSweep {
  std::vector<double> parameters;
  std::vector<double> observed;
  double limit = 0.0;
  double tolerance = 0.0;
  bool converged = false;
  /// Per-point quadrature value of the same quantity, when cross-checked.
  std::vector<double> cross_check;
};

/// L_a = int F^{-p} - ((p+1)/p)^q int F^{-p+q} g_a^{-q} for g_a on [0, 1]:
///   ell^{-p} [1 - (1-a)^{-q} ((p+1)/p)^q] / (1 + a p),  a in (-1/p, 0).
double L_a_closed_form(double a, const Exponents& e, double ell);

/// lim_{a -> -1/p} L_a = -(q/(p+1)) ell^{-p}.
double L_a_limit(const Exponents& e, double ell);

/// The same difference evaluated by graded quadrature on g_a.
double L_a_quadrature(double a, const Exponents& e, double ell, const QuadratureConfig& cfg = {});

struct SweepOptions {
  int steps = 12;
  /// First offset from -1/p; defaults to 1/(2p). Offsets halve each step.
  double delta0 = 0.0;
  double tolerance = 1e-3;
  /// Relative agreement required between closed form and quadrature.
  double cross_check_tol = 1e-6;
  bool cross_check = true;
};

/// Evaluates L_a along a_j = -1/p + delta0 2^{-j}. Throws ConvergenceError if
/// the final deviation from the limit exceeds the tolerance or a quadrature
/// cross-check disagrees.
SharpnessSweep sharpness_sweep_theorem1(const Exponents& e, double ell,
                                        const SweepOptions& opts = {});

/// G(x) = x - (x - c/(p+1))^{q/p} x^{1-q/p}, x > c/(p+1).
double G_function(double x, double c, const Exponents& e);

/// G'(x) = H(1 - c/((p+1)x)).
double G_derivative(double x, double c, const Exponents& e);

/// lim_{x -> inf} G(x) = q c / (p (p+1)).
double G_limit(double c, const Exponents& e);

/// H(t) = 1 - (1 - q/p) t^{q/p} - (q/p) t^{q/p - 1}, t in (0, 1]; H(1) = 0.
double H_function(double t, const Exponents& e);

/// H'(t) = -t^{q/p-2} (1 - q/p)(q/p)(t - 1).
double H_derivative(double t, const Exponents& e);

}  // namespace hardylab::sharpness

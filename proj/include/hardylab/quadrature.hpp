// Graded composite quadrature for integrands of the form
//   u(t)^e1 * v(t)^e2
// that may carry an integrable power-law singularity at the left endpoint.
//
// The piece touching the left endpoint is covered by geometric bands whose
// widths shrink by `grading_ratio`; the innermost remainder [lo, lo + delta]
// is integrated as a fitted power law c (t - lo)^s, which is exact for the
// pure power integrands produced by the extremal families. Every piece is
// evaluated at nested resolutions, doubled until the Richardson error estimate
// falls below `refine_tol` relative; failing that raises ConvergenceError.
#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "hardylab/core.hpp"

namespace hardylab::quadrature {

/// Result of combining two nested-resolution values.
struct Refined {
  double value = 0.0;
  double error_estimate = 0.0;
};

/// Richardson step for a rule of the given order (2 = midpoint, 4 = Simpson).
Refined refine_oracle(double coarse, double fine, int order);

int rule_order(QuadratureRule rule) noexcept;

/// Nodes and weights of a composite rule.
struct Mesh {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Composite rule over [lo, hi]. With `graded` the cells are arranged in
/// `cfg.bands` geometric bands toward lo and the mesh stops at
/// lo + (hi - lo) * grading_ratio^bands; otherwise `cells` uniform cells.
Mesh build_mesh(double lo, double hi, bool graded, int cells, const QuadratureConfig& cfg);

/// Values of the two bases at t.
using BasePair = std::function<std::pair<double, double>(double)>;

struct Integral {
  double value = 0.0;
  double error_estimate = 0.0;
  bool closed_form = false;
};

/// Integral of u^e1 v^e2 over [lo, hi], split at `breaks` (interior points
/// where the integrand is not smooth).
Integral integrate_bases(const BasePair& bases, double e1, double e2, double lo, double hi,
                         std::span<const double> breaks, const QuadratureConfig& cfg);

}  // namespace hardylab::quadrature

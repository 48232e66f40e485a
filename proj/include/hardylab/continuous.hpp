// The Hardy averaging operator F(t) = (1/(t - lo)) int_lo^t f and the
// continuous inequality checkers built on it.
#pragma once

#include <optional>
#include <vector>

#include "hardylab/core.hpp"
#include "hardylab/quadrature.hpp"

namespace hardylab::continuous {

/// f(t) = coeff * (t - lo)^exponent on the interval.
struct PowerLaw {
  double coeff;
  double exponent;
};

class HardyAverage {
 public:
  HardyAverage(WeightFamily source, Interval iv);

  /// F(t) for t in (lo, hi].
  double operator()(double t) const;
  /// f(t).
  double source_at(double t) const { return evaluate_weight(source_, t); }
  /// int_lo^t f.
  double cumulative(double t) const;

  const WeightFamily& source() const noexcept { return source_; }
  const Interval& interval() const noexcept { return interval_; }

  /// Power-law form of f relative to lo, when the family has one there.
  /// F then equals coeff/(exponent+1) * (t - lo)^exponent.
  std::optional<PowerLaw> power_law() const;

 private:
  double cumulative_closed(double t) const;

  WeightFamily source_;
  Interval interval_;
  // Step and Tabulated: knots in [lo, hi] with the exact integral up to each.
  std::vector<double> knots_;
  std::vector<double> knot_values_;
  std::vector<double> knot_integrals_;
};

HardyAverage hardy_average(const WeightFamily& w, const Interval& iv);

/// int_lo^upper F^alpha f^beta. Closed forms are used whenever the family
/// admits them (unless cfg.force_numeric), graded quadrature otherwise.
quadrature::Integral integrate_product(const HardyAverage& F, double upper, double alpha,
                                       double beta, const QuadratureConfig& cfg = {});

/// int_iv w^power.
double integrate(const WeightFamily& w, const Interval& iv, double power,
                 const QuadratureConfig& cfg = {});

/// int F^p <= (p/(p-1))^p int f^p, p > 1.
InequalityReport check_hardy_continuous(const WeightFamily& w, const Interval& iv, double p,
                                        const ToleranceConfig& tol = {});

/// int F^{-p} <= ((p+1)/p)^p int f^{-p}, p > 0.
InequalityReport check_theorem_D(const WeightFamily& w, const Interval& iv, double p,
                                 const ToleranceConfig& tol = {});

/// int F^{-p} <= ((p+1)/p)^q int F^{-p+q} f^{-q}.
InequalityReport check_theorem_E(const WeightFamily& w, const Interval& iv, const Exponents& e,
                                 const ToleranceConfig& tol = {});

/// Theorem E sharpened by -(q/(p+1)) (b-a) ell^{-p}, ell the mean of f.
InequalityReport check_theorem_1(const WeightFamily& w, const Interval& iv, const Exponents& e,
                                 const ToleranceConfig& tol = {});

/// a int_0^u psi^{a-1} [t psi]' = u psi(u)^a + (a-1) int_0^u psi^a for a > 1.
/// The left side is integrated numerically with the analytic derivative,
/// the right side in closed form; reported as an identity.
InequalityReport check_lemmaA_identity(const WeightFamily& psi, double a_exp, double u,
                                       const QuadratureConfig& cfg = {}, double rel_tol = 1e-8);

struct RiemannBridge {
  int k = 0;
  /// 2^{-k} sum_n (A_n/n)^{-p}
  double lhs = 0.0;
  /// ((p+1)/p)^q 2^{-k} sum_n (A_n/n)^{-p+q} a_n^{-q} - (q/(p+1)) mean(a)^{-p}
  double rhs = 0.0;
  double ell = 0.0;
  /// a_i = 2^k int over the i-th dyadic cell of [0, 1].
  std::vector<double> cell_means;
};

RiemannBridge riemann_bridge(const WeightFamily& w, int k, const Exponents& e,
                             const QuadratureConfig& cfg = {});

}  // namespace hardylab::continuous

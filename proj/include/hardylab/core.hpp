// Domain types shared by every checker: exponents, intervals, weight
// families, positive sequences and the inequality report.
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace hardylab {

/// Raised when an input lies outside the domain where a formula is defined.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when a refinement or sweep fails to reach its declared tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The exponent pair (p, q) with p >= q > 0.
class Exponents {
 public:
  Exponents(double p, double q);

  double p() const noexcept { return p_; }
  double q() const noexcept { return q_; }

 private:
  double p_;
  double q_;
};

Exponents validate_exponents(double p, double q);

struct Interval {
  double lo = 0.0;
  double hi = 1.0;

  Interval() = default;
  Interval(double lo_, double hi_);

  double length() const noexcept { return hi - lo; }
};

namespace weights {

struct Constant {
  double level;
};

/// coeff * t^exponent, exponent > -1.
struct Power {
  double coeff;
  double exponent;
};

/// g_a(t) = ell (1 - a) t^{-a} on [0, 1], a < 0. Its mean over [0, 1] is ell.
struct ExtremalG {
  double a;
  double ell;
};

/// phi_a(t) = t^a + epsilon on (0, 1], a > 0.
struct ExtremalPhi {
  double a;
  double epsilon = 0.0;
};

/// Piecewise constant: levels[0] left of breakpoints[0], levels[i] on
/// [breakpoints[i-1], breakpoints[i]), levels.back() right of the last one.
struct Step {
  std::vector<double> breakpoints;
  std::vector<double> levels;
};

/// Piecewise linear interpolation of (grid, values).
struct Tabulated {
  std::vector<double> grid;
  std::vector<double> values;
};

}  // namespace weights

using WeightFamily =
    std::variant<weights::Constant, weights::Power, weights::ExtremalG,
                 weights::ExtremalPhi, weights::Step, weights::Tabulated>;

// Constructors that enforce the per-family invariants.
WeightFamily make_constant(double level);
WeightFamily make_power(double coeff, double exponent);
WeightFamily make_extremal_g(double a, double ell);
WeightFamily make_extremal_phi(double a, double epsilon = 0.0);
WeightFamily make_step(std::vector<double> breakpoints, std::vector<double> levels);
WeightFamily make_tabulated(std::vector<double> grid, std::vector<double> values);

/// Point value of the weight. Throws DomainError outside the open domain.
double evaluate_weight(const WeightFamily& w, double t);

/// True for families that are nondecreasing on their whole domain.
bool is_nondecreasing(const WeightFamily& w);

/// Short name of the family ("const", "pow", ...), matching the CLI grammar.
std::string family_name(const WeightFamily& w);

/// Interior points where the family is not smooth (step breakpoints,
/// tabulation nodes) restricted to the open interval (lo, hi).
std::vector<double> kinks_in(const WeightFamily& w, const Interval& iv);

struct SequenceData {
  std::vector<double> lambda;
  std::vector<double> a;

  SequenceData() = default;
  SequenceData(std::vector<double> lambda_, std::vector<double> a_);

  std::size_t size() const noexcept { return a.size(); }
};

/// Running sums Lambda_n = sum lambda_i and A_n = sum lambda_i a_i.
struct PrefixState {
  std::vector<double> Lambda;
  std::vector<double> A;
};

/// Which way the checked inequality points. The margin is always oriented
/// so that a nonnegative value means "holds".
enum class Relation { kLessEqual, kGreaterEqual, kIdentity };

using NamedValues = std::vector<std::pair<std::string, double>>;

struct InequalityReport {
  std::string inequality;
  Relation relation = Relation::kLessEqual;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  double relative_margin = 0.0;
  double tolerance = 0.0;
  bool satisfied = false;
  NamedValues params;
  NamedValues diagnostics;

  bool operator==(const InequalityReport&) const = default;
};

/// Fills margin, relative_margin and satisfied from lhs, rhs and tol.
InequalityReport make_report(std::string name, Relation relation, double lhs,
                             double rhs, double tol, NamedValues params = {});

/// Value of a named parameter or diagnostic; throws std::out_of_range.
double lookup(const NamedValues& values, const std::string& key);

enum class QuadratureRule { kMidpoint, kSimpson };

struct QuadratureConfig {
  int bands = 40;
  int cells_per_band = 16;
  QuadratureRule rule = QuadratureRule::kSimpson;
  double grading_ratio = 0.5;
  /// Allowed relative disagreement between a result and its refinement.
  double refine_tol = 1e-6;
  /// Bypass closed forms; used to cross-validate them.
  bool force_numeric = false;

  void validate() const;
};

struct ToleranceConfig {
  double rel_tol = 1e-9;
  QuadratureConfig quadrature;

  static ToleranceConfig closed_form() { return {}; }
  static ToleranceConfig quadrature_path() {
    ToleranceConfig cfg;
    cfg.rel_tol = 1e-6;
    return cfg;
  }

  void validate() const;
};

}  // namespace hardylab

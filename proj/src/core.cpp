#include "hardylab/core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hardylab {

namespace {

[[noreturn]] void domain_fail(const std::string& what) { throw DomainError(what); }

bool strictly_increasing(const std::vector<double>& v) {
  return std::adjacent_find(v.begin(), v.end(), [](double x, double y) { return !(x < y); }) ==
         v.end();
}

bool all_positive(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x) && x > 0.0; });
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

Exponents::Exponents(double p, double q) : p_(p), q_(q) {
  if (!std::isfinite(p) || !std::isfinite(q) || !(q > 0.0) || !(p >= q)) {
    std::ostringstream os;
    os << "exponents require p >= q > 0 (got p=" << p << ", q=" << q << ")";
    domain_fail(os.str());
  }
}

Exponents validate_exponents(double p, double q) { return Exponents(p, q); }

Interval::Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    domain_fail("interval requires lo < hi");
  }
}

WeightFamily make_constant(double level) {
  if (!std::isfinite(level) || level <= 0.0) domain_fail("constant weight must be positive");
  return weights::Constant{level};
}

WeightFamily make_power(double coeff, double exponent) {
  if (!std::isfinite(coeff) || coeff <= 0.0) domain_fail("power weight coefficient must be positive");
  if (!std::isfinite(exponent) || exponent <= -1.0) {
    domain_fail("power weight exponent must exceed -1");
  }
  return weights::Power{coeff, exponent};
}

WeightFamily make_extremal_g(double a, double ell) {
  if (!std::isfinite(a) || a >= 0.0) domain_fail("g_a requires a < 0");
  if (!std::isfinite(ell) || ell <= 0.0) domain_fail("g_a requires ell > 0");
  return weights::ExtremalG{a, ell};
}

WeightFamily make_extremal_phi(double a, double epsilon) {
  if (!std::isfinite(a) || a <= 0.0) domain_fail("phi_a requires a > 0");
  if (!std::isfinite(epsilon) || epsilon < 0.0) domain_fail("phi_a shift must be nonnegative");
  return weights::ExtremalPhi{a, epsilon};
}

WeightFamily make_step(std::vector<double> breakpoints, std::vector<double> levels) {
  if (levels.size() != breakpoints.size() + 1) {
    domain_fail("step weight needs one more level than breakpoints");
  }
  if (!strictly_increasing(breakpoints)) domain_fail("step breakpoints must be strictly increasing");
  if (!all_positive(levels)) domain_fail("step levels must be positive");
  return weights::Step{std::move(breakpoints), std::move(levels)};
}

WeightFamily make_tabulated(std::vector<double> grid, std::vector<double> values) {
  if (grid.size() < 2 || grid.size() != values.size()) {
    domain_fail("tabulated weight needs at least two (t, value) pairs");
  }
  if (!strictly_increasing(grid)) domain_fail("tabulated grid must be strictly increasing");
  if (!all_positive(values)) domain_fail("tabulated values must be positive");
  return weights::Tabulated{std::move(grid), std::move(values)};
}

double evaluate_weight(const WeightFamily& w, double t) {
  if (!std::isfinite(t)) domain_fail("weight evaluated at a non-finite point");
  return std::visit(
      overloaded{
          [](const weights::Constant& c) { return c.level; },
          [t](const weights::Power& f) {
            if (t <= 0.0) domain_fail("power weight is defined for t > 0");
            return f.coeff * std::pow(t, f.exponent);
          },
          [t](const weights::ExtremalG& g) {
            if (t <= 0.0 || t > 1.0) domain_fail("g_a is defined on (0, 1]");
            return g.ell * (1.0 - g.a) * std::pow(t, -g.a);
          },
          [t](const weights::ExtremalPhi& f) {
            if (t > 1.0 || t < 0.0 || (t == 0.0 && f.epsilon == 0.0)) {
              domain_fail("phi_a is defined on (0, 1]");
            }
            return std::pow(t, f.a) + f.epsilon;
          },
          [t](const weights::Step& s) {
            auto it = std::upper_bound(s.breakpoints.begin(), s.breakpoints.end(), t);
            return s.levels[static_cast<std::size_t>(it - s.breakpoints.begin())];
          },
          [t](const weights::Tabulated& tab) {
            const auto& g = tab.grid;
            if (t < g.front() || t > g.back()) domain_fail("tabulated weight evaluated off its grid");
            auto it = std::upper_bound(g.begin(), g.end(), t);
            if (it == g.end()) return tab.values.back();
            const auto j = static_cast<std::size_t>(it - g.begin());
            const double s = (t - g[j - 1]) / (g[j] - g[j - 1]);
            return tab.values[j - 1] + s * (tab.values[j] - tab.values[j - 1]);
          },
      },
      w);
}

bool is_nondecreasing(const WeightFamily& w) {
  return std::visit(
      overloaded{
          [](const weights::Constant&) { return true; },
          [](const weights::Power& f) { return f.exponent >= 0.0; },
          [](const weights::ExtremalG&) { return true; },
          [](const weights::ExtremalPhi&) { return true; },
          [](const weights::Step& s) {
            return std::is_sorted(s.levels.begin(), s.levels.end());
          },
          [](const weights::Tabulated& t) {
            return std::is_sorted(t.values.begin(), t.values.end());
          },
      },
      w);
}

std::string family_name(const WeightFamily& w) {
  static const char* names[] = {"const", "pow", "extg", "extphi", "step", "table"};
  return names[w.index()];
}

std::vector<double> kinks_in(const WeightFamily& w, const Interval& iv) {
  std::vector<double> out;
  const std::vector<double>* pts = nullptr;
  if (const auto* s = std::get_if<weights::Step>(&w)) pts = &s->breakpoints;
  if (const auto* t = std::get_if<weights::Tabulated>(&w)) pts = &t->grid;
  if (pts != nullptr) {
    for (double x : *pts) {
      if (x > iv.lo && x < iv.hi) out.push_back(x);
    }
  }
  return out;
}

SequenceData::SequenceData(std::vector<double> lambda_, std::vector<double> a_)
    : lambda(std::move(lambda_)), a(std::move(a_)) {
  if (lambda.empty() || lambda.size() != a.size()) {
    domain_fail("sequence data needs equally sized, nonempty lambda and a");
  }
  if (!all_positive(lambda) || !all_positive(a)) {
    domain_fail("sequence entries must be positive");
  }
}

InequalityReport make_report(std::string name, Relation relation, double lhs, double rhs,
                             double tol, NamedValues params) {
  InequalityReport r;
  r.inequality = std::move(name);
  r.relation = relation;
  r.lhs = lhs;
  r.rhs = rhs;
  r.tolerance = tol;
  r.params = std::move(params);
  switch (relation) {
    case Relation::kLessEqual: r.margin = rhs - lhs; break;
    case Relation::kGreaterEqual: r.margin = lhs - rhs; break;
    case Relation::kIdentity: r.margin = -std::abs(lhs - rhs); break;
  }
  const double scale = std::max(std::abs(lhs), std::abs(rhs));
  r.relative_margin = scale > 0.0 ? r.margin / scale : 0.0;
  r.satisfied = std::isfinite(r.margin) && r.relative_margin >= -tol;
  return r;
}

double lookup(const NamedValues& values, const std::string& key) {
  for (const auto& [k, v] : values) {
    if (k == key) return v;
  }
  throw std::out_of_range("no value named " + key);
}

void QuadratureConfig::validate() const {
  if (bands < 1 || cells_per_band < 1) domain_fail("quadrature needs positive band and cell counts");
  if (!(grading_ratio > 0.0 && grading_ratio < 1.0)) domain_fail("grading ratio must lie in (0, 1)");
  if (!(refine_tol > 0.0 && refine_tol < 1.0)) domain_fail("refinement tolerance must lie in (0, 1)");
}

void ToleranceConfig::validate() const {
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) domain_fail("relative tolerance must lie in (0, 1)");
  quadrature.validate();
}

}  // namespace hardylab

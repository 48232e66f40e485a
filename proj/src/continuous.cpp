#include "hardylab/continuous.hpp"

#include <algorithm>
#include <cmath>

#include "hardylab/discrete.hpp"
#include "hardylab/summation.hpp"

namespace hardylab::continuous {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

// t^{s+1} - lo^{s+1} without cancellation when t is close to lo > 0.
double power_difference(double lo, double t, double s1) {
  if (lo == 0.0) return std::pow(t, s1);
  return std::pow(lo, s1) * std::expm1(s1 * std::log1p((t - lo) / lo));
}

// int_lo^hi coeff * t^s dt.
double power_integral(double coeff, double s, double lo, double hi) {
  if (s == -1.0) {
    if (lo <= 0.0) throw DomainError("integrand ~ t^-1 is not integrable at 0");
    return coeff * std::log1p((hi - lo) / lo);
  }
  if (lo == 0.0 && s < -1.0) throw DomainError("integrand ~ t^s with s <= -1 is not integrable at 0");
  return coeff * power_difference(lo, hi, s + 1.0) / (s + 1.0);
}

struct PowerForm {
  double coeff;
  double exponent;
};

// f = coeff * t^exponent in absolute t, for the monomial families.
std::optional<PowerForm> monomial(const WeightFamily& w) {
  if (const auto* f = std::get_if<weights::Power>(&w)) return PowerForm{f->coeff, f->exponent};
  if (const auto* g = std::get_if<weights::ExtremalG>(&w)) {
    return PowerForm{g->ell * (1.0 - g->a), -g->a};
  }
  if (const auto* f = std::get_if<weights::ExtremalPhi>(&w)) {
    if (f->epsilon == 0.0) return PowerForm{1.0, f->a};
  }
  return std::nullopt;
}

void check_support(const WeightFamily& w, const Interval& iv) {
  std::visit(overloaded{
                 [](const weights::Constant&) {},
                 [&](const weights::Power&) {
                   if (iv.lo < 0.0) throw DomainError("power weight needs lo >= 0");
                 },
                 [&](const weights::ExtremalG&) {
                   if (iv.lo < 0.0 || iv.hi > 1.0) throw DomainError("g_a lives on [0, 1]");
                 },
                 [&](const weights::ExtremalPhi&) {
                   if (iv.lo < 0.0 || iv.hi > 1.0) throw DomainError("phi_a lives on [0, 1]");
                 },
                 [](const weights::Step&) {},
                 [&](const weights::Tabulated& t) {
                   if (iv.lo < t.grid.front() || iv.hi > t.grid.back()) {
                     throw DomainError("interval extends past the tabulated grid");
                   }
                 },
             },
             w);
}

double effective_tol(const ToleranceConfig& tol, bool numeric) {
  return numeric ? std::max(tol.rel_tol, tol.quadrature.refine_tol) : tol.rel_tol;
}

}  // namespace

HardyAverage::HardyAverage(WeightFamily source, Interval iv)
    : source_(std::move(source)), interval_(iv) {
  check_support(source_, interval_);
  const bool step = std::holds_alternative<weights::Step>(source_);
  const bool table = std::holds_alternative<weights::Tabulated>(source_);
  if (!step && !table) return;

  knots_.push_back(interval_.lo);
  for (double k : kinks_in(source_, interval_)) knots_.push_back(k);
  knots_.push_back(interval_.hi);
  CompensatedSum acc;
  knot_integrals_.push_back(0.0);
  for (double k : knots_) knot_values_.push_back(evaluate_weight(source_, k));
  for (std::size_t j = 0; j + 1 < knots_.size(); ++j) {
    const double h = knots_[j + 1] - knots_[j];
    if (step) {
      acc += h * evaluate_weight(source_, knots_[j] + 0.5 * h);
    } else {
      acc += 0.5 * h * (knot_values_[j] + knot_values_[j + 1]);
    }
    knot_integrals_.push_back(acc.value());
  }
}

std::optional<PowerLaw> HardyAverage::power_law() const {
  if (const auto* c = std::get_if<weights::Constant>(&source_)) return PowerLaw{c->level, 0.0};
  if (interval_.lo != 0.0) return std::nullopt;
  if (auto m = monomial(source_)) return PowerLaw{m->coeff, m->exponent};
  return std::nullopt;
}

double HardyAverage::cumulative_closed(double t) const {
  const double lo = interval_.lo;
  if (const auto* c = std::get_if<weights::Constant>(&source_)) return c->level * (t - lo);
  if (const auto* f = std::get_if<weights::ExtremalPhi>(&source_)) {
    return power_difference(lo, t, f->a + 1.0) / (f->a + 1.0) + f->epsilon * (t - lo);
  }
  if (auto m = monomial(source_)) {
    return m->coeff * power_difference(lo, t, m->exponent + 1.0) / (m->exponent + 1.0);
  }
  // Step / Tabulated: locate the knot interval holding t.
  auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
  std::size_t j = it == knots_.begin() ? 0 : static_cast<std::size_t>(it - knots_.begin()) - 1;
  if (j + 1 >= knots_.size()) j = knots_.size() - 2;
  const double dt = t - knots_[j];
  if (std::holds_alternative<weights::Step>(source_)) {
    const double level = evaluate_weight(source_, knots_[j] + 0.5 * (knots_[j + 1] - knots_[j]));
    return knot_integrals_[j] + dt * level;
  }
  return knot_integrals_[j] + 0.5 * dt * (knot_values_[j] + evaluate_weight(source_, t));
}

double HardyAverage::cumulative(double t) const {
  if (!(t >= interval_.lo && t <= interval_.hi)) {
    throw DomainError("cumulative integral requested outside the interval");
  }
  return cumulative_closed(t);
}

double HardyAverage::operator()(double t) const {
  if (!(t > interval_.lo && t <= interval_.hi)) {
    throw DomainError("Hardy average is defined on (lo, hi]");
  }
  if (auto pl = power_law()) {
    if (pl->exponent == 0.0) return pl->coeff;
    return pl->coeff / (pl->exponent + 1.0) * std::pow(t - interval_.lo, pl->exponent);
  }
  if (const auto* f = std::get_if<weights::ExtremalPhi>(&source_); f && interval_.lo == 0.0) {
    return std::pow(t, f->a) / (f->a + 1.0) + f->epsilon;
  }
  return cumulative_closed(t) / (t - interval_.lo);
}

HardyAverage hardy_average(const WeightFamily& w, const Interval& iv) { return HardyAverage(w, iv); }

quadrature::Integral integrate_product(const HardyAverage& F, double upper, double alpha,
                                       double beta, const QuadratureConfig& cfg) {
  const Interval& iv = F.interval();
  if (!(upper > iv.lo && upper <= iv.hi)) {
    throw DomainError("integration bound outside (lo, hi]");
  }
  const double length = upper - iv.lo;
  const WeightFamily& w = F.source();
  if (!cfg.force_numeric) {
    if (alpha == 0.0 && beta == 0.0) return {length, 0.0, true};
    if (alpha == 0.0 && beta == 1.0) return {F.cumulative(upper), 0.0, true};
    if (auto pl = F.power_law()) {
      const double s = pl->exponent;
      const double coeff = std::pow(pl->coeff / (s + 1.0), alpha) * std::pow(pl->coeff, beta);
      return {power_integral(coeff, s * (alpha + beta), 0.0, length), 0.0, true};
    }
    if (alpha == 0.0) {
      if (auto m = monomial(w)) {
        return {power_integral(std::pow(m->coeff, beta), m->exponent * beta, iv.lo, upper), 0.0,
                true};
      }
      if (const auto* s = std::get_if<weights::Step>(&w)) {
        std::vector<double> cuts{iv.lo};
        for (double k : kinks_in(w, Interval(iv.lo, upper))) cuts.push_back(k);
        cuts.push_back(upper);
        CompensatedSum acc;
        for (std::size_t j = 0; j + 1 < cuts.size(); ++j) {
          const double h = cuts[j + 1] - cuts[j];
          acc += h * std::pow(evaluate_weight(*s, cuts[j] + 0.5 * h), beta);
        }
        return {acc.value(), 0.0, true};
      }
    }
  }
  const auto breaks = kinks_in(w, Interval(iv.lo, upper));
  const quadrature::BasePair bases = [&F](double t) {
    return std::pair<double, double>{F(t), F.source_at(t)};
  };
  return quadrature::integrate_bases(bases, alpha, beta, iv.lo, upper, breaks, cfg);
}

double integrate(const WeightFamily& w, const Interval& iv, double power,
                 const QuadratureConfig& cfg) {
  const HardyAverage F(w, iv);
  return integrate_product(F, iv.hi, 0.0, power, cfg).value;
}

InequalityReport check_hardy_continuous(const WeightFamily& w, const Interval& iv, double p,
                                        const ToleranceConfig& tol) {
  if (!(p > 1.0) || !std::isfinite(p)) throw DomainError("continuous Hardy inequality needs p > 1");
  const HardyAverage F(w, iv);
  const auto lhs = integrate_product(F, iv.hi, p, 0.0, tol.quadrature);
  const auto fp = integrate_product(F, iv.hi, 0.0, p, tol.quadrature);
  const double rhs = std::pow(p / (p - 1.0), p) * fp.value;
  return make_report("hardy-cont", Relation::kLessEqual, lhs.value, rhs,
                     effective_tol(tol, !lhs.closed_form || !fp.closed_form),
                     {{"p", p}, {"lo", iv.lo}, {"hi", iv.hi}});
}

InequalityReport check_theorem_D(const WeightFamily& w, const Interval& iv, double p,
                                 const ToleranceConfig& tol) {
  if (!(p > 0.0) || !std::isfinite(p)) throw DomainError("theorem D needs p > 0");
  const HardyAverage F(w, iv);
  const auto lhs = integrate_product(F, iv.hi, -p, 0.0, tol.quadrature);
  const auto fm = integrate_product(F, iv.hi, 0.0, -p, tol.quadrature);
  const double rhs = std::pow((p + 1.0) / p, p) * fm.value;
  return make_report("theoremD", Relation::kLessEqual, lhs.value, rhs,
                     effective_tol(tol, !lhs.closed_form || !fm.closed_form),
                     {{"p", p}, {"lo", iv.lo}, {"hi", iv.hi}});
}

InequalityReport check_theorem_E(const WeightFamily& w, const Interval& iv, const Exponents& e,
                                 const ToleranceConfig& tol) {
  const double p = e.p();
  const double q = e.q();
  const HardyAverage F(w, iv);
  const auto lhs = integrate_product(F, iv.hi, -p, 0.0, tol.quadrature);
  const auto mixed = integrate_product(F, iv.hi, -p + q, -q, tol.quadrature);
  const double rhs = std::pow((p + 1.0) / p, q) * mixed.value;
  return make_report("theoremE", Relation::kLessEqual, lhs.value, rhs,
                     effective_tol(tol, !lhs.closed_form || !mixed.closed_form),
                     {{"p", p}, {"q", q}, {"lo", iv.lo}, {"hi", iv.hi}});
}

InequalityReport check_theorem_1(const WeightFamily& w, const Interval& iv, const Exponents& e,
                                 const ToleranceConfig& tol) {
  const double p = e.p();
  const double q = e.q();
  const HardyAverage F(w, iv);
  const auto lhs = integrate_product(F, iv.hi, -p, 0.0, tol.quadrature);
  const auto mixed = integrate_product(F, iv.hi, -p + q, -q, tol.quadrature);
  const double ell = F.cumulative(iv.hi) / iv.length();
  const double correction = q / (p + 1.0) * iv.length() * std::pow(ell, -p);
  const double rhs = std::pow((p + 1.0) / p, q) * mixed.value - correction;
  InequalityReport r = make_report("theorem1", Relation::kLessEqual, lhs.value, rhs,
                                   effective_tol(tol, !lhs.closed_form || !mixed.closed_form),
                                   {{"p", p}, {"q", q}, {"lo", iv.lo}, {"hi", iv.hi}});
  r.diagnostics = {{"ell", ell}, {"correction", correction}};
  return r;
}

InequalityReport check_lemmaA_identity(const WeightFamily& psi, double a_exp, double u,
                                       const QuadratureConfig& cfg, double rel_tol) {
  if (!(a_exp > 1.0) || !std::isfinite(a_exp)) throw DomainError("Lemma A is implemented for a > 1");
  if (!(u > 0.0 && u <= 1.0)) throw DomainError("Lemma A needs u in (0, 1]");
  if (std::holds_alternative<weights::Step>(psi) ||
      std::holds_alternative<weights::Tabulated>(psi)) {
    throw DomainError("Lemma A needs a closed-form, continuous psi");
  }
  if (auto m = monomial(psi); m && !(1.0 + m->exponent * a_exp > 0.0)) {
    throw DomainError("t psi(t)^a does not vanish at 0");
  }

  // [t psi(t)]' in closed form.
  const auto derivative = [&psi](double t) {
    if (const auto* c = std::get_if<weights::Constant>(&psi)) return c->level;
    if (const auto* f = std::get_if<weights::ExtremalPhi>(&psi)) {
      return (f->a + 1.0) * std::pow(t, f->a) + f->epsilon;
    }
    const auto m = *monomial(psi);
    return m.coeff * (m.exponent + 1.0) * std::pow(t, m.exponent);
  };
  const quadrature::BasePair bases = [&](double t) {
    return std::pair<double, double>{evaluate_weight(psi, t), derivative(t)};
  };
  const auto lhs_int = quadrature::integrate_bases(bases, a_exp - 1.0, 1.0, 0.0, u, {}, cfg);
  const double lhs = a_exp * lhs_int.value;

  QuadratureConfig closed = cfg;
  closed.force_numeric = false;
  const double rhs = u * std::pow(evaluate_weight(psi, u), a_exp) +
                     (a_exp - 1.0) * integrate(psi, Interval(0.0, u), a_exp, closed);
  return make_report("lemmaA", Relation::kIdentity, lhs, rhs, rel_tol,
                     {{"a", a_exp}, {"u", u}});
}

RiemannBridge riemann_bridge(const WeightFamily& w, int k, const Exponents& e,
                             const QuadratureConfig& cfg) {
  if (k < 0 || k > 24) throw DomainError("dyadic level k must lie in [0, 24]");
  const std::size_t cells = std::size_t{1} << k;
  const double scale = std::ldexp(1.0, k);
  RiemannBridge out;
  out.k = k;
  out.cell_means.resize(cells);
  for (std::size_t i = 0; i < cells; ++i) {
    const double lo = static_cast<double>(i) / scale;
    const double hi = static_cast<double>(i + 1) / scale;
    out.cell_means[i] = scale * integrate(w, Interval(lo, hi), 1.0, cfg);
  }
  CompensatedSum total;
  for (double a : out.cell_means) total += a;
  out.ell = total.value() / scale;

  const SequenceData seq(std::vector<double>(cells, 1.0), out.cell_means);
  const InequalityReport r = discrete::check_theorem_2(seq, e, cells);
  out.lhs = r.lhs / scale;
  out.rhs = r.rhs / scale;
  return out;
}

}  // namespace hardylab::continuous

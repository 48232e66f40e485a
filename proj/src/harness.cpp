#include "hardylab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>

#include "hardylab/continuous.hpp"
#include "hardylab/discrete.hpp"
#include "hardylab/muckenhoupt.hpp"

namespace hardylab::harness {

namespace {

constexpr double kLognormalSigma = 2.0;
constexpr double kWeightSigma = 0.5;
constexpr double kNearOffset = 1e-2;
constexpr double kPowerWindow = 0.9;
constexpr double kConditionSlack = 1.01;
constexpr double kP0Clearance = 1e-3;

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Distributions are spelled out so streams agree across standard libraries.
class Stream {
 public:
  Stream(std::uint64_t seed, std::size_t index) {
    std::uint64_t s = seed;
    const std::uint64_t a = splitmix64(s);
    s ^= static_cast<std::uint64_t>(index) * 0xD1B54A32D192ED03ULL;
    const std::uint64_t b = splitmix64(s);
    std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                      static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
    engine_.seed(seq);
  }

  /// Uniform in the open interval (0, 1).
  double uniform() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  double lognormal(double sigma) { return std::exp(sigma * normal()); }

 private:
  std::mt19937_64 engine_;
};

bool is_sequence_kind(GeneratorKind k) {
  return k == GeneratorKind::kUniformSequence || k == GeneratorKind::kLognormalSequence;
}

SequenceData make_sequence(Stream& rng, GeneratorKind kind, std::size_t n) {
  std::vector<double> lambda(n);
  std::vector<double> a(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (kind == GeneratorKind::kUniformSequence) {
      lambda[i] = rng.uniform(0.1, 2.0);
      a[i] = rng.uniform(0.1, 2.0);
    } else {
      lambda[i] = rng.lognormal(kLognormalSigma);
      a[i] = rng.lognormal(kLognormalSigma);
    }
  }
  return SequenceData(std::move(lambda), std::move(a));
}

WeightFamily make_monotone_step(Stream& rng, std::size_t levels_count) {
  std::vector<double> gaps(levels_count);
  double total = 0.0;
  for (double& g : gaps) {
    g = -std::log(rng.uniform());
    total += g;
  }
  std::vector<double> breakpoints;
  double run = 0.0;
  for (std::size_t i = 0; i + 1 < levels_count; ++i) {
    run += gaps[i];
    breakpoints.push_back(run / total);
  }
  std::vector<double> levels(levels_count);
  levels[0] = rng.lognormal(kWeightSigma);
  for (std::size_t i = 1; i < levels_count; ++i) levels[i] = levels[i - 1] * (1.0 + 0.5 * rng.uniform());
  return make_step(std::move(breakpoints), std::move(levels));
}

WeightFamily make_power_weight(Stream& rng, const Range& a, double p) {
  // F^{-p} and F^{p} stay integrable at 0 for exponents inside (-1/p, 1/p) and above -1.
  const double lo = std::max(a.lo, kPowerWindow * std::max(-1.0, -1.0 / p));
  const double hi = std::min(a.hi, kPowerWindow / p);
  if (!(lo < hi)) throw DomainError("power_weight: exponent range misses the integrable window");
  const double coeff = rng.lognormal(kWeightSigma);
  return make_power(coeff, rng.uniform(lo, hi));
}

WeightFamily make_tabulated_weight(Stream& rng, std::size_t n) {
  std::vector<double> grid(n);
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) {
    grid[i] = static_cast<double>(i) / static_cast<double>(n - 1);
    values[i] = rng.lognormal(kWeightSigma);
  }
  return make_tabulated(std::move(grid), std::move(values));
}

const SequenceData& sequence_of(const Instance& inst, Checker c) {
  if (const auto* s = std::get_if<SequenceData>(&inst.data)) return *s;
  throw DomainError(std::string(checker_name(c)) + " needs a sequence generator");
}

const WeightFamily& weight_of(const Instance& inst, Checker c) {
  if (const auto* w = std::get_if<WeightFamily>(&inst.data)) return *w;
  throw DomainError(std::string(checker_name(c)) + " needs a weight generator");
}

std::size_t pick(double u, std::size_t n) {
  return std::min(n - 1, static_cast<std::size_t>(u * static_cast<double>(n)));
}

ToleranceConfig tolerance_for(double rel_tol, const QuadratureConfig& quad, bool quadrature_path) {
  ToleranceConfig tol = quadrature_path ? ToleranceConfig::quadrature_path() : ToleranceConfig{};
  if (rel_tol > 0.0) tol.rel_tol = rel_tol;
  tol.quadrature = quad;
  tol.validate();
  return tol;
}

bool uses_quadrature_defaults(Checker c) {
  return c == Checker::kTheorem3 || c == Checker::kCorollary;
}

InequalityReport run_muckenhoupt(Checker c, const Instance& inst, const ToleranceConfig& tol) {
  const WeightFamily& phi = weight_of(inst, c);
  const double q = inst.q;
  const double constant =
      muckenhoupt::muckenhoupt_constant(phi, q, muckenhoupt::default_t_grid(), tol.quadrature)
          .constant;
  const auto params = muckenhoupt::make_params(q, std::max(1.0, kConditionSlack * constant));
  const double p_lo = std::min(params.p0 + kP0Clearance, 0.5 * (params.p0 + q));
  // Open at p_lo, closed at q.
  const double p = q - (q - p_lo) * inst.aux[0];
  const double t = 0.1 * static_cast<double>(1 + pick(inst.aux[1], 10));
  return c == Checker::kTheorem3 ? muckenhoupt::check_theorem_3(phi, p, params, t, tol)
                                 : muckenhoupt::check_corollary(phi, p, params, t, tol);
}

struct Outcome {
  double relative_margin = 0.0;
  bool satisfied = false;
  bool failed = false;
  int error_kind = 0;  // 1 domain, 2 convergence, 3 other
  std::string message;
};

}  // namespace

std::string_view kind_name(GeneratorKind k) noexcept {
  switch (k) {
    case GeneratorKind::kUniformSequence: return "uniform_sequence";
    case GeneratorKind::kLognormalSequence: return "lognormal_sequence";
    case GeneratorKind::kMonotoneStepWeight: return "monotone_step_weight";
    case GeneratorKind::kPowerWeight: return "power_weight";
    case GeneratorKind::kNearExtremal: return "near_extremal";
    case GeneratorKind::kTabulatedWeight: return "tabulated_weight";
  }
  return "unknown";
}

GeneratorKind parse_kind(std::string_view name) {
  for (auto k : {GeneratorKind::kUniformSequence, GeneratorKind::kLognormalSequence,
                 GeneratorKind::kMonotoneStepWeight, GeneratorKind::kPowerWeight,
                 GeneratorKind::kNearExtremal, GeneratorKind::kTabulatedWeight}) {
    if (kind_name(k) == name) return k;
  }
  throw DomainError("unknown generator kind '" + std::string(name) + "'");
}

void GeneratorSpec::validate() const {
  if (size < 1) throw DomainError("generator size must be positive");
  if (kind == GeneratorKind::kTabulatedWeight && size < 2) {
    throw DomainError("tabulated_weight needs at least two grid points");
  }
  for (const Range* r : {&p, &q, &a}) {
    if (!std::isfinite(r->lo) || !std::isfinite(r->hi) || r->lo > r->hi) {
      throw DomainError("generator ranges need finite lo <= hi");
    }
  }
  if (!(p.lo > 0.0) || !(q.lo > 0.0)) throw DomainError("generator p and q ranges must be positive");
}

Instance generate(const GeneratorSpec& spec, std::size_t index) {
  spec.validate();
  Stream rng(spec.seed, index);
  Instance inst;
  inst.index = index;
  inst.p = rng.uniform(spec.p.lo, spec.p.hi);
  const double q_hi = spec.q.lo <= inst.p ? std::min(spec.q.hi, inst.p) : spec.q.hi;
  inst.q = rng.uniform(spec.q.lo, q_hi);
  for (double& u : inst.aux) u = rng.uniform();

  switch (spec.kind) {
    case GeneratorKind::kUniformSequence:
    case GeneratorKind::kLognormalSequence:
      inst.data = make_sequence(rng, spec.kind, spec.size);
      break;
    case GeneratorKind::kMonotoneStepWeight:
      inst.data = make_monotone_step(rng, spec.size);
      break;
    case GeneratorKind::kPowerWeight:
      inst.data = make_power_weight(rng, spec.a, inst.p);
      break;
    case GeneratorKind::kTabulatedWeight:
      inst.data = make_tabulated_weight(rng, spec.size);
      break;
    case GeneratorKind::kNearExtremal:
      if (spec.extremal == ExtremalTarget::kG) {
        const double a = -1.0 / inst.p + kNearOffset * rng.uniform();
        if (!(a < 0.0)) throw DomainError("near_extremal g_a needs p < 100");
        inst.data = make_extremal_g(a, rng.lognormal(kWeightSigma));
      } else {
        if (!(inst.q > 1.0)) throw DomainError("near_extremal phi_a needs q > 1");
        inst.data = make_extremal_phi((inst.q - 1.0) * (1.0 - kNearOffset * rng.uniform()));
      }
      break;
  }
  return inst;
}

std::string_view checker_name(Checker c) noexcept {
  switch (c) {
    case Checker::kCopson: return "copson";
    case Checker::kHardy: return "hardy";
    case Checker::kTheoremF: return "theoremF";
    case Checker::kTheorem2: return "theorem2";
    case Checker::kLemma1: return "lemma1";
    case Checker::kYoung: return "young";
    case Checker::kLemma2: return "lemma2";
    case Checker::kHardyContinuous: return "hardy-cont";
    case Checker::kTheoremD: return "theoremD";
    case Checker::kTheoremE: return "theoremE";
    case Checker::kTheorem1: return "theorem1";
    case Checker::kTheorem3: return "theorem3";
    case Checker::kCorollary: return "corollary";
  }
  return "unknown";
}

std::vector<Checker> all_checkers() {
  return {Checker::kCopson,   Checker::kHardy,    Checker::kTheoremF,        Checker::kTheorem2,
          Checker::kLemma1,   Checker::kYoung,    Checker::kLemma2,          Checker::kHardyContinuous,
          Checker::kTheoremD, Checker::kTheoremE, Checker::kTheorem1,        Checker::kTheorem3,
          Checker::kCorollary};
}

Checker parse_checker(std::string_view name) {
  for (Checker c : all_checkers()) {
    if (checker_name(c) == name) return c;
  }
  throw DomainError("unknown checker '" + std::string(name) + "'");
}

bool needs_sequence(Checker c) noexcept {
  switch (c) {
    case Checker::kCopson:
    case Checker::kHardy:
    case Checker::kTheoremF:
    case Checker::kTheorem2:
    case Checker::kLemma1:
    case Checker::kYoung:
    case Checker::kLemma2:
      return true;
    default:
      return false;
  }
}

InequalityReport run_checker(Checker c, const Instance& inst, const ToleranceConfig& tol) {
  if (needs_sequence(c)) {
    const SequenceData& seq = sequence_of(inst, c);
    const std::size_t N = 1 + pick(inst.aux[0], seq.size());
    switch (c) {
      case Checker::kCopson: return discrete::check_copson(seq, inst.p, N, tol.rel_tol);
      case Checker::kHardy: return discrete::check_hardy_discrete(seq.a, inst.p, N, tol.rel_tol);
      case Checker::kTheoremF:
        return discrete::check_theorem_F(seq, Exponents(inst.p, inst.q), N, tol.rel_tol);
      case Checker::kTheorem2:
        return discrete::check_theorem_2(seq, Exponents(inst.p, inst.q), N, tol.rel_tol);
      case Checker::kLemma1: {
        const std::size_t n = pick(inst.aux[1], N);
        const double mean = discrete::copson_mean(seq)[n];
        return discrete::check_lemma1_term(seq.a[n], mean, Exponents(inst.p, inst.q), tol.rel_tol);
      }
      case Checker::kYoung:
        return discrete::check_young_pointwise(seq.a[pick(inst.aux[1], N)], inst.p, tol.rel_tol);
      case Checker::kLemma2: return discrete::check_lemma2(seq, inst.p, N, tol.rel_tol);
      default: break;
    }
  }
  if (c == Checker::kTheorem3 || c == Checker::kCorollary) return run_muckenhoupt(c, inst, tol);

  const WeightFamily& w = weight_of(inst, c);
  const Interval unit(0.0, 1.0);
  switch (c) {
    case Checker::kHardyContinuous: return continuous::check_hardy_continuous(w, unit, inst.p, tol);
    case Checker::kTheoremD: return continuous::check_theorem_D(w, unit, inst.p, tol);
    case Checker::kTheoremE:
      return continuous::check_theorem_E(w, unit, Exponents(inst.p, inst.q), tol);
    case Checker::kTheorem1:
      return continuous::check_theorem_1(w, unit, Exponents(inst.p, inst.q), tol);
    default: break;
  }
  throw DomainError("unhandled checker");
}

unsigned worker_count(unsigned requested) {
  unsigned n = requested > 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("HARDYLAB_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap > 0) n = std::min(n, static_cast<unsigned>(cap));
  }
  return n;
}

BatchResult run_batch(Checker c, const GeneratorSpec& spec, std::size_t count,
                      const BatchParams& params) {
  spec.validate();
  if (needs_sequence(c) != is_sequence_kind(spec.kind)) {
    throw DomainError(std::string(checker_name(c)) + " cannot run on " +
                      std::string(kind_name(spec.kind)) + " instances");
  }
  const ToleranceConfig tol =
      tolerance_for(params.rel_tol, params.quadrature, uses_quadrature_defaults(c));

  std::vector<Outcome> outcomes(count);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      Outcome& out = outcomes[i];
      try {
        const InequalityReport r = run_checker(c, generate(spec, i), tol);
        out.relative_margin = r.relative_margin;
        out.satisfied = r.satisfied;
      } catch (const DomainError& e) {
        out = {0.0, false, true, 1, e.what()};
      } catch (const ConvergenceError& e) {
        out = {0.0, false, true, 2, e.what()};
      } catch (const std::exception& e) {
        out = {0.0, false, true, 3, e.what()};
      }
    }
  };
  const unsigned workers = std::min<std::size_t>(worker_count(params.threads), std::max<std::size_t>(count, 1));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned k = 0; k < workers; ++k) pool.emplace_back(work);
  }

  BatchResult result;
  result.total = count;
  bool have_worst = false;
  for (std::size_t i = 0; i < count; ++i) {
    const Outcome& out = outcomes[i];
    if (out.failed) {
      const std::string msg = "instance " + std::to_string(i) + " of " +
                              std::string(checker_name(c)) + ": " + out.message;
      if (out.error_kind == 1) throw DomainError(msg);
      if (out.error_kind == 2) throw ConvergenceError(msg);
      throw std::runtime_error(msg);
    }
    if (out.satisfied) ++result.satisfied;
    // NaN margins count as worst.
    const bool worse = !have_worst || out.relative_margin < result.worst_relative_margin ||
                       (std::isnan(out.relative_margin) && !std::isnan(result.worst_relative_margin));
    if (worse) {
      result.worst_relative_margin = out.relative_margin;
      result.worst_index = i;
      have_worst = true;
    }
  }
  if (result.satisfied < result.total) {
    // Echo the first unsatisfied instance with the smallest margin.
    std::size_t idx = result.worst_index;
    if (outcomes[idx].satisfied) {
      for (std::size_t i = 0; i < count; ++i) {
        if (!outcomes[i].satisfied) {
          idx = i;
          break;
        }
      }
    }
    Instance inst = generate(spec, idx);
    InequalityReport rep = run_checker(c, inst, tol);
    result.worst_case = WorstCase{std::move(inst), std::move(rep)};
  }
  return result;
}

quadrature::Refined refine_oracle(double coarse, double fine, QuadratureRule rule) {
  return quadrature::refine_oracle(coarse, fine, quadrature::rule_order(rule));
}

}  // namespace hardylab::harness

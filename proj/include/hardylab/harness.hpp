// Seeded instance generators and batch property runs over the checkers.
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hardylab/core.hpp"
#include "hardylab/quadrature.hpp"

namespace hardylab::harness {

enum class GeneratorKind {
  kUniformSequence,
  kLognormalSequence,
  kMonotoneStepWeight,
  kPowerWeight,
  kNearExtremal,
  kTabulatedWeight,
};

std::string_view kind_name(GeneratorKind k) noexcept;
GeneratorKind parse_kind(std::string_view name);

/// Which extremal family near_extremal emits.
enum class ExtremalTarget { kG, kPhi };

struct Range {
  double lo;
  double hi;

  bool operator==(const Range&) const = default;
};

struct GeneratorSpec {
  std::uint64_t seed = 0;
  GeneratorKind kind = GeneratorKind::kLognormalSequence;
  /// Sequence length, step count or tabulation size.
  std::size_t size = 16;
  Range p{1.0, 3.0};
  /// Drawn inside [q.lo, min(q.hi, p)] for the p >= q checkers.
  Range q{0.25, 3.0};
  /// Power-weight exponents; clipped to the integrable window for the drawn p.
  Range a{-1.0, 1.0};
  ExtremalTarget extremal = ExtremalTarget::kG;

  void validate() const;
};

using Generated = std::variant<SequenceData, WeightFamily>;

struct Instance {
  std::size_t index = 0;
  double p = 0.0;
  double q = 0.0;
  Generated data;
  /// Extra uniforms in (0, 1) for checker-specific draws (truncation, t, ...).
  std::array<double, 4> aux{};
};

/// Instance `index` of the stream defined by spec. Each index has its own
/// generator derived from (seed, index).
Instance generate(const GeneratorSpec& spec, std::size_t index = 0);

enum class Checker {
  kCopson,
  kHardy,
  kTheoremF,
  kTheorem2,
  kLemma1,
  kYoung,
  kLemma2,
  kHardyContinuous,
  kTheoremD,
  kTheoremE,
  kTheorem1,
  kTheorem3,
  kCorollary,
};

/// Same identifiers as InequalityReport::inequality.
std::string_view checker_name(Checker c) noexcept;
Checker parse_checker(std::string_view name);
std::vector<Checker> all_checkers();
bool needs_sequence(Checker c) noexcept;

/// Applies the checker to one instance.
InequalityReport run_checker(Checker c, const Instance& inst, const ToleranceConfig& tol);

struct WorstCase {
  Instance instance;
  InequalityReport report;
};

struct BatchResult {
  std::size_t total = 0;
  std::size_t satisfied = 0;
  double worst_relative_margin = 0.0;
  std::size_t worst_index = 0;
  /// Present iff satisfied < total.
  std::optional<WorstCase> worst_case;
};

struct BatchParams {
  /// Zero leaves the per-checker default (closed form or quadrature path).
  double rel_tol = 0.0;
  QuadratureConfig quadrature{};
  /// Worker count; 0 means hardware concurrency. HARDYLAB_THREADS caps both.
  unsigned threads = 0;
};

/// Runs count instances. The result does not depend on thread count or
/// scheduling. Checker errors are rethrown with the instance index.
BatchResult run_batch(Checker c, const GeneratorSpec& spec, std::size_t count,
                      const BatchParams& params = {});

/// requested, or hardware concurrency when 0, capped by HARDYLAB_THREADS.
unsigned worker_count(unsigned requested = 0);

/// Richardson step for values at resolution r and 2r of the given rule.
quadrature::Refined refine_oracle(double coarse, double fine,
                                  QuadratureRule rule = QuadratureRule::kSimpson);

}  // namespace hardylab::harness

// Prefix transforms and checkers for the discrete Hardy-Copson family.
//
// All sums run over the first N terms. For the positive-exponent series
// (Hardy, Copson) the truncated left side is dominated by the full series,
// so every truncation is itself a valid instance. For the negative-exponent
// series the truncated statement follows from the finite-N inequality with
// the boundary correction.
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hardylab/core.hpp"

namespace hardylab::discrete {

/// Quantities of the Hoelder reduction over the first N terms, with
/// m_n = A_n / Lambda_n:
///   x = sum lambda_n m_n^{-p}
///   y = sum lambda_n a_n^{q/p} m_n^{-p-q/p}
///   z = sum lambda_n a_n^{-q} m_n^{-p+q}
///   c = Lambda_N m_N^{-p}
struct ReductionState {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double c = 0.0;
  /// ((p+1)/p)^{q/p} (x - c/(p+1))^{q/p} x^{1-q/p}
  double chain_bound = 0.0;
  /// x > c/(p+1) and y <= chain_bound within tolerance.
  bool chain_holds = false;
};

PrefixState prefix_sums(const SequenceData& seq);

/// A_n / Lambda_n.
std::vector<double> copson_mean(const SequenceData& seq);

/// sum lambda_n m_n^p <= (p/(p-1))^p sum lambda_n a_n^p, p > 1.
InequalityReport check_copson(const SequenceData& seq, double p, std::size_t N,
                              double rel_tol = 1e-9);

/// Copson with lambda = 1.
InequalityReport check_hardy_discrete(std::span<const double> a, double p, std::size_t N,
                                      double rel_tol = 1e-9);

/// sum lambda_n m_n^{-p} <= ((p+1)/p)^q sum lambda_n m_n^{-p+q} a_n^{-q}.
InequalityReport check_theorem_F(const SequenceData& seq, const Exponents& e, std::size_t N,
                                 double rel_tol = 1e-9);

/// Theorem F sharpened by the boundary term (q/(p+1)) Lambda_N m_N^{-p}.
/// Diagnostics carry x, y, z, c of the reduction.
InequalityReport check_theorem_2(const SequenceData& seq, const Exponents& e, std::size_t N,
                                 double rel_tol = 1e-9);

/// Single-term inequality behind Theorem 2, in rhs >= lhs orientation.
InequalityReport check_lemma1_term(double a_n, double mean_n, const Exponents& e,
                                   double rel_tol = 1e-9);

/// y^{-p} + p y >= p + 1 for y > 0, p >= 0.
InequalityReport check_young_pointwise(double y, double p, double rel_tol = 1e-9);

/// S_N >= (Lambda_N/(p+1)) m_N^{-p}; equality at N = 1.
InequalityReport check_lemma2(const SequenceData& seq, double p, std::size_t N,
                              double rel_tol = 1e-9);

/// Requires p > q strictly; p = q is only reachable as a limit.
ReductionState reduction_state(const SequenceData& seq, const Exponents& e, std::size_t N,
                               double rel_tol = 1e-9);

}  // namespace hardylab::discrete

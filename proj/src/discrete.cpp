#include "hardylab/discrete.hpp"

#include <cmath>
#include <string>

#include "hardylab/kernels.hpp"
#include "hardylab/summation.hpp"

namespace hardylab::discrete {

namespace {

void require_length(const SequenceData& seq, std::size_t N) {
  if (N < 1 || N > seq.size()) {
    throw DomainError("N must satisfy 1 <= N <= " + std::to_string(seq.size()));
  }
}

void require_p_above_one(double p) {
  if (!std::isfinite(p) || p <= 1.0) throw DomainError("this inequality requires p > 1");
}

// Means and weight/value views restricted to the first N terms.
struct Truncated {
  std::vector<double> mean;
  std::span<const double> lambda;
  std::span<const double> a;
  double Lambda_N;
};

Truncated truncate(const SequenceData& seq, std::size_t N) {
  require_length(seq, N);
  PrefixState ps = prefix_sums(seq);
  Truncated t;
  t.mean.resize(N);
  for (std::size_t n = 0; n < N; ++n) t.mean[n] = ps.A[n] / ps.Lambda[n];
  t.lambda = std::span<const double>(seq.lambda).first(N);
  t.a = std::span<const double>(seq.a).first(N);
  t.Lambda_N = ps.Lambda[N - 1];
  return t;
}

ReductionState compute_reduction(const Truncated& t, double p, double q, double rel_tol) {
  ReductionState s;
  s.x = kernels::weighted_power_sum(t.lambda, t.mean, -p);
  s.y = kernels::weighted_power_sum(t.lambda, t.a, q / p, t.mean, -p - q / p);
  s.z = kernels::weighted_power_sum(t.lambda, t.mean, -p + q, t.a, -q);
  s.c = t.Lambda_N * std::pow(t.mean.back(), -p);
  const double gap = s.x - s.c / (p + 1.0);
  const double r = q / p;
  s.chain_bound = gap > 0.0 ? std::pow((p + 1.0) / p, r) * std::pow(gap, r) * std::pow(s.x, 1.0 - r)
                            : 0.0;
  s.chain_holds = gap > 0.0 && s.y <= s.chain_bound * (1.0 + rel_tol);
  return s;
}

NamedValues exponent_params(const Exponents& e, std::size_t N) {
  return {{"p", e.p()}, {"q", e.q()}, {"N", static_cast<double>(N)}};
}

}  // namespace

PrefixState prefix_sums(const SequenceData& seq) {
  PrefixState ps;
  ps.Lambda.reserve(seq.size());
  ps.A.reserve(seq.size());
  CompensatedSum lambda_acc;
  CompensatedSum a_acc;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    lambda_acc += seq.lambda[i];
    a_acc += seq.lambda[i] * seq.a[i];
    ps.Lambda.push_back(lambda_acc.value());
    ps.A.push_back(a_acc.value());
  }
  return ps;
}

std::vector<double> copson_mean(const SequenceData& seq) {
  const PrefixState ps = prefix_sums(seq);
  std::vector<double> out(seq.size());
  for (std::size_t n = 0; n < out.size(); ++n) out[n] = ps.A[n] / ps.Lambda[n];
  return out;
}

InequalityReport check_copson(const SequenceData& seq, double p, std::size_t N, double rel_tol) {
  require_p_above_one(p);
  const Truncated t = truncate(seq, N);
  const double lhs = kernels::weighted_power_sum(t.lambda, t.mean, p);
  const double rhs =
      std::pow(p / (p - 1.0), p) * kernels::weighted_power_sum(t.lambda, t.a, p);
  return make_report("copson", Relation::kLessEqual, lhs, rhs, rel_tol,
                     {{"p", p}, {"N", static_cast<double>(N)}});
}

InequalityReport check_hardy_discrete(std::span<const double> a, double p, std::size_t N,
                                      double rel_tol) {
  SequenceData seq(std::vector<double>(a.size(), 1.0), std::vector<double>(a.begin(), a.end()));
  InequalityReport r = check_copson(seq, p, N, rel_tol);
  r.inequality = "hardy";
  return r;
}

InequalityReport check_theorem_F(const SequenceData& seq, const Exponents& e, std::size_t N,
                                 double rel_tol) {
  const double p = e.p();
  const double q = e.q();
  const Truncated t = truncate(seq, N);
  const double lhs = kernels::weighted_power_sum(t.lambda, t.mean, -p);
  const double z = kernels::weighted_power_sum(t.lambda, t.mean, -p + q, t.a, -q);
  const double rhs = std::pow((p + 1.0) / p, q) * z;
  return make_report("theoremF", Relation::kLessEqual, lhs, rhs, rel_tol, exponent_params(e, N));
}

InequalityReport check_theorem_2(const SequenceData& seq, const Exponents& e, std::size_t N,
                                 double rel_tol) {
  const double p = e.p();
  const double q = e.q();
  const Truncated t = truncate(seq, N);
  const ReductionState s = compute_reduction(t, p, q, rel_tol);
  const double rhs = std::pow((p + 1.0) / p, q) * s.z - q / (p + 1.0) * s.c;
  InequalityReport r = make_report("theorem2", Relation::kLessEqual, s.x, rhs, rel_tol,
                                   exponent_params(e, N));
  r.diagnostics = {{"x", s.x}, {"y", s.y}, {"z", s.z}, {"c", s.c}};
  return r;
}

InequalityReport check_lemma1_term(double a_n, double mean_n, const Exponents& e,
                                   double rel_tol) {
  if (!(a_n > 0.0) || !(mean_n > 0.0)) throw DomainError("lemma 1 needs a_n > 0 and mean > 0");
  const double p = e.p();
  const double q = e.q();
  const double r = q / p;
  const double lhs = (p + 1.0) * std::pow(mean_n, -p);
  const double rhs = std::pow((p + 1.0) / p, q) * std::pow(a_n, -q) * std::pow(mean_n, -p + q) +
                     p * std::pow(p / (p + 1.0), r) * std::pow(a_n, r) * std::pow(mean_n, -p - r);
  return make_report("lemma1", Relation::kLessEqual, lhs, rhs, rel_tol,
                     {{"p", p}, {"q", q}, {"a_n", a_n}, {"mean", mean_n}});
}

InequalityReport check_young_pointwise(double y, double p, double rel_tol) {
  if (!(y > 0.0) || !std::isfinite(y)) throw DomainError("Young check needs y > 0");
  if (!(p >= 0.0) || !std::isfinite(p)) throw DomainError("Young check needs p >= 0");
  const double lhs = p + 1.0;
  const double rhs = std::pow(y, -p) + p * y;
  return make_report("young", Relation::kLessEqual, lhs, rhs, rel_tol, {{"p", p}, {"y", y}});
}

InequalityReport check_lemma2(const SequenceData& seq, double p, std::size_t N, double rel_tol) {
  if (!(p > 0.0) || !std::isfinite(p)) throw DomainError("lemma 2 needs p > 0");
  const Truncated t = truncate(seq, N);
  const double x = kernels::weighted_power_sum(t.lambda, t.mean, -p);
  const double w = kernels::weighted_power_sum(t.lambda, t.a, 1.0, t.mean, -p - 1.0);
  const double s_n = x - p / (p + 1.0) * w;
  const double bound = t.Lambda_N / (p + 1.0) * std::pow(t.mean.back(), -p);
  return make_report("lemma2", Relation::kGreaterEqual, s_n, bound, rel_tol,
                     {{"p", p}, {"N", static_cast<double>(N)}});
}

ReductionState reduction_state(const SequenceData& seq, const Exponents& e, std::size_t N,
                               double rel_tol) {
  if (e.p() == e.q()) {
    throw DomainError("reduction state needs p > q; p = q is reached only as a limit");
  }
  return compute_reduction(truncate(seq, N), e.p(), e.q(), rel_tol);
}

}  // namespace hardylab::discrete

#include <doctest.h>

#include <cmath>
#include <vector>

#include "hardylab/discrete.hpp"
#include "oracles.hpp"

using namespace hardylab;
using namespace hardylab::discrete;

namespace {

SequenceData unit(std::vector<double> a) {
  std::vector<double> lambda(a.size(), 1.0);
  return SequenceData(std::move(lambda), std::move(a));
}

SequenceData random_sequence(oracle::Rng& rng, std::size_t n, double width) {
  return SequenceData(rng.positives(n, width), rng.positives(n, width));
}

void check_close(double got, long double want, long double rel) {
  CHECK(std::abs(got - want) <= rel * std::abs(want));
}

}  // namespace

TEST_CASE("prefix sums and means") {
  auto s = prefix_sums(SequenceData({1, 1, 1}, {1, 2, 3}));
  CHECK(s.Lambda == std::vector<double>{1, 2, 3});
  CHECK(s.A == std::vector<double>{1, 3, 6});
  s = prefix_sums(SequenceData({2, 1}, {0.5, 4}));
  CHECK(s.Lambda == std::vector<double>{2, 3});
  CHECK(s.A == std::vector<double>{1, 5});
  s = prefix_sums(SequenceData({1}, {7}));
  CHECK(s.A == std::vector<double>{7});

  const auto m = copson_mean(SequenceData({2, 1}, {0.5, 4}));
  CHECK(m[0] == 0.5);
  CHECK(m[1] == doctest::Approx(5.0 / 3.0));
  CHECK(copson_mean(SequenceData({1, 1, 1}, {1, 2, 3}))[1] == 1.5);
  for (double v : copson_mean(SequenceData({0.3, 2, 9}, {4, 4, 4}))) CHECK(v == doctest::Approx(4.0));
}

TEST_CASE("prefix sums are strictly increasing") {
  oracle::Rng rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const auto s = prefix_sums(random_sequence(rng, 1 + rng.index(200), 5.0));
    for (std::size_t i = 1; i < s.A.size(); ++i) {
      CHECK(s.A[i] > s.A[i - 1]);
      CHECK(s.Lambda[i] > s.Lambda[i - 1]);
    }
  }
}

TEST_CASE("copson and hardy examples") {
  auto r = check_copson(unit({1, 1}), 2.0, 2);
  CHECK(r.lhs == 2.0);
  CHECK(r.rhs == 8.0);
  CHECK(r.margin == 6.0);
  r = check_copson(unit({1, 0.0001, 3}), 2.0, 1);
  CHECK(r.lhs == 1.0);
  CHECK(r.rhs == 4.0);
  const std::vector<double> a{1, 1};
  r = check_hardy_discrete(a, 2.0, 2);
  CHECK(r.lhs == 2.0);
  CHECK(r.rhs == 8.0);
  CHECK_THROWS_AS(check_copson(unit({1}), 1.0, 1), DomainError);
  CHECK_THROWS_AS(check_copson(unit({1}), 2.0, 2), DomainError);

  std::vector<double> harmonic(50);
  for (std::size_t n = 0; n < harmonic.size(); ++n) harmonic[n] = 1.0 / (n + 1.0);
  r = check_hardy_discrete(harmonic, 2.0, 50);
  const auto ref = oracle::copson(std::vector<double>(50, 1.0), harmonic, 2.0, 50);
  check_close(r.lhs, ref.lhs, 1e-13L);
  check_close(r.rhs, ref.rhs, 1e-13L);
  CHECK(r.satisfied);
}

TEST_CASE("theorem F and theorem 2 examples") {
  auto r = check_theorem_F(unit({1, 1}), Exponents(1, 1), 2);
  CHECK(r.lhs == 2.0);
  CHECK(r.rhs == 4.0);

  r = check_theorem_2(unit({1, 1}), Exponents(1, 1), 2);
  CHECK(r.lhs == 2.0);
  CHECK(r.rhs == 3.0);
  CHECK(r.margin == 1.0);
  CHECK(lookup(r.diagnostics, "c") == 2.0);

  r = check_theorem_2(SequenceData({1}, {2}), Exponents(1, 1), 1);
  CHECK(r.lhs == 0.5);
  CHECK(r.rhs == 0.75);
  CHECK(r.margin == 0.25);

  r = check_theorem_F(SequenceData({3}, {2}), Exponents(2, 1), 1);
  CHECK(r.rhs == doctest::Approx(1.5 * r.lhs));
  CHECK_THROWS_AS(check_theorem_2(unit({1, 1}), Exponents(1, 1), 0), DomainError);
  CHECK_THROWS_AS(check_theorem_2(unit({1, 1}), Exponents(1, 1), 3), DomainError);
}

TEST_CASE("discrete checkers agree with long double sums") {
  oracle::Rng rng(33);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng.index(400);
    const auto seq = random_sequence(rng, n, 4.0);
    const std::size_t N = 1 + rng.index(n);
    const double p = rng.uniform(0.05, 4.0);
    const double q = rng.uniform(0.01, p);
    CAPTURE(trial);

    const auto t2 = check_theorem_2(seq, Exponents(p, q), N);
    const auto ref2 = oracle::negative(seq.lambda, seq.a, p, q, N, true);
    check_close(t2.lhs, ref2.lhs, 1e-12L);
    check_close(t2.rhs, ref2.rhs, 1e-11L);
    CHECK(t2.satisfied);

    const auto tf = check_theorem_F(seq, Exponents(p, q), N);
    const auto reff = oracle::negative(seq.lambda, seq.a, p, q, N, false);
    check_close(tf.rhs, reff.rhs, 1e-12L);
    // The sharpened statement has less slack on identical inputs.
    CHECK(t2.margin <= tf.margin);

    const auto l2 = check_lemma2(seq, p, N);
    const auto refl = oracle::lemma2(seq.lambda, seq.a, p, N);
    CHECK(std::abs(l2.lhs - refl.lhs) <= 1e-10L * (std::abs(refl.lhs) + refl.rhs));
    CHECK(l2.satisfied);

    const double pc = 1.0 + rng.uniform(0.01, 3.0);
    const auto cp = check_copson(seq, pc, N);
    const auto refc = oracle::copson(seq.lambda, seq.a, pc, N);
    check_close(cp.lhs, refc.lhs, 1e-12L);
    check_close(cp.rhs, refc.rhs, 1e-12L);
    CHECK(cp.satisfied);
  }
}

TEST_CASE("single-term inequality") {
  auto r = check_lemma1_term(1.0, 1.0, Exponents(1, 1));
  CHECK(r.lhs == 2.0);
  CHECK(r.rhs == doctest::Approx(2.5));
  CHECK(r.satisfied);
  r = check_lemma1_term(4.0, 2.0, Exponents(2, 1));
  CHECK(r.margin >= 0.0);
  for (double p : {0.5, 1.0, 3.0}) {
    CHECK(check_lemma1_term(1.7, 1.7, Exponents(p, p)).margin >= 0.0);
  }
  oracle::Rng rng(41);
  for (int i = 0; i < 5000; ++i) {
    const double p = rng.uniform(0.01, 4.0);
    const double q = rng.uniform(0.01, p);
    CHECK(check_lemma1_term(rng.spread(8.0), rng.spread(8.0), Exponents(p, q)).satisfied);
  }
}

TEST_CASE("young pointwise") {
  auto r = check_young_pointwise(1.0, 3.0);
  CHECK(r.rhs == 4.0);
  CHECK(r.margin == 0.0);
  CHECK(check_young_pointwise(2.0, 1.0).rhs == 2.5);
  CHECK(check_young_pointwise(0.5, 2.0).rhs == 5.0);
  CHECK_THROWS_AS(check_young_pointwise(0.0, 1.0), DomainError);

  // Grid scan: the margin is minimal, and zero, at y = 1.
  double best = 1e300;
  double arg = 0.0;
  for (int i = 0; i <= 990; ++i) {
    const double y = 0.1 + 0.01 * i;
    const double m = check_young_pointwise(y, 2.5).margin;
    CHECK(m >= -1e-12);
    if (m < best) {
      best = m;
      arg = y;
    }
  }
  CHECK(arg == doctest::Approx(1.0));
  CHECK(std::abs(best) <= 1e-12);
}

TEST_CASE("lemma 2 examples and equality at N = 1") {
  auto r = check_lemma2(unit({1, 1}), 1.0, 2);
  CHECK(r.lhs == 1.0);
  CHECK(r.rhs == 1.0);
  CHECK(r.margin == 0.0);
  CHECK(r.relation == Relation::kGreaterEqual);
  oracle::Rng rng(51);
  for (int i = 0; i < 1000; ++i) {
    r = check_lemma2(SequenceData({rng.spread(5.0)}, {rng.spread(5.0)}), rng.uniform(0.01, 5.0), 1);
    CHECK(std::abs(r.relative_margin) <= 1e-12);
  }
  r = check_lemma2(random_sequence(rng, 300, 2.0), 2.0, 300);
  CHECK(r.margin >= 0.0);
}

TEST_CASE("reduction state and the Hoelder chain") {
  const auto st = reduction_state(unit({1, 1}), Exponents(2, 1), 2);
  CHECK(st.x == doctest::Approx(2.0));
  CHECK(st.y == doctest::Approx(2.0));
  CHECK(st.z == doctest::Approx(2.0));
  CHECK(st.c == doctest::Approx(2.0));
  CHECK(st.chain_bound == doctest::Approx(2.0));
  CHECK(st.chain_holds);
  CHECK_THROWS_AS(reduction_state(unit({1, 1}), Exponents(1, 1), 2), DomainError);

  // N = 1 against the direct formula.
  const double l = 2.5, a = 0.7, p = 3.0, q = 1.2;
  const auto one = reduction_state(SequenceData({l}, {a}), Exponents(p, q), 1);
  CHECK(one.y == doctest::Approx(l * std::pow(a, q / p) * std::pow(a, -p - q / p)));
  CHECK(one.x == doctest::Approx(l * std::pow(a, -p)));

  oracle::Rng rng(61);
  for (int i = 0; i < 500; ++i) {
    const double pp = rng.uniform(0.1, 4.0);
    const double qq = rng.uniform(0.01, pp * 0.999);
    const std::size_t n = 1 + rng.index(100);
    const auto s = reduction_state(random_sequence(rng, n, 3.0), Exponents(pp, qq), n);
    CHECK(s.x > s.c / (pp + 1.0));
    CHECK(s.chain_holds);
  }
}

TEST_CASE("theorem 2 is continuous as p approaches q") {
  oracle::Rng rng(71);
  const auto seq = random_sequence(rng, 50, 1.0);
  const double q = 1.3;
  const auto base = check_theorem_2(seq, Exponents(q, q), 50);
  const auto d3 = check_theorem_2(seq, Exponents(q + 1e-3, q), 50);
  const auto d6 = check_theorem_2(seq, Exponents(q + 1e-6, q), 50);
  const double g3 = std::abs(d3.lhs - base.lhs) + std::abs(d3.rhs - base.rhs);
  const double g6 = std::abs(d6.lhs - base.lhs) + std::abs(d6.rhs - base.rhs);
  CHECK(g6 < g3);
  // Linear in delta: the ratio of gaps is close to 1e3.
  CHECK(g3 / g6 == doctest::Approx(1e3).epsilon(0.01));
}

#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "qcorr/ensembles.hpp"
#include "qcorr/measures.hpp"
#include "qcorr/monogamy.hpp"
#include "support.hpp"

using namespace qcorr;
using doctest::Approx;

TEST_CASE("GHZ is monogamous for every measure") {
  const auto ghz = support::ghz(3);
  for (auto m : {QcMeasure::Negativity, QcMeasure::Concurrence, QcMeasure::Discord}) {
    const auto rec = monogamy_score(ghz, m, 1.0);
    CHECK(rec.pair_values.size() == 2);
    for (double q : rec.pair_values) CHECK(q == 0.0);
    CHECK(rec.score == Approx(rec.one_vs_rest));
    CHECK(rec.monogamous());
  }
  CHECK(monogamy_score(ghz, QcMeasure::Negativity, 1.0).score == Approx(0.5));
}

TEST_CASE("W state scores") {
  const auto w = support::w3();
  const auto c1 = monogamy_score(w, QcMeasure::Concurrence, 1.0);
  CHECK(c1.one_vs_rest == Approx(2 * std::sqrt(2.0) / 3));
  CHECK(c1.pair_values[0] == Approx(2.0 / 3.0));
  CHECK(c1.pair_values[1] == Approx(2.0 / 3.0));
  CHECK(c1.score == Approx(2 * std::sqrt(2.0) / 3 - 4.0 / 3.0));
  CHECK_FALSE(c1.monogamous());

  // Squared concurrence saturates the tangle inequality.
  const auto c2 = monogamy_score(w, QcMeasure::Concurrence, 2.0);
  CHECK(std::abs(c2.score) < 1e-12);
  CHECK(c2.monogamous());

  const auto n1 = monogamy_score(w, QcMeasure::Negativity, 1.0);
  CHECK(n1.score == Approx(std::sqrt(2.0) / 3 - (std::sqrt(5.0) - 1) / 3));
  CHECK(n1.monogamous());

  const auto d1 = monogamy_score(w, QcMeasure::Discord, 1.0);
  CHECK(d1.one_vs_rest == Approx(binary_entropy(2.0 / 3.0)));
  CHECK_FALSE(d1.monogamous());
}

TEST_CASE("record from terms matches direct score") {
  for (std::uint64_t i = 0; i < 10; ++i) {
    const auto s = sample_haar(4, {8, i});
    for (auto m : {QcMeasure::Negativity, QcMeasure::Concurrence}) {
      const auto terms = monogamy_terms(s, m);
      for (double alpha : {0.5, 1.0, 2.0}) {
        const auto rec = monogamy_score(s, m, alpha);
        CHECK(make_record(terms, alpha).score == Approx(rec.score));
        CHECK(terms.score(alpha) == Approx(rec.score));
        CHECK(bipartite_sum(s, m, alpha) == Approx(terms.pair_sum(alpha)));
        CHECK(rec.one_vs_rest - terms.pair_sum(alpha) == Approx(rec.score));
      }
    }
  }
}

TEST_CASE("pair values use the two-qubit marginals") {
  const auto s = sample_haar(4, {12, 3});
  const auto terms = monogamy_terms(s, QcMeasure::Concurrence, 1);
  REQUIRE(terms.pair_values.size() == 3);
  CHECK(terms.pair_values[0] == Approx(concurrence(reduced_density(s, {0, 1}))));
  CHECK(terms.pair_values[1] == Approx(concurrence(reduced_density(s, {1, 2}))));
  CHECK(terms.pair_values[2] == Approx(concurrence(reduced_density(s, {1, 3}))));
  CHECK(terms.one_vs_rest == Approx(concurrence_one_vs_rest(s, 1)));

  // Discord measures the nodal party, which is the second subsystem of (0, 1).
  const auto d = monogamy_terms(s, QcMeasure::Discord, 1);
  CHECK(d.pair_values[0] == Approx(discord(reduced_density(s, {0, 1}), 1)).epsilon(1e-6));
  CHECK(d.pair_values[1] == Approx(discord(reduced_density(s, {1, 2}), 0)).epsilon(1e-6));
}

TEST_CASE("score is symmetric under permuting non-nodal qubits") {
  for (std::uint64_t i = 0; i < 10; ++i) {
    const auto s = sample_haar(4, {15, i});
    const auto t = support::swap_qubits(s, 1, 3);
    for (auto m : {QcMeasure::Negativity, QcMeasure::Concurrence}) {
      CHECK(monogamy_score(s, m, 1.0).score == Approx(monogamy_score(t, m, 1.0).score).epsilon(1e-10));
    }
  }
}

TEST_CASE("generalized GHZ meets the bound with equality") {
  for (double a2 : {0.55, 0.7, 0.9, 0.99}) {
    const auto s = make_gghz(3, std::sqrt(a2));
    const double g = ggm(s);
    CHECK(g == Approx(1 - a2));
    CHECK(monogamy_score(s, QcMeasure::Negativity, 1.0).score == Approx(gghz_bound(g)));
    CHECK(monogamy_score(s, QcMeasure::Concurrence, 1.0).score == Approx(2 * gghz_bound(g)));
  }
  CHECK(gghz_bound(0.0) == 0.0);
  CHECK(gghz_bound(0.5) == Approx(0.5));
  CHECK_THROWS_AS(gghz_bound(0.6), std::invalid_argument);
}

TEST_CASE("three-qubit scores never exceed the gGHZ bound") {
  for (std::uint64_t i = 0; i < 2000; ++i) {
    const auto s = sample_haar(3, {404, i});
    const double g = ggm(s);
    REQUIRE(g <= 0.5);
    CHECK(monogamy_score(s, QcMeasure::Negativity, 1.0).score <= gghz_bound(g) + 1e-7);
    CHECK(monogamy_score(s, QcMeasure::Concurrence, 1.0).score <= 2 * gghz_bound(g) + 1e-7);
  }
}

TEST_CASE("the gGHZ bound fails beyond three qubits") {
  bool exceeded = false;
  for (std::uint64_t i = 0; i < 500 && !exceeded; ++i) {
    const auto s = sample_haar(4, {405, i});
    exceeded = monogamy_score(s, QcMeasure::Negativity, 1.0).score > gghz_bound(ggm(s)) + 1e-3;
  }
  CHECK(exceeded);
}

TEST_CASE("critical exponent") {
  const auto w = support::w3();
  const auto c = critical_exponent(w, QcMeasure::Concurrence);
  CHECK(c.value == Approx(2.0).epsilon(1e-3));
  CHECK_FALSE(c.right_censored);

  // Closed form for the W negativity crossing.
  const double q = std::sqrt(2.0) / 3;
  const double p = (std::sqrt(5.0) - 1) / 6;
  const double root = std::log(2.0) / std::log(q / p);
  const auto neg = critical_exponent(w, QcMeasure::Negativity);
  CHECK(std::abs(neg.value - root) < 2e-3);

  CHECK(critical_exponent(support::ghz(3), QcMeasure::Negativity).value == 0.0);

  const auto censored = critical_exponent(w, QcMeasure::Negativity, ExponentGrid{0.05, 0.5, 0.05});
  CHECK(censored.right_censored);
  CHECK(censored.value == Approx(0.5));
  CHECK_THROWS_AS(critical_exponent(w, QcMeasure::Negativity, ExponentGrid{1.0, 0.5, 0.05}),
                  std::invalid_argument);
}

TEST_CASE("exponent monotonicity of the violation set for W-class states") {
  // Every grid point below the critical exponent violates.
  for (std::uint64_t i = 0; i < 20; ++i) {
    const auto s = sample_wclass({6, i});
    const auto terms = monogamy_terms(s, QcMeasure::Concurrence);
    const auto c = critical_exponent(terms);
    CHECK(terms.score(c.value + 0.01) >= kViolationThreshold);
    if (c.value > 0.1) CHECK(terms.score(c.value - 0.05) < kViolationThreshold);
  }
}

TEST_CASE("argument validation") {
  CHECK_THROWS_AS(monogamy_score(support::bell(), QcMeasure::Negativity, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(monogamy_score(support::w3(), QcMeasure::Negativity, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(monogamy_score(support::w3(), QcMeasure::Negativity, 1.0, 3), std::invalid_argument);
  CHECK_THROWS_AS(bipartite_sum(support::w3(), QcMeasure::Negativity, -1.0), std::invalid_argument);
}

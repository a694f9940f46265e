#include <doctest.h>

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qcorr/ensembles.hpp"
#include "qcorr/measures.hpp"

using namespace qcorr;
using doctest::Approx;

TEST_CASE("samples are reproducible from the seed pair") {
  const auto a = sample_haar(4, {42, 7});
  const auto b = sample_haar(4, {42, 7});
  CHECK(a.amplitudes() == b.amplitudes());
  CHECK(sample_haar(4, {42, 8}).amplitudes() != a.amplitudes());
  CHECK(sample_haar(4, {43, 7}).amplitudes() != a.amplitudes());
  CHECK(sample_wclass({1, 2}).amplitudes() == sample_wclass({1, 2}).amplitudes());
  CHECK(sample_dicke(5, 2, {1, 2}).amplitudes() == sample_dicke(5, 2, {1, 2}).amplitudes());
}

TEST_CASE("Haar samples are normalized and complex") {
  for (std::uint64_t i = 0; i < 50; ++i) {
    const auto s = sample_haar(3, {1, i});
    CHECK(s.amplitudes().norm() == Approx(1.0).epsilon(1e-12));
    CHECK(s.amplitudes().imag().norm() > 0.0);
  }
  CHECK_THROWS_AS(sample_haar(0, {1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(sample_haar(9, {1, 0}), std::invalid_argument);
}

TEST_CASE("W-class support") {
  for (std::uint64_t i = 0; i < 20; ++i) {
    const auto s = sample_wclass({5, i});
    REQUIRE(s.num_qubits() == 3);
    for (std::size_t x = 0; x < 8; ++x) {
      if (std::popcount(x) > 1) CHECK(std::abs(s[x]) == 0.0);
    }
    CHECK(std::abs(s[0b001]) > 0.0);
  }
}

TEST_CASE("Dicke-class support has fixed excitation number") {
  for (int n = 3; n <= 6; ++n) {
    for (int r = 1; r < n; ++r) {
      const auto s = sample_dicke(n, r, {3, static_cast<std::uint64_t>(n * 10 + r)});
      int nonzero = 0;
      for (std::size_t x = 0; x < s.dim(); ++x) {
        if (std::popcount(x) != r) {
          CHECK(std::abs(s[x]) == 0.0);
        } else if (std::abs(s[x]) > 0.0) {
          ++nonzero;
        }
      }
      CHECK(static_cast<std::uint64_t>(nonzero) == binomial(n, r));
    }
  }
  CHECK_THROWS_AS(sample_dicke(4, 0, {1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(sample_dicke(4, 4, {1, 0}), std::invalid_argument);
}

TEST_CASE("binomial") {
  CHECK(binomial(6, 3) == 20);
  CHECK(binomial(5, 0) == 1);
  CHECK(binomial(8, 8) == 1);
  CHECK(binomial(3, 4) == 0);
}

TEST_CASE("generalized GHZ") {
  const auto s = make_gghz(3, std::sqrt(0.64));
  CHECK(s[0].real() == Approx(0.8));
  CHECK(s[7].real() == Approx(0.6));
  CHECK_THROWS_AS(make_gghz(3, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(make_gghz(3, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_gghz(1, 0.5), std::invalid_argument);
}

TEST_CASE("equal Dicke states") {
  const auto w = make_dicke_equal(3, 1);
  CHECK(w[0b001].real() == Approx(1 / std::sqrt(3.0)));
  CHECK(w[0b010].real() == Approx(1 / std::sqrt(3.0)));
  CHECK(w[0b100].real() == Approx(1 / std::sqrt(3.0)));
  const auto d = make_dicke_equal(4, 2);
  CHECK(d[0b0011].real() == Approx(1 / std::sqrt(6.0)));
  CHECK(std::abs(d[0b0111]) == 0.0);
}

TEST_CASE("canonical three-qubit states") {
  const double r = 1 / std::sqrt(2.0);
  const auto s = make_canonical3({r, 0, 0, 0, r}, 0.0);
  CHECK(s[0].real() == Approx(r));
  CHECK(s[7].real() == Approx(r));
  const auto p = make_canonical3({0.6, 0.8, 0, 0, 0}, std::numbers::pi / 2);
  CHECK(std::abs(p[4] - Complex(0.0, 0.8)) < 1e-12);
  CHECK_THROWS_AS(make_canonical3({0.5, 0.5, 0, 0, 0}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(make_canonical3({-0.6, 0.8, 0, 0, 0}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(make_canonical3({0.6, 0.8, 0, 0, 0}, 7.0), std::invalid_argument);
}

TEST_CASE("family dispatch") {
  CHECK(num_qubits(family::HaarRandom{5}) == 5);
  CHECK(num_qubits(family::WClass{}) == 3);
  CHECK(num_qubits(family::Dicke{6, 3}) == 6);
  CHECK(family_label(family::HaarRandom{5}) == "random");
  CHECK(family_label(family::WClass{}) == "wclass");
  CHECK(family_label(family::Dicke{6, 3}) == "dicke");
  CHECK(family_label(family::GGHZ{3, 0.5}) == "gghz");
  CHECK(family_label(family::CanonicalThreeQubit{{1, 0, 0, 0, 0}, 0}) == "canonical3");
  CHECK_THROWS_AS(validate(family::Dicke{4, 5}), std::invalid_argument);
  CHECK_THROWS_AS(validate(family::HaarRandom{0}), std::invalid_argument);
  CHECK_THROWS_AS(validate(family::GGHZ{3, 1.5}), std::invalid_argument);
  CHECK(sample(family::HaarRandom{3}, {9, 4}).amplitudes() == sample_haar(3, {9, 4}).amplitudes());
  CHECK(sample(family::GGHZ{3, 0.6}, {9, 4}).amplitudes() == make_gghz(3, 0.6).amplitudes());
}

TEST_CASE("Haar GGM distribution for three qubits") {
  // Random three-qubit states concentrate near GGM 0.16.
  double sum = 0.0;
  const int count = 2000;
  for (int i = 0; i < count; ++i) sum += ggm(sample_haar(3, {2024, static_cast<std::uint64_t>(i)}));
  CHECK(sum / count == Approx(0.1625).epsilon(0.06));
}

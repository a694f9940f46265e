#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "oracles.hpp"
#include "qcorr/ensembles.hpp"
#include "qcorr/qstate.hpp"
#include "support.hpp"

using namespace qcorr;
using doctest::Approx;

TEST_CASE("normalize scales while keeping direction") {
  Vector v = Vector::Zero(4);
  v[0] = 2.0;
  auto s = normalize(v);
  CHECK(s.num_qubits() == 2);
  CHECK(std::abs(s[0] - Complex(1.0, 0.0)) < 1e-15);

  Vector w(2);
  w << 1.0, 1.0;
  auto t = normalize(w);
  CHECK(t[0].real() == Approx(1 / std::sqrt(2.0)));
  CHECK(t[1].real() == Approx(1 / std::sqrt(2.0)));

  Vector c(2);
  c << Complex(1, 1), 0.0;
  auto u = normalize(c);
  CHECK(std::abs(u[0] - Complex(1, 1) / std::sqrt(2.0)) < 1e-15);
}

TEST_CASE("normalize rejects degenerate input") {
  CHECK_THROWS_WITH_AS(normalize(Vector(Vector::Zero(4))), "degenerate sample", std::invalid_argument);
  CHECK_THROWS_AS(normalize(Vector(Vector::Ones(3))), std::invalid_argument);
  CHECK_THROWS_AS(PureState(Vector(Vector::Ones(4))), std::invalid_argument);
}

TEST_CASE("reduced density of reference states") {
  const auto ghz = support::ghz(3);
  const auto rho = reduced_density(ghz, {0});
  CHECK(rho.dim() == 2);
  CHECK(rho.matrix()(0, 0).real() == Approx(0.5));
  CHECK(rho.matrix()(1, 1).real() == Approx(0.5));
  CHECK(std::abs(rho.matrix()(0, 1)) < 1e-15);

  const auto zero = support::basis_state(3, 0);
  const auto r0 = reduced_density(zero, {0});
  CHECK(r0.matrix()(0, 0).real() == Approx(1.0));
  CHECK(std::abs(r0.matrix()(1, 1)) < 1e-15);

  const auto gg = make_gghz(3, std::sqrt(0.8));
  const auto ev = eigenvalues_hermitian(reduced_density(gg, {0}).matrix());
  CHECK(ev[0] == Approx(0.8));
  CHECK(ev[1] == Approx(0.2));

  // Keeping everything returns the pure projector.
  const int all[3] = {0, 1, 2};
  const auto full = reduced_density(ghz, all);
  const Vector& a = ghz.amplitudes();
  CHECK((full.matrix() - a * a.adjoint()).cwiseAbs().maxCoeff() < 1e-15);
  CHECK_THROWS_AS(reduced_density(ghz, std::span<const int>{}), std::invalid_argument);
  CHECK_THROWS_AS(reduced_density(ghz, {3}), std::invalid_argument);
}

TEST_CASE("reduced density matches brute-force partial trace on random states") {
  for (std::uint64_t i = 0; i < 20; ++i) {
    const int n = 2 + static_cast<int>(i % 4);
    const auto s = sample_haar(n, {7, i});
    for (const std::vector<int>& keep : {std::vector<int>{0}, std::vector<int>{n - 1},
                                         std::vector<int>{0, n - 1}}) {
      if (keep.size() == 2 && n < 2) continue;
      const auto direct = reduced_density(s, keep);
      const auto ref = oracle::partial_trace(s.amplitudes(), n, keep);
      CHECK((direct.matrix() - ref).cwiseAbs().maxCoeff() < 1e-12);
      // Density matrix invariants.
      CHECK_NOTHROW(DensityMatrix(direct.matrix()));
    }
  }
}

TEST_CASE("nested reduction equals direct reduction") {
  // reduce to {0,2,3} on the state, then to {0,3}: compare with direct {0,3}.
  for (std::uint64_t i = 0; i < 10; ++i) {
    const auto s = sample_haar(4, {11, i});
    const auto three = reduced_density(s, {0, 2, 3});
    // Purify-free check: trace out the middle subsystem of the 3-qubit matrix.
    Matrix nested = Matrix::Zero(4, 4);
    for (int a = 0; a < 2; ++a)
      for (int c = 0; c < 2; ++c)
        for (int ap = 0; ap < 2; ++ap)
          for (int cp = 0; cp < 2; ++cp)
            for (int b = 0; b < 2; ++b)
              nested(2 * a + c, 2 * ap + cp) += three.matrix()(4 * a + 2 * b + c, 4 * ap + 2 * b + cp);
    const auto direct = reduced_density(s, {0, 3});
    CHECK((nested - direct.matrix()).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("hermitian eigenvalues are sorted descending") {
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 0.2;
  d(1, 1) = 0.8;
  auto ev = eigenvalues_hermitian(d);
  CHECK(ev[0] == Approx(0.8));
  CHECK(ev[1] == Approx(0.2));

  Matrix p(2, 2);
  p << 0.5, 0.5, 0.5, 0.5;
  ev = eigenvalues_hermitian(p);
  CHECK(ev[0] == Approx(1.0));
  CHECK(std::abs(ev[1]) < 1e-15);

  ev = eigenvalues_hermitian(Matrix(Matrix::Identity(4, 4) * 0.25));
  for (double e : ev) CHECK(e == Approx(0.25));

  Matrix bad(2, 2);
  bad << 1.0, 0.5, 0.0, 0.0;
  CHECK_THROWS_AS(eigenvalues_hermitian(bad), std::invalid_argument);
}

TEST_CASE("partial transpose") {
  const auto bell = DensityMatrix::from_pure(support::bell());
  const int first[1] = {0};
  const Matrix pt = partial_transpose(bell, first);
  CHECK((pt - oracle::transpose_first(bell.matrix())).cwiseAbs().maxCoeff() < 1e-15);
  const auto ev = oracle::sorted_real_eigs(pt);
  CHECK(ev[0] == Approx(0.5));
  CHECK(ev[1] == Approx(0.5));
  CHECK(ev[2] == Approx(0.5));
  CHECK(ev[3] == Approx(-0.5));

  const auto prod = DensityMatrix::from_pure(support::basis_state(2, 0));
  CHECK((partial_transpose(prod, first) - prod.matrix()).cwiseAbs().maxCoeff() == 0.0);

  for (std::uint64_t i = 0; i < 10; ++i) {
    const auto rho = reduced_density(sample_haar(4, {3, i}), {0, 1, 3});
    const int t[2] = {0, 2};
    const Matrix once = partial_transpose(rho, t);
    const Matrix twice = partial_transpose(DensityMatrix(once, DensityMatrix::Unchecked{}), t);
    CHECK((twice - rho.matrix()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(std::abs(once.trace() - rho.matrix().trace()) < 1e-12);
    CHECK((once - once.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    double sum = 0.0;
    for (double e : eigenvalues_hermitian(once)) sum += e;
    CHECK(sum == Approx(1.0).epsilon(1e-10));
  }
  const int all[2] = {0, 1};
  CHECK_THROWS_AS(partial_transpose(bell, all), std::invalid_argument);
}

TEST_CASE("max Schmidt coefficient") {
  CHECK(max_schmidt(support::ghz(3), Bipartition(3, 0b001)) == Approx(0.5));
  for (std::uint32_t mask : {1u, 2u, 3u, 4u, 5u, 6u}) {
    CHECK(max_schmidt(support::basis_state(3, 0), Bipartition(3, mask)) == Approx(1.0));
    CHECK(max_schmidt(make_gghz(3, std::sqrt(0.8)), Bipartition(3, mask)) == Approx(0.8));
  }
}

TEST_CASE("Schmidt symmetry across a cut") {
  for (std::uint64_t i = 0; i < 20; ++i) {
    const int n = 3 + static_cast<int>(i % 3);
    const auto s = sample_haar(n, {5, i});
    const std::uint32_t full = (1u << n) - 1;
    for (std::uint32_t mask = 1; mask < full; ++mask) {
      const double la = eigenvalues_hermitian(reduced_density(s, Bipartition(n, mask).part_a()).matrix())[0];
      const double lb = eigenvalues_hermitian(reduced_density(s, Bipartition(n, mask).part_b()).matrix())[0];
      CHECK(std::abs(la - lb) < 1e-9);
    }
  }
}

TEST_CASE("bipartition validation") {
  CHECK_THROWS_AS(Bipartition(3, 0), std::invalid_argument);
  CHECK_THROWS_AS(Bipartition(3, 0b111), std::invalid_argument);
  CHECK_THROWS_AS(Bipartition(3, 0b1000), std::invalid_argument);
  const Bipartition b(4, 0b0101);
  CHECK(b.part_a() == std::vector<int>{0, 2});
  CHECK(b.part_b() == std::vector<int>{1, 3});
}

TEST_CASE("measurement basis projectors are orthogonal and complete") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 2 * std::numbers::pi);
  for (int k = 0; k < 50; ++k) {
    const BlochAngles a{u(rng) / 2, u(rng)};
    const auto v0 = MeasurementBasis::ket(a, 0);
    const auto v1 = MeasurementBasis::ket(a, 1);
    Eigen::Matrix2cd sum = Eigen::Matrix2cd::Zero();
    for (const auto& v : {v0, v1}) {
      Eigen::Vector2cd e(v[0], v[1]);
      sum += e * e.adjoint();
    }
    CHECK((sum - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(std::abs(std::conj(v0[0]) * v1[0] + std::conj(v0[1]) * v1[1]) < 1e-12);
  }
}

TEST_CASE("local projective measurement branches") {
  const int third[1] = {2};
  {
    auto br = apply_local_projectors(support::ghz(3), third, MeasurementBasis({MeasurementBasis::pauli_x()}));
    REQUIRE(br.size() == 2);
    const double r = 1 / std::sqrt(2.0);
    CHECK(br[0].probability == Approx(0.5));
    CHECK(br[1].probability == Approx(0.5));
    CHECK(std::abs(br[0].state[0] - r) < 1e-12);
    CHECK(std::abs(br[0].state[3] - r) < 1e-12);
    // Outcome 1 of X carries the relative minus sign (up to global phase).
    CHECK(std::abs(br[1].state[0] + br[1].state[3]) < 1e-12);
  }
  {
    auto br = apply_local_projectors(support::basis_state(3, 0), third,
                                     MeasurementBasis({MeasurementBasis::pauli_z()}));
    REQUIRE(br.size() == 1);
    CHECK(br[0].probability == Approx(1.0));
    CHECK(std::abs(br[0].state[0] - 1.0) < 1e-12);
  }
  {
    auto br = apply_local_projectors(support::w3(), third, MeasurementBasis({MeasurementBasis::pauli_z()}));
    REQUIRE(br.size() == 2);
    CHECK(br[0].probability == Approx(2.0 / 3.0));
    CHECK(br[0].state[1].real() == Approx(1 / std::sqrt(2.0)));
    CHECK(br[0].state[2].real() == Approx(1 / std::sqrt(2.0)));
    CHECK(br[1].probability == Approx(1.0 / 3.0));
    CHECK(std::abs(br[1].state[0]) == Approx(1.0));
  }
  CHECK_THROWS_AS(apply_local_projectors(support::ghz(3), third, MeasurementBasis()), std::invalid_argument);
}

TEST_CASE("measurement branches reconstruct the unmeasured marginal") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, std::numbers::pi);
  for (std::uint64_t i = 0; i < 20; ++i) {
    const auto s = sample_haar(5, {13, i});
    const int meas[3] = {1, 2, 4};
    MeasurementBasis basis({{u(rng), 2 * u(rng)}, {u(rng), 2 * u(rng)}, {u(rng), 2 * u(rng)}});
    const auto br = apply_local_projectors(s, meas, basis);
    Matrix mix = Matrix::Zero(4, 4);
    double total = 0.0;
    for (const auto& b : br) {
      const Vector& v = b.state.amplitudes();
      mix += b.probability * v * v.adjoint();
      total += b.probability;
      CHECK(v.norm() == Approx(1.0));
    }
    CHECK(total == Approx(1.0).epsilon(1e-10));
    CHECK((mix - reduced_density(s, {0, 3}).matrix()).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("von Neumann entropy") {
  Matrix half = Matrix::Identity(2, 2) * 0.5;
  CHECK(von_neumann_entropy(DensityMatrix(half)) == Approx(1.0));
  CHECK(von_neumann_entropy(DensityMatrix::from_pure(support::ghz(3))) == Approx(0.0).epsilon(1e-12));
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 0.7;
  d(1, 1) = 0.3;
  CHECK(von_neumann_entropy(DensityMatrix(d)) == Approx(0.8812908992306927));
  CHECK(oracle::h2(0.7) == Approx(0.8813).epsilon(1e-4));
}

TEST_CASE("entropy is invariant under local unitaries") {
  std::mt19937_64 rng(9);
  for (std::uint64_t i = 0; i < 20; ++i) {
    const auto s = sample_haar(4, {17, i});
    auto t = s;
    for (int q = 0; q < 4; ++q) t = apply_local_unitary(t, q, oracle::random_unitary(rng));
    for (const std::vector<int>& keep : {std::vector<int>{0}, std::vector<int>{0, 1}, std::vector<int>{1, 2, 3}}) {
      CHECK(std::abs(von_neumann_entropy(reduced_density(s, keep)) -
                     von_neumann_entropy(reduced_density(t, keep))) < 1e-9);
    }
  }
}

#include "qcorr/qstate.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace qcorr {

namespace {

int log2_exact(std::size_t len) {
  if (len < 2 || !std::has_single_bit(len)) {
    throw std::invalid_argument("amplitude vector length " + std::to_string(len) +
                                " is not a power of two >= 2");
  }
  return std::countr_zero(len);
}

std::vector<int> sorted_unique(std::span<const int> qubits, int n, const char* what) {
  std::vector<int> out(qubits.begin(), qubits.end());
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end()) {
    throw std::invalid_argument(std::string(what) + ": repeated qubit index");
  }
  for (int q : out) {
    if (q < 0 || q >= n) {
      throw std::invalid_argument(std::string(what) + ": qubit index " + std::to_string(q) +
                                  " out of range for " + std::to_string(n) + " qubits");
    }
  }
  return out;
}

int qubit_count_of(Eigen::Index dim) {
  return log2_exact(static_cast<std::size_t>(dim));
}

}  // namespace

PureState::PureState(Vector amplitudes) : amps_(std::move(amplitudes)) {
  n_ = log2_exact(static_cast<std::size_t>(amps_.size()));
  if (n_ > kMaxQubits) {
    throw std::invalid_argument("at most " + std::to_string(kMaxQubits) + " qubits supported");
  }
  const double norm2 = amps_.squaredNorm();
  if (std::abs(norm2 - 1.0) > kNormTolerance) {
    throw std::invalid_argument("state is not normalized: squared norm " + std::to_string(norm2));
  }
}

PureState normalize(Vector raw) {
  log2_exact(static_cast<std::size_t>(raw.size()));
  const double norm = raw.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw std::invalid_argument("degenerate sample");
  }
  raw /= norm;
  return PureState(std::move(raw));
}

PureState normalize(std::span<const Complex> raw) {
  Vector v(static_cast<Eigen::Index>(raw.size()));
  for (std::size_t i = 0; i < raw.size(); ++i) v[static_cast<Eigen::Index>(i)] = raw[i];
  return normalize(std::move(v));
}

DensityMatrix::DensityMatrix(Matrix entries) : rho_(std::move(entries)) {
  if (rho_.rows() != rho_.cols()) throw std::invalid_argument("density matrix must be square");
  m_ = qubit_count_of(rho_.rows());
  const double asym = (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
  if (asym > 1e-10) throw std::invalid_argument("density matrix is not Hermitian");
  const Complex tr = rho_.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > 1e-10) {
    throw std::invalid_argument("density matrix trace " + std::to_string(tr.real()) + " != 1");
  }
  const auto spectrum = eigenvalues_hermitian(rho_);
  if (spectrum.back() < -1e-9) throw std::invalid_argument("density matrix is not PSD");
}

DensityMatrix::DensityMatrix(Matrix entries, Unchecked) noexcept
    : m_(std::countr_zero(static_cast<std::size_t>(entries.rows()))), rho_(std::move(entries)) {}

DensityMatrix DensityMatrix::from_pure(const PureState& state) {
  const Vector& v = state.amplitudes();
  return DensityMatrix(v * v.adjoint(), Unchecked{});
}

Bipartition::Bipartition(int num_qubits, std::uint32_t mask_a) : n_(num_qubits), mask_(mask_a) {
  if (n_ < 2 || n_ > kMaxQubits) throw std::invalid_argument("bipartition needs 2..8 qubits");
  if (mask_ == 0 || (mask_ & ~full_mask()) != 0 || mask_ == full_mask()) {
    throw std::invalid_argument("bipartition part must be a nonempty proper subset");
  }
}

Bipartition Bipartition::from_qubits(int num_qubits, std::span<const int> part_a) {
  std::uint32_t mask = 0;
  for (int q : sorted_unique(part_a, num_qubits, "bipartition")) mask |= 1u << q;
  return Bipartition(num_qubits, mask);
}

std::vector<int> Bipartition::part_a() const {
  std::vector<int> out;
  for (int q = 0; q < n_; ++q)
    if (mask_ >> q & 1u) out.push_back(q);
  return out;
}

std::vector<int> Bipartition::part_b() const {
  std::vector<int> out;
  for (int q = 0; q < n_; ++q)
    if (!(mask_ >> q & 1u)) out.push_back(q);
  return out;
}

std::vector<int> Bipartition::smaller_side() const {
  return std::popcount(mask_) * 2 <= n_ ? part_a() : part_b();
}

BlochAngles MeasurementBasis::pauli_x() noexcept { return {std::numbers::pi / 2, 0.0}; }
BlochAngles MeasurementBasis::pauli_y() noexcept {
  return {std::numbers::pi / 2, std::numbers::pi / 2};
}
BlochAngles MeasurementBasis::pauli_z() noexcept { return {0.0, 0.0}; }

std::array<Complex, 2> MeasurementBasis::ket(BlochAngles a, int outcome) {
  const double c = std::cos(a.theta / 2);
  const double s = std::sin(a.theta / 2);
  if (outcome == 0) return {Complex(c, 0.0), std::polar(s, a.phi)};
  return {-std::polar(s, -a.phi), Complex(c, 0.0)};
}

std::array<Complex, 2> MeasurementBasis::ket(std::size_t k, int outcome) const {
  return ket(angles_.at(k), outcome);
}

DensityMatrix reduced_density(const PureState& state, std::span<const int> keep) {
  const int n = state.num_qubits();
  if (keep.empty()) throw std::invalid_argument("reduced_density: empty keep set");
  const auto kept = sorted_unique(keep, n, "reduced_density");
  const int k = static_cast<int>(kept.size());
  std::uint32_t keep_mask = 0;
  for (int q : kept) keep_mask |= 1u << q;

  // Reshape into (kept) x (environment) and form M M^dagger.
  const Eigen::Index rows = Eigen::Index{1} << k;
  const Eigen::Index cols = Eigen::Index{1} << (n - k);
  Matrix m(rows, cols);
  for (std::size_t x = 0; x < state.dim(); ++x) {
    Eigen::Index r = 0;
    Eigen::Index c = 0;
    for (int q = 0; q < n; ++q) {
      const int b = qubit_bit(x, q, n);
      if (keep_mask >> q & 1u) {
        r = (r << 1) | b;
      } else {
        c = (c << 1) | b;
      }
    }
    m(r, c) = state[x];
  }
  return DensityMatrix(m * m.adjoint(), DensityMatrix::Unchecked{});
}

DensityMatrix reduced_density(const PureState& state, std::initializer_list<int> keep) {
  return reduced_density(state, std::span<const int>(keep.begin(), keep.size()));
}

std::vector<double> eigenvalues_hermitian(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("eigenvalues_hermitian: matrix not square");
  if (m.size() > 0 && (m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-8) {
    throw std::invalid_argument("eigenvalues_hermitian: matrix is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
  const auto& ev = solver.eigenvalues();
  std::vector<double> out(ev.data(), ev.data() + ev.size());
  std::reverse(out.begin(), out.end());
  return out;
}

Matrix partial_transpose(const DensityMatrix& dm, std::span<const int> transposed) {
  const int m = dm.num_qubits();
  const auto parts = sorted_unique(transposed, m, "partial_transpose");
  if (parts.empty() || static_cast<int>(parts.size()) == m) {
    throw std::invalid_argument("partial_transpose: need a nonempty proper subset");
  }
  Eigen::Index flip = 0;
  for (int q : parts) flip |= Eigen::Index{1} << (m - 1 - q);

  const Matrix& rho = dm.matrix();
  const Eigen::Index d = rho.rows();
  Matrix out(d, d);
  for (Eigen::Index r = 0; r < d; ++r) {
    for (Eigen::Index c = 0; c < d; ++c) {
      // Exchange the transposed subsystems' bits between row and column.
      const Eigen::Index swapped = (r ^ c) & flip;
      out(r ^ swapped, c ^ swapped) = rho(r, c);
    }
  }
  return out;
}

double max_schmidt(const PureState& state, const Bipartition& cut) {
  if (cut.num_qubits() != state.num_qubits()) {
    throw std::invalid_argument("max_schmidt: bipartition size does not match state");
  }
  const auto side = cut.smaller_side();
  return eigenvalues_hermitian(reduced_density(state, side).matrix()).front();
}

std::vector<Branch> apply_local_projectors(const PureState& state,
                                           std::span<const int> measured,
                                           const MeasurementBasis& basis) {
  const int n = state.num_qubits();
  if (measured.empty()) throw std::invalid_argument("apply_local_projectors: nothing measured");
  const auto meas = sorted_unique(measured, n, "apply_local_projectors");
  const int m = static_cast<int>(meas.size());
  if (basis.size() != meas.size()) {
    throw std::invalid_argument("apply_local_projectors: basis covers " +
                                std::to_string(basis.size()) + " qubits, " +
                                std::to_string(m) + " measured");
  }
  if (m == n) throw std::invalid_argument("apply_local_projectors: no qubit left unmeasured");

  std::uint32_t meas_mask = 0;
  for (int q : meas) meas_mask |= 1u << q;
  const int rest = n - m;
  const std::size_t outcomes = std::size_t{1} << m;
  const Eigen::Index rest_dim = Eigen::Index{1} << rest;

  std::vector<Branch> out;
  for (std::size_t k = 0; k < outcomes; ++k) {
    Vector post = Vector::Zero(rest_dim);
    for (std::size_t x = 0; x < state.dim(); ++x) {
      Complex coeff = state[x];
      if (coeff == Complex{}) continue;
      Eigen::Index r = 0;
      int slot = 0;
      for (int q = 0; q < n; ++q) {
        const int b = qubit_bit(x, q, n);
        if (meas_mask >> q & 1u) {
          const int outcome = static_cast<int>((k >> (m - 1 - slot)) & 1u);
          coeff *= std::conj(basis.ket(static_cast<std::size_t>(slot), outcome)[b]);
          ++slot;
        } else {
          r = (r << 1) | b;
        }
      }
      post[r] += coeff;
    }
    const double p = post.squaredNorm();
    if (p < kBranchCutoff) continue;
    post /= std::sqrt(p);
    out.push_back(Branch{p, PureState(std::move(post))});
  }
  return out;
}

double entropy_bits(std::span<const double> spectrum) {
  double s = 0.0;
  for (double l : spectrum)
    if (l > 0.0) s -= l * std::log2(l);
  return std::max(0.0, s);
}

double von_neumann_entropy(const DensityMatrix& dm) {
  const auto ev = eigenvalues_hermitian(dm.matrix());
  return entropy_bits(ev);
}

double binary_entropy(double x) {
  const double spectrum[2] = {x, 1.0 - x};
  return entropy_bits(spectrum);
}

PureState apply_local_unitary(const PureState& state, int qubit, const Eigen::Matrix2cd& u) {
  const int n = state.num_qubits();
  if (qubit < 0 || qubit >= n) throw std::invalid_argument("apply_local_unitary: bad qubit");
  const std::size_t stride = std::size_t{1} << (n - 1 - qubit);
  Vector out = state.amplitudes();
  for (std::size_t x = 0; x < state.dim(); ++x) {
    if (x & stride) continue;
    const auto i0 = static_cast<Eigen::Index>(x);
    const auto i1 = static_cast<Eigen::Index>(x | stride);
    const Complex a0 = state[x];
    const Complex a1 = state[x | stride];
    out[i0] = u(0, 0) * a0 + u(0, 1) * a1;
    out[i1] = u(1, 0) * a0 + u(1, 1) * a1;
  }
  // Renormalize away rounding from a numerically unitary u.
  return normalize(std::move(out));
}

}  // namespace qcorr

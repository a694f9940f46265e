#pragma once

// Dense complex linear algebra for few-qubit pure states.
//
// Qubits are numbered from 0. Qubit 0 is the most significant bit of a
// computational-basis index, so |q0 q1 ... q(n-1)> has index
// q0 * 2^(n-1) + ... + q(n-1).

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace qcorr {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

inline constexpr int kMaxQubits = 8;
inline constexpr double kNormTolerance = 1e-10;
inline constexpr double kBranchCutoff = 1e-12;

/// Normalized amplitude vector over n qubits.
class PureState {
 public:
  /// Throws std::invalid_argument unless the length is 2^n (1 <= n <= 8)
  /// and the norm is 1 within kNormTolerance.
  explicit PureState(Vector amplitudes);

  int num_qubits() const noexcept { return n_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(amps_.size()); }
  const Vector& amplitudes() const noexcept { return amps_; }
  Complex operator[](std::size_t i) const { return amps_[static_cast<Eigen::Index>(i)]; }

 private:
  int n_ = 0;
  Vector amps_;
};

/// Scales a nonzero power-of-two-length vector to unit norm.
/// Throws std::invalid_argument("degenerate sample") for a zero vector.
PureState normalize(Vector raw);
PureState normalize(std::span<const Complex> raw);

/// Hermitian, unit-trace, positive semidefinite operator on m qubits.
class DensityMatrix {
 public:
  struct Unchecked {};

  /// Validates Hermiticity (1e-10), trace (1e-10) and the eigenvalue floor
  /// (-1e-9).
  explicit DensityMatrix(Matrix entries);
  /// Skips validation; for matrices that are density matrices by construction.
  DensityMatrix(Matrix entries, Unchecked) noexcept;

  int num_qubits() const noexcept { return m_; }
  Eigen::Index dim() const noexcept { return rho_.rows(); }
  const Matrix& matrix() const noexcept { return rho_; }

  static DensityMatrix from_pure(const PureState& state);

 private:
  int m_ = 0;
  Matrix rho_;
};

/// A cut of n qubits into a nonempty part A and its nonempty complement B.
class Bipartition {
 public:
  /// `mask_a` has bit q set when qubit q belongs to A (bit q, not index
  /// bit). Throws unless A is a nonempty proper subset.
  Bipartition(int num_qubits, std::uint32_t mask_a);
  static Bipartition from_qubits(int num_qubits, std::span<const int> part_a);

  int num_qubits() const noexcept { return n_; }
  std::uint32_t mask_a() const noexcept { return mask_; }
  std::uint32_t mask_b() const noexcept { return full_mask() & ~mask_; }
  std::vector<int> part_a() const;
  std::vector<int> part_b() const;
  /// The side with fewer qubits (A on ties).
  std::vector<int> smaller_side() const;

 private:
  std::uint32_t full_mask() const noexcept { return (1u << n_) - 1u; }
  int n_;
  std::uint32_t mask_;
};

struct BlochAngles {
  double theta = 0.0;  // polar, [0, pi]
  double phi = 0.0;    // azimuth, [0, 2 pi)
};

/// Rank-1 projective measurement per qubit. Outcome 0 projects onto
/// cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>, outcome 1 onto its
/// orthogonal complement.
class MeasurementBasis {
 public:
  MeasurementBasis() = default;
  explicit MeasurementBasis(std::vector<BlochAngles> angles) : angles_(std::move(angles)) {}

  static BlochAngles pauli_x() noexcept;
  static BlochAngles pauli_y() noexcept;
  static BlochAngles pauli_z() noexcept;

  std::size_t size() const noexcept { return angles_.size(); }
  const std::vector<BlochAngles>& angles() const noexcept { return angles_; }
  const BlochAngles& operator[](std::size_t k) const { return angles_[k]; }

  /// Basis vector for `outcome` of qubit slot k.
  std::array<Complex, 2> ket(std::size_t k, int outcome) const;

  static std::array<Complex, 2> ket(BlochAngles angles, int outcome);

 private:
  std::vector<BlochAngles> angles_;
};

struct Branch {
  double probability;
  PureState state;
};

/// Reduced density matrix on `keep` (sorted internally; the lowest kept
/// qubit becomes the most significant bit of the reduced index).
DensityMatrix reduced_density(const PureState& state, std::span<const int> keep);
DensityMatrix reduced_density(const PureState& state, std::initializer_list<int> keep);

/// Real eigenvalues of a Hermitian matrix, descending. Throws when the
/// matrix deviates from Hermitian by more than 1e-8 entrywise.
std::vector<double> eigenvalues_hermitian(const Matrix& m);

/// Partial transpose over the listed subsystems of `dm` (0-based within
/// dm). The listed set must be a nonempty proper subset.
Matrix partial_transpose(const DensityMatrix& dm, std::span<const int> transposed);

/// Largest squared Schmidt coefficient across `cut`.
double max_schmidt(const PureState& state, const Bipartition& cut);

/// Measures the listed qubits (sorted internally, basis slot k belongs to the
/// k-th smallest measured qubit). Branch order follows the outcome string
/// with the smallest measured qubit most significant; branches below
/// kBranchCutoff are dropped.
std::vector<Branch> apply_local_projectors(const PureState& state,
                                           std::span<const int> measured,
                                           const MeasurementBasis& basis);

/// -sum lambda log2 lambda over the eigenvalues of dm.
double von_neumann_entropy(const DensityMatrix& dm);
/// Same, from a spectrum; entries <= 0 contribute nothing.
double entropy_bits(std::span<const double> spectrum);
/// -x log2 x - (1-x) log2 (1-x).
double binary_entropy(double x);

/// Applies a 2x2 unitary to one qubit.
PureState apply_local_unitary(const PureState& state, int qubit, const Eigen::Matrix2cd& u);

/// Bit of `qubit` in basis index `index` for an n-qubit register.
constexpr int qubit_bit(std::size_t index, int qubit, int n) noexcept {
  return static_cast<int>((index >> (n - 1 - qubit)) & 1u);
}

}  // namespace qcorr

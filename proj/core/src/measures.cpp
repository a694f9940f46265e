#include "qcorr/measures.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "qcorr/optimize.hpp"

namespace qcorr {

namespace {

void require_two_qubit(const DensityMatrix& dm, const char* what) {
  if (dm.dim() != 4) {
    throw std::invalid_argument(std::string(what) + ": unsupported dimension " +
                                std::to_string(dm.dim()) + " (two-qubit states only)");
  }
}

void require_qubit(const PureState& state, int q, const char* what) {
  if (q < 0 || q >= state.num_qubits()) {
    throw std::invalid_argument(std::string(what) + ": qubit index out of range");
  }
}

// Eigenvalues of the 2x2 Hermitian [[a, b], [conj b, d]].
std::array<double, 2> spectrum2(double a, double d, Complex b) {
  const double mean = 0.5 * (a + d);
  const double half = 0.5 * (a - d);
  const double r = std::sqrt(half * half + std::norm(b));
  return {mean + r, mean - r};
}

double largest_marginal_eigenvalue(const PureState& state, int nodal) {
  const auto rho = reduced_density(state, {nodal});
  const Matrix& m = rho.matrix();
  return spectrum2(m(0, 0).real(), m(1, 1).real(), m(0, 1))[0];
}

Eigen::Matrix4cd sigma_yy() {
  Eigen::Matrix4cd y = Eigen::Matrix4cd::Zero();
  y(0, 3) = -1.0;
  y(1, 2) = 1.0;
  y(2, 1) = 1.0;
  y(3, 0) = -1.0;
  return y;
}

// Average entropy of the unmeasured party after measuring `party` along the
// basis defined by (theta, phi).
double conditional_entropy(const Matrix& rho, int party, double theta, double phi) {
  double total = 0.0;
  for (int outcome = 0; outcome < 2; ++outcome) {
    const auto v = MeasurementBasis::ket(BlochAngles{theta, phi}, outcome);
    Complex s[2][2] = {};
    for (int x = 0; x < 2; ++x) {
      for (int y = 0; y < 2; ++y) {
        Complex acc{};
        for (int a = 0; a < 2; ++a) {
          for (int b = 0; b < 2; ++b) {
            const Eigen::Index r = party == 0 ? 2 * a + x : 2 * x + a;
            const Eigen::Index c = party == 0 ? 2 * b + y : 2 * y + b;
            acc += std::conj(v[a]) * rho(r, c) * v[b];
          }
        }
        s[x][y] = acc;
      }
    }
    const double p = s[0][0].real() + s[1][1].real();
    if (p < kBranchCutoff) continue;
    const auto ev = spectrum2(s[0][0].real() / p, s[1][1].real() / p, s[0][1] / p);
    total += p * entropy_bits(ev);
  }
  return total;
}

}  // namespace

std::string_view measure_key(QcMeasure m) noexcept {
  switch (m) {
    case QcMeasure::Negativity:
      return "neg";
    case QcMeasure::Concurrence:
      return "conc";
    case QcMeasure::Discord:
      return "disc";
  }
  return "?";
}

std::optional<QcMeasure> parse_measure(std::string_view text) {
  if (text == "neg" || text == "negativity") return QcMeasure::Negativity;
  if (text == "conc" || text == "concurrence") return QcMeasure::Concurrence;
  if (text == "disc" || text == "discord") return QcMeasure::Discord;
  return std::nullopt;
}

double pair_cap(QcMeasure m) noexcept { return m == QcMeasure::Negativity ? 0.5 : 1.0; }

double negativity(const DensityMatrix& two_qubit) {
  require_two_qubit(two_qubit, "negativity");
  const int first[1] = {0};
  const auto ev = eigenvalues_hermitian(partial_transpose(two_qubit, first));
  double neg = 0.0;
  for (double l : ev)
    if (l < 0.0) neg -= l;
  return neg;
}

double negativity(const PureState& state, const Bipartition& cut) {
  if (cut.num_qubits() != state.num_qubits()) {
    throw std::invalid_argument("negativity: bipartition size does not match state");
  }
  const auto ev = eigenvalues_hermitian(reduced_density(state, cut.smaller_side()).matrix());
  double root_sum = 0.0;
  for (double l : ev) root_sum += std::sqrt(std::max(l, 0.0));
  return std::max(0.0, 0.5 * (root_sum * root_sum - 1.0));
}

double concurrence(const DensityMatrix& two_qubit) {
  require_two_qubit(two_qubit, "concurrence");
  const Matrix& rho = two_qubit.matrix();
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
  const Eigen::VectorXd w = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Matrix root = es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
  const Eigen::Matrix4cd yy = sigma_yy();
  const Matrix flipped = yy * rho.conjugate() * yy;
  Matrix h = root * flipped * root;
  h = 0.5 * (h + h.adjoint()).eval();
  auto ev = eigenvalues_hermitian(h);
  std::array<double, 4> mu{};
  for (std::size_t i = 0; i < 4; ++i) mu[i] = std::sqrt(std::max(ev[i], 0.0));
  return std::clamp(mu[0] - mu[1] - mu[2] - mu[3], 0.0, 1.0);
}

double concurrence_one_vs_rest(const PureState& state, int nodal) {
  require_qubit(state, nodal, "concurrence_one_vs_rest");
  const double l = largest_marginal_eigenvalue(state, nodal);
  return std::min(1.0, 2.0 * std::sqrt(std::max(0.0, l * (1.0 - l))));
}

double negativity_one_vs_rest(const PureState& state, int nodal) {
  return 0.5 * concurrence_one_vs_rest(state, nodal);
}

double min_conditional_entropy(const DensityMatrix& two_qubit, int measured_party,
                               const DiscordOptions& opts) {
  require_two_qubit(two_qubit, "discord");
  if (measured_party != 0 && measured_party != 1) {
    throw std::invalid_argument("discord: measured party must be 0 or 1");
  }
  if (opts.grid < 2 || opts.restarts < 1) throw std::invalid_argument("discord: bad options");
  const Matrix& rho = two_qubit.matrix();

  struct GridPoint {
    double value, theta, phi;
  };
  std::vector<GridPoint> grid;
  grid.reserve(static_cast<std::size_t>(opts.grid * opts.grid));
  for (int i = 0; i < opts.grid; ++i) {
    const double theta = std::numbers::pi * i / (opts.grid - 1);
    for (int j = 0; j < opts.grid; ++j) {
      const double phi = 2.0 * std::numbers::pi * j / opts.grid;
      grid.push_back({conditional_entropy(rho, measured_party, theta, phi), theta, phi});
    }
  }
  std::stable_sort(grid.begin(), grid.end(),
                   [](const GridPoint& a, const GridPoint& b) { return a.value < b.value; });

  double best = grid.front().value;
  const Objective negated = [&](std::span<const double> x) {
    return -conditional_entropy(rho, measured_party, x[0], x[1]);
  };
  SimplexOptions so;
  so.initial_step = std::numbers::pi / opts.grid;
  so.tol = opts.tol * 1e-2;
  const auto starts = std::min<std::size_t>(static_cast<std::size_t>(opts.restarts), grid.size());
  for (std::size_t s = 0; s < starts; ++s) {
    const double x0[2] = {grid[s].theta, grid[s].phi};
    const auto res = maximize_simplex(negated, x0, so);
    best = std::min(best, -res.value);
  }
  return std::max(0.0, best);
}

double discord(const DensityMatrix& two_qubit, int measured_party, const DiscordOptions& opts) {
  const double cond = min_conditional_entropy(two_qubit, measured_party, opts);
  const Matrix& rho = two_qubit.matrix();
  // Marginal of the measured party.
  Complex m00, m11, m01;
  if (measured_party == 0) {
    m00 = rho(0, 0) + rho(1, 1);
    m11 = rho(2, 2) + rho(3, 3);
    m01 = rho(0, 2) + rho(1, 3);
  } else {
    m00 = rho(0, 0) + rho(2, 2);
    m11 = rho(1, 1) + rho(3, 3);
    m01 = rho(0, 1) + rho(2, 3);
  }
  const double s_measured = entropy_bits(spectrum2(m00.real(), m11.real(), m01));
  const double s_joint = von_neumann_entropy(two_qubit);
  // I - J = S(measured) - S(joint) + min conditional entropy.
  return std::max(0.0, s_measured - s_joint + cond);
}

double discord_pure_one_vs_rest(const PureState& state, int nodal) {
  require_qubit(state, nodal, "discord_pure_one_vs_rest");
  return binary_entropy(largest_marginal_eigenvalue(state, nodal));
}

double pure_pair_value(QcMeasure m, double conc) {
  conc = std::clamp(conc, 0.0, 1.0);
  switch (m) {
    case QcMeasure::Negativity:
      return 0.5 * conc;
    case QcMeasure::Concurrence:
      return conc;
    case QcMeasure::Discord:
      return binary_entropy(0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - conc * conc))));
  }
  return 0.0;
}

double one_vs_rest_value(QcMeasure m, const PureState& state, int nodal) {
  switch (m) {
    case QcMeasure::Negativity:
      return negativity_one_vs_rest(state, nodal);
    case QcMeasure::Concurrence:
      return concurrence_one_vs_rest(state, nodal);
    case QcMeasure::Discord:
      return discord_pure_one_vs_rest(state, nodal);
  }
  return 0.0;
}

double pair_value(QcMeasure m, const DensityMatrix& two_qubit, int measured_party) {
  switch (m) {
    case QcMeasure::Negativity:
      return negativity(two_qubit);
    case QcMeasure::Concurrence:
      return concurrence(two_qubit);
    case QcMeasure::Discord:
      return discord(two_qubit, measured_party);
  }
  return 0.0;
}

double ggm(const PureState& state) {
  const int n = state.num_qubits();
  if (n < 2) throw std::invalid_argument("ggm needs at least two qubits");
  const std::uint32_t full = (1u << n) - 1u;
  double best = 0.0;
  // Every cut has exactly one side containing qubit 0.
  for (std::uint32_t mask = 1; mask < full; mask += 2) {
    best = std::max(best, max_schmidt(state, Bipartition(n, mask)));
  }
  return std::clamp(1.0 - best, 0.0, 0.5);
}

double avg_entropy(int M, int K) {
  if (M < 2 || K < 1) throw std::invalid_argument("avg_entropy needs M >= 2 and K >= 1");
  return std::log2(static_cast<double>(M)) - static_cast<double>(M) / (2.0 * K);
}

double solve_max_eigenvalue(double s) {
  if (!(s >= 0.0 && s <= 1.0)) throw std::invalid_argument("solve_max_eigenvalue: s outside [0, 1]");
  // binary_entropy is strictly decreasing on [1/2, 1].
  double lo = 0.5;
  double hi = 1.0;
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (binary_entropy(mid) > s) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  if (s == 1.0) return 0.5;
  if (s == 0.0) return 1.0;
  return 0.5 * (lo + hi);
}

double ggm_equal_dicke(int n) {
  if (n < 4 || n % 2 != 0) throw std::invalid_argument("ggm_equal_dicke: n must be even and >= 4");
  return static_cast<double>(n - 2) / (2.0 * (n - 1));
}

}  // namespace qcorr

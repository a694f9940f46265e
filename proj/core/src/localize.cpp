#include "qcorr/localize.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "qcorr/optimize.hpp"

namespace qcorr {

namespace {

// Contracts the measured qubits of a fixed state against per-qubit bras and
// reports the unnormalized two-qubit branch vectors.
class PairProjector {
 public:
  PairProjector(const PureState& state, QubitPair pair) : n_(state.num_qubits()) {
    if (n_ < 3) throw std::invalid_argument("localize needs at least three qubits");
    auto [i, j] = pair;
    if (i < 0 || j < 0 || i >= n_ || j >= n_ || i == j) {
      throw std::invalid_argument("localize: pair (" + std::to_string(i) + ", " +
                                  std::to_string(j) + ") out of range or degenerate");
    }
    lo_ = std::min(i, j);
    hi_ = std::max(i, j);
    for (int q = 0; q < n_; ++q)
      if (q != lo_ && q != hi_) measured_.push_back(q);
    m_ = static_cast<int>(measured_.size());

    // Layout [measured bits, slot 0 most significant][pair bits].
    base_.assign(state.dim(), Complex{});
    for (std::size_t x = 0; x < state.dim(); ++x) {
      std::size_t mbits = 0;
      for (int q : measured_) mbits = (mbits << 1) | static_cast<std::size_t>(qubit_bit(x, q, n_));
      const std::size_t u = static_cast<std::size_t>(qubit_bit(x, lo_, n_) * 2 + qubit_bit(x, hi_, n_));
      base_[mbits * 4 + u] = state[x];
    }
    cur_.resize(base_.size());
    next_.resize(base_.size());
  }

  int measured_count() const noexcept { return m_; }
  const std::vector<int>& measured() const noexcept { return measured_; }

  // Returns a view of 2^m consecutive 4-vectors, outcome-major.
  const std::vector<Complex>& branches(std::span<const BlochAngles> angles) {
    cur_ = base_;
    const std::size_t m = static_cast<std::size_t>(m_);
    for (std::size_t l = 0; l < m; ++l) {
      const std::size_t outcomes = std::size_t{1} << l;
      const std::size_t remaining = std::size_t{1} << (m - l - 1);
      const auto k0 = MeasurementBasis::ket(angles[l], 0);
      const auto k1 = MeasurementBasis::ket(angles[l], 1);
      const Complex bra[2][2] = {{std::conj(k0[0]), std::conj(k0[1])},
                                 {std::conj(k1[0]), std::conj(k1[1])}};
      for (std::size_t o = 0; o < outcomes; ++o) {
        for (std::size_t r = 0; r < remaining; ++r) {
          const std::size_t src0 = ((o * 2 * remaining) + r) * 4;
          const std::size_t src1 = ((o * 2 * remaining) + remaining + r) * 4;
          for (int k = 0; k < 2; ++k) {
            const std::size_t dst = (((o << 1) | static_cast<std::size_t>(k)) * remaining + r) * 4;
            for (std::size_t u = 0; u < 4; ++u) {
              next_[dst + u] = bra[k][0] * cur_[src0 + u] + bra[k][1] * cur_[src1 + u];
            }
          }
        }
      }
      std::swap(cur_, next_);
    }
    return cur_;
  }

 private:
  int n_;
  int lo_ = 0;
  int hi_ = 0;
  int m_ = 0;
  std::vector<int> measured_;
  std::vector<Complex> base_, cur_, next_;
};

double powered(QcMeasure measure, double conc, double alpha) {
  const double q = pure_pair_value(measure, conc);
  if (q <= 0.0) return 0.0;
  return alpha == 1.0 ? q : std::pow(q, alpha);
}

// Branch average of Q^alpha; optionally records the per-branch values.
double branch_average(const std::vector<Complex>& w, QcMeasure measure, double alpha,
                      std::vector<BranchValue>* out) {
  double total = 0.0;
  for (std::size_t k = 0; k + 3 < w.size(); k += 4) {
    const double p = std::norm(w[k]) + std::norm(w[k + 1]) + std::norm(w[k + 2]) + std::norm(w[k + 3]);
    if (p < kBranchCutoff) continue;
    const double conc = 2.0 * std::abs(w[k] * w[k + 3] - w[k + 1] * w[k + 2]) / p;
    const double q = powered(measure, conc, alpha);
    total += p * q;
    if (out) out->push_back({p, q});
  }
  return total;
}

std::vector<BlochAngles> unpack(std::span<const double> x) {
  std::vector<BlochAngles> a(x.size() / 2);
  for (std::size_t k = 0; k < a.size(); ++k) a[k] = {x[2 * k], x[2 * k + 1]};
  return a;
}

// Maps angles onto theta in [0, pi], phi in [0, 2 pi) without changing the
// projector pair.
BlochAngles canonical(BlochAngles a) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double theta = std::fmod(a.theta, two_pi);
  if (theta < 0.0) theta += two_pi;
  double phi = a.phi;
  if (theta > std::numbers::pi) {
    theta = two_pi - theta;
    phi += std::numbers::pi;
  }
  phi = std::fmod(phi, two_pi);
  if (phi < 0.0) phi += two_pi;
  return {theta, phi};
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("localize: exponent must be > 0");
}

std::vector<BlochAngles> pauli_assignment(std::size_t code, int m) {
  static const BlochAngles axes[3] = {MeasurementBasis::pauli_x(), MeasurementBasis::pauli_y(),
                                      MeasurementBasis::pauli_z()};
  std::vector<BlochAngles> a(static_cast<std::size_t>(m));
  for (int k = m - 1; k >= 0; --k) {
    a[static_cast<std::size_t>(k)] = axes[code % 3];
    code /= 3;
  }
  return a;
}

std::size_t pow3(int m) {
  std::size_t p = 1;
  for (int k = 0; k < m; ++k) p *= 3;
  return p;
}

}  // namespace

LocalizationResult evaluate_localization(const PureState& state, QubitPair pair, QcMeasure measure,
                                         double alpha, const MeasurementBasis& basis) {
  check_alpha(alpha);
  PairProjector proj(state, pair);
  if (basis.size() != static_cast<std::size_t>(proj.measured_count())) {
    throw std::invalid_argument("evaluate_localization: basis size mismatch");
  }
  LocalizationResult res;
  res.angles = basis;
  res.value = branch_average(proj.branches(basis.angles()), measure, alpha, &res.branches);
  res.converged = true;
  return res;
}

double localize_pauli(const PureState& state, QubitPair pair, QcMeasure measure, double alpha) {
  check_alpha(alpha);
  PairProjector proj(state, pair);
  const int m = proj.measured_count();
  double best = 0.0;
  for (std::size_t code = 0; code < pow3(m); ++code) {
    const auto a = pauli_assignment(code, m);
    best = std::max(best, branch_average(proj.branches(a), measure, alpha, nullptr));
  }
  return best;
}

LocalizationResult localize(const PureState& state, QubitPair pair, QcMeasure measure, double alpha,
                            const LocalizeOptions& opts) {
  check_alpha(alpha);
  if (opts.restarts < 1) throw std::invalid_argument("localize: restarts must be >= 1");
  PairProjector proj(state, pair);
  const int m = proj.measured_count();

  const Objective objective = [&](std::span<const double> x) {
    const auto a = unpack(x);
    return branch_average(proj.branches(a), measure, alpha, nullptr);
  };

  // Score every Pauli assignment; the best ones seed local ascents.
  struct Seed {
    double value;
    std::vector<double> x;
  };
  std::vector<Seed> pauli;
  pauli.reserve(pow3(m));
  for (std::size_t code = 0; code < pow3(m); ++code) {
    std::vector<double> x;
    for (const auto& a : pauli_assignment(code, m)) {
      x.push_back(a.theta);
      x.push_back(a.phi);
    }
    pauli.push_back({objective(x), std::move(x)});
  }
  std::stable_sort(pauli.begin(), pauli.end(),
                   [](const Seed& a, const Seed& b) { return a.value > b.value; });

  std::vector<double> best_x = pauli.front().x;
  double best = pauli.front().value;

  const auto pauli_starts =
      std::min<std::size_t>(pauli.size(), static_cast<std::size_t>((opts.restarts + 1) / 2));
  std::vector<std::vector<double>> starts;
  for (std::size_t s = 0; s < pauli_starts; ++s) starts.push_back(pauli[s].x);
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> theta_dist(0.0, std::numbers::pi);
  std::uniform_real_distribution<double> phi_dist(0.0, 2.0 * std::numbers::pi);
  while (starts.size() < static_cast<std::size_t>(opts.restarts)) {
    std::vector<double> x;
    for (int k = 0; k < m; ++k) {
      x.push_back(theta_dist(rng));
      x.push_back(phi_dist(rng));
    }
    starts.push_back(std::move(x));
  }

  SimplexOptions so;
  so.initial_step = 0.4;
  so.tol = opts.tol;
  so.max_iter = opts.max_iter;
  bool all_converged = true;
  for (const auto& x0 : starts) {
    const auto run = maximize_simplex(objective, x0, so);
    all_converged = all_converged && run.converged;
    if (run.value > best) {
      best = run.value;
      best_x = run.x;
    }
  }

  std::vector<BlochAngles> angles;
  for (const auto& a : unpack(best_x)) angles.push_back(canonical(a));
  LocalizationResult res;
  res.angles = MeasurementBasis(std::move(angles));
  res.value = branch_average(proj.branches(res.angles.angles()), measure, alpha, &res.branches);
  res.restarts_used = static_cast<int>(starts.size());
  res.converged = all_converged;
  return res;
}

double localized_sum(const PureState& state, QcMeasure measure, double alpha, int nodal,
                     const LocalizeOptions& opts) {
  const int n = state.num_qubits();
  if (nodal < 0 || nodal >= n) throw std::invalid_argument("localized_sum: nodal out of range");
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    if (i == nodal) continue;
    sum += localize(state, {nodal, i}, measure, alpha, opts).value;
  }
  return sum;
}

}  // namespace qcorr

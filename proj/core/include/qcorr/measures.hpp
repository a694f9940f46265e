#pragma once

// Bipartite and multipartite correlation measures. Entropies are in bits.

#include <optional>
#include <string>
#include <string_view>

#include "qcorr/qstate.hpp"

namespace qcorr {

enum class QcMeasure { Negativity, Concurrence, Discord };

/// "neg", "conc", "disc".
std::string_view measure_key(QcMeasure m) noexcept;
/// Accepts the short keys and the full lowercase names.
std::optional<QcMeasure> parse_measure(std::string_view text);
/// Largest value the measure takes on a qubit pair.
double pair_cap(QcMeasure m) noexcept;

/// Sum of |negative eigenvalues| of the partial transpose of a two-qubit
/// state (Bell pair: 0.5). Throws "unsupported" for other dimensions.
double negativity(const DensityMatrix& two_qubit);
/// Pure-state negativity across `cut` from the Schmidt spectrum,
/// ((sum sqrt(lambda))^2 - 1) / 2; sqrt(lambda (1 - lambda)) for a qubit side.
double negativity(const PureState& state, const Bipartition& cut);

/// Wootters concurrence of a two-qubit state.
double concurrence(const DensityMatrix& two_qubit);
/// 2 sqrt(det rho_nodal) for a pure state.
double concurrence_one_vs_rest(const PureState& state, int nodal);
/// Negativity across nodal : rest of a pure state.
double negativity_one_vs_rest(const PureState& state, int nodal);

struct DiscordOptions {
  int grid = 24;
  int restarts = 5;
  double tol = 1e-6;
};

/// Quantum discord of a two-qubit state with projective measurement on
/// `measured_party` (0 = first, 1 = second subsystem of dm). Clamped at 0.
double discord(const DensityMatrix& two_qubit, int measured_party, const DiscordOptions& opts = {});
/// Minimum over rank-1 projective measurements on `measured_party` of the
/// average conditional entropy of the other party.
double min_conditional_entropy(const DensityMatrix& two_qubit, int measured_party,
                               const DiscordOptions& opts = {});
/// Entropy of the nodal marginal, which is the discord of a pure state
/// across nodal : rest.
double discord_pure_one_vs_rest(const PureState& state, int nodal);

/// Value of a measure on a pure two-qubit state with the given concurrence.
double pure_pair_value(QcMeasure m, double concurrence);
/// Value of a measure across nodal : rest of a pure state.
double one_vs_rest_value(QcMeasure m, const PureState& state, int nodal);
/// Value of a measure on a two-qubit mixed state; discord measures
/// `measured_party`.
double pair_value(QcMeasure m, const DensityMatrix& two_qubit, int measured_party);

/// Generalized geometric measure: 1 - max over all bipartitions of the
/// largest squared Schmidt coefficient.
double ggm(const PureState& state);

/// Average subsystem entropy log2(M) - M / (2K) of an M-dimensional
/// marginal of a random M*K-dimensional pure state.
double avg_entropy(int M, int K);
/// Root x in [1/2, 1] of binary_entropy(x) = s.
double solve_max_eigenvalue(double s);
/// (n - 2) / (2 (n - 1)) for even n >= 4.
double ggm_equal_dicke(int n);

}  // namespace qcorr

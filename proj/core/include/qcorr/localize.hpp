#pragma once

// Localizable correlations: the best branch-averaged correlation of a qubit
// pair after rank-1 projective measurements on every other qubit.

#include <cstdint>
#include <utility>
#include <vector>

#include "qcorr/measures.hpp"
#include "qcorr/qstate.hpp"

namespace qcorr {

struct LocalizeOptions {
  int restarts = 20;
  double tol = 1e-6;
  int max_iter = 500;
  std::uint64_t seed = 0x10ca112eULL;  // random restart angles
};

struct BranchValue {
  double probability;
  double correlation;  // Q^alpha of the normalized post-measurement pair state
};

struct LocalizationResult {
  double value = 0.0;
  MeasurementBasis angles;  // slot k is the k-th smallest measured qubit
  std::vector<BranchValue> branches;
  int restarts_used = 0;
  bool converged = false;
};

using QubitPair = std::pair<int, int>;

/// Multi-start simplex ascent over the 2(n-2) measurement angles. Every
/// Pauli (X/Y/Z) assignment is evaluated, so the result is never below
/// the Pauli-restricted value; it is a lower bound on the true optimum.
LocalizationResult localize(const PureState& state, QubitPair pair, QcMeasure measure,
                            double alpha, const LocalizeOptions& opts = {});

/// Best branch average over the 3^(n-2) Pauli assignments only.
double localize_pauli(const PureState& state, QubitPair pair, QcMeasure measure,
                      double alpha = 1.0);

/// Branch average for one fixed basis.
LocalizationResult evaluate_localization(const PureState& state, QubitPair pair, QcMeasure measure,
                                         double alpha, const MeasurementBasis& basis);

/// Sum over partners i != nodal of localize(state, (nodal, i)).value.
double localized_sum(const PureState& state, QcMeasure measure, double alpha, int nodal = 0,
                     const LocalizeOptions& opts = {});

}  // namespace qcorr

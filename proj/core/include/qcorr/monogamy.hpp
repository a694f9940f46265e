#pragma once

// Monogamy scores with an arbitrary exponent and the quantities derived
// from them.

#include <vector>

#include "qcorr/measures.hpp"
#include "qcorr/qstate.hpp"

namespace qcorr {

/// Scores below this are violations; above it, eigenvalue noise.
inline constexpr double kViolationThreshold = -1e-9;

struct MonogamyRecord {
  QcMeasure measure = QcMeasure::Negativity;
  double alpha = 1.0;
  double one_vs_rest = 0.0;          // Q(nodal : rest)^alpha
  std::vector<double> pair_values;   // Q(nodal, i), un-exponentiated, partners ascending
  double score = 0.0;                // one_vs_rest - sum pair_values^alpha

  bool monogamous() const noexcept { return score >= kViolationThreshold; }
};

/// Exponent-independent ingredients of a monogamy score. Computing these
/// once lets callers sweep alpha cheaply, which matters for discord.
struct MonogamyTerms {
  QcMeasure measure = QcMeasure::Negativity;
  int nodal = 0;
  double one_vs_rest = 0.0;  // un-exponentiated
  std::vector<double> pair_values;

  double score(double alpha) const;
  double pair_sum(double alpha) const;
};

/// Requires n >= 3. Pair states are the two-qubit marginals; discord
/// measures the nodal party.
MonogamyTerms monogamy_terms(const PureState& state, QcMeasure measure, int nodal = 0);

/// Requires n >= 3 and alpha > 0.
MonogamyRecord monogamy_score(const PureState& state, QcMeasure measure, double alpha,
                              int nodal = 0);
MonogamyRecord make_record(const MonogamyTerms& terms, double alpha);

/// sum over partners of Q(nodal, i)^alpha.
double bipartite_sum(const PureState& state, QcMeasure measure, double alpha, int nodal = 0);

struct ExponentGrid {
  double alpha_min = 0.05;
  double alpha_max = 3.0;
  double step = 0.05;
};

struct CriticalExponent {
  double value = 0.0;
  bool right_censored = false;  // topmost grid point still violates
};

/// Supremum of the exponents on the grid where the score is a violation,
/// refined by bisection toward the next non-violating grid point.
CriticalExponent critical_exponent(const MonogamyTerms& terms, const ExponentGrid& grid = {},
                                   double refine_tol = 1e-3);
CriticalExponent critical_exponent(const PureState& state, QcMeasure measure,
                                   const ExponentGrid& grid = {}, double refine_tol = 1e-3);

/// Negativity monogamy score sqrt(g (1 - g)) of the gGHZ state whose GGM is
/// g, for g in [0, 1/2]. The concurrence bound is twice this.
double gghz_bound(double g);

}  // namespace qcorr

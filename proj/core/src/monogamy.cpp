#include "qcorr/monogamy.hpp"

#include <cmath>
#include <stdexcept>

namespace qcorr {

namespace {
constexpr double kPairNoiseFloor = 1e-12;
}  // namespace

double MonogamyTerms::pair_sum(double alpha) const {
  double sum = 0.0;
  for (double q : pair_values) sum += std::pow(q, alpha);
  return sum;
}

double MonogamyTerms::score(double alpha) const {
  return std::pow(one_vs_rest, alpha) - pair_sum(alpha);
}

MonogamyTerms monogamy_terms(const PureState& state, QcMeasure measure, int nodal) {
  const int n = state.num_qubits();
  if (n < 3) throw std::invalid_argument("monogamy score needs at least three qubits");
  if (nodal < 0 || nodal >= n) throw std::invalid_argument("nodal qubit out of range");

  MonogamyTerms t;
  t.measure = measure;
  t.nodal = nodal;
  t.one_vs_rest = one_vs_rest_value(measure, state, nodal);
  t.pair_values.reserve(static_cast<std::size_t>(n - 1));
  for (int i = 0; i < n; ++i) {
    if (i == nodal) continue;
    const auto rho = reduced_density(state, {nodal, i});
    const int measured_party = nodal < i ? 0 : 1;
    const double q = pair_value(measure, rho, measured_party);
    // Values below the floor are eigenvalue noise.
    t.pair_values.push_back(q > kPairNoiseFloor ? q : 0.0);
  }
  return t;
}

MonogamyRecord make_record(const MonogamyTerms& terms, double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("monogamy exponent must be > 0");
  MonogamyRecord r;
  r.measure = terms.measure;
  r.alpha = alpha;
  r.one_vs_rest = std::pow(terms.one_vs_rest, alpha);
  r.pair_values = terms.pair_values;
  r.score = r.one_vs_rest - terms.pair_sum(alpha);
  return r;
}

MonogamyRecord monogamy_score(const PureState& state, QcMeasure measure, double alpha, int nodal) {
  if (!(alpha > 0.0)) throw std::invalid_argument("monogamy exponent must be > 0");
  return make_record(monogamy_terms(state, measure, nodal), alpha);
}

double bipartite_sum(const PureState& state, QcMeasure measure, double alpha, int nodal) {
  if (!(alpha > 0.0)) throw std::invalid_argument("monogamy exponent must be > 0");
  return monogamy_terms(state, measure, nodal).pair_sum(alpha);
}

CriticalExponent critical_exponent(const MonogamyTerms& terms, const ExponentGrid& grid,
                                   double refine_tol) {
  if (!(grid.step > 0.0) || !(grid.alpha_min > 0.0) || grid.alpha_max < grid.alpha_min) {
    throw std::invalid_argument("critical_exponent: bad grid");
  }
  const auto violates = [&](double a) { return terms.score(a) < kViolationThreshold; };
  const int points = static_cast<int>(std::floor((grid.alpha_max - grid.alpha_min) / grid.step + 1e-9)) + 1;

  int last_violating = -1;
  for (int k = 0; k < points; ++k) {
    if (violates(grid.alpha_min + k * grid.step)) last_violating = k;
  }
  if (last_violating < 0) return {};
  if (last_violating == points - 1) return {grid.alpha_min + last_violating * grid.step, true};

  double lo = grid.alpha_min + last_violating * grid.step;
  double hi = lo + grid.step;
  while (hi - lo > refine_tol) {
    const double mid = 0.5 * (lo + hi);
    if (violates(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {0.5 * (lo + hi), false};
}

CriticalExponent critical_exponent(const PureState& state, QcMeasure measure,
                                   const ExponentGrid& grid, double refine_tol) {
  return critical_exponent(monogamy_terms(state, measure), grid, refine_tol);
}

double gghz_bound(double g) {
  if (!(g >= 0.0 && g <= 0.5)) throw std::invalid_argument("gghz_bound: g outside [0, 1/2]");
  return std::sqrt(g * (1.0 - g));
}

}  // namespace qcorr

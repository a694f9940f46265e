#include "qcorr/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qcorr {

SimplexResult maximize_simplex(const Objective& f, std::span<const double> start,
                               const SimplexOptions& opts) {
  const std::size_t dim = start.size();
  if (dim == 0) throw std::invalid_argument("maximize_simplex: empty parameter vector");

  SimplexResult res;
  auto eval = [&](const std::vector<double>& x) {
    ++res.evaluations;
    return f(x);
  };

  std::vector<std::vector<double>> pts(dim + 1, std::vector<double>(start.begin(), start.end()));
  for (std::size_t i = 0; i < dim; ++i) pts[i + 1][i] += opts.initial_step;
  std::vector<double> vals(dim + 1);
  for (std::size_t i = 0; i <= dim; ++i) vals[i] = eval(pts[i]);

  std::vector<std::size_t> order(dim + 1);
  std::vector<double> centroid(dim), trial(dim), trial2(dim);

  auto along = [&](double t, std::vector<double>& out, const std::vector<double>& worst) {
    for (std::size_t j = 0; j < dim; ++j) out[j] = centroid[j] + t * (worst[j] - centroid[j]);
  };

  for (res.iterations = 0; res.iterations < opts.max_iter; ++res.iterations) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    // Descending by value; stable so ties keep vertex order.
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return vals[a] > vals[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second_worst = order[dim - 1];

    if (std::abs(vals[best] - vals[worst]) < opts.tol) {
      res.converged = true;
      break;
    }

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i <= dim; ++i) {
      if (i == worst) continue;
      for (std::size_t j = 0; j < dim; ++j) centroid[j] += pts[i][j];
    }
    for (double& c : centroid) c /= static_cast<double>(dim);

    along(-1.0, trial, pts[worst]);
    const double f_reflect = eval(trial);
    if (f_reflect > vals[best]) {
      along(-2.0, trial2, pts[worst]);
      const double f_expand = eval(trial2);
      if (f_expand > f_reflect) {
        pts[worst] = trial2;
        vals[worst] = f_expand;
      } else {
        pts[worst] = trial;
        vals[worst] = f_reflect;
      }
      continue;
    }
    if (f_reflect > vals[second_worst]) {
      pts[worst] = trial;
      vals[worst] = f_reflect;
      continue;
    }
    // Contract toward the better of the worst vertex and its reflection.
    const bool outside = f_reflect > vals[worst];
    along(outside ? -0.5 : 0.5, trial2, pts[worst]);
    const double f_contract = eval(trial2);
    if (f_contract > std::max(f_reflect, vals[worst])) {
      pts[worst] = trial2;
      vals[worst] = f_contract;
      continue;
    }
    for (std::size_t i = 0; i <= dim; ++i) {
      if (i == best) continue;
      for (std::size_t j = 0; j < dim; ++j) pts[i][j] = pts[best][j] + 0.5 * (pts[i][j] - pts[best][j]);
      vals[i] = eval(pts[i]);
    }
  }

  const auto best_it = std::max_element(vals.begin(), vals.end());
  const auto best_idx = static_cast<std::size_t>(best_it - vals.begin());
  res.x = pts[best_idx];
  res.value = *best_it;
  return res;
}

}  // namespace qcorr

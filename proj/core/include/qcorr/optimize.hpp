#pragma once

// Derivative-free local maximization used by the discord and localization
// routines.

#include <functional>
#include <span>
#include <vector>

namespace qcorr {

struct SimplexOptions {
  double initial_step = 0.3;
  double tol = 1e-6;  // stop when best and worst vertex values differ by less
  int max_iter = 500;
};

struct SimplexResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
};

using Objective = std::function<double(std::span<const double>)>;

/// Nelder-Mead maximization of `f` from `start`.
SimplexResult maximize_simplex(const Objective& f, std::span<const double> start,
                               const SimplexOptions& opts = {});

}  // namespace qcorr

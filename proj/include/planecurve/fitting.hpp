#pragma once

#include <iosfwd>
#include <vector>

#include "planecurve/chain_wanglandau.hpp"

namespace planecurve {

// Least-squares fit of G_n = log C + n log mu + (gamma - 2) log n.
struct FitResult {
  double logC = 0;
  double mu = 0;
  double gamma = 0;
  int n_min = 0;
  int n_max = 0;
  double rms_residual = 0;
};

/// Throws std::invalid_argument for n_min < 2, a window outside G or with
/// fewer than 4 points, or a rank-deficient design.
FitResult fit_asymptotic(const LogDensity& g, int n_min, int n_max);

/// r_n = exp(G_{n+1} - G_n) for n = ell..L-1, indexed from ell.
std::vector<double> ratio_estimates(const LogDensity& g);

/// One fit per n_max in [first, last].
std::vector<FitResult> sweep(const LogDensity& g, int n_min, int first, int last);

void write_sweep_csv(std::ostream& out, const std::vector<FitResult>& fits);

}  // namespace planecurve

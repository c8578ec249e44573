#include "planecurve/fitting.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace planecurve {

FitResult fit_asymptotic(const LogDensity& g, int n_min, int n_max) {
  if (n_min < 2) throw std::invalid_argument("fit window must start at n >= 2");
  if (!g.contains(n_min) || !g.contains(n_max)) {
    throw std::invalid_argument("fit window outside the range of G");
  }
  const int points = n_max - n_min + 1;
  if (points < 4) throw std::invalid_argument("fit window needs at least 4 points");

  Eigen::MatrixXd X(points, 3);
  Eigen::VectorXd y(points);
  for (int i = 0; i < points; ++i) {
    const int n = n_min + i;
    X(i, 0) = 1.0;
    X(i, 1) = n;
    X(i, 2) = std::log(static_cast<double>(n));
    y(i) = g(n);
  }
  const auto qr = X.colPivHouseholderQr();
  if (qr.rank() < 3) throw std::invalid_argument("singular design matrix");
  const Eigen::Vector3d beta = qr.solve(y);

  FitResult fit;
  fit.logC = beta(0);
  fit.mu = std::exp(beta(1));
  fit.gamma = beta(2) + 2;
  fit.n_min = n_min;
  fit.n_max = n_max;
  fit.rms_residual = std::sqrt((X * beta - y).squaredNorm() / points);
  return fit;
}

std::vector<double> ratio_estimates(const LogDensity& g) {
  std::vector<double> r;
  for (int n = g.ell; n < g.L; ++n) r.push_back(std::exp(g(n + 1) - g(n)));
  return r;
}

std::vector<FitResult> sweep(const LogDensity& g, int n_min, int first, int last) {
  std::vector<FitResult> fits;
  for (int n_max = first; n_max <= last; ++n_max) fits.push_back(fit_asymptotic(g, n_min, n_max));
  return fits;
}

void write_sweep_csv(std::ostream& out, const std::vector<FitResult>& fits) {
  out << "n_max,mu,gamma,logC,rms\n";
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (const auto& f : fits) {
    out << f.n_max << ',' << f.mu << ',' << f.gamma << ',' << f.logC << ',' << f.rms_residual << '\n';
  }
}

}  // namespace planecurve

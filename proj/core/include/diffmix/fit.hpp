#pragma once

#include <span>

namespace diffmix {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  /// Root-mean-square residual of the fit.
  double residual = 0.0;
};

/// Ordinary least squares y = intercept + slope * x. Needs >= 2 points.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

/// Least-squares slope of log(y) against log(x). All values must be positive.
LineFit fit_loglog(std::span<const double> x, std::span<const double> y);

}  // namespace diffmix

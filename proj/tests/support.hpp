#pragma once

#include <cmath>
#include <numbers>

#include "diffmix/grid.hpp"

namespace diffmix::test {

inline SpectralGrid standard_grid() { return make_grid(40.0, 1024); }

inline Field gaussian(const SpectralGrid& g, double width = 1.0, double center = 0.0) {
  return Field::sample(g, [=](double x) {
    const double y = (x - center) / width;
    return std::exp(-0.25 * y * y);
  });
}

// d/dx e^{-x^2/4}
inline Field gaussian_derivative(const SpectralGrid& g) {
  return Field::sample(g, [](double x) { return -0.5 * x * std::exp(-0.25 * x * x); });
}

inline double rel_l2(const Field& a, const Field& ref) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += (a[i] - ref[i]) * (a[i] - ref[i]);
    den += ref[i] * ref[i];
  }
  return std::sqrt(num / den);
}

}  // namespace diffmix::test

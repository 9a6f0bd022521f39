#pragma once

#include <cmath>
#include <numbers>

namespace diffmix::detail {

// e_*(z) = (1/sqrt(4 pi)) int_{-inf}^z e^{-s^2/4} ds = erfc(-z/2)/2.
inline double estar(double z) noexcept { return 0.5 * std::erfc(-0.5 * z); }

inline double estar_prime(double z) noexcept {
  return std::exp(-0.25 * z * z) / (2.0 * std::sqrt(std::numbers::pi));
}

// Width of the error-function step used to carry mass or a jump. It must be
// resolved by the grid and saturate well inside the domain.
inline double reference_width(double dx, double half_width) noexcept {
  return std::fmin(std::fmax(1.0, 4.0 * dx), half_width / 12.0);
}

}  // namespace diffmix::detail

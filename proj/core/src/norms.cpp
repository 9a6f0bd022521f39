#include "diffmix/norms.hpp"

#include <cmath>
#include <stdexcept>

#include "diffmix/errors.hpp"

namespace diffmix {
namespace {

double l2_squared(const Field& f) {
  double s = 0.0;
  for (double v : f.values()) s += v * v;
  return s * f.grid().dx();
}

Field weighted(const Field& f) {
  std::vector<double> v(f.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double z = f.x(i);
    v[i] = (1.0 + z * z) * f[i];
  }
  return Field(f.grid(), std::move(v), f.time());
}

double sobolev(const Field& f, int s) {
  double total = l2_squared(f);
  for (int k = 1; k <= s; ++k) total += l2_squared(derivative(f, k, kNoTailCheck));
  return std::sqrt(total);
}

}  // namespace

double h22_norm(const Field& f, double tail_tolerance) {
  const Field v = weighted(f);
  if (tail_tolerance < kNoTailCheck && tail_mass(v) > tail_tolerance) {
    throw TruncationError("h22_norm: weighted field reaches the grid edge");
  }
  return sobolev(v, 2);
}

double l1xi1_norm(const Field& f) {
  const auto fh = fourier_transform(f);
  const double dxi = f.grid().dxi();
  const std::size_t half = f.size() / 2;
  double s = 0.0;
  for (std::size_t idx = 0; idx < fh.size(); ++idx) {
    const double xi = (static_cast<double>(idx) - static_cast<double>(half)) * dxi;
    s += std::abs(fh[idx]) * (1.0 + std::abs(xi));
  }
  // |xi| has a kink at 0, which degrades the node sum to O(dxi^2); the
  // Euler-Maclaurin endpoint term restores spectral-like accuracy.
  return s * dxi + dxi * dxi / 6.0 * std::abs(fh[half]);
}

double l1_norm(const Field& f) {
  double s = 0.0;
  for (double v : f.values()) s += std::abs(v);
  return s * f.grid().dx();
}

double l2_norm(const Field& f) { return std::sqrt(l2_squared(f)); }

double linf_norm(const Field& f) { return max_abs(f); }

double hs_norm(const Field& f, int s, double tail_tolerance) {
  if (s < 0 || s > 4) throw std::invalid_argument("hs_norm: order must be 0..4");
  if (tail_tolerance < kNoTailCheck && tail_mass(f) > tail_tolerance) {
    throw TruncationError("hs_norm: field reaches the grid edge");
  }
  return sobolev(f, s);
}

std::vector<NormReport> all_norms(const Field& f) {
  const bool plain_tail = tail_mass(f) > kTailTolerance;
  const bool weighted_tail = tail_mass(weighted(f)) > kTailTolerance;
  return {
      {"L1", l1_norm(f), plain_tail},
      {"L2", l2_norm(f), plain_tail},
      {"Linf", linf_norm(f), false},
      {"H2", hs_norm(f, 2, kNoTailCheck), plain_tail},
      {"H2(2)", h22_norm(f, kNoTailCheck), weighted_tail},
      {"L1xi(1)", l1xi1_norm(f), plain_tail},
  };
}

}  // namespace diffmix

#include "diffmix/profiles.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "diffmix/errors.hpp"
#include "diffmix/norms.hpp"
#include "special.hpp"

namespace diffmix {
namespace {

void check_fits(const Field& f, double tolerance, const char* what) {
  if (!(tolerance < kNoTailCheck)) return;
  const double tm = tail_mass(f);
  if (tm > tolerance) {
    throw TruncationError(std::string(what) + ": profile wider than the grid (tail " +
                          std::to_string(tm) + ")");
  }
}

// s^{-1/2} f*_A(x / sqrt(s)) scaled by `gain`.
Field scaled_profile(double amplitude, double gain, double width, const SpectralGrid& g, double t) {
  return Field::sample(
      g, [&](double x) { return gain / width * f_star(amplitude, x / width); }, t);
}

}  // namespace

double BurgersParams::phase_offset() const { return std::log1p(amplitude); }

BurgersParams BurgersParams::from_amplitude(double amplitude) {
  BurgersParams p;
  p.amplitude = amplitude;
  p.validate();
  return p;
}

BurgersParams BurgersParams::from_phase_offset(double phi_d) {
  if (!(phi_d > 0.0)) throw std::invalid_argument("phase offset must be positive");
  return from_amplitude(std::expm1(phi_d));
}

BurgersParams BurgersParams::with_smallness(double phi_d, double delta) {
  BurgersParams p = from_phase_offset(phi_d);
  p.delta = delta;
  p.time_shift = select_time_shift(phi_d, delta);
  p.validate();
  return p;
}

void BurgersParams::validate() const {
  if (!(amplitude > 0.0) || !std::isfinite(amplitude)) throw std::invalid_argument("A must be > 0");
  if (!(time_shift >= 1.0)) throw std::invalid_argument("T0 must be >= 1");
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be > 0");
  if (beta == 0.0 || !std::isfinite(beta)) throw std::invalid_argument("beta must be nonzero");
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0,1)");
}

double select_time_shift(double phi_d, double delta) {
  if (!(phi_d > 0.0) || !(delta > 0.0)) throw std::invalid_argument("select_time_shift: bad arguments");
  const double r = phi_d / delta;
  return r * r;
}

double estar(double z) { return detail::estar(z); }
double estar_prime(double z) { return detail::estar_prime(z); }

double f_star(double amplitude, double z) {
  return amplitude * detail::estar_prime(z) / (1.0 + amplitude * detail::estar(z));
}

Field f_star(const BurgersParams& p, const SpectralGrid& grid) {
  return Field::sample(grid, [&](double z) { return f_star(p.amplitude, z); });
}

Field burgers_selfsimilar(const BurgersParams& p, double t, const SpectralGrid& grid) {
  if (!(t >= 1.0)) throw std::invalid_argument("burgers_selfsimilar: t must be >= 1");
  Field b = scaled_profile(p.amplitude, 1.0, std::sqrt(t), grid, t);
  check_fits(b, kTailTolerance, "burgers_selfsimilar");
  return b;
}

Field bbar(const BurgersParams& p, double t, const SpectralGrid& grid) {
  if (!(t >= 1.0)) throw std::invalid_argument("bbar: t must be >= 1");
  Field b = scaled_profile(p.amplitude, 1.0, std::sqrt(t - 1.0 + p.time_shift), grid, t);
  check_fits(b, kTailTolerance, "bbar");
  return b;
}

Field bbar_n(const BurgersParams& p, double scale, int n, double t, const SpectralGrid& grid,
             double tail_tolerance) {
  if (n < 0) throw std::invalid_argument("bbar_n: n must be >= 0");
  if (!(scale >= 1.0)) throw std::invalid_argument("bbar_n: L must be >= 1");
  if (t < 1.0 - 1e-12 || t > scale * scale * (1.0 + 1e-12)) {
    throw std::invalid_argument("bbar_n: t must lie in [1, L^2]");
  }
  const double ln = std::pow(scale, n);
  const double shifted = ln * ln * t + p.time_shift - 1.0;
  // L^n / sqrt(s) f(L^n z / sqrt(s)) == 1/w f(z/w) with w = sqrt(s) / L^n.
  Field b = scaled_profile(p.amplitude, 1.0, std::sqrt(shifted) / ln, grid, t);
  check_fits(b, tail_tolerance, "bbar_n");
  return b;
}

Field phi_star(const BurgersParams& p, double t, const SpectralGrid& grid) {
  if (!(t >= 1.0)) throw std::invalid_argument("phi_star: t must be >= 1");
  const double width = std::sqrt(p.alpha * t);
  const double gain = p.alpha / p.beta;
  return Field::sample(
      grid, [&](double x) { return gain * std::log1p(p.amplitude * detail::estar(x / width)); }, t);
}

double grow_distance(const BurgersParams& p, double t, const SpectralGrid& grid) {
  if (!(t >= 1.0)) throw std::invalid_argument("grow_distance: t must be >= 1");
  // sqrt(t) bbar(t, sqrt(t) z) = r f*(r z) with r = sqrt(t / (t - 1 + T0)).
  const double r = std::sqrt(t / (t - 1.0 + p.time_shift));
  Field diff = Field::sample(grid, [&](double z) {
    return r * f_star(p.amplitude, r * z) - f_star(p.amplitude, z);
  });
  check_fits(Field::sample(grid, [&](double z) { return r * f_star(p.amplitude, r * z); }),
             kTailTolerance, "grow_distance");
  return h22_norm(diff);
}

double RescalingAdapter::value_scale() const { return std::sqrt(alpha) / beta; }
double RescalingAdapter::length_scale() const { return std::sqrt(alpha); }

Field RescalingAdapter::to_lab(const Field& normalized, const SpectralGrid& lab_grid) const {
  if (!(alpha > 0.0) || beta == 0.0) throw std::invalid_argument("RescalingAdapter: bad coefficients");
  // u(x) = c U(x / l): R_{1/l} scaled by c * l.
  const double l = length_scale();
  Resampled r = resample_scaled(normalized, 1.0 / l, lab_grid, kNoTailCheck);
  return r.field * (value_scale() * l);
}

}  // namespace diffmix
